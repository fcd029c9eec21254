//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Terms are kept in a `BTreeMap` under graded-lexicographic order, so two
//! equal polynomials always have identical term maps. Only the operations the
//! pole-variety pipeline needs are provided: ring arithmetic, exact division,
//! stripping powers of a variable, evaluation and proportionality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

/// Exponent vector ordered graded-lexicographically (u1 > u2 > ... > un).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, field: FieldSpec) -> Self {
        MultiPoly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let field = c.field();
        let mut p = MultiPoly::zero(nvars, field);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, field: FieldSpec) -> Self {
        MultiPoly::constant(nvars, field.one())
    }

    /// The variable `u_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, field: FieldSpec, i: usize) -> Self {
        let mut p = MultiPoly::zero(nvars, field);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(nvars, field);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Arity {
                    expected: nvars,
                    got: e.len(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn check_compat(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compat(other)?;
        let mut out = MultiPoly::zero(self.nvars, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars, self.field);
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            out.terms.insert(m.clone(), d * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars, self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `a / b`, or `NotDivisible` when `b` does not divide `a`.
    ///
    /// Runs the division algorithm against the single divisor; with one
    /// divisor the quotient is unique, so a nonzero remainder (or a leading
    /// term not divisible by `lt(b)`) proves non-divisibility.
    pub fn exact_divide(&self, b: &MultiPoly) -> Result<MultiPoly> {
        self.check_compat(b)?;
        let (lm_b, lc_b) = b.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc_b.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars, self.field);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let m = lm_r.div(lm_b).ok_or(Error::NotDivisible)?;
            let c = lc_r * &lc_inv;
            for (mb, cb) in &b.terms {
                rem.add_term(m.mul(mb), -(&c * cb));
            }
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    /// Writes `a = u_i^e * cofactor` with `u_i` not dividing the cofactor.
    pub fn strip_variable_power(&self, i: usize) -> Result<(u32, MultiPoly)> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.nvars,
            });
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let e = self.terms.keys().map(|m| m.0[i]).min().unwrap();
        let mut out = MultiPoly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[i] -= e;
            out.terms.insert(Monomial(exps), c.clone());
        }
        Ok((e, out))
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if let Some(x) = point.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Fast evaluation at a point given by residues; only for prime fields.
    pub fn evaluate_residues(&self, point: &[u64]) -> u64 {
        let p = self.field.characteristic();
        debug_assert!(p > 0 && point.len() == self.nvars);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.residue().unwrap();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Substitutes `value` for variable `i`, keeping the arity.
    pub fn substitute(&self, i: usize, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[i], 0);
            out.add_term(Monomial(exps), c * &value.pow(e));
        }
        out
    }

    /// Drops trailing variables that do not occur in any term.
    pub fn truncate_vars(&self, nvars: usize) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(nvars, self.field);
        for (m, c) in &self.terms {
            if m.0[nvars..].iter().any(|&e| e > 0) {
                return Err(Error::Precondition(format!(
                    "polynomial uses variables beyond u{nvars}"
                )));
            }
            out.terms.insert(Monomial(m.0[..nvars].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Re-embeds into a ring with more variables (existing indices preserved).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let mut out = MultiPoly::zero(nvars, self.field);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(nvars, 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Re-indexes variables: variable `i` of `self` becomes `map[i]` of the result.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// `Some(c)` with `self = c * other`, `c != 0`; `(0, 0)` gives `c = 1`.
    pub fn equal_up_to_scalar(&self, other: &MultiPoly) -> Option<Scalar> {
        if self.check_compat(other).is_err() {
            return None;
        }
        match (self.leading_term(), other.leading_term()) {
            (None, None) => Some(self.field.one()),
            (Some((ma, ca)), Some((mb, cb))) => {
                if ma != mb || self.terms.len() != other.terms.len() {
                    return None;
                }
                let c = ca.checked_div(cb).ok()?;
                for ((m1, c1), (m2, c2)) in self.terms.iter().zip(&other.terms) {
                    if m1 != m2 || *c1 != c2 * &c {
                        return None;
                    }
                }
                Some(c)
            }
            _ => None,
        }
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Renders with a variable prefix, e.g. `"u"` gives `u1*u3^2 + 2*u2`.
    pub fn render(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_literal();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{prefix}{}", i + 1)),
                    _ => factors.push(format!("{prefix}{}^{e}", i + 1)),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses `render`'s syntax (and more: parentheses, `^`, `/` by constants).
    /// Variables are `u<i>` or `x<i>`, 1-based.
    pub fn parse(s: &str, nvars: usize, field: FieldSpec) -> Result<MultiPoly> {
        Self::parse_with(s, nvars, field, |name| {
            let rest = name
                .strip_prefix('u')
                .or_else(|| name.strip_prefix('x'))?;
            let i: usize = rest.parse().ok()?;
            (i >= 1 && i <= nvars).then(|| i - 1)
        })
    }

    /// Parses with a caller-supplied variable resolver (name -> 0-based index).
    pub fn parse_with(
        s: &str,
        nvars: usize,
        field: FieldSpec,
        resolve: impl Fn(&str) -> Option<usize>,
    ) -> Result<MultiPoly> {
        let mut parser = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nvars,
            field,
            resolve: &resolve,
            src: s,
        };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.err("trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a, F: Fn(&str) -> Option<usize>> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    field: FieldSpec,
    resolve: &'a F,
    src: &'a str,
}

impl<F: Fn(&str) -> Option<usize>> Parser<'_, F> {
    fn err(&self, why: &str) -> Error {
        Error::Parse {
            what: "polynomial",
            detail: format!("{why} at {} in {:?}", self.pos, self.src),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars, self.field);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    let c = f.coefficient(&vec![0; self.nvars]).inv()?;
                    acc = acc.scale(&c);
                }
                Some('(') => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some('-') => {
                self.pos += 1;
                let f = self.factor()?;
                return Ok(-&f);
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                MultiPoly::constant(self.nvars, self.field.parse_scalar(&lit)?)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = (self.resolve)(&name).ok_or_else(|| self.err("unknown variable"))?;
                if i >= self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                MultiPoly::var(self.nvars, self.field, i)
            }
            _ => return Err(self.err("unexpected token")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let lit: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = lit.parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$imp(rhs).expect("polynomial arity/field mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-self.field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn p(s: &str, n: usize, f: FieldSpec) -> MultiPoly {
        MultiPoly::parse(s, n, f).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = p("u1+u2", 2, q());
        let b = p("u1-u2", 2, q());
        assert_eq!(&a * &b, p("u1^2-u2^2", 2, q()));
        assert_eq!(&a + &MultiPoly::zero(2, q()), a);
        let f2 = FieldSpec::prime(2).unwrap();
        let c = p("u1+u2", 2, f2);
        assert_eq!(&c * &c, p("u1^2+u2^2", 2, f2));
        assert!(a.try_add(&p("u1", 3, q())).is_err());
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn division_examples() {
        let n = 3;
        assert_eq!(
            p("u1^2*u3", n, q()).exact_divide(&p("u1", n, q())).unwrap(),
            p("u1*u3", n, q())
        );
        assert_eq!(
            p("u1^2-u2^2", n, q())
                .exact_divide(&p("u1+u2", n, q()))
                .unwrap(),
            p("u1-u2", n, q())
        );
        assert_eq!(
            p("u1+u2", n, q()).exact_divide(&p("u3", n, q())),
            Err(Error::NotDivisible)
        );
        assert_eq!(
            p("u1", n, q()).exact_divide(&MultiPoly::zero(n, q())),
            Err(Error::ZeroPolynomial)
        );
        // divisible leading term but nonzero remainder
        assert_eq!(
            p("u1^2+u2", n, q()).exact_divide(&p("u1", n, q())),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn strip_examples() {
        let n = 3;
        assert_eq!(
            p("u3^2*(u1+u2)", n, q()).strip_variable_power(2).unwrap(),
            (2, p("u1+u2", n, q()))
        );
        assert_eq!(
            p("u1+u2", n, q()).strip_variable_power(2).unwrap(),
            (0, p("u1+u2", n, q()))
        );
        assert_eq!(
            p("u3*u3*u3", n, q()).strip_variable_power(2).unwrap(),
            (3, MultiPoly::one(n, q()))
        );
        assert_eq!(
            MultiPoly::zero(n, q()).strip_variable_power(0),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluate_examples() {
        let f = q();
        let quadric = p("x7^2-x3*x6-x2*x5-x1*x4", 7, f);
        let mut e7 = vec![f.zero(); 7];
        e7[6] = f.one();
        assert_eq!(quadric.evaluate(&e7).unwrap(), f.one());
        let mut e1 = vec![f.zero(); 7];
        e1[0] = f.one();
        assert_eq!(quadric.evaluate(&e1).unwrap(), f.zero());
        let pt: Vec<Scalar> = [1, 1, 0, 1, 1].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(p("u3", 5, f).evaluate(&pt).unwrap(), f.zero());
        assert!(p("u3", 5, f).evaluate(&pt[..4]).is_err());
    }

    #[test]
    fn proportionality_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            p("2*u1*u2", 2, f5).equal_up_to_scalar(&p("u1*u2", 2, f5)),
            Some(f5.from_i64(2))
        );
        assert_eq!(p("u1", 2, q()).equal_up_to_scalar(&p("u2", 2, q())), None);
        assert_eq!(
            p("u3*u5", 5, q()).equal_up_to_scalar(&p("3*u3*u5", 5, q())),
            Some(q().from_ratio(1, 3).unwrap())
        );
        assert_eq!(
            MultiPoly::zero(2, q()).equal_up_to_scalar(&MultiPoly::zero(2, q())),
            Some(q().one())
        );
    }

    #[test]
    fn render_and_parse() {
        let f = q();
        let a = p("u3^2*u1 + 2*u2 - 1/2", 3, f);
        assert_eq!(a.render("u"), "u1*u3^2 + 2*u2 - 1/2");
        assert_eq!(p(&a.render("u"), 3, f), a);
        assert_eq!(p(&a.render("x"), 3, f), a);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(p("-u1", 2, f7).render("u"), "6*u1");
        assert!(MultiPoly::parse("u4", 3, f).is_err());
        assert!(MultiPoly::parse("u1 +", 3, f).is_err());
    }

    #[test]
    fn substitute_and_truncate() {
        let f = q();
        let a = p("u1*u3^2 + u2*u3", 3, f);
        let s = a.substitute(2, &f.from_i64(2));
        assert_eq!(s.truncate_vars(2).unwrap(), p("4*u1 + 2*u2", 2, f));
        assert!(a.truncate_vars(2).is_err());
    }
}
