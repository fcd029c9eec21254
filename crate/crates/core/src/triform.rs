//! Alternating trilinear forms stored on sorted basis triples, the canonical
//! catalog of types, and the plain-text form file format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{cubic_irreducible, quadratic_irreducible, FieldSpec, QuadraticKind, Scalar};
use crate::skewlinalg::ScalarMatrix;

/// Index of the pair `(j, k)`, `j < k`, in lexicographic order of all pairs
/// of `0..n`.
pub fn pair_index(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < n);
    j * n - j * (j + 1) / 2 + (k - j - 1)
}

/// All pairs `j < k` in the order used by [`pair_index`].
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect()
}

/// Sorts a triple; returns it with the permutation sign, or `None` if an
/// index repeats.
pub fn sort_triple(t: [usize; 3]) -> Option<([usize; 3], bool)> {
    let [a, b, c] = t;
    if a == b || b == c || a == c {
        return None;
    }
    let mut s = t;
    let mut neg = false;
    for i in 0..2 {
        for j in 0..2 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                neg = !neg;
            }
        }
    }
    Some((s, neg))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriForm {
    n: usize,
    field: FieldSpec,
    coeffs: BTreeMap<[usize; 3], Scalar>,
}

impl TriForm {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        TriForm {
            n,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a form from 0-based triples in any order; permuted triples
    /// pick up the permutation sign and repeated triples accumulate.
    pub fn from_terms(
        n: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = ([usize; 3], Scalar)>,
    ) -> Result<Self> {
        let mut h = TriForm::zero(n, field);
        for (t, c) in terms {
            h.add_term(t, c)?;
        }
        Ok(h)
    }

    pub fn add_term(&mut self, t: [usize; 3], c: Scalar) -> Result<()> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        if let Some(&i) = t.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        let Some((key, neg)) = sort_triple(t) else {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!(
                "repeated index in triple {:?}",
                t.map(|i| i + 1)
            )));
        };
        let c = if neg { -c } else { c };
        let sum = match self.coeffs.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Signed coefficient `h(e_i, e_j, e_k)`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        match sort_triple([i, j, k]) {
            None => self.field.zero(),
            Some((key, neg)) => match self.coeffs.get(&key) {
                None => self.field.zero(),
                Some(c) if neg => -c,
                Some(c) => c.clone(),
            },
        }
    }

    /// Indices touched by some nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.coeffs.keys().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: v.len(),
            });
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Scalar> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        self.check_vec(z)?;
        let mut acc = self.field.zero();
        for (&[i, j, k], c) in &self.coeffs {
            let d = det3(
                [&x[i], &x[j], &x[k]],
                [&y[i], &y[j], &y[k]],
                [&z[i], &z[j], &z[k]],
            );
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        Ok(acc)
    }

    /// The matrix of the bilinear form `(x, y) -> h(u, x, y)`.
    pub fn contract(&self, u: &[Scalar]) -> Result<ScalarMatrix> {
        self.check_vec(u)?;
        let mut m = ScalarMatrix::zeros(self.n, self.n, self.field);
        let bump = |m: &mut ScalarMatrix, r: usize, s: usize, v: Scalar| {
            let a = m.get(r, s) + &v;
            m.set(r, s, a);
            let b = m.get(s, r) - &v;
            m.set(s, r, b);
        };
        for (&[a, b, c], t) in &self.coeffs {
            if !u[a].is_zero() {
                bump(&mut m, b, c, &u[a] * t);
            }
            if !u[b].is_zero() {
                bump(&mut m, c, a, &u[b] * t);
            }
            if !u[c].is_zero() {
                bump(&mut m, a, b, &u[c] * t);
            }
        }
        Ok(m)
    }

    /// Coefficients as residues `(triple, c)`; prime fields only.
    pub fn residue_terms(&self) -> Result<Vec<([usize; 3], u64)>> {
        if !self.field.is_finite() {
            return Err(Error::InfiniteField(self.field));
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(t, c)| (*t, c.residue().unwrap()))
            .collect())
    }

    /// Radical basis (reduced echelon form) and rank `n - dim Rad`.
    pub fn radical_and_rank(&self) -> Result<(Vec<Vec<Scalar>>, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let prs = pairs(self.n);
        let mut sys = ScalarMatrix::zeros(prs.len(), self.n, self.field);
        for (r, &(i, j)) in prs.iter().enumerate() {
            for c in 0..self.n {
                sys.set(r, c, self.coefficient(i, j, c));
            }
        }
        let (_, kernel) = sys.rank_and_kernel();
        let rank = self.n - kernel.len();
        Ok((kernel, rank))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.radical_and_rank()?.1)
    }

    /// `h'(x, y, z) = h(g x, g y, g z)`.
    pub fn pullback(&self, g: &LinearMap) -> Result<TriForm> {
        let m = g.matrix();
        if m.rows() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: m.rows(),
            });
        }
        if m.field() != self.field {
            return Err(Error::FieldMismatch(self.field, m.field()));
        }
        let mut out = TriForm::zero(self.n, self.field);
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    let mut acc = self.field.zero();
                    for (&[i, j, k], t) in &self.coeffs {
                        let d = det3(
                            [m.get(i, a), m.get(j, a), m.get(k, a)],
                            [m.get(i, b), m.get(j, b), m.get(k, b)],
                            [m.get(i, c), m.get(j, c), m.get(k, c)],
                        );
                        if !d.is_zero() {
                            acc = &acc + &(t * &d);
                        }
                    }
                    if !acc.is_zero() {
                        out.coeffs.insert([a, b, c], acc);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<TriForm> {
        if c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        Ok(TriForm {
            n: self.n,
            field: self.field,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        })
    }

    pub fn add(&self, other: &TriForm) -> Result<TriForm> {
        if self.n != other.n {
            return Err(Error::Arity {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(*t, c.clone())?;
        }
        Ok(out)
    }

    /// Same coefficients in a larger ambient dimension.
    pub fn embed(&self, n: usize) -> Result<TriForm> {
        if n < self.n && self.support().last().is_some_and(|&m| m >= n) {
            return Err(Error::IndexOutOfRange {
                index: *self.support().last().unwrap(),
                len: n,
            });
        }
        Ok(TriForm {
            n,
            field: self.field,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Renames basis vectors: index `i` becomes `map[i]` in dimension `n`.
    pub fn relabel(&self, n: usize, map: &[usize]) -> Result<TriForm> {
        let mut out = TriForm::zero(n, self.field);
        for (&[a, b, c], t) in &self.coeffs {
            out.add_term([map[a], map[b], map[c]], t.clone())?;
        }
        Ok(out)
    }

    /// Form file text: `n = ..`, `field = ..`, then one `i j k coeff` line
    /// per term with 1-based indices.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("n = {}\nfield = {}\n", self.n, self.field);
        for (&[i, j, k], c) in &self.coeffs {
            s.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, c));
        }
        s
    }

    pub fn parse_file(text: &str) -> Result<TriForm> {
        let perr = |d: String| Error::Parse {
            what: "form file",
            detail: d,
        };
        let mut n = None;
        let mut field = None;
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, val)) = line.split_once('=') {
                match key.trim() {
                    "n" => {
                        n = Some(val.trim().parse::<usize>().map_err(|e| {
                            perr(format!("line {}: bad dimension: {e}", lineno + 1))
                        })?)
                    }
                    "field" => field = Some(val.trim().parse::<FieldSpec>()?),
                    other => return Err(perr(format!("line {}: unknown key {other:?}", lineno + 1))),
                }
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(perr(format!("line {}: expected `i j k coeff`", lineno + 1)));
            }
            let mut idx = [0usize; 3];
            for (slot, p) in idx.iter_mut().zip(&parts[..3]) {
                let v: usize = p
                    .parse()
                    .map_err(|_| perr(format!("line {}: bad index {p:?}", lineno + 1)))?;
                if v == 0 {
                    return Err(perr(format!("line {}: indices are 1-based", lineno + 1)));
                }
                *slot = v - 1;
            }
            terms.push((idx, parts[3].to_string(), lineno + 1));
        }
        let n = n.ok_or_else(|| perr("missing `n = <dim>` header".into()))?;
        let field = field.ok_or_else(|| perr("missing `field = ...` header".into()))?;
        let mut h = TriForm::zero(n, field);
        for (t, c, lineno) in terms {
            let c = field
                .parse_scalar(&c)
                .map_err(|e| perr(format!("line {lineno}: {e}")))?;
            h.add_term(t, c)
                .map_err(|e| perr(format!("line {lineno}: {e}")))?;
        }
        Ok(h)
    }

    /// Inverse of [`TriForm::sum_notation`] for `n <= 9`: terms such as
    /// `123`, `-147` or `2*456` joined by `+`.
    pub fn parse_sum(s: &str, n: usize, field: FieldSpec) -> Result<TriForm> {
        let perr = |detail: String| Error::Parse {
            what: "form",
            detail,
        };
        let mut h = TriForm::zero(n, field);
        for raw in s.split('+') {
            let t = raw.trim();
            let (coeff, digits) = match t.rsplit_once('*') {
                Some((c, d)) => (field.parse_scalar(c)?, d.trim()),
                None => match t.strip_prefix('-') {
                    Some(d) => (-&field.one(), d.trim()),
                    None => (field.one(), t),
                },
            };
            let b = digits.as_bytes();
            if b.len() != 3 || !b.iter().all(u8::is_ascii_digit) || b.contains(&b'0') {
                return Err(perr(format!("bad term {t:?}")));
            }
            let idx = [0, 1, 2].map(|i| (b[i] - b'1') as usize);
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad + 1, len: n });
            }
            h.add_term(idx, coeff)
                .map_err(|e| perr(format!("term {t:?}: {e}")))?;
        }
        Ok(h)
    }

    /// Compact sum notation with 1-based digits, e.g. `123 + 2*456`.
    pub fn sum_notation(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let sep = if self.n > 9 { "," } else { "" };
        self.coeffs
            .iter()
            .map(|(&[i, j, k], c)| {
                let t = format!("{}{sep}{}{sep}{}", i + 1, j + 1, k + 1);
                if c.is_one() {
                    t
                } else {
                    format!("{}*{t}", c.to_signed_string())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sum_notation())
    }
}

fn det3(r0: [&Scalar; 3], r1: [&Scalar; 3], r2: [&Scalar; 3]) -> Scalar {
    let m = |a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar| &(a * d) - &(b * c);
    let t0 = r0[0] * &m(r1[1], r1[2], r2[1], r2[2]);
    let t1 = r0[1] * &m(r1[0], r1[2], r2[0], r2[2]);
    let t2 = r0[2] * &m(r1[0], r1[1], r2[0], r2[1]);
    &(&t0 - &t1) + &t2
}

/// Plücker coordinates `|x,y|_jk = x_j y_k - x_k y_j` for all `j < k`.
pub fn wedge2_coordinates(x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    if x.len() != y.len() {
        return Err(Error::Arity {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    let w: Vec<Scalar> = pairs(n)
        .into_iter()
        .map(|(j, k)| &(&x[j] * &y[k]) - &(&x[k] * &y[j]))
        .collect();
    if w.iter().all(Scalar::is_zero) {
        return Err(Error::DependentVectors);
    }
    Ok(w)
}

/// Invertible linear map given by its matrix; column `a` is the image of `e_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    m: ScalarMatrix,
}

impl LinearMap {
    pub fn new(m: ScalarMatrix) -> Result<Self> {
        if m.determinant()?.is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(LinearMap { m })
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        LinearMap {
            m: ScalarMatrix::identity(n, field),
        }
    }

    /// `e_i -> e_{perm[i]}`.
    pub fn permutation(field: FieldSpec, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = ScalarMatrix::zeros(n, n, field);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::IndexOutOfRange { index: p, len: n });
            }
            m.set(p, i, field.one());
        }
        LinearMap::new(m)
    }

    /// Uniform random invertible map over a prime field; over the rationals
    /// entries are drawn from `-3..=3`.
    pub fn random<R: Rng>(n: usize, field: FieldSpec, rng: &mut R) -> Self {
        loop {
            let mut m = ScalarMatrix::zeros(n, n, field);
            for i in 0..n {
                for j in 0..n {
                    let v = match field {
                        FieldSpec::Prime(p) => field.residue(rng.gen_range(0..p)),
                        FieldSpec::Rational => field.from_i64(rng.gen_range(-3..=3)),
                    };
                    m.set(i, j, v);
                }
            }
            if let Ok(g) = LinearMap::new(m) {
                return g;
            }
        }
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.m.mul_vec(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogTag {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10_1,
    T10_2,
    T11_1,
    T11_2,
    T12,
}

impl CatalogTag {
    pub const ALL: [CatalogTag; 14] = [
        CatalogTag::T1,
        CatalogTag::T2,
        CatalogTag::T3,
        CatalogTag::T4,
        CatalogTag::T5,
        CatalogTag::T6,
        CatalogTag::T7,
        CatalogTag::T8,
        CatalogTag::T9,
        CatalogTag::T10_1,
        CatalogTag::T10_2,
        CatalogTag::T11_1,
        CatalogTag::T11_2,
        CatalogTag::T12,
    ];

    pub fn expected_rank(self) -> usize {
        use CatalogTag::*;
        match self {
            T1 => 3,
            T2 => 5,
            T3 | T4 | T10_1 | T10_2 => 6,
            _ => 7,
        }
    }

    pub fn needs_parameter(self) -> bool {
        use CatalogTag::*;
        matches!(self, T10_1 | T10_2 | T11_1 | T11_2 | T12)
    }

    pub fn name(self) -> &'static str {
        use CatalogTag::*;
        match self {
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
            T4 => "T4",
            T5 => "T5",
            T6 => "T6",
            T7 => "T7",
            T8 => "T8",
            T9 => "T9",
            T10_1 => "T10_1",
            T10_2 => "T10_2",
            T11_1 => "T11_1",
            T11_2 => "T11_2",
            T12 => "T12",
        }
    }

    /// Human-readable description of the defining sum (`l` is λ, `m` is μ).
    pub fn description(self) -> &'static str {
        use CatalogTag::*;
        match self {
            T1 => "123",
            T2 => "123+145",
            T3 => "123+456",
            T4 => "162+243+135",
            T5 => "123+456+147",
            T6 => "152+174+163+243",
            T7 => "146+157+245+367",
            T8 => "123+145+167",
            T9 => "123+456+147+257+367",
            T10_1 => "123+l(156+345+426)",
            T10_2 => "126+153+234+(l^2+1)456+l(156+345+426)",
            T11_1 => "123+l(156+345+426)+147",
            T11_2 => "126+153+234+(l^2+1)456+l(156+345+426)+147",
            T12 => "m(123+456+147+257+367)",
        }
    }

    pub fn condition(self) -> Option<&'static str> {
        use CatalogTag::*;
        match self {
            T10_1 | T11_1 => Some("t^2-l irreducible"),
            T10_2 | T11_2 => Some("char 2 and t^2+l*t+1 irreducible"),
            T12 => Some("t^3-m irreducible"),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CatalogTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for CatalogTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .to_ascii_uppercase()
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | '^' | '(' | ')' | ' ' | ','))
            .collect();
        let tag = match norm.as_str() {
            "T1" => CatalogTag::T1,
            "T2" => CatalogTag::T2,
            "T3" => CatalogTag::T3,
            "T4" => CatalogTag::T4,
            "T5" => CatalogTag::T5,
            "T6" => CatalogTag::T6,
            "T7" => CatalogTag::T7,
            "T8" => CatalogTag::T8,
            "T9" => CatalogTag::T9,
            "T101" => CatalogTag::T10_1,
            "T102" => CatalogTag::T10_2,
            "T111" => CatalogTag::T11_1,
            "T112" => CatalogTag::T11_2,
            "T12" => CatalogTag::T12,
            _ => {
                return Err(Error::Parse {
                    what: "catalog tag",
                    detail: s.to_string(),
                })
            }
        };
        Ok(tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub tag: CatalogTag,
    pub param: Option<Scalar>,
}

impl CatalogEntry {
    pub fn new(tag: CatalogTag, param: Option<Scalar>) -> Result<Self> {
        match (tag.needs_parameter(), &param) {
            (true, None) => Err(Error::CatalogCondition(format!("{tag} needs a parameter"))),
            (false, Some(_)) => Err(Error::CatalogCondition(format!(
                "{tag} takes no parameter"
            ))),
            _ => Ok(CatalogEntry { tag, param }),
        }
    }

    pub fn plain(tag: CatalogTag) -> Self {
        CatalogEntry::new(tag, None).expect("tag without parameter")
    }

    pub fn expected_rank(&self) -> usize {
        self.tag.expected_rank()
    }

    /// Whether the special condition attached to the tag holds for the
    /// parameter over `field`.
    pub fn check_condition(&self, field: FieldSpec) -> Result<()> {
        use CatalogTag::*;
        let Some(p) = &self.param else {
            return Ok(());
        };
        if p.field() != field {
            return Err(Error::FieldMismatch(field, p.field()));
        }
        let ok = match self.tag {
            T10_1 | T11_1 => quadratic_irreducible(field, QuadraticKind::MinusLambda, p),
            T10_2 | T11_2 => {
                field.characteristic() == 2
                    && quadratic_irreducible(field, QuadraticKind::LambdaPlusOne, p)
            }
            T12 => cubic_irreducible(field, p),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CatalogCondition(format!(
                "{} requires {} (parameter {p} over {field})",
                self.tag,
                self.tag.condition().unwrap_or("")
            )))
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.param {
            Some(p) => write!(f, "{}[{}]", self.tag, p.to_signed_string()),
            None => write!(f, "{}", self.tag),
        }
    }
}

fn digits(s: &str) -> [usize; 3] {
    let b = s.as_bytes();
    [(b[0] - b'1') as usize, (b[1] - b'1') as usize, (b[2] - b'1') as usize]
}

/// The catalog sum for `tag` without checking the special condition.
/// `param` defaults to 1 when absent.
pub fn catalog_terms(
    tag: CatalogTag,
    param: Option<&Scalar>,
    n: usize,
    field: FieldSpec,
) -> Result<TriForm> {
    use CatalogTag::*;
    if n < tag.expected_rank() {
        return Err(Error::DimensionTooSmall {
            tag: tag.to_string(),
            n,
            rank: tag.expected_rank(),
        });
    }
    let one = field.one();
    let l = param.cloned().unwrap_or_else(|| one.clone());
    if l.field() != field {
        return Err(Error::FieldMismatch(field, l.field()));
    }
    let mut list: Vec<(String, Scalar)> = Vec::new();
    let mut push = |ts: &[&str], c: &Scalar| {
        for t in ts {
            list.push((t.to_string(), c.clone()));
        }
    };
    match tag {
        T1 => push(&["123"], &one),
        T2 => push(&["123", "145"], &one),
        T3 => push(&["123", "456"], &one),
        T4 => push(&["162", "243", "135"], &one),
        T5 => push(&["123", "456", "147"], &one),
        T6 => push(&["152", "174", "163", "243"], &one),
        T7 => push(&["146", "157", "245", "367"], &one),
        T8 => push(&["123", "145", "167"], &one),
        T9 | T12 => {
            let c = if tag == T12 { l.clone() } else { one.clone() };
            push(&["123", "456", "147", "257", "367"], &c);
        }
        T10_1 | T11_1 => {
            push(&["123"], &one);
            push(&["156", "345", "426"], &l);
        }
        T10_2 | T11_2 => {
            push(&["126", "153", "234"], &one);
            push(&["456"], &(&(&l * &l) + &one));
            push(&["156", "345", "426"], &l);
        }
    }
    if matches!(tag, T11_1 | T11_2) {
        push(&["147"], &one);
    }
    TriForm::from_terms(n, field, list.iter().map(|(t, c)| (digits(t), c.clone())))
}

/// The catalog form for `entry` in dimension `n`; the special condition is
/// enforced.
pub fn catalog_form(entry: &CatalogEntry, n: usize, field: FieldSpec) -> Result<TriForm> {
    entry.check_condition(field)?;
    if entry.tag == CatalogTag::T12 && entry.param.as_ref().is_some_and(Scalar::is_zero) {
        return Err(Error::ZeroScalar);
    }
    catalog_terms(entry.tag, entry.param.as_ref(), n, field)
}
