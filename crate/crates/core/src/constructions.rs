//! Builders for forms: trivial extension, expansion of a bilinear form,
//! block decomposition, the reducible join and the chained join `123+345+…`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::multipoly::MultiPoly;
use crate::triform::{pairs, sort_triple, TriForm};

/// Pads `h0` with `extra` new basis vectors that no term touches.
pub fn trivial_extension(h0: &TriForm, extra: usize) -> Result<TriForm> {
    if extra == 0 {
        return Err(Error::InvalidConstruction(
            "extension needs at least one new dimension".into(),
        ));
    }
    h0.embed(h0.n() + extra)
}

/// Alternating bilinear form on `K^n` stored on pairs `j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearAltForm {
    n: usize,
    field: FieldSpec,
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl BilinearAltForm {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        BilinearAltForm {
            n,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// 0-based pairs in any order; `(k, j)` contributes with a minus sign.
    pub fn from_terms(
        n: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut b = BilinearAltForm::zero(n, field);
        for ((j, k), c) in terms {
            if j >= n || k >= n {
                return Err(Error::IndexOutOfRange {
                    index: j.max(k),
                    len: n,
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if j == k {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::Precondition(format!("repeated index {}", j + 1)));
            }
            let (key, c) = if j < k { ((j, k), c) } else { ((k, j), -c) };
            let s = match b.coeffs.get(&key) {
                Some(old) => old + &c,
                None => c,
            };
            if s.is_zero() {
                b.coeffs.remove(&key);
            } else {
                b.coeffs.insert(key, s);
            }
        }
        Ok(b)
    }

    /// Parses digit-pair sums such as `23+45+67` (1-based, unit coefficients).
    pub fn parse_digits(s: &str, n: usize, field: FieldSpec) -> Result<Self> {
        let mut terms = Vec::new();
        for t in s.split('+') {
            let t = t.trim();
            let b = t.as_bytes();
            if b.len() != 2 || !b.iter().all(|c| (b'1'..=b'9').contains(c)) {
                return Err(Error::Parse {
                    what: "bilinear form",
                    detail: t.to_string(),
                });
            }
            terms.push((((b[0] - b'1') as usize, (b[1] - b'1') as usize), field.one()));
        }
        BilinearAltForm::from_terms(n, field, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.coeffs.keys().flat_map(|&(j, k)| [j, k]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn coefficient(&self, j: usize, k: usize) -> Scalar {
        if j < k {
            self.coeffs.get(&(j, k)).cloned().unwrap_or_else(|| self.field.zero())
        } else if j > k {
            self.coeffs
                .get(&(k, j))
                .map(|c| -c)
                .unwrap_or_else(|| self.field.zero())
        } else {
            self.field.zero()
        }
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (&(j, k), c) in &self.coeffs {
            let m = &(&x[j] * &y[k]) - &(&x[k] * &y[j]);
            acc = &acc + &(c * &m);
        }
        acc
    }

    /// Evaluation on residue vectors over GF(p).
    pub fn evaluate_residues(&self, x: &[u64], y: &[u64]) -> u64 {
        let p = self.field.characteristic();
        let mut acc = 0u64;
        for (&(j, k), c) in &self.coeffs {
            let m = (x[j] * y[k] % p + p - x[k] * y[j] % p) % p;
            acc = (acc + c.residue().unwrap() * m) % p;
        }
        acc
    }

    /// Coefficient vector on the Plücker coordinates `w_jk`.
    pub fn plucker_row(&self) -> Vec<Scalar> {
        pairs(self.n)
            .into_iter()
            .map(|(j, k)| self.coefficient(j, k))
            .collect()
    }
}

impl fmt::Display for BilinearAltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(j, k), c)| {
                if c.is_one() {
                    format!("{}{}", j + 1, k + 1)
                } else {
                    format!("{}*{}{}", c.to_signed_string(), j + 1, k + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `h(x, y, z) = β(x', y')` contracted along `direction`: every term of β
/// on `(j, k)` becomes the triple with `h(e_j, e_k, e_direction) = β_jk`.
pub fn expansion(beta: &BilinearAltForm, direction: usize) -> Result<TriForm> {
    let n = beta.n();
    if direction >= n {
        return Err(Error::IndexOutOfRange {
            index: direction,
            len: n,
        });
    }
    if beta.support().contains(&direction) {
        return Err(Error::InvalidConstruction(format!(
            "direction {} is used by the bilinear form",
            direction + 1
        )));
    }
    let mut h = TriForm::zero(n, beta.field());
    for (&(j, k), c) in beta.terms() {
        h.add_term([j, k, direction], c.clone())?;
    }
    Ok(h)
}

/// A partition of the basis indices into direct summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub parts: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for part in &parts {
            for &i in part {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
                if seen[i] {
                    return Err(Error::SupportOverlap(format!("index {} repeated", i + 1)));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidConstruction(format!(
                "index {} not covered",
                i + 1
            )));
        }
        Ok(Decomposition { n, parts })
    }

    /// Splits `0..n` by the supports of `h0`; everything else goes to the
    /// second part.
    pub fn of_pair(h0: &TriForm, h1: &TriForm) -> Result<Self> {
        let s0 = h0.support();
        let s1 = h1.support();
        if let Some(i) = s0.iter().find(|i| s1.contains(i)) {
            return Err(Error::SupportOverlap(format!("index {}", i + 1)));
        }
        let rest: Vec<usize> = (0..h0.n()).filter(|i| !s0.contains(i)).collect();
        Decomposition::new(h0.n(), vec![s0, rest])
    }
}

/// `α h0 + β h1` for forms with disjoint supports.
pub fn block_decompose(h0: &TriForm, h1: &TriForm, alpha: &Scalar, beta: &Scalar) -> Result<TriForm> {
    if h0.n() != h1.n() {
        return Err(Error::Arity {
            expected: h0.n(),
            got: h1.n(),
        });
    }
    let s1 = h1.support();
    if let Some(i) = h0.support().iter().find(|i| s1.contains(i)) {
        return Err(Error::SupportOverlap(format!("index {}", i + 1)));
    }
    h0.scale(alpha)?.add(&h1.scale(beta)?)
}

/// `h1 + h2` where the supports meet in exactly one index `s`, with `h1`
/// living on indices `≤ s` and `h2` on indices `≥ s`. Returns the form and `s`.
pub fn reducible_join(h1: &TriForm, h2: &TriForm) -> Result<(TriForm, usize)> {
    if h1.n() != h2.n() {
        return Err(Error::Arity {
            expected: h1.n(),
            got: h2.n(),
        });
    }
    let s1 = h1.support();
    let s2 = h2.support();
    let shared: Vec<usize> = s1.iter().copied().filter(|i| s2.contains(i)).collect();
    if shared.len() != 1 {
        return Err(Error::SupportOverlap(format!(
            "supports must share exactly one index, found {}",
            shared.len()
        )));
    }
    let s = shared[0];
    if s1.iter().any(|&i| i > s) || s2.iter().any(|&i| i < s) {
        return Err(Error::SupportOverlap(format!(
            "shared index {} must be the last index of the first form and the first of the second",
            s + 1
        )));
    }
    Ok((h1.add(h2)?, s))
}

/// `123 + 345 + 567 + …` in odd dimension `n ≥ 5`.
pub fn cch_hyperplane(n: usize, field: FieldSpec) -> Result<TriForm> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidConstruction(format!(
            "chained join needs odd n >= 5, got {n}"
        )));
    }
    let mut h = TriForm::zero(n, field);
    let mut start = 0;
    while start + 2 < n {
        h.add_term([start, start + 1, start + 2], field.one())?;
        start += 2;
    }
    Ok(h)
}

/// `u_3 u_5 ⋯ u_{n-2}`, the expected pole equation of [`cch_hyperplane`].
pub fn cch_expected_variety(n: usize, field: FieldSpec) -> MultiPoly {
    let mut g = MultiPoly::one(n, field);
    let mut i = 2;
    while i + 2 < n {
        g = &g * &MultiPoly::var(n, field, i);
        i += 2;
    }
    g
}

/// Sign-aware check that `(a, b, c)` is a term of `h` with the given value.
pub fn has_term(h: &TriForm, t: [usize; 3], c: &Scalar) -> bool {
    match sort_triple(t) {
        Some(_) => h.coefficient(t[0], t[1], t[2]) == *c,
        None => false,
    }
}
