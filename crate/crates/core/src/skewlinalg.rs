//! Exact linear algebra for contraction matrices: rank and kernel, principal
//! deletion, determinants and Pfaffians, over scalars and over polynomials.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{inv_mod, FieldSpec, Scalar};
use crate::multipoly::MultiPoly;

/// Minimal commutative-ring interface shared by [`Scalar`] and [`MultiPoly`].
pub trait RingElem: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Pfaffian of the alternating matrix `at(i, j)` of size `n`, by expansion
/// along the first remaining index, memoized on index subsets.
pub fn pfaffian_generic<T: RingElem>(
    n: usize,
    at: impl Fn(usize, usize) -> T,
    zero: T,
    one: T,
) -> T {
    assert!(n < 32, "pfaffian supports at most 31 indices");
    if n % 2 == 1 {
        return zero;
    }
    let mut memo: HashMap<u32, T> = HashMap::new();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    pf_rec(full, &at, &zero, &one, &mut memo)
}

fn pf_rec<T: RingElem>(
    set: u32,
    at: &impl Fn(usize, usize) -> T,
    zero: &T,
    one: &T,
    memo: &mut HashMap<u32, T>,
) -> T {
    if set == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & !(1 << i);
    let mut acc = zero.clone();
    let mut k = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        k += 1;
        let a = at(i, j);
        if a.is_zero() {
            continue;
        }
        let sub = pf_rec(rest & !(1 << j), at, zero, one, memo);
        if sub.is_zero() {
            continue;
        }
        let term = a.mul(&sub);
        acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    memo.insert(set, acc.clone());
    acc
}

/// Determinant by Laplace expansion along rows, memoized on column subsets.
pub fn cofactor_determinant<T: RingElem>(
    n: usize,
    at: impl Fn(usize, usize) -> T,
    zero: T,
    one: T,
) -> T {
    assert!(n < 32);
    let mut memo: HashMap<u32, T> = HashMap::new();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    det_rec(n, full, &at, &zero, &one, &mut memo)
}

fn det_rec<T: RingElem>(
    n: usize,
    cols: u32,
    at: &impl Fn(usize, usize) -> T,
    zero: &T,
    one: &T,
    memo: &mut HashMap<u32, T>,
) -> T {
    if cols == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = n - cols.count_ones() as usize;
    let mut acc = zero.clone();
    let mut bits = cols;
    let mut pos = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = at(row, j);
        if !a.is_zero() {
            let sub = det_rec(n, cols & !(1 << j), at, zero, one, memo);
            let term = a.mul(&sub);
            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        ScalarMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = ScalarMatrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Arity {
                    expected: c,
                    got: row.len(),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field, x.field()));
                }
                entries.push(x);
            }
        }
        Ok(ScalarMatrix {
            rows: r,
            cols: c,
            field,
            entries,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        ScalarMatrix::from_rows(field, rows).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ScalarMatrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Zero diagonal and `a[k][j] = -a[j][k]` (in characteristic 2 the two
    /// signs coincide, so this is plain symmetry with zero diagonal).
    pub fn is_alternating(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.cols).all(|j| *self.get(j, i) == -self.get(i, j))
            })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        if let FieldSpec::Prime(p) = self.field {
            let mut rows: Vec<Vec<u64>> = (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.residue().unwrap()).collect())
                .collect();
            let pivots = modp::rref(&mut rows, self.cols, p);
            let out = ScalarMatrix {
                rows: self.rows,
                cols: self.cols,
                field: self.field,
                entries: rows
                    .into_iter()
                    .flatten()
                    .map(|r| self.field.residue(r))
                    .collect(),
            };
            return (out, pivots);
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a kernel basis (right null space), the basis itself in
    /// reduced row echelon form.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (r, pivots) = self.rref();
        let kernel = kernel_from_rref(
            &r.to_rows(),
            &pivots,
            self.cols,
            &self.field.zero(),
            &self.field.one(),
        );
        let kernel = if kernel.is_empty() {
            kernel
        } else {
            let k = ScalarMatrix::from_rows(self.field, kernel).unwrap();
            let (kr, kp) = k.rref();
            kr.to_rows().into_iter().take(kp.len()).collect()
        };
        (pivots.len(), kernel)
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_neg = false;
        let mut prev = self.field.one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign_neg = !sign_neg;
                    }
                    None => return Ok(self.field.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                    m.set(i, j, v.checked_div(&prev)?);
                }
                m.set(i, k, self.field.zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = if n == 0 {
            self.field.one()
        } else {
            m.get(n - 1, n - 1).clone()
        };
        Ok(if sign_neg { -d } else { d })
    }

    pub fn pfaffian(&self) -> Result<Scalar> {
        if !self.is_alternating() {
            return Err(Error::NotAlternating);
        }
        Ok(pfaffian_generic(
            self.rows,
            |i, j| self.get(i, j).clone(),
            self.field.zero(),
            self.field.one(),
        ))
    }

    pub fn principal_delete(&self, i: usize) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        let keep: Vec<usize> = (0..self.rows).filter(|&k| k != i).collect();
        let rows = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.get(a, b).clone()).collect())
            .collect();
        if keep.is_empty() {
            return Ok(ScalarMatrix::zeros(0, 0, self.field));
        }
        ScalarMatrix::from_rows(self.field, rows)
    }
}

fn kernel_from_rref<T: Clone + PartialEq + std::ops::Neg<Output = T>>(
    rref: &[Vec<T>],
    pivots: &[usize],
    cols: usize,
    zero: &T,
    one: &T,
) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[f] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref[r][f].clone();
        }
        out.push(v);
    }
    out
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_signed_string()).collect())
            .collect();
        write_aligned(f, &cells)
    }
}

fn write_aligned(f: &mut fmt::Formatter<'_>, cells: &[Vec<String>]) -> fmt::Result {
    let ncols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(f, "[ {} ]", line.join("  "))?;
    }
    Ok(())
}

/// Square matrix of polynomials, e.g. the symbolic contraction matrix M_u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    field: FieldSpec,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, nvars: usize, field: FieldSpec) -> Self {
        PolyMatrix {
            n,
            nvars,
            field,
            entries: vec![MultiPoly::zero(nvars, field); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>, nvars: usize, field: FieldSpec) -> Result<Self> {
        let n = rows.len();
        let mut m = PolyMatrix::zeros(n, nvars, field);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.nvars() != nvars || e.field() != field {
                    return Err(Error::Precondition(
                        "matrix entry arity or field mismatch".into(),
                    ));
                }
                m.entries[i * n + j] = e;
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_zero()
                && (i + 1..self.n).all(|j| *self.get(j, i) == -self.get(i, j))
        })
    }

    pub fn principal_delete(&self, i: usize) -> Result<PolyMatrix> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&k| k != i).collect();
        let mut out = PolyMatrix::zeros(self.n - 1, self.nvars, self.field);
        for (a, &r) in keep.iter().enumerate() {
            for (b, &c) in keep.iter().enumerate() {
                out.set(a, b, self.get(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<ScalarMatrix> {
        let mut out = ScalarMatrix::zeros(self.n, self.n, self.field);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).evaluate(point)?);
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> MultiPoly {
        cofactor_determinant(
            self.n,
            |i, j| self.get(i, j).clone(),
            MultiPoly::zero(self.nvars, self.field),
            MultiPoly::one(self.nvars, self.field),
        )
    }

    pub fn pfaffian(&self) -> Result<MultiPoly> {
        if !self.is_alternating() {
            return Err(Error::NotAlternating);
        }
        Ok(pfaffian_generic(
            self.n,
            |i, j| self.get(i, j).clone(),
            MultiPoly::zero(self.nvars, self.field),
            MultiPoly::one(self.nvars, self.field),
        ))
    }

    pub fn render(&self, prefix: &str) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).render(prefix)).collect())
            .collect();
        struct Cells<'a>(&'a [Vec<String>]);
        impl fmt::Display for Cells<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_aligned(f, self.0)
            }
        }
        Cells(&cells).to_string()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

/// Residue-level routines over GF(p) used on enumeration hot paths.
pub mod modp {
    use super::*;

    /// In-place reduced row echelon form; returns pivot columns. Rows past
    /// the rank are left zero.
    pub fn rref(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = inv_mod(rows[r][c], p);
            if inv != 1 {
                for x in rows[r][c..].iter_mut() {
                    *x = *x * inv % p;
                }
            }
            let (head, tail) = rows.split_at_mut(r);
            let (prow, below) = tail.split_first_mut().unwrap();
            for other in head.iter_mut().chain(below.iter_mut()) {
                let f = other[c];
                if f != 0 {
                    let nf = p - f;
                    for j in c..cols {
                        other[j] = (other[j] + nf * prow[j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
        let mut m = rows.to_vec();
        rref(&mut m, cols, p).len()
    }

    /// Rank and kernel basis in reduced row echelon form.
    pub fn rank_and_kernel(rows: &[Vec<u64>], cols: usize, p: u64) -> (usize, Vec<Vec<u64>>) {
        let mut m = rows.to_vec();
        let pivots = rref(&mut m, cols, p);
        let mut kernel = Vec::new();
        for f in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            kernel.push(v);
        }
        if !kernel.is_empty() {
            let kp = rref(&mut kernel, cols, p);
            kernel.truncate(kp.len());
        }
        (pivots.len(), kernel)
    }

    /// Reduces `v` against an RREF basis; returns the residue vector.
    pub fn reduce(v: &[u64], basis: &[Vec<u64>], pivots: &[usize], p: u64) -> Vec<u64> {
        let mut out = v.to_vec();
        for (row, &c) in basis.iter().zip(pivots) {
            let f = out[c];
            if f != 0 {
                let nf = p - f;
                for (o, b) in out.iter_mut().zip(row) {
                    *o = (*o + nf * b) % p;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MultiPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rank_kernel_examples() {
        let f = FieldSpec::Rational;
        let z = ScalarMatrix::zeros(3, 3, f);
        let (r, k) = z.rank_and_kernel();
        assert_eq!(r, 0);
        assert_eq!(k, ScalarMatrix::identity(3, f).to_rows());

        // T1 contraction at u = e1
        let m = ScalarMatrix::from_i64(f, &[vec![0, 0, 0], vec![0, 0, 1], vec![0, -1, 0]]);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 2);
        assert_eq!(k, vec![vec![f.one(), f.zero(), f.zero()]]);

        let (r, k) = ScalarMatrix::identity(4, gf(3)).rank_and_kernel();
        assert_eq!((r, k.len()), (4, 0));
    }

    #[test]
    fn kernel_annihilates_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &field in &[gf(2), gf(3), gf(7), FieldSpec::Rational] {
            for _ in 0..40 {
                let rows = rng.gen_range(1..6);
                let cols = rng.gen_range(1..7);
                let data: Vec<Vec<i64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-2..3)).collect())
                    .collect();
                let m = ScalarMatrix::from_i64(field, &data);
                let (r, k) = m.rank_and_kernel();
                assert_eq!(r + k.len(), cols);
                for v in &k {
                    assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
                }
            }
        }
    }

    #[test]
    fn pfaffian_examples() {
        let f = FieldSpec::Rational;
        let n = 1;
        let a = MultiPoly::var(n, f, 0);
        let m = PolyMatrix::from_rows(
            vec![vec![MultiPoly::zero(n, f), a.clone()], vec![-&a, MultiPoly::zero(n, f)]],
            n,
            f,
        )
        .unwrap();
        assert_eq!(m.pfaffian().unwrap(), a);
        let d = m.principal_delete(0).unwrap();
        assert_eq!(d.size(), 1);
        assert!(d.get(0, 0).is_zero());

        let mut s = ScalarMatrix::zeros(4, 4, f);
        s.set(0, 1, f.one());
        s.set(1, 0, -f.one());
        s.set(2, 3, f.one());
        s.set(3, 2, -f.one());
        assert_eq!(s.pfaffian().unwrap(), f.one());

        let bad = ScalarMatrix::identity(2, f);
        assert_eq!(bad.pfaffian(), Err(Error::NotAlternating));
    }

    #[test]
    fn classical_four_by_four_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(7);
        for _ in 0..50 {
            let mut m = ScalarMatrix::zeros(4, 4, f);
            for i in 0..4 {
                for j in i + 1..4 {
                    let v = f.from_i64(rng.gen_range(0..7));
                    m.set(j, i, -&v);
                    m.set(i, j, v);
                }
            }
            let a = |i: usize, j: usize| m.get(i, j).clone();
            let expect = &(&(a(0, 1) * a(2, 3)) - &(a(0, 2) * a(1, 3))) + &(a(0, 3) * a(1, 2));
            assert_eq!(m.pfaffian().unwrap(), expect);
        }
    }

    #[test]
    fn determinant_examples() {
        let f = FieldSpec::Rational;
        assert_eq!(
            ScalarMatrix::identity(5, f).determinant().unwrap(),
            f.one()
        );
        let nv = 4;
        let v = |i| MultiPoly::var(nv, f, i);
        let m = PolyMatrix::from_rows(vec![vec![v(0), v(1)], vec![v(2), v(3)]], nv, f).unwrap();
        assert_eq!(m.determinant(), &(&v(0) * &v(3)) - &(&v(1) * &v(2)));
        assert!(ScalarMatrix::zeros(2, 3, f).determinant().is_err());
        // Bareiss agrees with cofactor expansion
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..6);
            let data: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..4)).collect())
                .collect();
            let s = ScalarMatrix::from_i64(f, &data);
            let cof = cofactor_determinant(n, |i, j| s.get(i, j).clone(), f.zero(), f.one());
            assert_eq!(s.determinant().unwrap(), cof);
        }
    }

    #[test]
    fn rref_mod_p_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = gf(5);
        for _ in 0..30 {
            let data: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..5).map(|_| rng.gen_range(0..5)).collect())
                .collect();
            let m = ScalarMatrix::from_i64(f, &data);
            let rows: Vec<Vec<u64>> = data
                .iter()
                .map(|r| r.iter().map(|&x| x as u64).collect())
                .collect();
            let (rk, ker) = modp::rank_and_kernel(&rows, 5, 5);
            let (rk2, ker2) = m.rank_and_kernel();
            assert_eq!(rk, rk2);
            let ker2: Vec<Vec<u64>> = ker2
                .iter()
                .map(|v| v.iter().map(|x| x.residue().unwrap()).collect())
                .collect();
            assert_eq!(ker, ker2);
        }
    }
}
