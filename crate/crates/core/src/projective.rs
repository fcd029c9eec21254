//! Points, lines and subspaces of PG(n-1, p) on residue vectors.
//!
//! Points are canonical representatives whose first nonzero coordinate is 1.
//! They are ranked first by the position of that leading 1, then by the
//! trailing coordinates read as a base-p number (earlier coordinates more
//! significant). Lines are keyed by the reduced echelon basis of their
//! 2-dimensional space.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::inv_mod;
use crate::skewlinalg::modp;
use crate::triform::pairs;

pub type Point = Vec<u64>;

/// Scales `v` so that its first nonzero entry is 1; `None` for the zero vector.
pub fn normalize(v: &[u64], p: u64) -> Option<Point> {
    let lead = v.iter().position(|&x| x % p != 0)?;
    let inv = inv_mod(v[lead] % p, p);
    Some(v.iter().map(|&x| x % p * inv % p).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectiveSpace {
    n: usize,
    p: u64,
}

impl ProjectiveSpace {
    pub fn new(n: usize, p: u64) -> Self {
        assert!(n >= 1 && p >= 2);
        ProjectiveSpace { n, p }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `p^n` as u128 (the affine vector count, used against budgets).
    pub fn vector_count(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }

    pub fn num_points(&self) -> u64 {
        ((self.vector_count() - 1) / (self.p as u128 - 1)) as u64
    }

    /// Number of points whose leading 1 sits at position `lead`.
    fn block(&self, lead: usize) -> u64 {
        self.p.pow((self.n - 1 - lead) as u32)
    }

    pub fn unrank(&self, mut r: u64) -> Point {
        let mut lead = 0;
        while r >= self.block(lead) {
            r -= self.block(lead);
            lead += 1;
        }
        let mut v = vec![0u64; self.n];
        v[lead] = 1;
        for i in (lead + 1..self.n).rev() {
            v[i] = r % self.p;
            r /= self.p;
        }
        v
    }

    /// Rank of a canonical point.
    pub fn rank_of(&self, v: &[u64]) -> u64 {
        let lead = v.iter().position(|&x| x != 0).expect("nonzero point");
        let mut r: u64 = (0..lead).map(|l| self.block(l)).sum();
        let mut t = 0u64;
        for &x in &v[lead + 1..] {
            t = t * self.p + x;
        }
        r += t;
        r
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_points()).map(|r| self.unrank(r))
    }

    pub fn num_lines(&self) -> u64 {
        let q = self.p as u128;
        let n = self.n as u32;
        ((q.pow(n) - 1) * (q.pow(n) - q) / ((q * q - 1) * (q * q - q))) as u64
    }

    /// Every line of the space, enumerated over echelon pivot patterns.
    pub fn all_lines(&self) -> Vec<Line> {
        let (n, p) = (self.n, self.p);
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let free0: Vec<usize> = (a + 1..n).filter(|&c| c != b).collect();
                let free1: Vec<usize> = (b + 1..n).collect();
                let total = p.pow((free0.len() + free1.len()) as u32);
                for mut code in 0..total {
                    let mut r0 = vec![0u64; n];
                    let mut r1 = vec![0u64; n];
                    r0[a] = 1;
                    r1[b] = 1;
                    for &c in &free0 {
                        r0[c] = code % p;
                        code /= p;
                    }
                    for &c in &free1 {
                        r1[c] = code % p;
                        code /= p;
                    }
                    out.push(Line { rows: [r0, r1] });
                }
            }
        }
        out.sort();
        out
    }
}

/// A projective line as the reduced echelon basis of a 2-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Line {
    rows: [Point; 2],
}

impl Line {
    pub fn through(x: &[u64], y: &[u64], p: u64) -> Result<Line> {
        let mut m = vec![x.iter().map(|v| v % p).collect::<Vec<_>>(), y.iter().map(|v| v % p).collect()];
        let piv = modp::rref(&mut m, x.len(), p);
        if piv.len() < 2 {
            return Err(Error::DependentVectors);
        }
        let r1 = m.pop().unwrap();
        let r0 = m.pop().unwrap();
        Ok(Line { rows: [r0, r1] })
    }

    pub fn basis(&self) -> &[Point; 2] {
        &self.rows
    }

    pub fn pivots(&self) -> [usize; 2] {
        [
            self.rows[0].iter().position(|&x| x != 0).unwrap(),
            self.rows[1].iter().position(|&x| x != 0).unwrap(),
        ]
    }

    /// The `p + 1` canonical points, starting with the second basis vector.
    pub fn points(&self, p: u64) -> Vec<Point> {
        let mut out = Vec::with_capacity(p as usize + 1);
        out.push(self.rows[1].clone());
        for t in 0..p {
            out.push(
                self.rows[0]
                    .iter()
                    .zip(&self.rows[1])
                    .map(|(a, b)| (a + t * b) % p)
                    .collect(),
            );
        }
        out
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        let r = modp::reduce(v, &self.rows, &self.pivots(), p);
        r.iter().all(|&x| x == 0)
    }

    /// Plücker coordinates of the basis pair, pairs `j < k` in lexicographic order.
    pub fn plucker(&self, p: u64) -> Vec<u64> {
        let (x, y) = (&self.rows[0], &self.rows[1]);
        pairs(x.len())
            .into_iter()
            .map(|(j, k)| (x[j] * y[k] % p + p - x[k] * y[j] % p) % p)
            .collect()
    }
}

/// A subspace of GF(p)^n kept as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    p: u64,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(n: usize, p: u64, vectors: &[Vec<u64>]) -> Subspace {
        let mut m: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
        let pivots = if m.is_empty() {
            Vec::new()
        } else {
            modp::rref(&mut m, n, p)
        };
        m.truncate(pivots.len());
        Subspace {
            n,
            p,
            basis: m,
            pivots,
        }
    }

    /// Solutions of `coords[i] = 0` for each listed coordinate.
    pub fn coordinate_zeros(n: usize, p: u64, coords: &[usize]) -> Subspace {
        let vecs: Vec<Vec<u64>> = (0..n)
            .filter(|i| !coords.contains(i))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span(n, p, &vecs)
    }

    /// Null space of the given linear equations (rows of coefficients).
    pub fn solutions(n: usize, p: u64, equations: &[Vec<u64>]) -> Subspace {
        if equations.is_empty() {
            return Subspace::coordinate_zeros(n, p, &[]);
        }
        let (_, ker) = modp::rank_and_kernel(equations, n, p);
        Subspace::span(n, p, &ker)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        modp::reduce(v, &self.basis, &self.pivots, self.p)
            .iter()
            .all(|&x| x == 0)
    }

    pub fn contains_line(&self, l: &Line) -> bool {
        l.basis().iter().all(|v| self.contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.n, self.p, &v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve a·A = b·B by a kernel over the stacked bases.
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Subspace::span(self.n, self.p, &[]);
        }
        let p = self.p;
        let rows: Vec<Vec<u64>> = (0..self.n)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|v| v[c])
                    .chain(other.basis.iter().map(|v| (p - v[c]) % p))
                    .collect()
            })
            .collect();
        let (_, ker) = modp::rank_and_kernel(&rows, da + db, p);
        let vecs: Vec<Vec<u64>> = ker
            .iter()
            .map(|k| {
                let mut out = vec![0u64; self.n];
                for (coef, b) in k[..da].iter().zip(&self.basis) {
                    for (o, x) in out.iter_mut().zip(b) {
                        *o = (*o + coef * x) % p;
                    }
                }
                out
            })
            .collect();
        Subspace::span(self.n, p, &vecs)
    }

    /// All canonical points of the projective subspace.
    pub fn points(&self) -> Vec<Point> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let p = self.p;
        ProjectiveSpace::new(d, p)
            .points()
            .map(|c| {
                let mut out = vec![0u64; self.n];
                for (coef, b) in c.iter().zip(&self.basis) {
                    if *coef != 0 {
                        for (o, x) in out.iter_mut().zip(b) {
                            *o = (*o + coef * x) % p;
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// Number of projective points, `(p^d - 1)/(p - 1)`.
    pub fn num_points(&self) -> u64 {
        (self.p.pow(self.dim() as u32) - 1) / (self.p - 1)
    }

    /// All lines contained in the subspace.
    pub fn lines(&self) -> Vec<Line> {
        let d = self.dim();
        if d < 2 {
            return Vec::new();
        }
        let mut out: Vec<Line> = ProjectiveSpace::new(d, self.p)
            .all_lines()
            .into_iter()
            .map(|l| {
                let [a, b] = l.basis();
                Line::through(&self.combine(a), &self.combine(b), self.p).unwrap()
            })
            .collect();
        out.sort();
        out
    }

    fn combine(&self, coefs: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (coef, b) in coefs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = (*o + coef * x) % self.p;
            }
        }
        out
    }
}

/// Orders points the same way as [`ProjectiveSpace::rank_of`].
pub fn cmp_points(a: &[u64], b: &[u64]) -> Ordering {
    let la = a.iter().position(|&x| x != 0);
    let lb = b.iter().position(|&x| x != 0);
    la.cmp(&lb).then_with(|| a.cmp(b))
}
