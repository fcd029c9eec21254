//! Poles of a trilinear form: the contraction matrix M_u, point degrees,
//! exhaustive pole enumeration over GF(p), the Pfaffian pole-variety
//! pipeline and the upper radical (lines all of whose points see a
//! degenerate contraction).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::multipoly::MultiPoly;
use crate::projective::{Line, Point, ProjectiveSpace, Subspace};
use crate::skewlinalg::{modp, PolyMatrix, ScalarMatrix};
use crate::triform::{pair_index, pairs, TriForm};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Limits and scheduling for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest admissible `p^n`.
    pub budget: u64,
    pub parallel: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl EnumOptions {
    pub fn serial() -> Self {
        EnumOptions {
            parallel: false,
            ..Default::default()
        }
    }

    pub fn check(&self, field: FieldSpec, n: usize) -> Result<ProjectiveSpace> {
        let FieldSpec::Prime(p) = field else {
            return Err(Error::InfiniteField(field));
        };
        let space = ProjectiveSpace::new(n, p);
        let needed = space.vector_count();
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(space)
    }
}

/// A form over GF(p) with residue coefficients, for hot loops.
#[derive(Debug, Clone)]
pub struct ResidueForm {
    n: usize,
    p: u64,
    terms: Vec<([usize; 3], u64)>,
}

impl ResidueForm {
    pub fn new(h: &TriForm) -> Result<Self> {
        let FieldSpec::Prime(p) = h.field() else {
            return Err(Error::InfiniteField(h.field()));
        };
        Ok(ResidueForm {
            n: h.n(),
            p,
            terms: h.residue_terms()?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// M_u with entries in `[0, p)`.
    pub fn contract(&self, u: &[u64]) -> Vec<Vec<u64>> {
        let (n, p) = (self.n, self.p);
        let mut m = vec![vec![0u64; n]; n];
        for &([a, b, c], t) in &self.terms {
            for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
                let v = u[i] * t % p;
                if v != 0 {
                    m[j][k] = (m[j][k] + v) % p;
                    m[k][j] = (m[k][j] + p - v) % p;
                }
            }
        }
        m
    }

    pub fn degree(&self, u: &[u64]) -> usize {
        let m = self.contract(u);
        self.n - 1 - modp::rank(&m, self.n, self.p)
    }

    /// Degree and an echelon basis of Rad(χ_u).
    pub fn radical(&self, u: &[u64]) -> (usize, Vec<Vec<u64>>) {
        let m = self.contract(u);
        let (r, ker) = modp::rank_and_kernel(&m, self.n, self.p);
        (self.n - 1 - r, ker)
    }

    /// `h(x, y, z)` on residue vectors.
    pub fn evaluate(&self, x: &[u64], y: &[u64], z: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &([i, j, k], t) in &self.terms {
            let d = det3_mod([x[i], x[j], x[k]], [y[i], y[j], y[k]], [z[i], z[j], z[k]], p);
            acc = (acc + d * t) % p;
        }
        acc
    }
}

fn det3_mod(a: [u64; 3], b: [u64; 3], c: [u64; 3], p: u64) -> u64 {
    let m = |x: u64, y: u64, z: u64, w: u64| (x * w % p + p - y * z % p) % p;
    let t0 = a[0] * m(b[1], b[2], c[1], c[2]) % p;
    let t1 = a[1] * m(b[0], b[2], c[0], c[2]) % p;
    let t2 = a[2] * m(b[0], b[1], c[0], c[1]) % p;
    (t0 + p - t1 + t2) % p
}

/// Symbolic M_u with entry `(j, k) = Σ_i h(e_i, e_j, e_k) u_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicContraction {
    pub n: usize,
    pub matrix: PolyMatrix,
}

impl SymbolicContraction {
    pub fn evaluate(&self, u: &[Scalar]) -> Result<ScalarMatrix> {
        self.matrix.evaluate(u)
    }
}

pub fn symbolic_matrix(h: &TriForm) -> Result<SymbolicContraction> {
    if h.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (n, f) = (h.n(), h.field());
    let mut m = PolyMatrix::zeros(n, n, f);
    for (&[a, b, c], t) in h.terms() {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            let lin = MultiPoly::var(n, f, i).scale(t);
            m.set(j, k, m.get(j, k) + &lin);
            m.set(k, j, m.get(k, j) - &lin);
        }
    }
    Ok(SymbolicContraction { n, matrix: m })
}

/// Degree `(n-1) - rank(M_u)` and a basis of Rad(χ_u).
pub fn point_degree(h: &TriForm, u: &[Scalar]) -> Result<(usize, Vec<Vec<Scalar>>)> {
    if u.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    let m = h.contract(u)?;
    let (r, ker) = m.rank_and_kernel();
    Ok((h.n() - 1 - r, ker))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub point: Point,
    pub degree: usize,
    #[serde(skip)]
    pub radical: Vec<Vec<u64>>,
}

/// One record per projective point, in canonical rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub field: FieldSpec,
    pub n: usize,
    pub records: Vec<PointRecord>,
    pub histogram: BTreeMap<usize, u64>,
}

impl PoleReport {
    pub fn space(&self) -> ProjectiveSpace {
        ProjectiveSpace::new(self.n, self.field.characteristic())
    }

    pub fn poles(&self) -> impl Iterator<Item = &PointRecord> {
        self.records.iter().filter(|r| r.degree >= 1)
    }

    pub fn pole_count(&self) -> u64 {
        self.histogram
            .iter()
            .filter(|(d, _)| **d >= 1)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn record(&self, point: &[u64]) -> &PointRecord {
        &self.records[self.space().rank_of(point) as usize]
    }

    pub fn degree_of(&self, point: &[u64]) -> usize {
        self.record(point).degree
    }

    pub fn is_pole(&self, point: &[u64]) -> bool {
        self.degree_of(point) >= 1
    }
}

pub fn enumerate_poles(h: &TriForm, opts: &EnumOptions) -> Result<PoleReport> {
    let space = opts.check(h.field(), h.n())?;
    if h.is_zero() {
        return Err(Error::ZeroForm);
    }
    let rf = ResidueForm::new(h)?;
    let make = |r: u64| {
        let point = space.unrank(r);
        let (degree, radical) = rf.radical(&point);
        PointRecord {
            point,
            degree,
            radical,
        }
    };
    let total = space.num_points();
    let records: Vec<PointRecord> = if opts.parallel {
        (0..total).into_par_iter().map(make).collect()
    } else {
        (0..total).map(make).collect()
    };
    let mut histogram = BTreeMap::new();
    for r in &records {
        *histogram.entry(r.degree).or_insert(0) += 1;
    }
    Ok(PoleReport {
        field: h.field(),
        n: h.n(),
        records,
        histogram,
    })
}

/// Lines `[u, y]` with `y ∈ Rad(χ_u) \ ⟨u⟩`, sorted.
pub fn lines_through_point(h: &TriForm, u: &[u64]) -> Result<Vec<Line>> {
    let rf = ResidueForm::new(h)?;
    lines_through_residue(&rf, u)
}

fn lines_through_residue(rf: &ResidueForm, u: &[u64]) -> Result<Vec<Line>> {
    let p = rf.p;
    let u = crate::projective::normalize(u, p).ok_or(Error::ZeroVector)?;
    let (deg, rad) = rf.radical(&u);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let sub = Subspace::span(rf.n, p, &rad);
    let mut set = BTreeSet::new();
    for y in sub.points() {
        if y != u {
            set.insert(Line::through(&u, &y, p)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// The upper radical, assembled from the lines through each pole.
pub fn enumerate_upper_radical(h: &TriForm, opts: &EnumOptions) -> Result<Vec<Line>> {
    let report = enumerate_poles(h, opts)?;
    upper_radical_from_report(h, &report, opts.parallel)
}

pub fn upper_radical_from_report(
    h: &TriForm,
    report: &PoleReport,
    parallel: bool,
) -> Result<Vec<Line>> {
    let rf = ResidueForm::new(h)?;
    let p = rf.p;
    let per_point = |rec: &PointRecord| -> Vec<Line> {
        if rec.degree == 0 {
            return Vec::new();
        }
        let sub = Subspace::span(rf.n, p, &rec.radical);
        // Keep only lines on which `rec.point` is the least point, so each
        // line is produced once.
        sub.points()
            .into_iter()
            .filter(|y| *y != rec.point)
            .filter_map(|y| {
                let l = Line::through(&rec.point, &y, p).ok()?;
                let least = l
                    .points(p)
                    .into_iter()
                    .min_by(|a, b| crate::projective::cmp_points(a, b))?;
                (least == rec.point).then_some(l)
            })
            .collect()
    };
    let chunks: Vec<Vec<Line>> = if parallel {
        report.records.par_iter().map(per_point).collect()
    } else {
        report.records.iter().map(per_point).collect()
    };
    let set: BTreeSet<Line> = chunks.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// Brute force over all lines of PG(n-1, p): keep those whose Plücker
/// vector solves the upper-radical system.
pub fn upper_radical_brute_force(h: &TriForm, opts: &EnumOptions) -> Result<Vec<Line>> {
    let space = opts.check(h.field(), h.n())?;
    let sys = upper_radical_system(h)?;
    let eqs = sys.residue_equations()?;
    let p = space.p();
    Ok(space
        .all_lines()
        .into_iter()
        .filter(|l| {
            let w = l.plucker(p);
            eqs.iter().all(|row| {
                row.iter().zip(&w).fold(0u64, |acc, (a, b)| (acc + a * b) % p) == 0
            })
        })
        .collect())
}

/// The linear system `Σ_{j<k} h(e_i, e_j, e_k) w_jk = 0`, one row per `i`,
/// on the Plücker coordinates of ∧²V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperRadicalSystem {
    pub n: usize,
    pub field: FieldSpec,
    pub equations: ScalarMatrix,
    /// Echelon basis of the solution space L ⊆ ∧²V.
    pub solutions: Vec<Vec<Scalar>>,
}

impl UpperRadicalSystem {
    pub fn contains(&self, w: &[Scalar]) -> bool {
        self.equations.mul_vec(w).iter().all(Scalar::is_zero)
    }

    /// Nonzero rows of the reduced echelon form of the equations.
    pub fn reduced_equations(&self) -> Vec<Vec<Scalar>> {
        let (r, piv) = self.equations.rref();
        r.to_rows().into_iter().take(piv.len()).collect()
    }

    pub fn residue_equations(&self) -> Result<Vec<Vec<u64>>> {
        if !self.field.is_finite() {
            return Err(Error::InfiniteField(self.field));
        }
        Ok(self
            .equations
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x.residue().unwrap()).collect())
            .collect())
    }

    /// Renders an equation row as `w12 + l*w34 = 0` style text with 1-based pairs.
    pub fn render_row(&self, row: &[Scalar]) -> String {
        let prs = pairs(self.n);
        let mut terms = Vec::new();
        for (c, (j, k)) in row.iter().zip(prs) {
            if c.is_zero() {
                continue;
            }
            let var = format!("w{}{}{}", j + 1, if self.n > 9 { "," } else { "" }, k + 1);
            let s = c.to_signed_string();
            terms.push(match s.as_str() {
                "1" => var,
                "-1" => format!("-{var}"),
                _ => format!("{s}*{var}"),
            });
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out + " = 0"
    }
}

pub fn upper_radical_system(h: &TriForm) -> Result<UpperRadicalSystem> {
    let n = h.n();
    let f = h.field();
    let prs = pairs(n);
    let mut eq = ScalarMatrix::zeros(n, prs.len(), f);
    for i in 0..n {
        for &(j, k) in &prs {
            let c = h.coefficient(i, j, k);
            if !c.is_zero() {
                eq.set(i, pair_index(n, j, k), c);
            }
        }
    }
    let (_, solutions) = eq.rank_and_kernel();
    Ok(UpperRadicalSystem {
        n,
        field: f,
        equations: eq,
        solutions,
    })
}

/// Reduces a rational form modulo `p`.
pub fn reduce_form(h: &TriForm, p: u64) -> Result<TriForm> {
    let target = FieldSpec::prime(p)?;
    if h.field() == target {
        return Ok(h.clone());
    }
    let mut out = TriForm::zero(h.n(), target);
    for (t, c) in h.terms() {
        let r = c.as_rational().ok_or(Error::FieldMismatch(FieldSpec::Rational, h.field()))?;
        out.add_term(*t, target.from_rational(r)?)?;
    }
    Ok(out)
}

/// Reduces a rational polynomial modulo `p`.
pub fn reduce_poly(g: &MultiPoly, p: u64) -> Result<MultiPoly> {
    let target = FieldSpec::prime(p)?;
    if g.field() == target {
        return Ok(g.clone());
    }
    let mut terms = Vec::new();
    for (m, c) in g.terms() {
        let r = c.as_rational().ok_or(Error::FieldMismatch(FieldSpec::Rational, g.field()))?;
        terms.push((m.exponents().to_vec(), target.from_rational(r)?));
    }
    MultiPoly::from_terms(g.nvars(), target, terms)
}

/// How a candidate equation was checked against brute-force degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSetCheck {
    pub domain: String,
    pub points: u64,
    /// First point where `g = 0` and "is a pole" disagree.
    pub witness: Option<Vec<String>>,
}

impl ZeroSetCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyCandidate {
    /// 0-based index of the deleted row and column.
    pub index: usize,
    pub d: MultiPoly,
    pub alpha: u32,
    pub g: MultiPoly,
    pub checks: Vec<ZeroSetCheck>,
}

impl VarietyCandidate {
    pub fn verified(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(ZeroSetCheck::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyOutcome {
    /// Every point is a pole (even dimension, or `d_i` vanishing identically).
    AllPoints {
        reason: String,
        checks: Vec<ZeroSetCheck>,
    },
    Equation(VarietyCandidate),
}

impl VarietyOutcome {
    pub fn equation(&self) -> Option<&VarietyCandidate> {
        match self {
            VarietyOutcome::Equation(c) => Some(c),
            VarietyOutcome::AllPoints { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyOptions {
    /// Fixed 0-based index; otherwise the first verified index wins.
    pub index: Option<usize>,
    /// Over the rationals, check all nonzero integer points with entries in
    /// `-grid..=grid` (up to sign).
    pub grid: i64,
    /// Over the rationals, additionally check after reduction mod `p`.
    pub verify_prime: Option<u64>,
    pub enumeration: EnumOptions,
}

impl Default for VarietyOptions {
    fn default() -> Self {
        VarietyOptions {
            index: None,
            grid: 1,
            verify_prime: None,
            enumeration: EnumOptions::default(),
        }
    }
}

/// `d_i = Pf(M_u with row and column i deleted)` and the stripped `g_i`.
pub fn variety_candidate(sym: &SymbolicContraction, i: usize) -> Result<(MultiPoly, u32, MultiPoly)> {
    let sub = sym.matrix.principal_delete(i)?;
    let d = sub.pfaffian()?;
    if d.is_zero() {
        return Ok((d.clone(), 0, d));
    }
    let (alpha, g) = d.strip_variable_power(i)?;
    Ok((d, alpha, g))
}

struct Verifier<'a> {
    h: &'a TriForm,
    opts: &'a VarietyOptions,
    reports: Vec<(u64, PoleReport)>,
    grid: Option<Vec<(Vec<Scalar>, bool)>>,
}

impl<'a> Verifier<'a> {
    fn new(h: &'a TriForm, opts: &'a VarietyOptions) -> Result<Self> {
        let mut reports = Vec::new();
        let mut grid = None;
        match h.field() {
            FieldSpec::Prime(p) => reports.push((p, enumerate_poles(h, &opts.enumeration)?)),
            FieldSpec::Rational => {
                grid = Some(rational_grid(h, opts)?);
                if let Some(p) = opts.verify_prime {
                    let hp = reduce_form(h, p)?;
                    reports.push((p, enumerate_poles(&hp, &opts.enumeration)?));
                }
            }
        }
        Ok(Verifier {
            h,
            opts,
            reports,
            grid,
        })
    }

    fn check(&self, g: Option<&MultiPoly>) -> Result<Vec<ZeroSetCheck>> {
        let mut out = Vec::new();
        if let Some(grid) = &self.grid {
            let mut witness = None;
            for (u, pole) in grid {
                let zero = match g {
                    Some(g) => g.evaluate(u)?.is_zero(),
                    None => true,
                };
                if zero != *pole {
                    witness = Some(u.iter().map(|x| x.to_signed_string()).collect());
                    break;
                }
            }
            out.push(ZeroSetCheck {
                domain: format!(
                    "q grid {{{}..{}}}^{}",
                    -self.opts.grid,
                    self.opts.grid,
                    self.h.n()
                ),
                points: grid.len() as u64,
                witness,
            });
        }
        for (p, report) in &self.reports {
            let gp = match g {
                Some(g) => Some(reduce_poly(g, *p)?),
                None => None,
            };
            let witness = report
                .records
                .iter()
                .find(|r| {
                    let zero = gp.as_ref().map_or(true, |g| g.evaluate_residues(&r.point) == 0);
                    zero != (r.degree >= 1)
                })
                .map(|r| r.point.iter().map(u64::to_string).collect());
            out.push(ZeroSetCheck {
                domain: format!("gf({p})"),
                points: report.records.len() as u64,
                witness,
            });
        }
        Ok(out)
    }
}

fn rational_grid(h: &TriForm, opts: &VarietyOptions) -> Result<Vec<(Vec<Scalar>, bool)>> {
    let r = opts.grid.max(1);
    let side = (2 * r + 1) as u128;
    let needed = side.pow(h.n() as u32);
    if needed > opts.enumeration.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.enumeration.budget,
        });
    }
    let f = h.field();
    let n = h.n();
    let mut pts = Vec::new();
    for code in 0..needed as u64 {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % side as u64) as i64 - r;
                c /= side as u64;
                d
            })
            .collect();
        match v.iter().find(|&&x| x != 0) {
            Some(&lead) if lead > 0 => pts.push(v),
            _ => {}
        }
    }
    let eval = |v: &Vec<i64>| -> Result<(Vec<Scalar>, bool)> {
        let u: Vec<Scalar> = v.iter().map(|&x| f.from_i64(x)).collect();
        let (deg, _) = point_degree(h, &u)?;
        Ok((u, deg >= 1))
    };
    if opts.enumeration.parallel {
        pts.par_iter().map(eval).collect()
    } else {
        pts.iter().map(eval).collect()
    }
}

/// All `n` candidates `(i, d_i, α_i, g_i)` with their zero-set checks.
pub fn variety_candidates(h: &TriForm, opts: &VarietyOptions) -> Result<Vec<VarietyCandidate>> {
    let sym = symbolic_matrix(h)?;
    let verifier = Verifier::new(h, opts)?;
    (0..h.n())
        .map(|i| {
            let (d, alpha, g) = variety_candidate(&sym, i)?;
            let checks = if g.is_zero() {
                Vec::new()
            } else {
                verifier.check(Some(&g))?
            };
            Ok(VarietyCandidate {
                index: i,
                d,
                alpha,
                g,
                checks,
            })
        })
        .collect()
}

/// The pole-variety equation `g_i = 0`.
///
/// For even `n` every point is a pole and [`VarietyOutcome::AllPoints`] is
/// returned. With no fixed index, indices are tried in ascending order and
/// the first one whose zero set matches the enumerated poles is returned.
pub fn pole_variety(h: &TriForm, opts: &VarietyOptions) -> Result<VarietyOutcome> {
    if h.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = h.n();
    if let Some(i) = opts.index {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
    }
    let verifier = Verifier::new(h, opts)?;
    if n % 2 == 0 {
        return Ok(VarietyOutcome::AllPoints {
            reason: format!("dimension {n} is even"),
            checks: verifier.check(None)?,
        });
    }
    let sym = symbolic_matrix(h)?;
    let indices: Vec<usize> = match opts.index {
        Some(i) => vec![i],
        None => (0..n).collect(),
    };
    let mut tried = Vec::new();
    for i in indices {
        let (d, alpha, g) = variety_candidate(&sym, i)?;
        if d.is_zero() {
            return Ok(VarietyOutcome::AllPoints {
                reason: format!("d_{} vanishes identically", i + 1),
                checks: verifier.check(None)?,
            });
        }
        let checks = verifier.check(Some(&g))?;
        let cand = VarietyCandidate {
            index: i,
            d,
            alpha,
            g,
            checks,
        };
        if opts.index.is_some() || cand.verified() {
            return Ok(VarietyOutcome::Equation(cand));
        }
        tried.push(format!("i={}: g={}", i + 1, cand.g));
    }
    Err(Error::DegenerateVariety(tried.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triform::{catalog_terms, CatalogTag};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn unit(n: usize, f: FieldSpec, i: usize) -> Vec<Scalar> {
        (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect()
    }

    fn poly(s: &str, n: usize, f: FieldSpec) -> MultiPoly {
        MultiPoly::parse(s, n, f).unwrap()
    }

    #[test]
    fn symbolic_examples() {
        let f = FieldSpec::Rational;
        let t1 = catalog_terms(CatalogTag::T1, None, 3, f).unwrap();
        let m = symbolic_matrix(&t1).unwrap().matrix;
        let expect = [
            ["0", "u3", "-u2"],
            ["-u3", "0", "u1"],
            ["u2", "-u1", "0"],
        ];
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(*m.get(j, k), poly(expect[j][k], 3, f));
            }
        }
        let t8 = catalog_terms(CatalogTag::T8, None, 7, f).unwrap();
        let m = symbolic_matrix(&t8).unwrap().matrix;
        let row: Vec<String> = (0..7).map(|k| m.get(0, k).to_string()).collect();
        assert_eq!(row, ["0", "u3", "-u2", "u5", "-u4", "u7", "-u6"]);
        let t2 = catalog_terms(CatalogTag::T2, None, 6, f).unwrap();
        let m = symbolic_matrix(&t2).unwrap().matrix;
        assert!((0..6).all(|k| m.get(5, k).is_zero() && m.get(k, 5).is_zero()));
        assert!(symbolic_matrix(&TriForm::zero(3, f)).is_err());
    }

    #[test]
    fn point_degree_examples() {
        let f = gf(2);
        let t9 = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        assert_eq!(point_degree(&t9, &unit(7, f, 0)).unwrap().0, 2);
        assert_eq!(point_degree(&t9, &unit(7, f, 6)).unwrap().0, 0);
        let t4 = catalog_terms(CatalogTag::T4, None, 6, f).unwrap();
        assert_eq!(point_degree(&t4, &unit(6, f, 4)).unwrap().0, 3);
        assert_eq!(
            point_degree(&t4, &vec![f.zero(); 6]).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn enumeration_examples() {
        let f = gf(2);
        let t8 = catalog_terms(CatalogTag::T8, None, 7, f).unwrap();
        let r = enumerate_poles(&t8, &EnumOptions::default()).unwrap();
        assert_eq!(r.histogram, BTreeMap::from([(0, 64), (4, 63)]));
        assert!(r.poles().all(|p| p.point[0] == 0));

        let t5 = catalog_terms(CatalogTag::T5, None, 7, f).unwrap();
        let r = enumerate_poles(&t5, &EnumOptions::default()).unwrap();
        assert_eq!(r.pole_count(), 95);
        assert_eq!(r.histogram.get(&4), Some(&13));
        assert!(r.poles().all(|p| p.point[0] * p.point[3] == 0));

        let t3 = catalog_terms(CatalogTag::T3, None, 6, f).unwrap();
        let r = enumerate_poles(&t3, &EnumOptions::default()).unwrap();
        assert_eq!(r.pole_count(), 63);

        let small = EnumOptions {
            budget: 100,
            parallel: false,
        };
        assert!(matches!(
            enumerate_poles(&t8, &small),
            Err(Error::BudgetExceeded { needed: 128, .. })
        ));
        let q = catalog_terms(CatalogTag::T8, None, 7, FieldSpec::Rational).unwrap();
        assert!(matches!(
            enumerate_poles(&q, &EnumOptions::default()),
            Err(Error::InfiniteField(_))
        ));
    }

    #[test]
    fn variety_examples() {
        let f = FieldSpec::Rational;
        let h = TriForm::from_terms(5, f, [([0, 1, 2], f.one()), ([2, 3, 4], f.one())]).unwrap();
        let out = pole_variety(&h, &VarietyOptions::default()).unwrap();
        let c = out.equation().unwrap();
        assert!(c.g.equal_up_to_scalar(&poly("u3", 5, f)).is_some());
        assert!(c.verified());

        let t9 = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        let opts = VarietyOptions {
            verify_prime: Some(3),
            ..Default::default()
        };
        let c = pole_variety(&t9, &opts).unwrap();
        let c = c.equation().unwrap();
        let table = MultiPoly::parse("x7^2 - x3*x6 - x2*x5 - x1*x4", 7, f).unwrap();
        assert!(c.g.equal_up_to_scalar(&table).is_some(), "{}", c.g);
        assert_eq!(c.checks.len(), 2);

        for p in [2, 3] {
            let t6 = catalog_terms(CatalogTag::T6, None, 7, gf(p)).unwrap();
            let c = pole_variety(&t6, &VarietyOptions::default()).unwrap();
            let c = c.equation().unwrap();
            assert!(c.verified());
            let r = enumerate_poles(&t6, &EnumOptions::default()).unwrap();
            assert!(r
                .records
                .iter()
                .all(|rec| (rec.point[0] == 0) == (rec.degree >= 1)));
        }

        let t3 = catalog_terms(CatalogTag::T3, None, 6, gf(2)).unwrap();
        assert!(matches!(
            pole_variety(&t3, &VarietyOptions::default()).unwrap(),
            VarietyOutcome::AllPoints { .. }
        ));
        // T1 in odd dimension 5: every point is a pole and every d_i vanishes
        let t1 = catalog_terms(CatalogTag::T1, None, 5, gf(3)).unwrap();
        match pole_variety(&t1, &VarietyOptions::default()).unwrap() {
            VarietyOutcome::AllPoints { checks, .. } => assert!(checks[0].passed()),
            other => panic!("{other:?}"),
        }
        // T1 with n = 3 has no poles: g is a nonzero constant
        let t1 = catalog_terms(CatalogTag::T1, None, 3, gf(3)).unwrap();
        let c = pole_variety(&t1, &VarietyOptions::default()).unwrap();
        assert!(c.equation().unwrap().g.is_constant());
    }

    #[test]
    fn pfaffian_minors_share_a_factor() {
        // d_i = ± u_i F for one F; the stripped g_i all agree up to sign
        // whenever u_i does not divide F.
        let f = FieldSpec::Rational;
        let t9 = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        let sym = symbolic_matrix(&t9).unwrap();
        let gs: Vec<MultiPoly> = (0..7).map(|i| variety_candidate(&sym, i).unwrap().2).collect();
        for g in &gs {
            assert!(g.equal_up_to_scalar(&gs[0]).is_some());
        }
    }

    #[test]
    fn upper_radical_examples() {
        let f = gf(2);
        let t1 = catalog_terms(CatalogTag::T1, None, 6, f).unwrap();
        let sys = upper_radical_system(&t1).unwrap();
        let rows = sys.reduced_equations();
        let rendered: Vec<String> = rows.iter().map(|r| sys.render_row(r)).collect();
        assert_eq!(rendered, ["w12 = 0", "w13 = 0", "w23 = 0"]);

        let lines = enumerate_upper_radical(&t1, &EnumOptions::default()).unwrap();
        let brute = upper_radical_brute_force(&t1, &EnumOptions::default()).unwrap();
        assert_eq!(lines, brute);
        let rad = Subspace::coordinate_zeros(6, 2, &[0, 1, 2]);
        for l in crate::projective::ProjectiveSpace::new(6, 2).all_lines() {
            let meets = l.points(2).iter().any(|v| rad.contains(v));
            assert_eq!(meets, lines.binary_search(&l).is_ok());
        }

        let t9 = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        let lines = enumerate_upper_radical(&t9, &EnumOptions::default()).unwrap();
        assert_eq!(lines.len(), 63);
        assert_eq!(lines, upper_radical_brute_force(&t9, &EnumOptions::default()).unwrap());
    }

    #[test]
    fn lines_through_point_examples() {
        let f = gf(2);
        let t10 = catalog_terms(CatalogTag::T10_2, Some(&f.one()), 6, f).unwrap();
        for u in crate::projective::ProjectiveSpace::new(6, 2).points() {
            assert_eq!(lines_through_point(&t10, &u).unwrap().len(), 1);
        }
        let t9 = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        assert_eq!(lines_through_point(&t9, &[1, 0, 0, 0, 0, 0, 0]).unwrap().len(), 3);
        assert!(lines_through_point(&t9, &[0, 0, 0, 0, 0, 0, 1]).unwrap().is_empty());
        assert_eq!(
            lines_through_point(&t9, &[0; 7]).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn residue_and_generic_paths_agree() {
        let f = gf(3);
        let t7 = catalog_terms(CatalogTag::T7, None, 7, f).unwrap();
        let rf = ResidueForm::new(&t7).unwrap();
        let sym = symbolic_matrix(&t7).unwrap();
        for u in crate::projective::ProjectiveSpace::new(7, 3).points().step_by(7) {
            let us: Vec<Scalar> = u.iter().map(|&x| f.residue(x)).collect();
            let m = t7.contract(&us).unwrap();
            assert_eq!(sym.evaluate(&us).unwrap(), m);
            let rm = rf.contract(&u);
            for j in 0..7 {
                for k in 0..7 {
                    assert_eq!(m.get(j, k).residue().unwrap(), rm[j][k]);
                }
            }
            let (d, rad) = point_degree(&t7, &us).unwrap();
            let (d2, rad2) = rf.radical(&u);
            assert_eq!(d, d2);
            assert_eq!(rad.len(), rad2.len());
        }
    }
}
