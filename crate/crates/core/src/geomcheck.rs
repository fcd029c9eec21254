//! The geometry of poles over GF(p) as an incidence structure, with checks
//! for spreads, normality, polar spaces, the T7 cone, the hexagon, the T4
//! line set, the T11 plane spread, and a fingerprint for comparing forms.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::BilinearAltForm;
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::poles::{
    enumerate_poles, upper_radical_from_report, variety_candidates, EnumOptions, PoleReport,
    ResidueForm, VarietyOptions,
};
use crate::projective::{Line, Point, ProjectiveSpace, Subspace};
use crate::triform::{catalog_terms, CatalogTag, TriForm};

const NONE: u32 = u32::MAX;

pub fn fmt_point(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_line(l: &Line) -> String {
    let [a, b] = l.basis();
    format!("[{}, {}]", fmt_point(a), fmt_point(b))
}

/// Poles as points, the upper radical as lines, and their incidences.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    pub form: TriForm,
    pub space: ProjectiveSpace,
    pub report: PoleReport,
    pub points: Vec<Point>,
    index: Vec<u32>,
    pub lines: Vec<Line>,
    pub line_points: Vec<Vec<u32>>,
    pub point_lines: Vec<Vec<u32>>,
    /// Points on upper-radical lines that are not poles (always empty in
    /// practice; kept so the invariant can be reported rather than assumed).
    pub stray: Vec<(u32, Point)>,
}

pub fn build_geometry(h: &TriForm, opts: &EnumOptions) -> Result<IncidenceStructure> {
    let report = enumerate_poles(h, opts)?;
    let lines = upper_radical_from_report(h, &report, opts.parallel)?;
    Ok(IncidenceStructure::assemble(h.clone(), report, lines))
}

impl IncidenceStructure {
    pub fn assemble(form: TriForm, report: PoleReport, lines: Vec<Line>) -> Self {
        let space = report.space();
        let p = space.p();
        let mut index = vec![NONE; space.num_points() as usize];
        let mut points = Vec::new();
        for (r, rec) in report.records.iter().enumerate() {
            if rec.degree >= 1 {
                index[r] = points.len() as u32;
                points.push(rec.point.clone());
            }
        }
        let mut line_points = Vec::with_capacity(lines.len());
        let mut point_lines = vec![Vec::new(); points.len()];
        let mut stray = Vec::new();
        for (li, l) in lines.iter().enumerate() {
            let mut pts = Vec::with_capacity(p as usize + 1);
            for v in l.points(p) {
                let pi = index[space.rank_of(&v) as usize];
                if pi == NONE {
                    stray.push((li as u32, v));
                } else {
                    pts.push(pi);
                    point_lines[pi as usize].push(li as u32);
                }
            }
            pts.sort_unstable();
            line_points.push(pts);
        }
        IncidenceStructure {
            form,
            space,
            report,
            points,
            index,
            lines,
            line_points,
            point_lines,
            stray,
        }
    }

    pub fn p(&self) -> u64 {
        self.space.p()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn field(&self) -> FieldSpec {
        self.form.field()
    }

    pub fn pole_index(&self, v: &[u64]) -> Option<usize> {
        let i = self.index[self.space.rank_of(v) as usize];
        (i != NONE).then_some(i as usize)
    }

    pub fn degree(&self, v: &[u64]) -> usize {
        self.report.degree_of(v)
    }

    pub fn line_set(&self) -> BTreeSet<Line> {
        self.lines.iter().cloned().collect()
    }

    pub fn verdict(&self, check: &str, pass: bool, witnesses: Vec<String>) -> Verdict {
        Verdict {
            check: check.to_string(),
            form: self.form.to_string(),
            field: self.field().to_string(),
            pass,
            witnesses,
            details: BTreeMap::new(),
        }
    }

    /// Every point of every line is a pole.
    pub fn lines_on_poles_check(&self) -> Verdict {
        let w: Vec<String> = self
            .stray
            .iter()
            .take(5)
            .map(|(l, v)| {
                format!(
                    "line {} contains non-pole {}",
                    fmt_line(&self.lines[*l as usize]),
                    fmt_point(v)
                )
            })
            .collect();
        self.verdict("lines-on-poles", self.stray.is_empty(), w)
    }
}

/// Outcome of one check, with counterexamples on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub form: String,
    pub field: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub details: BTreeMap<String, Value>,
}

impl Verdict {
    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.details.insert(key.to_string(), v);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadReport {
    pub is_spread: bool,
    /// Number of ambient points lying on exactly `k` lines, keyed by `k`.
    pub cover_histogram: BTreeMap<usize, u64>,
    /// First point (in rank order) not covered exactly once.
    pub witness: Option<String>,
}

pub fn spread_check_lines(space: &ProjectiveSpace, lines: &[Line]) -> SpreadReport {
    let p = space.p();
    let mut cover = vec![0usize; space.num_points() as usize];
    for l in lines {
        for v in l.points(p) {
            cover[space.rank_of(&v) as usize] += 1;
        }
    }
    let mut cover_histogram = BTreeMap::new();
    for c in &cover {
        *cover_histogram.entry(*c).or_insert(0) += 1;
    }
    let witness = cover.iter().position(|&c| c != 1).map(|r| {
        format!(
            "{} lies on {} lines",
            fmt_point(&space.unrank(r as u64)),
            cover[r]
        )
    });
    SpreadReport {
        is_spread: !lines.is_empty() && witness.is_none(),
        cover_histogram,
        witness: witness.or_else(|| lines.is_empty().then(|| "no lines".to_string())),
    }
}

pub fn spread_check(g: &IncidenceStructure) -> SpreadReport {
    spread_check_lines(&g.space, &g.lines)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalSpreadReport {
    pub normal: bool,
    /// Pairs of spread lines covered, directly or through a shared span.
    pub pairs: u64,
    /// 3-spaces spanned by two spread lines that were examined.
    pub spans: u64,
    pub witness: Option<String>,
}

/// For every pair of spread lines, the spread lines meeting their span must
/// lie inside it (and so partition it).
pub fn normal_spread_check_lines(space: &ProjectiveSpace, lines: &[Line]) -> Result<NormalSpreadReport> {
    let p = space.p();
    let n = space.n();
    if !spread_check_lines(space, lines).is_spread {
        return Err(Error::Precondition("line set is not a spread".into()));
    }
    let mut owner = vec![0u32; space.num_points() as usize];
    for (i, l) in lines.iter().enumerate() {
        for v in l.points(p) {
            owner[space.rank_of(&v) as usize] = i as u32;
        }
    }
    let m = lines.len();
    let mut covered = vec![0u64; (m * m).div_ceil(64)];
    let bit = |i: usize, j: usize| i * m + j;
    let mut spans = 0;
    for i in 0..m {
        for j in i + 1..m {
            let b = bit(i, j);
            if covered[b / 64] >> (b % 64) & 1 == 1 {
                continue;
            }
            spans += 1;
            let mut gens = lines[i].basis().to_vec();
            gens.extend(lines[j].basis().iter().cloned());
            let sigma = Subspace::span(n, p, &gens);
            let mut inside = BTreeSet::new();
            for v in sigma.points() {
                let o = owner[space.rank_of(&v) as usize];
                if !sigma.contains_line(&lines[o as usize]) {
                    return Ok(NormalSpreadReport {
                        normal: false,
                        pairs: 0,
                        spans,
                        witness: Some(format!(
                            "span of {} and {} contains {} whose spread line {} leaves it",
                            fmt_line(&lines[i]),
                            fmt_line(&lines[j]),
                            fmt_point(&v),
                            fmt_line(&lines[o as usize])
                        )),
                    });
                }
                inside.insert(o as usize);
            }
            let inside: Vec<usize> = inside.into_iter().collect();
            for (a, &x) in inside.iter().enumerate() {
                for &y in &inside[a + 1..] {
                    let b = bit(x, y);
                    covered[b / 64] |= 1 << (b % 64);
                }
            }
        }
    }
    Ok(NormalSpreadReport {
        normal: true,
        pairs: (m * (m - 1) / 2) as u64,
        spans,
        witness: None,
    })
}

pub fn normal_spread_check(g: &IncidenceStructure) -> Result<NormalSpreadReport> {
    normal_spread_check_lines(&g.space, &g.lines)
}

/// Replace the regulus through spread lines `i`, `j` and a third spread line
/// of their span by its opposite regulus. The result covers the same points.
pub fn regulus_switch(space: &ProjectiveSpace, lines: &[Line], i: usize, j: usize) -> Result<Vec<Line>> {
    let (n, p) = (space.n(), space.p());
    let sub = |l: &Line| Subspace::span(n, p, l.basis());
    let (l1, l2) = (sub(&lines[i]), sub(&lines[j]));
    if l1.intersect(&l2).dim() != 0 {
        return Err(Error::Precondition("lines must be skew".into()));
    }
    let sigma = l1.join(&l2);
    let k = (0..lines.len())
        .find(|&k| k != i && k != j && sigma.contains_line(&lines[k]))
        .ok_or_else(|| Error::Precondition("no third line in the span".into()))?;
    let l3 = sub(&lines[k]);
    // transversals of l1, l2, l3 through each point of l1
    let mut opposite = Vec::new();
    for x in lines[i].points(p) {
        let through = Subspace::span(n, p, &[x.clone()]).join(&l2);
        let y = through.intersect(&l3);
        if y.dim() != 1 {
            return Err(Error::Precondition("lines do not span a 3-space".into()));
        }
        opposite.push(Line::through(&x, &y.basis()[0], p)?);
    }
    // the regulus: lines meeting every transversal, found among the given lines
    let t: Vec<Subspace> = opposite.iter().map(sub).collect();
    let regulus: BTreeSet<usize> = (0..lines.len())
        .filter(|&m| {
            let lm = sub(&lines[m]);
            t.iter().all(|s| s.intersect(&lm).dim() == 1)
        })
        .collect();
    if regulus.len() != opposite.len() {
        return Err(Error::Precondition(
            "the regulus through the chosen lines is not contained in the line set".into(),
        ));
    }
    let mut out: Vec<Line> = (0..lines.len())
        .filter(|m| !regulus.contains(m))
        .map(|m| lines[m].clone())
        .chain(opposite)
        .collect();
    out.sort();
    Ok(out)
}

/// One polar-space piece: totally isotropic lines of `beta` inside
/// `carrier`, optionally required to meet `apex`.
#[derive(Debug, Clone)]
pub struct PolarComponent {
    pub beta: BilinearAltForm,
    pub carrier: Subspace,
    pub apex: Option<Subspace>,
}

impl PolarComponent {
    pub fn expected_lines(&self) -> Vec<Line> {
        let p = self.beta.field().characteristic();
        self.carrier
            .lines()
            .into_iter()
            .filter(|l| {
                let [x, y] = l.basis();
                self.beta.evaluate_residues(x, y) == 0
            })
            .filter(|l| match &self.apex {
                None => true,
                Some(a) => l.points(p).iter().any(|v| a.contains(v)),
            })
            .collect()
    }
}

/// The line set of `g` equals the union of the components' line sets.
pub fn polar_space_check(g: &IncidenceStructure, components: &[PolarComponent]) -> Result<Verdict> {
    for c in components {
        if c.beta.n() != g.n() || c.carrier.n() != g.n() {
            return Err(Error::Arity {
                expected: g.n(),
                got: c.carrier.n(),
            });
        }
        if c.beta.field() != g.field() {
            return Err(Error::FieldMismatch(g.field(), c.beta.field()));
        }
    }
    let expected: BTreeSet<Line> = components.iter().flat_map(|c| c.expected_lines()).collect();
    let actual = g.line_set();
    let missing: Vec<String> = expected
        .difference(&actual)
        .take(3)
        .map(|l| format!("expected but absent: {}", fmt_line(l)))
        .collect();
    let extra: Vec<String> = actual
        .difference(&expected)
        .take(3)
        .map(|l| format!("present but not expected: {}", fmt_line(l)))
        .collect();
    let witnesses: Vec<String> = missing.into_iter().chain(extra).collect();
    Ok(g
        .verdict("polar", witnesses.is_empty(), witnesses)
        .with("expected_lines", json!(expected.len()))
        .with("lines", json!(actual.len())))
}

/// The polar-space description attached to T5, T6 and T8 in dimension 7.
pub fn polar_components(tag: CatalogTag, field: FieldSpec) -> Result<Vec<PolarComponent>> {
    let p = field.characteristic();
    if !field.is_finite() {
        return Err(Error::InfiniteField(field));
    }
    let n = 7;
    let beta = |s: &str| BilinearAltForm::parse_digits(s, n, field);
    let zeros = |c: &[usize]| Subspace::coordinate_zeros(n, p, c);
    Ok(match tag {
        CatalogTag::T5 => vec![
            PolarComponent {
                beta: beta("23+47+56")?,
                carrier: zeros(&[0]),
                apex: Some(zeros(&[0, 3, 4, 5])),
            },
            PolarComponent {
                beta: beta("17+23+56")?,
                carrier: zeros(&[3]),
                apex: Some(zeros(&[0, 1, 2, 3])),
            },
        ],
        CatalogTag::T6 => vec![PolarComponent {
            beta: beta("25+36+47")?,
            carrier: zeros(&[0]),
            apex: Some(zeros(&[0, 1, 2, 3])),
        }],
        CatalogTag::T8 => vec![PolarComponent {
            beta: beta("23+45+67")?,
            carrier: zeros(&[0]),
            apex: None,
        }],
        _ => return Err(Error::WrongFormType { expected: "T5, T6 or T8" }),
    })
}

fn guard(g: &IncidenceStructure, tag: CatalogTag, n: usize, expected: &'static str) -> Result<()> {
    let want = catalog_terms(tag, None, n, g.field())?;
    if g.form != want {
        return Err(Error::WrongFormType { expected });
    }
    Ok(())
}

/// Cone with vertex plane A = {u4..u7 = 0} over the hyperbolic quadric
/// `u5 u7 + u4 u6 = 0`, conic `u1^2 - u2 u3` in A, and the planes `π_p`.
pub fn cone_structure_check(g: &IncidenceStructure) -> Result<Verdict> {
    guard(g, CatalogTag::T7, 7, "T7")?;
    let p = g.p();
    let rf = ResidueForm::new(&g.form)?;
    let vertex = Subspace::coordinate_zeros(7, p, &[3, 4, 5, 6]);
    let is_conic = |v: &[u64]| vertex.contains(v) && (v[0] * v[0] % p + p - v[1] * v[2] % p) % p == 0;
    let mut w = Vec::new();

    // (a) poles are the zeros of u5 u7 + u4 u6
    let before = w.len();
    for rec in &g.report.records {
        let q = (rec.point[4] * rec.point[6] + rec.point[3] * rec.point[5]) % p;
        if (q == 0) != (rec.degree >= 1) {
            w.push(format!("(a) {} has degree {}", fmt_point(&rec.point), rec.degree));
            break;
        }
    }
    let a_ok = w.len() == before;
    // (b) degree-4 points are the conic points
    let before = w.len();
    let conic: Vec<&Point> = g.points.iter().filter(|v| is_conic(v)).collect();
    for rec in &g.report.records {
        if (rec.degree == 4) != is_conic(&rec.point) {
            w.push(format!("(b) {} has degree {}", fmt_point(&rec.point), rec.degree));
            break;
        }
    }
    let b_ok = w.len() == before;
    let lines = g.line_set();
    let all_lines_in = |s: &Subspace| s.lines().iter().all(|l| lines.contains(l));
    let has_conic_point = |s: &Subspace| conic.iter().any(|c| s.contains(c));
    let admissible = |s: &Subspace| has_conic_point(s) && all_lines_in(s);
    let mut parts = BTreeMap::new();
    parts.insert("a", a_ok);
    parts.insert("b", b_ok);

    // (d) off the vertex: degree 2, and π_p passes through a conic point
    let mut planes: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    let mut d_ok = true;
    for v in &g.points {
        if vertex.contains(v) {
            continue;
        }
        let (deg, rad) = rf.radical(v);
        let plane = Subspace::span(7, p, &rad);
        if deg != 2 || !has_conic_point(&plane) {
            w.push(format!("(d) pole {} (degree {deg})", fmt_point(v)));
            d_ok = false;
            break;
        }
        planes.insert(plane.basis().to_vec());
    }
    parts.insert("d", d_ok);
    let candidates: Vec<Subspace> = planes
        .into_iter()
        .map(|b| Subspace::span(7, p, &b))
        .chain([vertex.clone()])
        .filter(|s| admissible(s))
        .collect();

    // (c) every line lies in some plane with all lines in R↑ and a conic point;
    // candidates first, then every plane through the line
    let exhaustive = p <= 3;
    let mut c_good = 0usize;
    let mut c_checked = 0usize;
    for l in &g.lines {
        c_checked += 1;
        let ok = candidates.iter().any(|s| s.contains_line(l)) || {
            let [a, b] = l.basis();
            let mut seen = Subspace::span(7, p, &[a.clone(), b.clone()]);
            let mut found = false;
            for z in g.space.points() {
                if seen.contains(&z) {
                    continue;
                }
                let plane = Subspace::span(7, p, &[a.clone(), b.clone(), z]);
                if admissible(&plane) {
                    found = true;
                    break;
                }
                seen = seen.join(&plane);
                if seen.dim() == 7 {
                    break;
                }
            }
            found
        };
        if ok {
            c_good += 1;
        } else if c_good + 1 == c_checked {
            // first failure only
            w.push(format!(
                "(c) line {} lies in no plane whose lines are all in R↑ and which meets the conic",
                fmt_line(l)
            ));
        }
        if !ok && !exhaustive {
            break;
        }
    }
    parts.insert("c", c_good == g.lines.len());
    let q = p;
    let expected_cone = (q * q + q + 1) + (q + 1) * (q + 1) * q * q * q;
    if g.points.len() as u64 != expected_cone {
        w.push(format!(
            "cone size {} differs from {expected_cone}",
            g.points.len()
        ));
    }
    Ok(g
        .verdict("cone", w.is_empty(), w)
        .with("poles", json!(g.points.len()))
        .with("conic_points", json!(conic.len()))
        .with("admissible_planes", json!(candidates.len()))
        .with("lines", json!(g.lines.len()))
        .with("lines_in_admissible_plane", json!(c_good))
        .with("lines_examined", json!(c_checked))
        .with("parts", json!(parts))
        .with("expected_cone_size", json!(expected_cone)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HexagonReport {
    pub points: usize,
    pub lines: usize,
    pub points_per_line: Option<usize>,
    pub lines_per_point: Option<usize>,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub pass: bool,
}

impl HexagonReport {
    pub fn tuple(&self) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.points,
            self.lines,
            self.points_per_line.unwrap_or(0),
            self.lines_per_point.unwrap_or(0),
            self.girth.unwrap_or(0),
            self.diameter.unwrap_or(0),
        )
    }
}

fn uniform<I: Iterator<Item = usize>>(mut it: I) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

/// Girth and diameter of a graph by breadth-first search from every vertex,
/// 64 sources at a time. Girth is `None` for forests, diameter `None` when
/// the graph is disconnected. The graph must be bipartite.
pub fn bipartite_girth_and_diameter(adj: &[Vec<u32>]) -> (Option<usize>, Option<usize>) {
    let v = adj.len();
    let mut girth: Option<usize> = None;
    let mut diameter = 0usize;
    let mut connected = true;
    let mut frontier = vec![0u64; v];
    let mut visited = vec![0u64; v];
    let mut next = vec![0u64; v];
    for base in (0..v).step_by(64) {
        let batch = (v - base).min(64);
        let full = if batch == 64 { u64::MAX } else { (1u64 << batch) - 1 };
        frontier.iter_mut().for_each(|x| *x = 0);
        visited.iter_mut().for_each(|x| *x = 0);
        for s in 0..batch {
            frontier[base + s] = 1 << s;
            visited[base + s] = 1 << s;
        }
        let mut level = 0;
        loop {
            level += 1;
            let mut any = false;
            for (u, nbrs) in adj.iter().enumerate() {
                let mut once = 0u64;
                let mut twice = 0u64;
                for &w in nbrs {
                    let f = frontier[w as usize];
                    twice |= once & f;
                    once |= f;
                }
                let fresh = once & !visited[u];
                next[u] = fresh;
                if fresh != 0 {
                    any = true;
                    if twice & fresh != 0 && girth.map_or(true, |g| 2 * level < g) {
                        girth = Some(2 * level);
                    }
                }
            }
            if !any {
                break;
            }
            diameter = diameter.max(level);
            for u in 0..v {
                visited[u] |= next[u];
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        if visited.iter().any(|&x| x & full != full) {
            connected = false;
        }
    }
    (girth, connected.then_some(diameter))
}

/// Incidence-graph statistics for forms `μ·T9`.
pub fn hexagon_check(g: &IncidenceStructure) -> Result<HexagonReport> {
    let t9 = catalog_terms(CatalogTag::T9, None, 7, g.field())?;
    let mu = g.form.coefficient(0, 1, 2);
    if g.n() != 7 || mu.is_zero() || t9.scale(&mu)? != g.form {
        return Err(Error::WrongFormType {
            expected: "T9 or T12",
        });
    }
    let np = g.points.len();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); np + g.lines.len()];
    for (li, pts) in g.line_points.iter().enumerate() {
        for &pi in pts {
            adj[pi as usize].push((np + li) as u32);
            adj[np + li].push(pi);
        }
    }
    let (girth, diameter) = bipartite_girth_and_diameter(&adj);
    let q = g.p() as usize;
    let order = (q.pow(6) - 1) / (q - 1);
    let ppl = uniform(g.line_points.iter().map(Vec::len));
    let lpp = uniform(g.point_lines.iter().map(Vec::len));
    let pass = np == order
        && g.lines.len() == order
        && ppl == Some(q + 1)
        && lpp == Some(q + 1)
        && girth == Some(12)
        && diameter == Some(6);
    Ok(HexagonReport {
        points: np,
        lines: g.lines.len(),
        points_per_line: ppl,
        lines_per_point: lpp,
        girth,
        diameter,
        pass,
    })
}

fn omega(v: &[u64]) -> Vec<u64> {
    vec![v[3], v[4], v[5], v[0], v[1], v[2]]
}

/// T4 in dimension 6: R↑ = {[a+b, ω(a)] : a ∈ V0, b ∈ V1} ∪ lines of V1,
/// degree 3 exactly on V1 and 1 elsewhere.
pub fn t4_lines_check(g: &IncidenceStructure) -> Result<Verdict> {
    guard(g, CatalogTag::T4, 6, "T4")?;
    let p = g.p();
    let v0 = Subspace::coordinate_zeros(6, p, &[3, 4, 5]);
    let v1 = Subspace::coordinate_zeros(6, p, &[0, 1, 2]);
    let mut expected: BTreeSet<Line> = v1.lines().into_iter().collect();
    let cube = p.pow(3);
    for a in v0.points() {
        for code in 0..cube {
            let mut b = vec![0u64; 6];
            let mut c = code;
            for slot in b.iter_mut().skip(3) {
                *slot = c % p;
                c /= p;
            }
            let x: Vec<u64> = a.iter().zip(&b).map(|(s, t)| (s + t) % p).collect();
            expected.insert(Line::through(&x, &omega(&a), p)?);
        }
    }
    let actual = g.line_set();
    let mut w: Vec<String> = expected
        .symmetric_difference(&actual)
        .take(3)
        .map(|l| format!("line set differs at {}", fmt_line(l)))
        .collect();
    for rec in &g.report.records {
        let want = if v1.contains(&rec.point) { 3 } else { 1 };
        if rec.degree != want {
            w.push(format!(
                "{} has degree {} instead of {want}",
                fmt_point(&rec.point),
                rec.degree
            ));
            break;
        }
    }
    Ok(g
        .verdict("t4-lines", w.is_empty(), w)
        .with("lines", json!(actual.len()))
        .with("expected_lines", json!(expected.len())))
}

/// T11 in dimension 7: poles = {u1 = u4 = 0}, [e7] the only degree-4 point,
/// the planes π_p through e7 partition the remaining poles and carry R↑.
pub fn t11_structure_check(g: &IncidenceStructure) -> Result<Verdict> {
    let f = g.field();
    let lambda = g.form.coefficient(0, 4, 5);
    let ok = g.n() == 7
        && [CatalogTag::T11_1, CatalogTag::T11_2].iter().any(|&t| {
            catalog_terms(t, Some(&lambda), 7, f).is_ok_and(|want| want == g.form)
        });
    if !ok {
        return Err(Error::WrongFormType { expected: "T11" });
    }
    let p = g.p();
    let rf = ResidueForm::new(&g.form)?;
    let s = Subspace::coordinate_zeros(7, p, &[0, 3]);
    let e7 = vec![0, 0, 0, 0, 0, 0, 1];
    let mut w = Vec::new();
    for rec in &g.report.records {
        let want = if rec.point == e7 {
            4
        } else if s.contains(&rec.point) {
            2
        } else {
            0
        };
        if rec.degree != want {
            w.push(format!(
                "{} has degree {} instead of {want}",
                fmt_point(&rec.point),
                rec.degree
            ));
            break;
        }
    }
    let mut planes: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    for v in &g.points {
        if *v == e7 {
            continue;
        }
        let (_, rad) = rf.radical(v);
        let plane = Subspace::span(7, p, &rad);
        if plane.dim() != 3 || !plane.contains(&e7) {
            w.push(format!("π_p for {} is not a plane through e7", fmt_point(v)));
            break;
        }
        planes.insert(plane.basis().to_vec());
    }
    let planes: Vec<Subspace> = planes.into_iter().map(|b| Subspace::span(7, p, &b)).collect();
    // spread of the residue at e7: pairwise meeting only in e7, covering S
    for (i, a) in planes.iter().enumerate() {
        for b in &planes[i + 1..] {
            if a.intersect(b).dim() != 1 {
                w.push("two planes π_p share a line".into());
                break;
            }
        }
    }
    let want_planes = (p * p + 1) as usize;
    if planes.len() != want_planes {
        w.push(format!("{} planes, expected {want_planes}", planes.len()));
    }
    let expected: BTreeSet<Line> = planes.iter().flat_map(|s| s.lines()).collect();
    let actual = g.line_set();
    if let Some(l) = expected.symmetric_difference(&actual).next() {
        w.push(format!("line set differs at {}", fmt_line(l)));
    }
    Ok(g
        .verdict("t11-planes", w.is_empty(), w)
        .with("planes", json!(planes.len()))
        .with("poles", json!(g.points.len())))
}

/// Counting invariants of the geometry of poles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeometryFingerprint {
    pub rank: usize,
    pub pole_count: u64,
    pub degree_histogram: BTreeMap<usize, u64>,
    pub line_count: u64,
    /// Poles on exactly `k` upper-radical lines, keyed by `k`.
    pub lines_per_point: BTreeMap<usize, u64>,
    /// Largest degree among verified pole-variety candidates (odd `n`).
    pub variety_degree: Option<u32>,
}

pub fn fingerprint(h: &TriForm, opts: &EnumOptions) -> Result<GeometryFingerprint> {
    let g = build_geometry(h, opts)?;
    let mut lpp = BTreeMap::new();
    for pl in &g.point_lines {
        *lpp.entry(pl.len()).or_insert(0) += 1;
    }
    let variety_degree = if h.n() % 2 == 1 {
        let vo = VarietyOptions {
            enumeration: *opts,
            ..Default::default()
        };
        variety_candidates(h, &vo)?
            .iter()
            .filter(|c| c.verified())
            .filter_map(|c| c.g.degree())
            .max()
    } else {
        None
    };
    Ok(GeometryFingerprint {
        rank: h.rank()?,
        pole_count: g.report.pole_count(),
        degree_histogram: g.report.histogram.clone(),
        line_count: g.lines.len() as u64,
        lines_per_point: lpp,
        variety_degree,
    })
}
