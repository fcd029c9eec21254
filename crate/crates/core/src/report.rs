//! Serializable reports. Field order is fixed and maps are ordered, so the
//! same input always renders to the same bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::geomcheck::{
    cone_structure_check, fmt_point, hexagon_check, normal_spread_check, polar_components,
    polar_space_check, spread_check, t11_structure_check, t4_lines_check, IncidenceStructure,
    Verdict,
};
use crate::poles::{
    enumerate_poles, pole_variety, upper_radical_from_report, EnumOptions, VarietyOptions,
    VarietyOutcome, ZeroSetCheck,
};
use crate::triform::{CatalogTag, TriForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleJson {
    pub point: Vec<u64>,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineJson {
    pub basis: [Vec<u64>; 2],
    pub plucker: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyJson {
    /// 1-based index of the deleted row; `None` when every point is a pole.
    pub i: Option<usize>,
    /// Equation of the pole set; "0" when every point is a pole.
    pub g: String,
    pub verified: bool,
    pub checks: Vec<ZeroSetCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolesJson {
    pub form: String,
    pub field: String,
    pub n: usize,
    pub poles: Vec<PoleJson>,
    pub histogram: BTreeMap<usize, u64>,
    pub upper_radical: Vec<LineJson>,
    pub variety: Option<VarietyJson>,
}

pub fn variety_json(outcome: &VarietyOutcome) -> VarietyJson {
    match outcome {
        VarietyOutcome::AllPoints { checks, .. } => VarietyJson {
            i: None,
            g: "0".into(),
            verified: checks.iter().all(ZeroSetCheck::passed),
            checks: checks.clone(),
        },
        VarietyOutcome::Equation(c) => VarietyJson {
            i: Some(c.index + 1),
            g: c.g.to_string(),
            verified: c.verified(),
            checks: c.checks.clone(),
        },
    }
}

/// Poles, upper radical and (optionally) the pole variety over GF(p).
pub fn poles_report(
    h: &TriForm,
    opts: &EnumOptions,
    lines: bool,
    variety: Option<&VarietyOptions>,
) -> Result<PolesJson> {
    let report = enumerate_poles(h, opts)?;
    let p = report.space().p();
    let upper_radical = if lines {
        upper_radical_from_report(h, &report, opts.parallel)?
            .into_iter()
            .map(|l| LineJson {
                plucker: l.plucker(p),
                basis: l.basis().clone(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let variety = match variety {
        Some(vo) => Some(variety_json(&pole_variety(h, vo)?)),
        None => None,
    };
    Ok(PolesJson {
        form: h.to_string(),
        field: h.field().to_string(),
        n: h.n(),
        poles: report
            .poles()
            .map(|r| PoleJson {
                point: r.point.clone(),
                degree: r.degree,
            })
            .collect(),
        histogram: report.histogram.clone(),
        upper_radical,
        variety,
    })
}

/// Names accepted by [`run_check`].
pub const CHECKS: &[&str] = &[
    "lines-on-poles",
    "spread",
    "normal-spread",
    "polar",
    "cone",
    "hexagon",
    "t4-lines",
    "t11-planes",
];

/// Runs a named geometry check. `tag` selects the polar-space preset.
pub fn run_check(g: &IncidenceStructure, check: &str, tag: Option<CatalogTag>) -> Result<Verdict> {
    Ok(match check {
        "lines-on-poles" => g.lines_on_poles_check(),
        "spread" => {
            let s = spread_check(g);
            g.verdict("spread", s.is_spread, s.witness.into_iter().collect())
                .with("cover_histogram", json!(s.cover_histogram))
                .with("lines", json!(g.lines.len()))
        }
        "normal-spread" => match normal_spread_check(g) {
            Ok(r) => g
                .verdict("normal-spread", r.normal, r.witness.into_iter().collect())
                .with("pairs", json!(r.pairs))
                .with("spans", json!(r.spans)),
            Err(e) => {
                let s = spread_check(g);
                g.verdict(
                    "normal-spread",
                    false,
                    vec![e.to_string()].into_iter().chain(s.witness).collect(),
                )
            }
        },
        "polar" => {
            let tag = tag.ok_or_else(|| {
                crate::Error::Precondition("the polar check needs a catalog tag (T5, T6 or T8)".into())
            })?;
            polar_space_check(g, &polar_components(tag, g.field())?)?
        }
        "cone" => cone_structure_check(g)?,
        "hexagon" => {
            let r = hexagon_check(g)?;
            let q = g.p() as usize;
            let order = (q.pow(6) - 1) / (q - 1);
            let mut w = Vec::new();
            let want = [
                ("points", Some(r.points), Some(order)),
                ("lines", Some(r.lines), Some(order)),
                ("points per line", r.points_per_line, Some(q + 1)),
                ("lines per point", r.lines_per_point, Some(q + 1)),
                ("girth", r.girth, Some(12)),
                ("diameter", r.diameter, Some(6)),
            ];
            for (name, got, exp) in want {
                if got != exp {
                    w.push(format!("{name}: {got:?}, expected {exp:?}"));
                }
            }
            g.verdict("hexagon", r.pass, w).with("stats", json!(r))
        }
        "t4-lines" => t4_lines_check(g)?,
        "t11-planes" => t11_structure_check(g)?,
        other => {
            return Err(crate::Error::Precondition(format!(
                "unknown check {other:?}; expected one of {}",
                CHECKS.join(", ")
            )))
        }
    })
}

/// One line per pole: `point degree`.
pub fn poles_text(r: &PolesJson) -> String {
    let mut out = format!("form: {}\nfield: {}\nn: {}\n", r.form, r.field, r.n);
    out.push_str("histogram:");
    for (d, c) in &r.histogram {
        out.push_str(&format!(" {d}:{c}"));
    }
    out.push('\n');
    out.push_str(&format!("poles: {}\n", r.poles.len()));
    for p in &r.poles {
        out.push_str(&format!("  {} {}\n", fmt_point(&p.point), p.degree));
    }
    if !r.upper_radical.is_empty() {
        out.push_str(&format!("upper radical: {} lines\n", r.upper_radical.len()));
        for l in &r.upper_radical {
            out.push_str(&format!(
                "  [{}, {}]\n",
                fmt_point(&l.basis[0]),
                fmt_point(&l.basis[1])
            ));
        }
    }
    if let Some(v) = &r.variety {
        out.push_str(&format!(
            "variety: i={} g={} verified={}\n",
            v.i.map_or("-".into(), |i| i.to_string()),
            v.g,
            v.verified
        ));
    }
    out
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = format!(
        "{} {} over {}: {}\n",
        v.check,
        v.form,
        v.field,
        if v.pass { "pass" } else { "FAIL" }
    );
    for (k, val) in &v.details {
        out.push_str(&format!("  {k}: {val}\n"));
    }
    for w in &v.witnesses {
        out.push_str(&format!("  witness: {w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::geomcheck::build_geometry;
    use crate::triform::catalog_terms;

    #[test]
    fn poles_json_shape() {
        let f = FieldSpec::prime(2).unwrap();
        let h = catalog_terms(CatalogTag::T9, None, 7, f).unwrap();
        let r = poles_report(&h, &EnumOptions::default(), true, Some(&VarietyOptions::default())).unwrap();
        assert_eq!(r.poles.len(), 63);
        assert_eq!(r.histogram[&2], 63);
        assert_eq!(r.upper_radical.len(), 63);
        assert!(r.variety.as_ref().unwrap().verified);
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with("{\"form\":"));
        assert_eq!(text, serde_json::to_string(&poles_report(&h, &EnumOptions::serial(), true, Some(&VarietyOptions::default())).unwrap()).unwrap());
    }

    #[test]
    fn even_dimension_variety_is_zero() {
        let f = FieldSpec::prime(2).unwrap();
        let h = catalog_terms(CatalogTag::T3, None, 6, f).unwrap();
        let r = poles_report(&h, &EnumOptions::default(), false, Some(&VarietyOptions::default())).unwrap();
        let v = r.variety.unwrap();
        assert_eq!((v.i, v.g.as_str()), (None, "0"));
        assert!(r.upper_radical.is_empty());
    }

    #[test]
    fn named_checks() {
        let f = FieldSpec::prime(2).unwrap();
        let h = catalog_terms(CatalogTag::T3, None, 6, f).unwrap();
        let g = build_geometry(&h, &EnumOptions::default()).unwrap();
        let v = run_check(&g, "spread", None).unwrap();
        assert!(!v.pass);
        assert!(!v.witnesses.is_empty());
        let v = run_check(&g, "normal-spread", None).unwrap();
        assert!(!v.pass && !v.witnesses.is_empty());
        assert!(run_check(&g, "hexagon", None).is_err());
        assert!(run_check(&g, "polar", None).is_err());
        assert!(run_check(&g, "nope", None).is_err());
        assert!(run_check(&g, "lines-on-poles", None).unwrap().pass);
        let j = serde_json::to_value(run_check(&g, "spread", None).unwrap()).unwrap();
        for k in ["check", "form", "field", "pass", "witnesses"] {
            assert!(j.get(k).is_some());
        }
    }
}
