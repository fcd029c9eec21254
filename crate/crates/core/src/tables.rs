//! Reference tables of contraction matrices, upper-radical equation systems
//! and pole equations for the catalog forms, with a diff against what the
//! library computes.
//!
//! Transcriptions use `u1..un` / `x1..xn` for coordinates, `w{j}{k}` for the
//! Plücker coordinate `x_j y_k - x_k y_j`, and `l` for the parameter.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::multipoly::MultiPoly;
use crate::poles::{pole_variety, symbolic_matrix, upper_radical_system, VarietyOptions, VarietyOutcome};
use crate::skewlinalg::ScalarMatrix;
use crate::triform::{catalog_terms, pair_index, CatalogTag};

use CatalogTag::*;

pub struct MatrixRow {
    pub tag: CatalogTag,
    pub rows: &'static [&'static str],
}

pub struct SystemRow {
    pub tag: CatalogTag,
    /// `None` when every point is a pole.
    pub poles: Option<&'static str>,
    pub equations: &'static [&'static str],
}

pub const MATRICES_SMALL: &[MatrixRow] = &[
    MatrixRow {
        tag: T1,
        rows: &["0, u3, -u2", "-u3, 0, u1", "u2, -u1, 0"],
    },
    MatrixRow {
        tag: T2,
        rows: &[
            "0, u3, -u2, u5, -u4",
            "-u3, 0, u1, 0, 0",
            "u2, -u1, 0, 0, 0",
            "-u5, 0, 0, 0, u1",
            "u4, 0, 0, -u1, 0",
        ],
    },
    MatrixRow {
        tag: T3,
        rows: &[
            "0, u3, -u2, 0, 0, 0",
            "-u3, 0, u1, 0, 0, 0",
            "u2, -u1, 0, 0, 0, 0",
            "0, 0, 0, 0, u6, -u5",
            "0, 0, 0, -u6, 0, u4",
            "0, 0, 0, u5, -u4, 0",
        ],
    },
    MatrixRow {
        tag: T4,
        rows: &[
            "0, -u6, u5, 0, -u3, u2",
            "u6, 0, -u4, u3, 0, -u1",
            "-u5, u4, 0, -u2, u1, 0",
            "0, -u3, u2, 0, 0, 0",
            "u3, 0, -u1, 0, 0, 0",
            "-u2, u1, 0, 0, 0, 0",
        ],
    },
    MatrixRow {
        tag: T10_1,
        rows: &[
            "0, u3, -u2, 0, l*u6, -l*u5",
            "-u3, 0, u1, -l*u6, 0, l*u4",
            "u2, -u1, 0, l*u5, -l*u4, 0",
            "0, l*u6, -l*u5, 0, l*u3, -l*u2",
            "-l*u6, 0, l*u4, -l*u3, 0, l*u1",
            "l*u5, -l*u4, 0, l*u2, -l*u1, 0",
        ],
    },
    MatrixRow {
        tag: T10_2,
        rows: &[
            "0, u6, -u5, 0, l*u6+u3, -l*u5-u2",
            "-u6, 0, u4, -l*u6-u3, 0, l*u4+u1",
            "u5, -u4, 0, l*u5+u2, -l*u4-u1, 0",
            "0, l*u6+u3, -l*u5-u2, 0, (l^2+1)*u6+l*u3, (-l^2-1)*u5-l*u2",
            "-l*u6-u3, 0, l*u4+u1, -(l^2+1)*u6-l*u3, 0, (l^2+1)*u4+l*u1",
            "l*u5+u2, -l*u4-u1, 0, (l^2+1)*u5+l*u2, -(l^2+1)*u4-l*u1, 0",
        ],
    },
];

pub const MATRICES_7: &[MatrixRow] = &[
    MatrixRow {
        tag: T5,
        rows: &[
            "0, u3, -u2, u7, 0, 0, -u4",
            "-u3, 0, u1, 0, 0, 0, 0",
            "u2, -u1, 0, 0, 0, 0, 0",
            "-u7, 0, 0, 0, u6, -u5, u1",
            "0, 0, 0, -u6, 0, u4, 0",
            "0, 0, 0, u5, -u4, 0, 0",
            "u4, 0, 0, -u1, 0, 0, 0",
        ],
    },
    MatrixRow {
        tag: T6,
        rows: &[
            "0, -u5, -u6, -u7, u2, u3, u4",
            "u5, 0, -u4, u3, -u1, 0, 0",
            "u6, u4, 0, -u2, 0, -u1, 0",
            "u7, -u3, u2, 0, 0, 0, -u1",
            "-u2, u1, 0, 0, 0, 0, 0",
            "-u3, 0, u1, 0, 0, 0, 0",
            "-u4, 0, 0, u1, 0, 0, 0",
        ],
    },
    MatrixRow {
        tag: T7,
        rows: &[
            "0, 0, 0, u6, u7, -u4, -u5",
            "0, 0, 0, u5, -u4, 0, 0",
            "0, 0, 0, 0, 0, u7, -u6",
            "-u6, -u5, 0, 0, u2, u1, 0",
            "-u7, u4, 0, -u2, 0, 0, u1",
            "u4, 0, -u7, -u1, 0, 0, u3",
            "u5, 0, u6, 0, -u1, -u3, 0",
        ],
    },
    MatrixRow {
        tag: T8,
        rows: &[
            "0, u3, -u2, u5, -u4, u7, -u6",
            "-u3, 0, u1, 0, 0, 0, 0",
            "u2, -u1, 0, 0, 0, 0, 0",
            "-u5, 0, 0, 0, u1, 0, 0",
            "u4, 0, 0, -u1, 0, 0, 0",
            "-u7, 0, 0, 0, 0, 0, u1",
            "u6, 0, 0, 0, 0, -u1, 0",
        ],
    },
    MatrixRow {
        tag: T9,
        rows: &[
            "0, u3, -u2, u7, 0, 0, -u4",
            "-u3, 0, u1, 0, u7, 0, -u5",
            "u2, -u1, 0, 0, 0, u7, -u6",
            "-u7, 0, 0, 0, u6, -u5, u1",
            "0, -u7, 0, -u6, 0, u4, u2",
            "0, 0, -u7, u5, -u4, 0, u3",
            "u4, u5, u6, -u1, -u2, -u3, 0",
        ],
    },
    MatrixRow {
        tag: T11_1,
        rows: &[
            "0, u3, -u2, u7, l*u6, -l*u5, -u4",
            "-u3, 0, u1, -l*u6, 0, l*u4, 0",
            "u2, -u1, 0, l*u5, -l*u4, 0, 0",
            "-u7, l*u6, -l*u5, 0, l*u3, -l*u2, u1",
            "-l*u6, 0, l*u4, -l*u3, 0, l*u1, 0",
            "l*u5, -l*u4, 0, l*u2, -l*u1, 0, 0",
            "u4, 0, 0, -u1, 0, 0, 0",
        ],
    },
    MatrixRow {
        tag: T11_2,
        rows: &[
            "0, u6, -u5, u7, l*u6+u3, -l*u5-u2, -u4",
            "-u6, 0, u4, -l*u6-u3, 0, l*u4+u1, 0",
            "u5, -u4, 0, l*u5+u2, -l*u4-u1, 0, 0",
            "-u7, l*u6+u3, -l*u5-u2, 0, (l^2+1)*u6+l*u3, (-l^2-1)*u5-l*u2, u1",
            "-l*u6-u3, 0, l*u4+u1, -(l^2+1)*u6-l*u3, 0, (l^2+1)*u4+l*u1, 0",
            "l*u5+u2, -l*u4-u1, 0, (l^2+1)*u5+l*u2, -(l^2+1)*u4-l*u1, 0, 0",
            "u4, 0, 0, -u1, 0, 0, 0",
        ],
    },
];

/// Dimension 6.
pub const SYSTEMS_6: &[SystemRow] = &[
    SystemRow {
        tag: T1,
        poles: None,
        equations: &["w12", "w13", "w23"],
    },
    SystemRow {
        tag: T2,
        poles: None,
        equations: &["w12", "w13", "w15", "w14", "w23+w45"],
    },
    SystemRow {
        tag: T3,
        poles: None,
        equations: &["w12", "w13", "w23", "w45", "w46", "w56"],
    },
    SystemRow {
        tag: T4,
        poles: None,
        equations: &["w26-w35", "w16-w34", "w24-w15", "w23", "w13", "w12"],
    },
    SystemRow {
        tag: T10_1,
        poles: None,
        equations: &[
            "w23+l*w56",
            "w26-w35",
            "w13+l*w46",
            "w16-w34",
            "w12+l*w45",
            "w15-w24",
        ],
    },
    SystemRow {
        tag: T10_2,
        poles: None,
        equations: &[
            "w26-w35+l*w56",
            "-w16+w34-l*w46",
            "w15-w24+l*w45",
            "w23+l*w26-l*w35+(l^2+1)*w56",
            "-w13-l*w16+l*w34-(1+l^2)*w46",
            "w12+l*w15-l*w24+(1+l^2)*w45",
        ],
    },
];

/// Dimension 7.
pub const SYSTEMS_7: &[SystemRow] = &[
    SystemRow {
        tag: T5,
        poles: Some("x1*x4"),
        equations: &["w23+w47", "w13", "w12", "w56-w17", "w14", "w45", "w46"],
    },
    SystemRow {
        tag: T6,
        poles: Some("x1^2"),
        equations: &["w25+w36+w47", "w14", "w15-w34", "w16+w24", "w17-w23", "w12", "w13"],
    },
    SystemRow {
        tag: T7,
        poles: Some("x5*x7+x4*x6"),
        equations: &["w46+w57", "w45", "w67", "w16+w25", "w24-w17", "w14-w37", "w15+w36"],
    },
    SystemRow {
        tag: T8,
        poles: Some("x1^2"),
        equations: &["w23+w45+w67", "w13", "w12", "w14", "w15", "w16", "w17"],
    },
    SystemRow {
        tag: T9,
        poles: Some("x7^2-x3*x6-x2*x5-x1*x4"),
        equations: &[
            "w23+w47",
            "w57-w13",
            "w12+w67",
            "w56-w17",
            "w27+w46",
            "w45-w37",
            "w14+w25+w36",
        ],
    },
    SystemRow {
        tag: T11_1,
        poles: Some("l*x4^2-x1^2"),
        equations: &[
            "w13+l*w46",
            "w12+l*w45",
            "w23+w47+l*w56",
            "w14",
            "-w17+l*(w26-w35)",
            "w15-w24",
            "w16-w34",
        ],
    },
    SystemRow {
        tag: T11_2,
        poles: Some("x4^2+l*x1*x4+x1^2"),
        equations: &[
            "w26-w35+w47+l*w56",
            "w16-w34+l*w46",
            "w14",
            "w15-w24+l*w45",
            "w17-w23-l*(w26-w35)-(l^2+1)*w56",
            "w13+l*(w16-w34)+(l^2+1)*w46",
            "w12+l*w15-l*w24+(l^2+1)*w45",
        ],
    },
];

/// Parameter values substituted for `l` when checking parametrised rows.
pub const DEFAULT_LAMBDAS: &[i64] = &[2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub table: Fixture,
    pub tag: String,
    pub param: Option<String>,
    pub cell: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub table: Fixture,
    pub rows: usize,
    pub comparisons: usize,
    pub diffs: Vec<TableDiff>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Parses a transcription with parameter `l` set to `param`.
/// `var` maps a coordinate name to its index below `nvars`.
fn parse_cell(
    s: &str,
    nvars: usize,
    field: FieldSpec,
    param: &Scalar,
    var: impl Fn(&str) -> Option<usize>,
) -> Result<MultiPoly> {
    let with_l = MultiPoly::parse_with(s, nvars + 1, field, |name| {
        if name == "l" {
            Some(nvars)
        } else {
            var(name)
        }
    })?;
    with_l.substitute(nvars, param).truncate_vars(nvars)
}

fn coord_var(n: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        let rest = name.strip_prefix('u').or_else(|| name.strip_prefix('x'))?;
        let i: usize = rest.parse().ok()?;
        (1..=n).contains(&i).then(|| i - 1)
    }
}

fn plucker_var(n: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        let d = name.strip_prefix('w')?.as_bytes();
        if d.len() != 2 {
            return None;
        }
        let (j, k) = ((d[0] - b'0') as usize, (d[1] - b'0') as usize);
        (1 <= j && j < k && k <= n).then(|| pair_index(n, j - 1, k - 1))
    }
}

/// Linear form in the Plücker coordinates, as a coefficient row.
pub fn parse_equation(s: &str, n: usize, field: FieldSpec, param: &Scalar) -> Result<Vec<Scalar>> {
    let m = n * (n - 1) / 2;
    let poly = parse_cell(s, m, field, param, plucker_var(n))?;
    let mut row = vec![field.zero(); m];
    for (mono, c) in poly.terms() {
        let e = mono.exponents();
        match (mono.degree(), e.iter().position(|&x| x == 1)) {
            (1, Some(i)) => row[i] = c.clone(),
            _ => {
                return Err(Error::Parse {
                    what: "equation",
                    detail: format!("{s:?} is not linear and homogeneous"),
                })
            }
        }
    }
    Ok(row)
}

fn params_for(tag: CatalogTag, field: FieldSpec, lambdas: &[i64]) -> Vec<Option<Scalar>> {
    if tag.needs_parameter() {
        lambdas.iter().map(|&v| Some(field.from_i64(v))).collect()
    } else {
        vec![None]
    }
}

fn row_span_equal(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: FieldSpec) -> Result<bool> {
    let ra = ScalarMatrix::from_rows(field, a.to_vec())?.rank();
    let rb = ScalarMatrix::from_rows(field, b.to_vec())?.rank();
    let both: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    let rab = ScalarMatrix::from_rows(field, both)?.rank();
    Ok(ra == rb && ra == rab)
}

fn matrix_table(which: Fixture, rows: &[MatrixRow], lambdas: &[i64]) -> Result<TableCheck> {
    let field = FieldSpec::rational();
    let mut diffs = Vec::new();
    let mut comparisons = 0;
    for row in rows {
        let n = row.rows.len();
        for param in params_for(row.tag, field, lambdas) {
            let one = field.one();
            let lam = param.as_ref().unwrap_or(&one);
            let h = catalog_terms(row.tag, param.as_ref(), n, field)?;
            let sym = symbolic_matrix(&h)?;
            for (j, line) in row.rows.iter().enumerate() {
                let cells: Vec<&str> = line.split(',').map(str::trim).collect();
                if cells.len() != n {
                    return Err(Error::Arity {
                        expected: n,
                        got: cells.len(),
                    });
                }
                for (k, cell) in cells.iter().enumerate() {
                    comparisons += 1;
                    let want = parse_cell(cell, n, field, lam, coord_var(n))?;
                    let got = sym.matrix.get(j, k);
                    if &want != got {
                        diffs.push(TableDiff {
                            table: which,
                            tag: row.tag.name().to_string(),
                            param: param.as_ref().map(ToString::to_string),
                            cell: format!("M[{},{}]", j + 1, k + 1),
                            expected: want.to_string(),
                            computed: got.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(TableCheck {
        table: which,
        rows: rows.len(),
        comparisons,
        diffs,
    })
}

fn pole_diff(which: Fixture, row: &SystemRow, n: usize, field: FieldSpec, param: Option<Scalar>) -> Result<Option<TableDiff>> {
    let one = field.one();
    let lam = param.as_ref().unwrap_or(&one);
    let h = catalog_terms(row.tag, param.as_ref(), n, field)?;
    let outcome = pole_variety(&h, &VarietyOptions::default())?;
    let (expected, computed) = match (row.poles, &outcome) {
        (None, VarietyOutcome::AllPoints { .. }) => return Ok(None),
        (Some(eq), VarietyOutcome::Equation(c)) => {
            let want = parse_cell(eq, n, field, lam, coord_var(n))?;
            if c.g.equal_up_to_scalar(&want).is_some() {
                return Ok(None);
            }
            (want.render("x"), c.g.render("x"))
        }
        (want, got) => (
            want.unwrap_or("PG(V)").to_string(),
            match got {
                VarietyOutcome::AllPoints { .. } => "PG(V)".to_string(),
                VarietyOutcome::Equation(c) => c.g.render("x"),
            },
        ),
    };
    Ok(Some(TableDiff {
        table: which,
        tag: row.tag.name().to_string(),
        param: param.as_ref().map(ToString::to_string),
        cell: format!("poles over {field}"),
        expected,
        computed,
    }))
}

fn system_table(which: Fixture, rows: &[SystemRow], n: usize, lambdas: &[i64]) -> Result<TableCheck> {
    let field = FieldSpec::rational();
    let mut diffs = Vec::new();
    let mut comparisons = 0;
    for row in rows {
        for param in params_for(row.tag, field, lambdas) {
            let one = field.one();
            let lam = param.as_ref().unwrap_or(&one);
            let h = catalog_terms(row.tag, param.as_ref(), n, field)?;
            comparisons += 1;
            let sys = upper_radical_system(&h)?;
            let table: Vec<Vec<Scalar>> = row
                .equations
                .iter()
                .map(|e| parse_equation(e, n, field, lam))
                .collect::<Result<_>>()?;
            if !row_span_equal(&sys.equations.to_rows(), &table, field)? {
                let computed: Vec<String> = sys
                    .reduced_equations()
                    .iter()
                    .map(|r| sys.render_row(r))
                    .collect();
                diffs.push(TableDiff {
                    table: which,
                    tag: row.tag.name().to_string(),
                    param: param.as_ref().map(ToString::to_string),
                    cell: "upper radical".into(),
                    expected: row.equations.join(", "),
                    computed: computed.join(", "),
                });
            }
        }
        // types that only exist in characteristic 2 have their pole
        // equation compared there, with the one admissible parameter
        let pole_checks: Vec<(FieldSpec, Option<Scalar>)> = match row.tag {
            T10_2 | T11_2 => {
                let f2 = FieldSpec::prime(2)?;
                vec![(f2, Some(f2.one()))]
            }
            _ => params_for(row.tag, field, lambdas)
                .into_iter()
                .map(|p| (field, p))
                .collect(),
        };
        for (f, param) in pole_checks {
            comparisons += 1;
            diffs.extend(pole_diff(which, row, n, f, param)?);
        }
    }
    Ok(TableCheck {
        table: which,
        rows: rows.len(),
        comparisons,
        diffs,
    })
}

/// One of the four reference fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fixture {
    /// Contraction matrices of the types of rank at most 6.
    MatricesSmall,
    /// Contraction matrices of the rank-7 types.
    Matrices7,
    /// Upper-radical systems and pole sets in dimension 6.
    Systems6,
    /// Upper-radical systems and pole equations in dimension 7.
    Systems7,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [
        Fixture::MatricesSmall,
        Fixture::Matrices7,
        Fixture::Systems6,
        Fixture::Systems7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::MatricesSmall => "matrices-small",
            Fixture::Matrices7 => "matrices-7",
            Fixture::Systems6 => "systems-6",
            Fixture::Systems7 => "systems-7",
        }
    }
}

impl std::fmt::Display for Fixture {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Fixture {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl std::str::FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Fixture::ALL.iter().map(|f| f.name()).collect();
                Error::Precondition(format!("unknown fixture {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Recomputes a fixture and diffs it against the transcription.
pub fn check_table(which: Fixture, lambdas: &[i64]) -> Result<TableCheck> {
    match which {
        Fixture::MatricesSmall => matrix_table(which, MATRICES_SMALL, lambdas),
        Fixture::Matrices7 => matrix_table(which, MATRICES_7, lambdas),
        Fixture::Systems6 => system_table(which, SYSTEMS_6, 6, lambdas),
        Fixture::Systems7 => system_table(which, SYSTEMS_7, 7, lambdas),
    }
}

/// Plain-text rendering of a transcription.
pub fn render_table(which: Fixture) -> String {
    let mut out = String::new();
    match which {
        Fixture::MatricesSmall | Fixture::Matrices7 => {
            let rows = if which == Fixture::MatricesSmall { MATRICES_SMALL } else { MATRICES_7 };
            for r in rows {
                out.push_str(&format!("{} ({}x{})\n", r.tag.name(), r.rows.len(), r.rows.len()));
                for line in r.rows {
                    out.push_str(&format!("  [{line}]\n"));
                }
            }
        }
        Fixture::Systems6 | Fixture::Systems7 => {
            let rows = if which == Fixture::Systems6 { SYSTEMS_6 } else { SYSTEMS_7 };
            for r in rows {
                out.push_str(&format!(
                    "{}  poles: {}\n",
                    r.tag.name(),
                    r.poles.map_or("PG(V)".to_string(), |p| format!("{p} = 0"))
                ));
                for e in r.equations {
                    out.push_str(&format!("  {e} = 0\n"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_equations() {
        let q = FieldSpec::rational();
        let lam = q.from_i64(3);
        let row = parse_equation("w23+l*w56", 6, q, &lam).unwrap();
        assert_eq!(row[pair_index(6, 1, 2)], q.from_i64(1));
        assert_eq!(row[pair_index(6, 4, 5)], q.from_i64(3));
        assert_eq!(row.iter().filter(|c| !c.is_zero()).count(), 2);
        let row = parse_equation("-w17+l*(w26-w35)", 7, q, &lam).unwrap();
        assert_eq!(row[pair_index(7, 2, 4)], q.from_i64(-3));
        assert!(parse_equation("w12*w13", 4, q, &lam).is_err());
        assert!(parse_equation("w12+1", 4, q, &lam).is_err());
    }

    #[test]
    fn tables_are_square() {
        for r in MATRICES_SMALL.iter().chain(MATRICES_7) {
            let n = r.rows.len();
            assert_eq!(n, r.tag.expected_rank(), "{}", r.tag);
            assert!(r.rows.iter().all(|l| l.split(',').count() == n));
        }
    }

    #[test]
    fn all_tables_reproduce() {
        for t in Fixture::ALL {
            let c = check_table(t, DEFAULT_LAMBDAS).unwrap();
            assert!(c.passed(), "{t}: {:?}", c.diffs);
            assert!(c.comparisons > 0);
        }
    }

    #[test]
    fn wrong_cell_is_located() {
        let bad = [MatrixRow {
            tag: T1,
            rows: &["0, u3, -u2", "-u3, 0, u1", "u2, u1, 0"],
        }];
        let c = matrix_table(Fixture::MatricesSmall, &bad, DEFAULT_LAMBDAS).unwrap();
        assert_eq!(c.diffs.len(), 1);
        assert_eq!(c.diffs[0].cell, "M[3,2]");
        assert_eq!(c.diffs[0].computed, "-u1");

        let bad = [SystemRow {
            tag: T1,
            poles: None,
            equations: &["w12", "w13", "w24"],
        }];
        let c = system_table(Fixture::Systems6, &bad, 6, DEFAULT_LAMBDAS).unwrap();
        assert_eq!(c.diffs.len(), 1);
        assert_eq!(c.diffs[0].cell, "upper radical");

        let bad = [SystemRow {
            tag: T9,
            poles: Some("x7^2-x3*x6-x2*x5+x1*x4"),
            equations: SYSTEMS_7[4].equations,
        }];
        let c = system_table(Fixture::Systems7, &bad, 7, DEFAULT_LAMBDAS).unwrap();
        assert_eq!(c.diffs.len(), 1);
        assert!(c.diffs[0].cell.starts_with("poles"));
    }

    #[test]
    fn fixture_names() {
        for f in Fixture::ALL {
            assert_eq!(f.name().parse::<Fixture>().unwrap(), f);
            assert!(!render_table(f).is_empty());
        }
        assert!("table".parse::<Fixture>().is_err());
    }
}

