//! Command-line front end for pole computations on alternating trilinear forms.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperpoles::constructions::{
    block_decompose, cch_hyperplane, expansion, reducible_join, trivial_extension, BilinearAltForm,
};
use hyperpoles::geomcheck::{build_geometry, fingerprint, fmt_point};
use hyperpoles::poles::{
    lines_through_point, point_degree, symbolic_matrix, upper_radical_system, EnumOptions,
    VarietyOptions, DEFAULT_BUDGET,
};
use hyperpoles::report::{poles_report, poles_text, run_check, variety_json, verdict_text, CHECKS};
use hyperpoles::tables::{check_table, render_table, Fixture, DEFAULT_LAMBDAS};
use hyperpoles::triform::{catalog_form, CatalogEntry, CatalogTag, TriForm};
use hyperpoles::{FieldSpec, Scalar};

#[derive(Parser)]
#[command(name = "hyperpoles", version, about = "Poles and upper radicals of alternating trilinear forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct FormArgs {
    /// Catalog type, e.g. T9 or T10_1.
    #[arg(long, conflicts_with_all = ["file", "terms"])]
    catalog: Option<String>,
    /// Form file (`n = ..`, `field = ..`, then `i j k coeff` lines).
    #[arg(long, conflicts_with = "terms")]
    file: Option<PathBuf>,
    /// Form in sum notation, e.g. "123+345" (needs --dim).
    #[arg(long)]
    terms: Option<String>,
    /// Catalog parameter (λ or μ) as a field literal.
    #[arg(long)]
    param: Option<String>,
    /// Field: gf(p) or q.
    #[arg(long)]
    field: Option<String>,
    /// Dimension of V (defaults to the rank for catalog forms).
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
    /// Maximum number of vectors to enumerate.
    #[arg(long, env = "HYPERPOLES_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Enumerate on one thread.
    #[arg(long)]
    serial: bool,
}

impl RunArgs {
    fn enumeration(&self) -> Result<EnumOptions> {
        if self.budget == 0 {
            bail!("budget must be positive");
        }
        Ok(EnumOptions {
            budget: self.budget,
            parallel: !self.serial,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog of types.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Evaluate h(x, y, z).
    Eval {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Radical and rank of the form.
    Radical {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Symbolic contraction matrix M_u, or its value and degree at a point.
    Matrix {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated point.
        #[arg(long)]
        at: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Enumerate poles over GF(p).
    Poles {
        #[command(flatten)]
        form: FormArgs,
        /// Include the upper-radical lines.
        #[arg(long)]
        lines: bool,
        /// Include the pole variety.
        #[arg(long)]
        variety: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Pole variety g_i with zero-set verification.
    Variety {
        #[command(flatten)]
        form: FormArgs,
        /// 1-based row to delete (default: first verified).
        #[arg(long)]
        index: Option<usize>,
        /// Grid radius for verification over q.
        #[arg(long, default_value_t = 1)]
        grid: i64,
        /// Also verify modulo this prime (over q).
        #[arg(long)]
        verify_prime: Option<u64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Upper-radical equations, and lines over GF(p).
    RadicalLines {
        #[command(flatten)]
        form: FormArgs,
        /// Only lines through this point.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build a form and print it in the form file format.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run a geometry check over GF(p); exits 1 on failure.
    Check {
        /// One of: lines-on-poles, spread, normal-spread, polar, cone, hexagon, t4-lines, t11-planes.
        kind: String,
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Counting invariants of the geometry of poles.
    Fingerprint {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute the reference fixtures and diff them; exits 1 on any difference.
    Tables {
        /// matrices-small, matrices-7, systems-6 or systems-7; all when omitted.
        which: Option<String>,
        /// Print the transcription as well.
        #[arg(long)]
        show: bool,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Pad a form with extra dimensions.
    Extension {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        extra: usize,
    },
    /// Lift an alternating bilinear form along a new basis direction.
    Expansion {
        /// Pair sum such as 23+45+67.
        #[arg(long)]
        beta: String,
        /// 1-based index of the new direction.
        #[arg(long)]
        direction: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// α·h0 + β·h1 for forms with disjoint supports.
    Decompose {
        #[command(flatten)]
        form: FormArgs,
        /// Second form in sum notation.
        #[arg(long)]
        second: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        beta: String,
    },
    /// h1 + h2 for forms whose supports share one index.
    Join {
        #[command(flatten)]
        form: FormArgs,
        /// Second form in sum notation.
        #[arg(long)]
        second: String,
    },
    /// 123 + 345 + ... in odd dimension.
    Chain {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    s.parse::<FieldSpec>().map_err(|e| anyhow!("{e}"))
}

fn load_form(a: &FormArgs) -> Result<TriForm> {
    let field = a.field.as_deref().map(parse_field).transpose()?;
    if let Some(tag) = &a.catalog {
        let tag: CatalogTag = tag.parse().map_err(|e| anyhow!("{e}"))?;
        let field = field.unwrap_or_else(FieldSpec::rational);
        let param = match (&a.param, tag.needs_parameter()) {
            (Some(p), true) => Some(field.parse_scalar(p).map_err(|e| anyhow!("{e}"))?),
            (None, true) => bail!("{tag} needs --param"),
            (Some(_), false) => bail!("{tag} takes no parameter"),
            (None, false) => None,
        };
        let entry = CatalogEntry::new(tag, param).map_err(|e| anyhow!("{e}"))?;
        let n = a.dim.unwrap_or(tag.expected_rank());
        return catalog_form(&entry, n, field).map_err(|e| anyhow!("{e}"));
    }
    if a.param.is_some() {
        bail!("--param only applies to --catalog");
    }
    if let Some(path) = &a.file {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let h = TriForm::parse_file(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
        if let Some(f) = field {
            if f != h.field() {
                bail!("--field {f} disagrees with the file's field {}", h.field());
            }
        }
        if let Some(n) = a.dim {
            return h.embed(n).map_err(|e| anyhow!("{e}"));
        }
        return Ok(h);
    }
    if let Some(t) = &a.terms {
        let n = a.dim.ok_or_else(|| anyhow!("--terms needs --dim"))?;
        let field = field.unwrap_or_else(FieldSpec::rational);
        return TriForm::parse_sum(t, n, field).map_err(|e| anyhow!("{e}"));
    }
    bail!("give a form with --catalog, --file or --terms")
}

fn parse_vector(s: &str, n: usize, field: FieldSpec) -> Result<Vec<Scalar>> {
    let v: Vec<Scalar> = s
        .split(',')
        .map(|c| field.parse_scalar(c))
        .collect::<hyperpoles::Result<_>>()
        .map_err(|e| anyhow!("{e}"))?;
    if v.len() != n {
        bail!("expected {n} coordinates, got {}", v.len());
    }
    Ok(v)
}

fn residues(v: &[Scalar]) -> Result<Vec<u64>> {
    v.iter()
        .map(|c| c.residue().ok_or_else(|| anyhow!("needs a finite field")))
        .collect()
}

fn vec_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn emit<T: Serialize>(out: Output, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let s = match out {
        Output::Json => serde_json::to_string_pretty(value)? + "\n",
        Output::Text => text(),
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(s.as_bytes())?;
    Ok(())
}

/// Exit status 0 or 1 for the check-style commands.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Catalog { output } => {
            let rows: Vec<serde_json::Value> = CatalogTag::ALL
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "tag": t.name(),
                        "terms": t.description(),
                        "rank": t.expected_rank(),
                        "condition": t.condition(),
                    })
                })
                .collect();
            emit(output, &rows, || {
                CatalogTag::ALL
                    .iter()
                    .map(|t| {
                        format!(
                            "{:<6} rank {}  {}{}\n",
                            t.name(),
                            t.expected_rank(),
                            t.description(),
                            t.condition().map_or(String::new(), |c| format!("  [{c}]"))
                        )
                    })
                    .collect()
            })?;
        }
        Command::Eval { form, x, y, z, run } => {
            let h = load_form(&form)?;
            let (n, f) = (h.n(), h.field());
            let (x, y, z) = (parse_vector(&x, n, f)?, parse_vector(&y, n, f)?, parse_vector(&z, n, f)?);
            let v = h.evaluate(&x, &y, &z).map_err(|e| anyhow!("{e}"))?;
            emit(run.output, &serde_json::json!({"form": h.to_string(), "field": f.to_string(), "value": v.to_string()}), || {
                format!("{v}\n")
            })?;
        }
        Command::Radical { form, run } => {
            let h = load_form(&form)?;
            let (basis, rank) = h.radical_and_rank().map_err(|e| anyhow!("{e}"))?;
            let b: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
            emit(
                run.output,
                &serde_json::json!({"form": h.to_string(), "field": h.field().to_string(), "n": h.n(), "rank": rank, "radical": b}),
                || {
                    let mut s = format!("rank: {rank}\nradical dimension: {}\n", basis.len());
                    for v in &basis {
                        s.push_str(&format!("  {}\n", vec_text(v)));
                    }
                    s
                },
            )?;
        }
        Command::Matrix { form, at, run } => {
            let h = load_form(&form)?;
            let sym = symbolic_matrix(&h).map_err(|e| anyhow!("{e}"))?;
            match at {
                None => {
                    let rows: Vec<Vec<String>> = (0..h.n())
                        .map(|j| (0..h.n()).map(|k| sym.matrix.get(j, k).to_string()).collect())
                        .collect();
                    emit(run.output, &serde_json::json!({"form": h.to_string(), "matrix": rows}), || {
                        format!("{}\n", sym.matrix)
                    })?;
                }
                Some(pt) => {
                    let u = parse_vector(&pt, h.n(), h.field())?;
                    let m = sym.evaluate(&u).map_err(|e| anyhow!("{e}"))?;
                    let (deg, rad) = point_degree(&h, &u).map_err(|e| anyhow!("{e}"))?;
                    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                    let radical: Vec<Vec<String>> = rad.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
                    emit(
                        run.output,
                        &serde_json::json!({"form": h.to_string(), "point": pt, "matrix": rows, "rank": m.rank(), "degree": deg, "radical": radical}),
                        || {
                            let mut s = format!("{m}\nrank: {}\ndegree: {deg}\nradical:\n", m.rank());
                            for v in &rad {
                                s.push_str(&format!("  {}\n", vec_text(v)));
                            }
                            s
                        },
                    )?;
                }
            }
        }
        Command::Poles { form, lines, variety, run } => {
            let h = load_form(&form)?;
            let opts = run.enumeration()?;
            let vo = VarietyOptions {
                enumeration: opts,
                ..Default::default()
            };
            let r = poles_report(&h, &opts, lines, variety.then_some(&vo)).map_err(|e| anyhow!("{e}"))?;
            emit(run.output, &r, || poles_text(&r))?;
        }
        Command::Variety { form, index, grid, verify_prime, run } => {
            let h = load_form(&form)?;
            if index == Some(0) || index.is_some_and(|i| i > h.n()) {
                bail!("--index must be between 1 and {}", h.n());
            }
            let vo = VarietyOptions {
                index: index.map(|i| i - 1),
                grid,
                verify_prime,
                enumeration: run.enumeration()?,
            };
            let outcome = hyperpoles::poles::pole_variety(&h, &vo).map_err(|e| anyhow!("{e}"))?;
            let v = variety_json(&outcome);
            let fail = !v.verified;
            emit(run.output, &v, || {
                let mut s = match v.i {
                    Some(i) => format!("i = {i}\ng = {}\n", v.g),
                    None => "every point is a pole\n".to_string(),
                };
                for c in &v.checks {
                    s.push_str(&format!(
                        "checked {} points of {}: {}\n",
                        c.points,
                        c.domain,
                        if c.passed() { "ok" } else { "MISMATCH" }
                    ));
                    if let Some(w) = &c.witness {
                        s.push_str(&format!("  witness: ({})\n", w.join(",")));
                    }
                }
                s
            })?;
            return Ok(u8::from(fail));
        }
        Command::RadicalLines { form, point, run } => {
            let h = load_form(&form)?;
            let sys = upper_radical_system(&h).map_err(|e| anyhow!("{e}"))?;
            let eqs: Vec<String> = sys.reduced_equations().iter().map(|r| sys.render_row(r)).collect();
            let lines = if h.field().is_finite() {
                let p = h.field().characteristic();
                let ls = match &point {
                    Some(pt) => {
                        let u = residues(&parse_vector(pt, h.n(), h.field())?)?;
                        lines_through_point(&h, &u).map_err(|e| anyhow!("{e}"))?
                    }
                    None => build_geometry(&h, &run.enumeration()?).map_err(|e| anyhow!("{e}"))?.lines,
                };
                Some(
                    ls.iter()
                        .map(|l| serde_json::json!({"basis": l.basis(), "plucker": l.plucker(p)}))
                        .collect::<Vec<_>>(),
                )
            } else {
                if point.is_some() {
                    bail!("--point needs a finite field");
                }
                None
            };
            emit(
                run.output,
                &serde_json::json!({"form": h.to_string(), "field": h.field().to_string(), "equations": eqs, "solution_dimension": sys.solutions.len(), "lines": lines}),
                || {
                    let mut s = String::from("equations:\n");
                    for e in &eqs {
                        s.push_str(&format!("  {e}\n"));
                    }
                    s.push_str(&format!("solution space dimension: {}\n", sys.solutions.len()));
                    if let Some(ls) = &lines {
                        s.push_str(&format!("lines: {}\n", ls.len()));
                        for l in ls {
                            let b = &l["basis"];
                            let pt = |i: usize| -> String {
                                let v: Vec<u64> = serde_json::from_value(b[i].clone()).unwrap_or_default();
                                fmt_point(&v)
                            };
                            s.push_str(&format!("  [{}, {}]\n", pt(0), pt(1)));
                        }
                    }
                    s
                },
            )?;
        }
        Command::Construct { kind } => {
            let h = match kind {
                Construct::Extension { form, extra } => trivial_extension(&load_form(&form)?, extra),
                Construct::Expansion { beta, direction, dim, field } => {
                    let f = parse_field(&field)?;
                    if direction == 0 || direction > dim {
                        bail!("--direction must be between 1 and {dim}");
                    }
                    BilinearAltForm::parse_digits(&beta, dim, f).and_then(|b| expansion(&b, direction - 1))
                }
                Construct::Decompose { form, second, alpha, beta } => {
                    let h0 = load_form(&form)?;
                    let f = h0.field();
                    let h1 = TriForm::parse_sum(&second, h0.n(), f).map_err(|e| anyhow!("{e}"))?;
                    let (a, b) = (f.parse_scalar(&alpha), f.parse_scalar(&beta));
                    a.and_then(|a| b.and_then(|b| block_decompose(&h0, &h1, &a, &b)))
                }
                Construct::Join { form, second } => {
                    let h1 = load_form(&form)?;
                    let h2 = TriForm::parse_sum(&second, h1.n(), h1.field()).map_err(|e| anyhow!("{e}"))?;
                    reducible_join(&h1, &h2).map(|(h, _)| h)
                }
                Construct::Chain { dim, field } => cch_hyperplane(dim, parse_field(&field)?),
            }
            .map_err(|e| anyhow!("{e}"))?;
            print!("{}", h.to_file_string());
        }
        Command::Check { kind, form, run } => {
            if !CHECKS.contains(&kind.as_str()) {
                bail!("unknown check {kind:?}; expected one of {}", CHECKS.join(", "));
            }
            let h = load_form(&form)?;
            let tag = form.catalog.as_deref().and_then(|t| t.parse::<CatalogTag>().ok());
            let g = build_geometry(&h, &run.enumeration()?).map_err(|e| anyhow!("{e}"))?;
            let v = run_check(&g, &kind, tag).map_err(|e| anyhow!("{e}"))?;
            emit(run.output, &v, || verdict_text(&v))?;
            return Ok(u8::from(!v.pass));
        }
        Command::Fingerprint { form, run } => {
            let h = load_form(&form)?;
            let fp = fingerprint(&h, &run.enumeration()?).map_err(|e| anyhow!("{e}"))?;
            emit(run.output, &fp, || {
                let hist = |m: &std::collections::BTreeMap<usize, u64>| {
                    m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
                };
                format!(
                    "rank: {}\npoles: {}\ndegrees: {}\nlines: {}\nlines per pole: {}\nvariety degree: {}\n",
                    fp.rank,
                    fp.pole_count,
                    hist(&fp.degree_histogram),
                    fp.line_count,
                    hist(&fp.lines_per_point),
                    fp.variety_degree.map_or("-".into(), |d| d.to_string())
                )
            })?;
        }
        Command::Tables { which, show, output } => {
            let all: Vec<Fixture> = match which {
                Some(w) => vec![w.parse().map_err(|e| anyhow!("{e}"))?],
                None => Fixture::ALL.to_vec(),
            };
            let mut checks = Vec::new();
            let mut text = String::new();
            for w in all {
                let c = check_table(w, DEFAULT_LAMBDAS).map_err(|e| anyhow!("{e}"))?;
                if show {
                    text.push_str(&render_table(w));
                }
                text.push_str(&format!(
                    "{w}: {} rows, {} comparisons, {}\n",
                    c.rows,
                    c.comparisons,
                    if c.passed() { "ok".to_string() } else { format!("{} differences", c.diffs.len()) }
                ));
                for d in &c.diffs {
                    text.push_str(&format!(
                        "  {} {}{}: expected {} computed {}\n",
                        d.tag,
                        d.cell,
                        d.param.as_ref().map_or(String::new(), |p| format!(" (l={p})")),
                        d.expected,
                        d.computed
                    ));
                }
                checks.push(c);
            }
            let fail = checks.iter().any(|c| !c.passed());
            emit(output, &checks, || text)?;
            return Ok(u8::from(fail));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
