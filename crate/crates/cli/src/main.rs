//! `springer2col`: enumerate, analyze and survey components of two-column
//! Springer fibers, export intersection graphs, run the self-checks.
//!
//! Exit codes: 0 success or smooth, 3 singular (`analyze` only), 1 bad input,
//! 2 internal consistency failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use springer2col::components::{singular_by_pattern, ComponentReport, ShapeContext};
use springer2col::orbitposet::{ShapeParams, DEFAULT_LIMIT};
use springer2col::tableau::{enumerate_tableaux, parse_point_list, TwoColumnTableau};
use springer2col::{verify, Error};

const EXIT_SINGULAR: u8 = 3;
const EXIT_INPUT: u8 = 1;
const EXIT_CONSISTENCY: u8 = 2;

#[derive(Parser)]
#[command(name = "springer2col", version, about = "Components of two-column Springer fibers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the standard tableaux of a shape with sigma_T, tau* and the pattern verdict.
    Enumerate(Common),
    /// Full report for one component.
    Analyze(Common),
    /// One line per component, for one shape or every shape up to the limit.
    Survey(Common),
    /// Codimension-one intersection graph of a shape.
    Graph(Common),
    /// Run all self-checks for every shape up to the limit.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Shape as `n,k` (column lengths n-k and k).
    #[arg(long, value_parser = parse_shape)]
    shape: Option<ShapeParams>,
    /// Second column of the tableau, e.g. `4,6,7`.
    #[arg(long)]
    tableau: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest n for exhaustive runs.
    #[arg(long, env = "SPRINGER2COL_LIMIT", default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// Spread work over a thread pool; output order is unchanged.
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
    Dot,
}

fn parse_shape(s: &str) -> Result<ShapeParams, String> {
    let v = parse_point_list(s).map_err(|e| e.to_string())?;
    match v[..] {
        [n, k] => ShapeParams::new(n, k).map_err(|e| e.to_string()),
        _ => Err(format!("expected n,k but got {s:?}")),
    }
}

enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Enumerate(c) => enumerate(c),
        Command::Analyze(c) => analyze(c),
        Command::Survey(c) => survey(c),
        Command::Graph(c) => graph(c),
        Command::Verify(c) => run_verify(c),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ConsistencyFailure(_) | Error::CriteriaDisagreement { .. } => EXIT_CONSISTENCY,
                _ => EXIT_INPUT,
            };
            ExitCode::from(code)
        }
    }
}

fn require_shape(c: &Common) -> Result<ShapeParams, Failure> {
    let shape = c.shape.ok_or_else(|| Failure::Input("--shape is required".into()))?;
    if shape.n > c.limit {
        return Err(Error::LimitExceeded { n: shape.n, limit: c.limit }.into());
    }
    Ok(shape)
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format.to_possible_value().expect("no skipped variants");
    Failure::Input(format!("--format {} is not available for {command}", name.get_name()))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn tau_label(t: &TwoColumnTableau) -> String {
    let v: Vec<_> = t.tau_star().iter().map(usize::to_string).collect();
    format!("{{{}}}", v.join(","))
}

fn smooth_or_singular(singular: bool) -> &'static str {
    if singular {
        "singular"
    } else {
        "smooth"
    }
}

fn enumerate(c: &Common) -> Outcome {
    let shape = require_shape(c)?;
    let rows: Vec<_> = enumerate_tableaux(shape.n, shape.k)?
        .map(|t| (t.sigma(), singular_by_pattern(&t), t))
        .collect();
    let out = match c.format {
        Format::Text | Format::Tsv => {
            let mut out = String::from("tableau\tsigma\ttau_star\tverdict\n");
            for (s, singular, t) in &rows {
                out += &format!(
                    "{}\t{}\t{}\t{}\n",
                    t.label(),
                    s.cycles(),
                    tau_label(t),
                    smooth_or_singular(*singular)
                );
            }
            out
        }
        Format::Json => pretty(
            &rows
                .iter()
                .map(|(s, singular, t)| {
                    json!({"tableau": t, "sigma": s, "tau_star": t.tau_star(), "singular": singular})
                })
                .collect::<Vec<_>>(),
        ),
        Format::Dot => return Err(unsupported(c.format, "enumerate")),
    };
    Ok((out, 0))
}

fn analyze(c: &Common) -> Outcome {
    let shape = require_shape(c)?;
    let col = c
        .tableau
        .as_deref()
        .ok_or_else(|| Failure::Input("--tableau is required".into()))?;
    let t = TwoColumnTableau::new(shape.n, &parse_point_list(col)?)?;
    if t.k() != shape.k {
        return Err(Failure::Input(format!(
            "--tableau has {} entries but the shape needs k={}",
            t.k(),
            shape.k
        )));
    }
    let report = ShapeContext::new(shape, c.parallel)?.analyze(&t)?;
    let out = match c.format {
        Format::Text => report.to_text(),
        Format::Json => pretty(&report),
        Format::Tsv | Format::Dot => return Err(unsupported(c.format, "analyze")),
    };
    Ok((out, if report.is_singular() { EXIT_SINGULAR } else { 0 }))
}

fn survey_row(r: &ComponentReport) -> String {
    let opt = |v: Option<bool>| v.map_or("n/a", smooth_or_singular);
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.tableau.n(),
        r.tableau.k(),
        r.tableau.label(),
        r.eta,
        r.flag_count,
        r.palindromic,
        smooth_or_singular(r.verdicts.pattern),
        smooth_or_singular(r.verdicts.poincare),
        opt(r.verdicts.eta),
        opt(r.verdicts.flagcount),
    )
}

fn survey(c: &Common) -> Outcome {
    let shapes: Vec<ShapeParams> = match c.shape {
        Some(_) => vec![require_shape(c)?],
        None => ShapeParams::all_up_to(c.limit).collect(),
    };
    let mut results = Vec::with_capacity(shapes.len());
    for shape in shapes {
        let reports = ShapeContext::new(shape, c.parallel)?.analyze_all(c.parallel)?;
        results.push((shape, reports));
    }
    let singular = |rs: &[ComponentReport]| rs.iter().filter(|r| r.is_singular()).count();
    let out = match c.format {
        Format::Text | Format::Tsv => {
            let mut out = String::from(
                "n\tk\ttableau\teta\tflag_count\tpalindromic\tpattern\tpoincare\teta_test\tflag_test\n",
            );
            for (_, reports) in &results {
                for r in reports {
                    out += &survey_row(r);
                }
            }
            if c.format == Format::Text {
                out.push('\n');
                for (shape, reports) in &results {
                    out += &format!(
                        "shape {shape}: {} components, {} singular\n",
                        reports.len(),
                        singular(reports)
                    );
                }
            }
            out
        }
        Format::Json => pretty(
            &results
                .iter()
                .map(|(shape, reports)| {
                    let rows: Vec<_> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "tableau": r.tableau,
                                "eta": r.eta,
                                "flag_count": r.flag_count,
                                "palindromic": r.palindromic,
                                "verdicts": r.verdicts,
                            })
                        })
                        .collect();
                    json!({
                        "shape": shape,
                        "components": reports.len(),
                        "singular": singular(reports),
                        "rows": rows,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Format::Dot => return Err(unsupported(c.format, "survey")),
    };
    Ok((out, 0))
}

fn graph(c: &Common) -> Outcome {
    let shape = require_shape(c)?;
    let g = ShapeContext::new(shape, c.parallel)?.intersection_graph()?;
    let out = match c.format {
        Format::Dot => g.to_dot(),
        Format::Tsv => g.to_tsv(),
        Format::Json => pretty(&json!({
            "shape": g.shape,
            "vertices": g.vertices.iter().enumerate().map(|(i, t)| json!({
                "tableau": t,
                "degree": g.degree(i),
                "singular": g.is_singular_vertex(i),
            })).collect::<Vec<_>>(),
            "edges": g.edges,
        })),
        Format::Text => {
            let mut out = String::new();
            for (i, t) in g.vertices.iter().enumerate() {
                let nbrs: Vec<_> = g
                    .edges
                    .iter()
                    .filter_map(|&(a, b)| match (a == i, b == i) {
                        (true, _) => Some(b),
                        (_, true) => Some(a),
                        _ => None,
                    })
                    .map(|j| g.vertices[j].label())
                    .collect();
                out += &format!(
                    "{}\tdegree {}\t{}\t{}\n",
                    t.label(),
                    g.degree(i),
                    smooth_or_singular(g.is_singular_vertex(i)),
                    nbrs.join(" ")
                );
            }
            out
        }
    };
    Ok((out, 0))
}

fn run_verify(c: &Common) -> Outcome {
    let limit = match c.shape {
        Some(shape) => shape.n.min(c.limit),
        None => c.limit,
    };
    let report = verify::run(limit, c.parallel)?;
    let out = match c.format {
        Format::Text => report.to_text(),
        Format::Json => pretty(&report),
        Format::Tsv | Format::Dot => return Err(unsupported(c.format, "verify")),
    };
    Ok((out, if report.passed() { 0 } else { EXIT_CONSISTENCY }))
}
