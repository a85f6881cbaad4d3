use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use farey_bratteli::farey::qmark::question_mark_inv_dyadic;
use farey_bratteli::farey::tree::{row_denominators, row_numerators, width};
use farey_bratteli::farey::{partition_function, question_mark_of, row, Fraction};
use farey_bratteli::ideals::{quotient_levels, to_dot, IdealSpec, Theta, Variant};
use farey_bratteli::k0::{stern_brocot_generating, verify_unit_decomposition, LevelPoly};
use farey_bratteli::paths::{run_suite, Algebra, PathSpace, Suite};
use farey_bratteli::trace::{check_trace, CandidateSpec};
use farey_bratteli::Error;

#[derive(Parser)]
#[command(name = "farey", version, about = "Exact computations on the Stern-Brocot Bratteli diagram")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Labels of one floor of the diagram.
    Row {
        #[arg(long)]
        floor: u32,
        #[arg(long, conflicts_with = "denominators")]
        numerators: bool,
        #[arg(long)]
        denominators: bool,
    },
    /// Minkowski's question mark function and its inverse.
    Qmark {
        #[command(subcommand)]
        op: QmarkOp,
    },
    /// Quotient diagram of the ideal attached to a point.
    Ideal {
        /// `p/q` or `cf:a1,a2,...`
        #[arg(long)]
        theta: String,
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Arithmetic in the dimension group. Elements are JSON objects
    /// `{"level": n, "coeffs": [c_0, ...]}`.
    K0 {
        #[command(subcommand)]
        op: K0Op,
    },
    /// Coefficients of the Stern-Brocot generating function.
    Gen {
        #[arg(long)]
        terms: usize,
    },
    /// Trace candidates.
    Trace {
        #[command(subcommand)]
        op: TraceOp,
    },
    /// Path counts per endpoint.
    Paths {
        #[arg(long)]
        floor: u32,
        #[arg(long)]
        list: bool,
    },
    /// Exact verification of the generator relations.
    Relations {
        #[arg(long)]
        floor: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Truncated series `sum_{q <= qmax} phi(q) q^-s`.
    Zeta {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        qmax: u64,
    },
}

#[derive(Subcommand)]
enum QmarkOp {
    Eval { x: String },
    Inv { y: String },
}

#[derive(Subcommand)]
enum K0Op {
    Add { a: String, b: String },
    Pos { a: String },
    Lift {
        a: String,
        #[arg(long)]
        to: u32,
    },
    /// Checks the unit decomposition on levels `0..=max-level`.
    Identity {
        #[arg(long, default_value_t = 10)]
        max_level: u32,
    },
}

#[derive(Subcommand)]
enum TraceOp {
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input, as opposed to a check that ran and failed.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Usage {
    fn from(e: serde_json::Error) -> Self {
        Usage(e.to_string())
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn poly(s: &str) -> Result<LevelPoly, Usage> {
    Ok(serde_json::from_str(s)?)
}

/// Runs one command, printing its output. `Ok(false)` means a requested
/// check failed.
fn run(cli: Cli) -> Result<bool, Usage> {
    match cli.command {
        Command::Row { floor, numerators, denominators } => {
            let line = if numerators {
                join(&row_numerators(floor)?)
            } else if denominators {
                join(&row_denominators(floor)?)
            } else {
                join(&row(floor)?)
            };
            println!("{line}");
        }
        Command::Qmark { op: QmarkOp::Eval { x } } => {
            println!("{}", question_mark_of(&x.parse::<Fraction>()?)?);
        }
        Command::Qmark { op: QmarkOp::Inv { y } } => {
            println!("{}", question_mark_inv_dyadic(&y.parse::<Fraction>()?)?);
        }
        Command::Ideal { theta, variant, depth, format } => {
            let spec = IdealSpec::new(theta.parse::<Theta>()?, variant.parse::<Variant>()?)?;
            let q = quotient_levels(&spec, depth)?;
            match format {
                Format::Dot => print!("{}", to_dot(&q)?),
                Format::Json => println!("{}", serde_json::to_string(&q.to_json()?)?),
                Format::Text => {
                    for (n, floor) in q.retained()?.iter().enumerate() {
                        println!("{n}: {}", join(floor));
                    }
                }
            }
        }
        Command::K0 { op } => match op {
            K0Op::Add { a, b } => println!("{}", serde_json::to_string(&poly(&a)?.add_class(&poly(&b)?)?)?),
            K0Op::Pos { a } => {
                let p = poly(&a)?;
                println!("{}", if p.is_positive_class() { "positive" } else { "not positive" });
            }
            K0Op::Lift { a, to } => println!("{}", serde_json::to_string(&poly(&a)?.beta_lift(to)?)?),
            K0Op::Identity { max_level } => {
                let mut ok = true;
                for n in 0..=max_level {
                    let v = verify_unit_decomposition(n)?;
                    match v.first_difference {
                        None => println!("level {n}: holds"),
                        Some(d) => println!("level {n}: fails at degree {d}"),
                    }
                    ok &= v.holds;
                }
                return Ok(ok);
            }
        },
        Command::Gen { terms } => println!("{}", join(&stern_brocot_generating(terms)?)),
        Command::Trace { op: TraceOp::Check { spec, depth, format } } => {
            let text = fs::read_to_string(&spec).map_err(|e| Usage(format!("{}: {e}", spec.display())))?;
            let candidate = serde_json::from_str::<CandidateSpec>(&text)?.build()?;
            let verdict = check_trace(candidate.as_ref(), depth)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&verdict)?),
                _ => {
                    let kind = if verdict.exact { "exact" } else { "necessary condition only" };
                    let n = verdict.vertices.len();
                    match verdict.first_violation() {
                        None => println!("valid to depth {depth} ({kind}, {n} vertices)"),
                        Some(v) => {
                            let bad = verdict.violations().count();
                            println!("invalid: first violation at {v}, {bad} of {n} vertices fail ({kind})");
                        }
                    }
                }
            }
            return Ok(verdict.valid());
        }
        Command::Paths { floor, list } => {
            let space = PathSpace::new(floor)?;
            let mut counts = vec![0u64; width(floor) as usize + 1];
            for p in space.paths() {
                counts[p.endpoint() as usize] += 1;
                if list {
                    println!("{p}");
                }
            }
            println!("{}", join(&counts));
            println!("total {}", space.dim());
        }
        Command::Relations { floor, lambda, suite, format } => {
            let lambda = lambda.parse::<Fraction>()?.to_rational();
            let alg = Algebra::new(floor, &lambda)?;
            let report = run_suite(&alg, suite.parse::<Suite>()?)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    for c in report.failures() {
                        let witness = c
                            .witness
                            .as_ref()
                            .map(|w| format!(" at row {} col {} value {}", w.row, w.col, w.value))
                            .unwrap_or_default();
                        println!("FAIL {}: {}{witness}", c.equation, c.relation);
                    }
                    let failed = report.failures().count();
                    println!("{} checks, {} passed, {failed} failed", report.len(), report.len() - failed);
                }
            }
            return Ok(report.passed());
        }
        Command::Zeta { s, qmax } => println!("{}", partition_function(s, qmax)?),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
