use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superp1::algebra::format_rational;
use superp1::automorphism::{int_action_with, BundleAutomorphism, ValidationMode};
use superp1::classify::{classify_retract, enumerate_range};
use superp1::cohomology::{build_context, reduce};
use superp1::parse::{parse_field_auto, render_field};
use superp1::sl2::{invariant_subspace, Sl2Kind};
use superp1::superfield::{change_chart, super_bracket, GradingVector, SuperField};
use superp1::transition::emit_transition;
use superp1::Error;

#[derive(Parser)]
#[command(name = "superp1", version, about = "Non-split supermanifolds over the projective line")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Grading {
    /// Comma-separated odd weights, e.g. `2,2,1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    k: Vec<i64>,
}

impl Grading {
    fn vector(&self) -> GradingVector {
        GradingVector::new(self.k.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    S,
    SPrime,
    SDoublePrime,
}

impl From<AlgebraArg> for Sl2Kind {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::S => Sl2Kind::S,
            AlgebraArg::SPrime => Sl2Kind::SPrime,
            AlgebraArg::SDoublePrime => Sl2Kind::SDoublePrime,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Basis of H^1 of the degree-Q part of the tangent sheaf.
    H1 {
        #[command(flatten)]
        grading: Grading,
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
    },
    /// Classes in H^1 (degree 2) annihilated by an sl2 subalgebra.
    Invariants {
        #[command(flatten)]
        grading: Grading,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
    },
    /// Super bracket of two fields on the same chart.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        m: usize,
    },
    /// Rewrites a field in the other chart.
    Chart {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[command(flatten)]
        grading: Grading,
    },
    /// Image of a cohomology class under a bundle automorphism.
    Act {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cocycle: String,
        #[command(flatten)]
        grading: Grading,
        /// Apply the matrix even when it fails validation.
        #[arg(long)]
        unvalidated: bool,
    },
    /// Classification record for one retract or a box of retracts.
    Classify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "range", required_unless_present = "range")]
        k: Vec<i64>,
        #[arg(long)]
        range: Option<i64>,
        /// Odd dimension for `--range`.
        #[arg(long, default_value_t = 3, requires = "range")]
        m: usize,
    },
    /// Transition functions of the atlas defined by a degree-2 cocycle.
    Transition {
        #[command(flatten)]
        grading: Grading,
        #[arg(long, allow_hyphen_values = true)]
        cocycle: String,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

fn field(text: &str, m: usize) -> Result<SuperField, Failure> {
    Ok(parse_field_auto(text, m)?)
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().collect::<Vec<_>>().join("\n")
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json_out = cli.format == Format::Json;
    let out = match cli.command {
        Command::H1 { grading, deg } => {
            let ctx = build_context(&grading.vector(), deg)?;
            let basis: Vec<String> = ctx.basis().iter().map(render_field).collect();
            if json_out {
                json!({"k": grading.k, "degree": deg, "dim": ctx.dim(), "basis": basis}).to_string()
            } else {
                format!("dim {}\n{}", ctx.dim(), lines(basis))
            }
        }
        Command::Invariants { grading, algebra } => {
            let kind = Sl2Kind::from(algebra);
            let classes = invariant_subspace(kind, &grading.vector())?;
            let basis: Vec<String> = classes.iter().map(|c| render_field(c.representative())).collect();
            if json_out {
                json!({"k": grading.k, "algebra": kind, "dim": basis.len(), "basis": basis}).to_string()
            } else {
                format!("dim {}\n{}", basis.len(), lines(basis))
            }
        }
        Command::Bracket { left, right, m } => {
            let result = render_field(&super_bracket(&field(&left, m)?, &field(&right, m)?)?);
            if json_out {
                json!({ "result": result }).to_string()
            } else {
                result
            }
        }
        Command::Chart { field: text, grading } => {
            let k = grading.vector();
            let v = field(&text, k.m())?;
            let w = change_chart(&v, &k)?;
            let rendered = render_field(&w);
            if json_out {
                json!({"chart": format!("{:?}", w.chart()), "field": rendered}).to_string()
            } else {
                rendered
            }
        }
        Command::Act { matrix, cocycle, grading, unvalidated } => {
            let k = grading.vector();
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", matrix.display())))?;
            let a = BundleAutomorphism::from_json(&text)?;
            if a.k() != &k {
                return Err(Failure::Usage(format!("matrix file is for k = {}, not {}", a.k(), k)));
            }
            let v = field(&cocycle, k.m())?;
            let degree = if v.is_zero() {
                2
            } else {
                v.homogeneous_degree()
                    .ok_or_else(|| Failure::Math("cocycle is not homogeneous".to_string()))?
            };
            let ctx = build_context(&k, degree)?;
            let z = reduce(&ctx, &v)?;
            let validation = a.validate();
            let mode = if unvalidated { ValidationMode::Skip } else { ValidationMode::Enforce };
            let image = int_action_with(&a, &z, mode)?;
            let rendered = render_field(image.representative());
            let coords: Vec<String> = image.coords().iter().map(format_rational).collect();
            if json_out {
                json!({
                    "valid": validation.valid,
                    "diagnostics": validation.diagnostics,
                    "image": rendered,
                    "coordinates": coords,
                })
                .to_string()
            } else {
                let mut s = String::new();
                for d in &validation.diagnostics {
                    s.push_str(&format!("warning: {d}\n"));
                }
                format!("{s}{rendered}\ncoordinates [{}]", coords.join(","))
            }
        }
        Command::Classify { k, range, m } => match range {
            Some(bound) => {
                let records = enumerate_range(bound, m)?;
                if json_out {
                    serde_json::Value::Array(records.iter().map(|r| r.to_json()).collect()).to_string()
                } else {
                    records.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
                }
            }
            None => {
                let record = classify_retract(&GradingVector::new(k))?;
                if json_out {
                    record.to_json().to_string()
                } else {
                    record.to_string()
                }
            }
        },
        Command::Transition { grading, cocycle } => {
            let k = grading.vector();
            let t = emit_transition(&k, &field(&cocycle, k.m())?)?;
            if json_out {
                t.to_json().to_string()
            } else {
                t.to_string()
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", out.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
