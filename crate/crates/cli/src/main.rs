use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nogo_core::comma::{lift_counterexample, projection_s, projection_s_mor, CommaCat, CosliceCat};
use nogo_core::enumcat::{audit_regularity, EnumCat, PosCat, RegularityReport, SetCat};
use nogo_core::finset::FinSet;
use nogo_core::nogo::{nogo, render_text, Conclusion, NoGoBounds, ENGINE_VERSION};
use nogo_core::order::{coequalizer_divergence, pos_counterexample};
use nogo_core::Error;

mod check;

const EXIT_CLEAN: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_WITNESS: u8 = 3;
const EXIT_DEFECT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "nogo",
    version,
    about = "Finite audits of regularity for coslice and comma categories"
)]
struct Cli {
    /// Worker threads; reports do not depend on it.
    #[arg(long, global = true, env = "NOGO_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Instance {
    Finset,
    Finpos,
    Coslice,
    Comma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Pos,
    Comma,
    CoeqDivergence,
}

#[derive(Subcommand)]
enum Command {
    /// Audit an instance for regularity up to a bound.
    Audit {
        instance: Instance,
        /// Largest carrier (finset, finpos, coslice) or shape size minus one (comma).
        #[arg(long)]
        bound: Option<usize>,
        /// Size of the base set A (coslice and comma only).
        #[arg(long)]
        base_size: Option<usize>,
    },
    /// Print a verified counterexample bundle.
    Counterexample {
        target: Target,
        #[arg(long, default_value_t = 1)]
        base_size: usize,
    },
    /// Run a construction or classification on a JSON input file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        query: check::Query,
    },
    /// Audit the coslice and the comma instance and state the conclusion.
    Nogo {
        #[arg(long, default_value_t = NoGoBounds::default().base_size)]
        base_size: usize,
        #[arg(long, default_value_t = NoGoBounds::default().coslice_bound)]
        coslice_bound: usize,
        #[arg(long, default_value_t = NoGoBounds::default().comma_bound)]
        comma_bound: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Defect(_) => EXIT_DEFECT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => print!("nogo {ENGINE_VERSION}\n{}", render_text(v)),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports are serializable")
}

fn audit_report<C: EnumCat>(cat: &C) -> Result<RegularityReport, Failure> {
    Ok(audit_regularity(cat)?.report)
}

fn audit(
    instance: Instance,
    bound: Option<usize>,
    base: Option<usize>,
) -> Result<RegularityReport, Failure> {
    let set_like = matches!(instance, Instance::Finset | Instance::Finpos);
    if set_like && base.is_some() {
        return Err(usage(
            "--base-size applies only to the coslice and comma instances",
        ));
    }
    let base = base.unwrap_or(1);
    match instance {
        Instance::Finset => audit_report(&SetCat::new(bound.unwrap_or(3))?),
        Instance::Finpos => audit_report(&PosCat::new(bound.unwrap_or(4))?),
        Instance::Coslice => audit_report(&CosliceCat::new(base, bound.unwrap_or(3))?),
        Instance::Comma => audit_report(&CommaCat::new(base, bound.unwrap_or(3))?),
    }
}

fn counterexample(target: Target, base_size: usize) -> Result<Value, Failure> {
    match target {
        Target::Pos => {
            let b = pos_counterexample();
            if !b.pos_not_regular || b.pullback.len() != 2 || b.pullback.order().strict_count() != 0
            {
                return Err(
                    Error::Defect("poset counterexample failed re-verification".into()).into(),
                );
            }
            Ok(to_value(&b))
        }
        Target::Comma => {
            let base = FinSet::numbered(base_size);
            let cat = CommaCat::with_limits(base_size, 3, 4, 2)?;
            let b = lift_counterexample(&base, &cat)?;
            let pos = pos_counterexample();
            let shape = projection_s(&b.pullback);
            let leg = projection_s_mor(&b.u_prime);
            let matches = shape == pos.pullback && leg == pos.u_prime;
            if !b.verified() || !matches {
                return Err(
                    Error::Defect("lifted counterexample failed re-verification".into()).into(),
                );
            }
            let mut v = to_value(&b);
            v["projection"] = json!({
                "pullback": shape,
                "u_prime": leg,
                "equals_poset_bundle": matches,
            });
            Ok(v)
        }
        Target::CoeqDivergence => {
            let w = coequalizer_divergence();
            if w.preorder_coequalizer.len() != 2
                || w.poset_coequalizer.len() != 1
                || w.factorizations != 0
            {
                return Err(
                    Error::Defect("divergence witness failed re-verification".into()).into(),
                );
            }
            Ok(to_value(&w))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Audit {
            instance,
            bound,
            base_size,
        } => {
            let report = audit(instance, bound, base_size)?;
            emit(format, &to_value(&report));
            Ok(if report.is_clean() {
                EXIT_CLEAN
            } else {
                EXIT_WITNESS
            })
        }
        Command::Counterexample { target, base_size } => {
            emit(format, &counterexample(target, base_size)?);
            Ok(EXIT_CLEAN)
        }
        Command::Check { file, query } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            emit(format, &check::run(query, &text)?);
            Ok(EXIT_CLEAN)
        }
        Command::Nogo {
            base_size,
            coslice_bound,
            comma_bound,
        } => {
            let report = nogo(NoGoBounds {
                base_size,
                coslice_bound,
                comma_bound,
            })?;
            emit(format, &to_value(&report));
            Ok(match report.conclusion {
                Conclusion::ObstructionCertifiedAtBound => EXIT_CLEAN,
                Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return ExitCode::from(EXIT_DEFECT);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
