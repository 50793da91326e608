//! `qrm`: minimize configuration sets, evaluate QRML models, solve video
//! scenarios and check constraint safety on a sample.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qrm_core::json::{self, JsonError};
use qrm_core::pareto::{self, Configuration, ConfigurationSet};
use qrm_core::qrml::{self, QrmlError, Scope, TypeInfo, Typed};
use qrm_core::solver::{self, SolverError};

#[derive(Parser, Debug)]
#[command(
    name = "qrm",
    version,
    about = "Pareto-algebraic quality and resource management"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Writes the Pareto-minimal subset of a configuration set.
    Minimize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates one component of a QRML model.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        component: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solves a video-processing scenario.
    SolveVideo {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_platform_symmetry: bool,
        #[arg(long)]
        no_stream_symmetry: bool,
        /// Adds mapping counts and wall time to the output.
        #[arg(long)]
        stats: bool,
        /// Worker threads; the output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Checks on a sample that a constraint never excludes a dominating configuration.
    CheckSafety {
        #[arg(long = "in")]
        input: PathBuf,
        /// A QRML condition over the set's dimension names.
        #[arg(long)]
        constraint: String,
    },
}

mod exit {
    pub const INTERNAL: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const UNBOUNDED: u8 = 3;
    pub const INFEASIBLE: u8 = 4;
    pub const UNSAFE: u8 = 5;
}

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure {
            code: exit::INPUT,
            msg: msg.into(),
        }
    }

    fn internal(msg: impl Into<String>) -> Failure {
        Failure {
            code: exit::INTERNAL,
            msg: msg.into(),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Failure {
        match e {
            JsonError::Syntax(_) | JsonError::Schema { .. } => Failure::input(e.to_string()),
            JsonError::Pareto(_) => Failure::internal(e.to_string()),
        }
    }
}

impl From<QrmlError> for Failure {
    fn from(e: QrmlError) -> Failure {
        let code = match e {
            QrmlError::UnboundedDomain { .. } => exit::UNBOUNDED,
            QrmlError::Qrm(_) | QrmlError::Poset(_) | QrmlError::Pareto(_) => exit::INTERNAL,
            _ => exit::INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Failure {
        let code = match e {
            SolverError::InfeasibleScenario => exit::INFEASIBLE,
            SolverError::InvalidScenario(_) | SolverError::Video(_) => exit::INPUT,
            _ => exit::INTERNAL,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<pareto::ParetoError> for Failure {
    fn from(e: pareto::ParetoError) -> Failure {
        Failure::internal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    Ok(json::parse(&read(path)?)?)
}

fn write(out: Option<&Path>, j: &serde_json::Value) -> Result<(), Failure> {
    let text = json::render(j);
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::internal(format!("cannot write to standard output: {e}"))),
    }
}

/// Resolves the first path segment against the dimension names of a configuration.
struct DimScope<'a> {
    set: &'a ConfigurationSet,
    config: &'a Configuration,
}

impl Scope for DimScope<'_> {
    fn lookup(&self, path: &[String]) -> Result<Option<(Typed, usize)>, QrmlError> {
        let Some(first) = path.first() else {
            return Ok(None);
        };
        let dims = self.set.space().dims();
        Ok(dims.iter().position(|d| &d.name == first).map(|i| {
            let typed = Typed {
                value: self.config.get(i).clone(),
                ty: Some(TypeInfo::scalar(dims[i].poset.clone())),
            };
            (typed, 1)
        }))
    }
}

fn minimize(input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let set = json::set_from_json(&read_json(input)?)?;
    let min = pareto::minimize(&set)?;
    write(out, &json::set_to_json(&min))
}

fn evaluate(model: &Path, component: &str, out: Option<&Path>) -> Result<(), Failure> {
    let m = qrml::load(&read(model)?)?;
    let i = m.evaluate(component)?;
    write(out, &json::set_to_json(i.set()))
}

struct SolveArgs<'a> {
    scenario: &'a Path,
    out: Option<&'a Path>,
    no_platform_symmetry: bool,
    no_stream_symmetry: bool,
    stats: bool,
    jobs: Option<usize>,
}

fn solve_video(a: SolveArgs<'_>) -> Result<(), Failure> {
    let mut sc = json::scenario_from_json(&read_json(a.scenario)?)?;
    if a.no_platform_symmetry {
        sc.symmetry.platform = false;
    }
    if a.no_stream_symmetry {
        sc.symmetry.stream = false;
    }
    let result = match a.jobs {
        Some(0) => return Err(Failure::input("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::internal(e.to_string()))?
            .install(|| solver::solve(&sc))?,
        None => solver::solve(&sc)?,
    };
    log::info!(
        "{} mappings, {} after symmetry reduction, {:?}",
        result.stats.mappings_enumerated,
        result.stats.mappings_after_symmetry,
        result.stats.wall_time
    );
    write(a.out, &json::result_to_json(&result, a.stats))
}

fn check_safety(input: &Path, constraint: &str) -> Result<(), Failure> {
    let set = json::set_from_json(&read_json(input)?)?;
    let expr = qrml::parse_expr(constraint)?;
    let mut verdicts = HashMap::new();
    for c in set.iter() {
        let scope = DimScope {
            set: &set,
            config: c,
        };
        verdicts.insert(c.clone(), qrml::eval_bool(&expr, &scope)?);
    }
    let violation = pareto::find_safety_violation(|c| Ok(verdicts[c]), &set)?;
    match violation {
        None => {
            println!("safe on {} configurations", set.len());
            Ok(())
        }
        Some((lo, hi)) => {
            println!("unsafe: {lo} satisfies the constraint but the dominating {hi} does not");
            Err(Failure {
                code: exit::UNSAFE,
                msg: "constraint is not safe".into(),
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Minimize { input, out } => minimize(&input, out.as_deref()),
        Command::Evaluate {
            model,
            component,
            out,
        } => evaluate(&model, &component, out.as_deref()),
        Command::SolveVideo {
            scenario,
            out,
            no_platform_symmetry,
            no_stream_symmetry,
            stats,
            jobs,
        } => solve_video(SolveArgs {
            scenario: &scenario,
            out: out.as_deref(),
            no_platform_symmetry,
            no_stream_symmetry,
            stats,
            jobs,
        }),
        Command::CheckSafety { input, constraint } => check_safety(&input, &constraint),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("QRM_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
