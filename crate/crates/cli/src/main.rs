//! `cubeplan`: motion planning for the robotic arm in a tunnel, plus CAT(0)
//! certification of cube complexes and PIPs given as JSON.

mod render;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubeplan::arm::{arm_pip, enumerate_states, ArmError, ArmPlanner};
use cubeplan::complex::{is_cat0, realize, Certificate, ComplexError, ComplexJson, CubeComplex, Refutation};
use cubeplan::pip::{PipError, PipJson, ValidateOptions};
use cubeplan::{ArmSpec, ArmState, Guard, Metric, GUARD_ENV_VAR};

use render::Format;

#[derive(Parser)]
#[command(
    name = "cubeplan",
    version,
    about = "Optimal motion planning on CAT(0) cube complexes"
)]
#[command(after_help = format!("The state ceiling for every enumeration is read from {GUARD_ENV_VAR}."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ArmArgs {
    /// Tunnel height m.
    #[arg(long)]
    height: usize,
    /// Number of links n.
    #[arg(long)]
    length: usize,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    arm: ArmArgs,
    /// Start state as a direction word, e.g. RRUR.
    #[arg(long)]
    from: String,
    /// Target state as a direction word.
    #[arg(long)]
    to: String,
    #[arg(long, default_value = "l1")]
    metric: Metric,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the valid arm states in lexicographic order (D < R < U).
    Enumerate {
        #[command(flatten)]
        arm: ArmArgs,
        /// Print only the number of states.
        #[arg(long)]
        count_only: bool,
    },
    /// Print the PIP of the arm's configuration space.
    Pip {
        #[command(flatten)]
        arm: ArmArgs,
        /// Root state; defaults to the straight arm.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: PipFormat,
    },
    /// Certify that a configuration space is CAT(0), or print a witness.
    Check {
        #[arg(long, requires = "length", conflicts_with = "pip")]
        height: Option<usize>,
        #[arg(long, requires = "height", conflicts_with = "pip")]
        length: Option<usize>,
        /// A PIP or cube complex JSON file.
        #[arg(long, required_unless_present = "height")]
        pip: Option<PathBuf>,
        /// Root vertex name for a complex file, or root state for an arm.
        #[arg(long)]
        root: Option<String>,
    },
    /// Plan an l1 or linf geodesic between two arm states.
    Geodesic {
        #[command(flatten)]
        pair: PairArgs,
        /// Write one frame per visited state into this directory.
        #[arg(long)]
        frames_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
    /// Breadth-first distance on the configuration space, for cross-checking.
    Oracle {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Draw one arm state.
    Render {
        #[command(flatten)]
        arm: ArmArgs,
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
}

/// Exit codes: 1 refuted, 2 bad input, 3 resource guard.
enum Failure {
    Refuted(String),
    Usage(String),
    Guard(String),
}

impl Failure {
    fn usage(e: impl Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ArmError> for Failure {
    fn from(e: ArmError) -> Self {
        match e {
            ArmError::GuardExceeded { .. }
            | ArmError::Complex(ComplexError::Pip(PipError::GuardExceeded { .. })) => {
                Failure::Guard(e.to_string())
            }
            ArmError::NotCat0(r) => Failure::Refuted(r.to_string()),
            other => Failure::usage(other),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Pip(PipError::GuardExceeded { .. }) => Failure::Guard(e.to_string()),
            other => Failure::usage(other),
        }
    }
}

type Outcome = Result<String, Failure>;

fn spec(a: ArmArgs) -> Result<ArmSpec, Failure> {
    Ok(ArmSpec::new(a.height, a.length)?)
}

fn parse_state(spec: ArmSpec, word: &str) -> Result<ArmState, Failure> {
    Ok(spec.state(word)?)
}

fn enumerate(arm: ArmArgs, count_only: bool, guard: Guard) -> Outcome {
    let states = enumerate_states(spec(arm)?, guard)?;
    if count_only {
        return Ok(format!("{}\n", states.len()));
    }
    Ok(states.iter().map(|s| format!("{s}\n")).collect())
}

fn pip(arm: ArmArgs, root: Option<&str>, format: PipFormat, guard: Guard) -> Outcome {
    let spec = spec(arm)?;
    let root = match root {
        Some(w) => parse_state(spec, w)?,
        None => spec.straight(),
    };
    let cert = arm_pip(spec, &root, guard)?;
    Ok(match format {
        PipFormat::Json => json_line(&cert.pip().to_json()),
        PipFormat::Dot => cert.pip().to_dot(),
    })
}

fn json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn summary(cert: &Certificate, vertices: usize) -> String {
    let counts: Vec<String> = cert.face_counts.iter().map(u64::to_string).collect();
    format!(
        "certified CAT(0)\nvertices: {vertices}\nhyperplanes: {}\nmax cube dimension: {}\nface counts: {}\neuler characteristic: {}\n",
        cert.hyperplane_count,
        cert.max_cube_dim,
        counts.join(" "),
        cert.euler_characteristic
    )
}

fn refuted(r: &Refutation) -> Failure {
    Failure::Refuted(format!("not CAT(0): {r}\n{}", json_line(r).trim_end()))
}

fn certify(x: &CubeComplex, root: usize) -> Outcome {
    is_cat0(x, root)
        .map(|c| summary(&c, x.vertex_count()))
        .map_err(|r| refuted(&r))
}

fn check_file(path: &Path, root: Option<&str>, guard: Guard) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Failure::usage)?;
    if value.get("vertices").is_some() {
        let json: ComplexJson = serde_json::from_value(value).map_err(Failure::usage)?;
        let x = json.into_complex()?;
        let root = match root {
            Some(name) => x
                .vertex_id(name)
                .ok_or_else(|| Failure::usage(format!("unknown root vertex {name}")))?,
            None => x.root().unwrap_or(0),
        };
        return certify(&x, root);
    }
    let json: PipJson = serde_json::from_value(value).map_err(Failure::usage)?;
    let pip = json
        .into_pip()
        .map_err(Failure::usage)?
        .close()
        .map_err(Failure::usage)?;
    let report = pip.validate(ValidateOptions::default());
    if !report.is_valid() {
        return Err(refuted(&Refutation::InvalidPip { report }));
    }
    let realization = realize(&pip, guard)?;
    let x = realization.complex;
    certify(&x, x.root().unwrap_or(0))
}

fn check(arm: Option<ArmArgs>, file: Option<&Path>, root: Option<&str>, guard: Guard) -> Outcome {
    match (arm, file) {
        (Some(arm), _) => {
            let spec = spec(arm)?;
            let root = match root {
                Some(w) => parse_state(spec, w)?,
                None => spec.straight(),
            };
            let x = cubeplan::arm::build_complex(spec, guard)?;
            let v = x.vertex_id(&root.to_string()).expect("valid state is a vertex");
            certify(&x, v)
        }
        (None, Some(path)) => check_file(path, root, guard),
        (None, None) => Err(Failure::usage("give --height/--length or --pip")),
    }
}

fn endpoints(pair: &PairArgs, guard: Guard) -> Result<(ArmPlanner, ArmState, ArmState), Failure> {
    let spec = spec(pair.arm)?;
    let from = parse_state(spec, &pair.from)?;
    let to = parse_state(spec, &pair.to)?;
    Ok((ArmPlanner::new(spec, guard)?, from, to))
}

fn plan(pair: &PairArgs, frames: Option<&Path>, format: Format, guard: Guard) -> Outcome {
    let (planner, from, to) = endpoints(pair, guard)?;
    let (plan, states) = planner.plan(&from, &to, pair.metric)?;
    if let Some(dir) = frames {
        write_frames(dir, planner.spec, &states, format)?;
    }
    Ok(json_line(&planner.plan_json(&plan)))
}

fn write_frames(dir: &Path, spec: ArmSpec, states: &[ArmState], format: Format) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::usage(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for (k, s) in states.iter().enumerate() {
        let path = dir.join(format!("{k:04}.{}", format.extension()));
        fs::write(path, render::render(spec, s, format)).map_err(io)?;
    }
    Ok(())
}

fn oracle(pair: &PairArgs, guard: Guard) -> Outcome {
    let (planner, from, to) = endpoints(pair, guard)?;
    Ok(format!("{}\n", planner.oracle_distance(&from, &to, pair.metric)?))
}

fn run(cli: Cli) -> Outcome {
    let guard = Guard::from_env();
    match cli.command {
        Command::Enumerate { arm, count_only } => enumerate(arm, count_only, guard),
        Command::Pip { arm, root, format } => pip(arm, root.as_deref(), format, guard),
        Command::Check {
            height,
            length,
            pip,
            root,
        } => {
            let arm = height
                .zip(length)
                .map(|(height, length)| ArmArgs { height, length });
            check(arm, pip.as_deref(), root.as_deref(), guard)
        }
        Command::Geodesic {
            pair,
            frames_dir,
            format,
        } => plan(&pair, frames_dir.as_deref(), format, guard),
        Command::Oracle { pair } => oracle(&pair, guard),
        Command::Render { arm, state, format } => {
            let spec = spec(arm)?;
            Ok(render::render(spec, &parse_state(spec, &state)?, format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refuted(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg} (raise {GUARD_ENV_VAR} to allow more)");
            ExitCode::from(3)
        }
    }
}
