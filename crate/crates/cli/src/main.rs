use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trilinear::{Atlas, TriLinearMap};
use trilinear_cli::commands::{self, Format, Outcome, Settings, EXIT_INVALID};
use trilinear_cli::document::{parse_point, parse_target, InputError};
use trilinear_cli::{batch_code, run_batch, run_single};

/// Birationality, inverses and orbit classification for tri-linear maps
/// (P^1)^3 --> P^3.
///
/// Maps are read as a JSON document `{"format_version": "1", "entries": [...]}`
/// or as four comma-separated entries such as `x1*y1*z1, x0*y1*z1, ...`.
/// Exit codes: 0 success or birational, 1 negative answer, 2 invalid input.
/// Set TRILINEAR_FIXTURES to load orbit data from a file.
#[derive(Parser)]
#[command(name = "trilinear", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples for dominance and injectivity checks.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    /// Box of tri-degrees for syzygy tables, each at most 3.
    #[arg(long = "box", global = true, value_parser = parse_box, default_value = "2,2,2")]
    box_: [u32; 3],
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Args)]
struct MapInput {
    /// Document file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// The map given inline.
    #[arg(long, conflicts_with = "input")]
    map: Option<String>,
    /// Treat every non-empty line as a separate document.
    #[arg(long)]
    batch: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide birationality and report the type.
    Check(MapInput),
    /// Compute the inverse map with its composition certificate.
    Invert(MapInput),
    /// Identify the orbit of a birational map.
    Classify(MapInput),
    /// Minimal first-syzygy generator counts over `--box`.
    Syzygies(MapInput),
    /// The orbit representatives and their degenerations.
    Orbits {
        #[command(subcommand)]
        cmd: OrbitsCmd,
    },
    /// A random map in an orbit, as a document.
    Random {
        /// Orbit such as `(1,2,2)-7`.
        #[arg(long)]
        orbit: String,
    },
    /// Apply a map to a point, or its inverse to a target.
    Eval {
        #[command(flatten)]
        input: MapInput,
        /// Point `a0:a1, b0:b1, c0:c1`.
        #[arg(long, required_unless_present = "inverse", conflicts_with = "inverse")]
        point: Option<String>,
        /// Target `t0:t1:t2:t3` for the inverse map.
        #[arg(long)]
        inverse: Option<String>,
    },
    /// Fiber counting and random sampling.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand)]
enum OrbitsCmd {
    /// One row per representative.
    List,
    /// A single representative.
    Show { id: String },
    /// Known degenerations between orbits.
    Degenerations,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Solve for the fiber over a target (random when omitted).
    Fiber {
        #[command(flatten)]
        input: MapInput,
        /// Target `t0:t1:t2:t3`.
        #[arg(long)]
        target: Option<String>,
    },
    /// Sample dominance and injectivity.
    Sample {
        #[command(flatten)]
        input: MapInput,
    },
}

fn parse_box(s: &str) -> Result<[u32; 3], String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let b: [u32; 3] = v.try_into().map_err(|_| "expected three comma-separated degrees".to_string())?;
    if b.iter().any(|&d| d > 3) {
        return Err("degrees above 3 are not supported".into());
    }
    Ok(b)
}

fn read_input(m: &MapInput) -> Result<String, InputError> {
    if let Some(s) = &m.map {
        return Ok(s.clone());
    }
    let mut text = String::new();
    match &m.input {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| InputError::Io(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| InputError::Io(e.to_string()))?;
        }
    }
    Ok(text)
}

/// Run `f` over the documents of `m`; one outcome, or one per batch line.
fn with_maps<F>(m: &MapInput, f: F) -> Vec<Outcome>
where
    F: Fn(&TriLinearMap) -> Outcome + Sync,
{
    match read_input(m) {
        Ok(text) if m.batch => run_batch(&text, f),
        Ok(text) => vec![run_single(&text, f)],
        Err(e) => vec![Outcome::invalid(&e)],
    }
}

fn load_atlas() -> Result<Atlas, Outcome> {
    Atlas::from_env().map_err(|e| {
        Outcome::error(EXIT_INVALID, "fixture", e.to_string(), serde_json::json!({}))
    })
}

fn run(cli: &Cli) -> (Vec<Outcome>, bool) {
    let s = Settings {
        seed: cli.seed,
        trials: cli.trials,
        box_: cli.box_,
    };
    let batch = |m: &MapInput| m.batch;
    match &cli.cmd {
        Cmd::Check(m) => (with_maps(m, |phi| commands::check(phi, &s)), batch(m)),
        Cmd::Invert(m) => (with_maps(m, commands::invert_cmd), batch(m)),
        Cmd::Classify(m) => match load_atlas() {
            Ok(a) => (with_maps(m, |phi| commands::classify_cmd(&a, phi)), batch(m)),
            Err(o) => (vec![o], false),
        },
        Cmd::Syzygies(m) => (with_maps(m, |phi| commands::syzygies(phi, &s)), batch(m)),
        Cmd::Orbits { cmd } => {
            let a = match load_atlas() {
                Ok(a) => a,
                Err(o) => return (vec![o], false),
            };
            let o = match cmd {
                OrbitsCmd::List => commands::orbits_list(&a),
                OrbitsCmd::Show { id } => commands::orbits_show(&a, id),
                OrbitsCmd::Degenerations => commands::orbits_degenerations(&a),
            };
            (vec![o], false)
        }
        Cmd::Random { orbit } => match load_atlas() {
            Ok(a) => (vec![commands::random(&a, orbit, cli.seed)], false),
            Err(o) => (vec![o], false),
        },
        Cmd::Eval { input, point, inverse } => {
            let out = match (point, inverse) {
                (Some(p), _) => match parse_point(p) {
                    Ok(p) => with_maps(input, |phi| commands::eval_map(phi, &p)),
                    Err(e) => vec![Outcome::invalid(&e)],
                },
                (None, Some(t)) => match parse_target(t) {
                    Ok(t) => with_maps(input, |phi| commands::eval_inverse(phi, &t)),
                    Err(e) => vec![Outcome::invalid(&e)],
                },
                (None, None) => unreachable!("clap requires one of --point and --inverse"),
            };
            (out, batch(input))
        }
        Cmd::Oracle { cmd } => match cmd {
            OracleCmd::Fiber { input, target } => {
                let t = match target.as_deref().map(parse_target).transpose() {
                    Ok(t) => t,
                    Err(e) => return (vec![Outcome::invalid(&e)], false),
                };
                (with_maps(input, |phi| commands::oracle_fiber(phi, t.as_ref(), &s)), batch(input))
            }
            OracleCmd::Sample { input } => (with_maps(input, |phi| commands::oracle_sample(phi, &s)), batch(input)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Structured => Format::Structured,
    };
    let (outcomes, batch) = run(&cli);
    let mut out = std::io::stdout().lock();
    for (i, o) in outcomes.iter().enumerate() {
        if batch && format == Format::Text && i > 0 {
            let _ = writeln!(out);
        }
        let _ = writeln!(out, "{}", o.render(format, batch));
    }
    ExitCode::from(batch_code(&outcomes) as u8)
}
