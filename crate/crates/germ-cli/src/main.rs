use std::io::{self, Write};
use std::process::{self, ExitCode};

use clap::{Args, Parser, Subcommand};
use germ_cli::run::{self, Method, Output, RunConfig};
use germ_cli::{report, Diag};

/// Exact local geometry of plane curve germs: intersection numbers,
/// blow-ups, jet groups, and word-ball probes of diffeomorphism groups.
///
/// Values are written in a small expression language: `curve(t^2; t^3)`,
/// `diff(x, y + e*x + x^2)`, `vf(0; x^2)`, `group(diff(...), diff(...))`.
/// Reports are JSON on stdout; `--table` renders them as indented text.
#[derive(Parser)]
#[command(name = "germ", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Args)]
struct CommonOpts {
    /// Truncation order for every evaluated series
    #[arg(long, global = true, default_value_t = 24)]
    trunc: u32,
    /// Blow-up depth for near-point walks
    #[arg(long, global = true, default_value_t = 12)]
    depth: u32,
    /// Word-ball radius for group subcommands
    #[arg(long, global = true, default_value_t = 3)]
    ball: u32,
    /// Jet level for jet matrices and determination checks
    #[arg(long, global = true, default_value_t = 1)]
    jet: u32,
    /// Intersection method: order, noether, or both
    #[arg(long, global = true, default_value = "both")]
    method: String,
    /// Cap on words evaluated during ball enumeration
    #[arg(long, global = true, default_value_t = 20_000)]
    max_words: usize,
    /// Optional wall-clock budget for ball enumeration, in milliseconds
    #[arg(long, global = true)]
    time_budget_ms: Option<u64>,
    /// Render the report as indented text instead of JSON
    #[arg(long, global = true, default_value_t = false)]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection number of two curves
    Intersect { alpha: String, beta: String },
    /// Infinitely near points of a curve: multiplicities, points, transforms
    Inp { curve: String },
    /// One blow-up: the near point and the strict transform
    Blowup { curve: String },
    /// Lift a diffeomorphism or vector field through the blow-up of a line
    ///
    /// LINE is the linear form cutting the line out, e.g. `y` or `x+2*y`.
    Lift { map: String, line: String },
    /// Apply a diffeomorphism to a curve
    Act { map: String, curve: String },
    /// Exponentiate a vector field with nilpotent linear part
    Exp { vfield: String },
    /// Infinitesimal generator of a unipotent diffeomorphism
    Log { map: String },
    /// Matrix of the jet-level action on the graded monomial basis
    JetMatrix { map: String },
    /// Probe whether the jet level determines word-ball elements
    FdCheck { group: String },
    /// Intersection numbers of a curve with its word-ball images
    UiProbe { group: String, curve: String },
    /// Near-point prefix tree of a curve's word-ball orbit
    OrbitTree { group: String, curve: String },
    /// Sample iterated commutators and classify them
    Derived {
        group: String,
        /// How many times to iterate the commutator sampling
        #[arg(long, default_value_t = 1)]
        rounds: u32,
    },
    /// Run commands from a file, one per line (quotes group arguments)
    Batch { file: String },
}

fn config_from(opts: &CommonOpts) -> Result<RunConfig, Diag> {
    let method: Method = opts.method.parse().map_err(|e: String| Diag::new(0, 0, e))?;
    let cfg = RunConfig {
        trunc: opts.trunc,
        depth: opts.depth,
        ball: opts.ball,
        jet: opts.jet,
        method,
        max_words: opts.max_words,
        time_budget_ms: opts.time_budget_ms,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cfg: &RunConfig, command: &Command) -> Result<Output, Diag> {
    match command {
        Command::Intersect { alpha, beta } => run::intersect(cfg, alpha, beta),
        Command::Inp { curve } => run::inp(cfg, curve),
        Command::Blowup { curve } => run::blowup_once(cfg, curve),
        Command::Lift { map, line } => run::lift(cfg, map, line),
        Command::Act { map, curve } => run::act(cfg, map, curve),
        Command::Exp { vfield } => run::exp(cfg, vfield),
        Command::Log { map } => run::log(cfg, map),
        Command::JetMatrix { map } => run::jet_matrix(cfg, map),
        Command::FdCheck { group } => run::fd_check(cfg, group),
        Command::UiProbe { group, curve } => run::ui_probe(cfg, group, curve),
        Command::OrbitTree { group, curve } => run::orbit_tree(cfg, group, curve),
        Command::Derived { group, rounds } => run::derived(cfg, group, *rounds),
        Command::Batch { .. } => Err(Diag::new(0, 0, "batch files cannot contain batch commands")),
    }
}

fn emit(output: &Output, table: bool) {
    let text = if table {
        match serde_json::from_str::<serde_json::Value>(&output.json) {
            Ok(v) => report::to_table(&v),
            Err(_) => format!("{}\n", output.json),
        }
    } else {
        format!("{}\n", output.json)
    };
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        // The reader went away (e.g. piped into `head`): stop quietly.
        if e.kind() == io::ErrorKind::BrokenPipe {
            process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        process::exit(1);
    }
}

/// Split a batch line into arguments; double quotes group words.
fn split_line(line: &str) -> Result<Vec<String>, Diag> {
    let mut args = Vec::new();
    let mut cur = String::new();
    let mut in_quotes = false;
    let mut had_quotes = false;
    for c in line.chars() {
        match c {
            '"' => {
                in_quotes = !in_quotes;
                had_quotes = true;
            }
            c if c.is_whitespace() && !in_quotes => {
                if !cur.is_empty() || had_quotes {
                    args.push(std::mem::take(&mut cur));
                    had_quotes = false;
                }
            }
            c => cur.push(c),
        }
    }
    if in_quotes {
        return Err(Diag::new(0, 0, "unterminated quote in batch line"));
    }
    if !cur.is_empty() || had_quotes {
        args.push(cur);
    }
    Ok(args)
}

fn run_batch(path: &str, table: bool) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return 1;
        }
    };
    let mut worst = 0u8;
    for (num, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let code = run_batch_line(line, table).unwrap_or_else(|diag| {
            eprintln!("line {}: {}", num + 1, diag);
            1
        });
        worst = worst.max(code);
    }
    worst
}

fn run_batch_line(line: &str, table: bool) -> Result<u8, Diag> {
    let mut argv = vec!["germ".to_string()];
    argv.extend(split_line(line)?);
    let cli = Cli::try_parse_from(&argv).map_err(|e| Diag::new(0, 0, e.to_string()))?;
    if matches!(cli.command, Command::Batch { .. }) {
        return Err(Diag::new(0, 0, "batch files cannot contain batch commands"));
    }
    let cfg = config_from(&cli.opts)?;
    let output = dispatch(&cfg, &cli.command)?;
    emit(&output, table || cli.opts.table);
    Ok(if output.capped { 2 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Batch { file } = &cli.command {
        return ExitCode::from(run_batch(file, cli.opts.table));
    }
    let result = config_from(&cli.opts).and_then(|cfg| dispatch(&cfg, &cli.command));
    match result {
        Ok(output) => {
            emit(&output, cli.opts.table);
            ExitCode::from(if output.capped { 2 } else { 0 })
        }
        Err(diag) => {
            eprintln!("{diag}");
            ExitCode::from(1)
        }
    }
}
