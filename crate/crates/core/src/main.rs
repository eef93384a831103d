use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use magnomech::cli::{self, CliError, Mode, PlotKind, EXIT_CONFIG, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "magnomech",
    version,
    about = "Magnon-magnon entanglement in cavity magnomechanics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file; omitted keys take baseline values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path, overrides `output` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for grid evaluation (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement at a single parameter point.
    Point(RunArgs),
    /// 1D or 2D grid of the entanglement.
    Sweep(RunArgs),
    /// Grid scan plus simplex refinement over 1-3 free parameters.
    Optimize(RunArgs),
    /// Hurwitz stability map on a grid.
    Stability(RunArgs),
    /// Write a gnuplot script for a sweep CSV.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        /// `heatmap` for 2D sweeps, `curve` for 1D sweeps.
        #[arg(long)]
        kind: String,
        /// Script path (default: the CSV path with a `.gp` extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run_mode(mode: Mode, args: RunArgs) -> Result<i32, CliError> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
        None => "{}".to_string(),
    };
    let mut cfg = cli::parse_config(&text, Some(mode))?;
    if args.out.is_some() {
        cfg.output = args.out;
    }
    if args.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let stdout = std::io::stdout();
    cli::run(&cfg, &mut stdout.lock())
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Point(a) => run_mode(Mode::Point, a),
        Command::Sweep(a) => run_mode(Mode::Sweep, a),
        Command::Optimize(a) => run_mode(Mode::Optimize, a),
        Command::Stability(a) => run_mode(Mode::Stability, a),
        Command::Plot { csv, kind, out } => {
            let kind: PlotKind = kind.parse()?;
            let script = out.unwrap_or_else(|| csv.with_extension("gp"));
            cli::emit_plot_script(&csv, kind, &script)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match dispatch(parsed.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("magnomech: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
