use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eqtri_cli::commands::{
    build, export, homology_of_file, parse_checks, parse_file, render_homology, verify, ExportFormat, Target,
};
use eqtri_cli::CliError;

/// Build and verify Z_3^n-equivariant triangulations of tori, CP^n and toric manifolds.
#[derive(Parser)]
#[command(name = "eqtri", version)]
struct Cli {
    /// Suppress warnings and progress messages.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a complex and write it in canonical form.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
        /// Output path (default: stdout).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// canonical, json or facets-only.
        #[arg(long, global = true, default_value = "canonical")]
        format: String,
        /// Raise the dimension limit (3 for cpn/toric/block, 6 for torus/cube).
        #[arg(long, global = true)]
        max_n: Option<usize>,
    },
    /// Run checks on a complex file; exits 1 if any fails.
    Verify {
        input: PathBuf,
        /// Comma-separated subset of complex,pure,pseudomanifold,equivariance,links,counts, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// text or json.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer homology, Euler characteristic and f-vector.
    Homology {
        input: PathBuf,
        /// text or json.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a complex file as canonical text, json or a facet list.
    Export {
        input: PathBuf,
        #[arg(long, default_value = "canonical")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildTarget {
    /// The 3^n-vertex torus.
    Torus { n: usize },
    /// The cube triangulation on the 1/3-grid.
    Cube { n: usize },
    /// A coned torus block, one letter per factor: s circle, c coned, z coned onto the diagonal circle.
    Block { spec: String },
    /// CP^n.
    Cpn { n: usize },
    /// The toric manifold over a simple polytope with a characteristic function.
    Toric { polytope: PathBuf, characteristic: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_flag(format: &str) -> Result<bool, CliError> {
    match format {
        "text" => Ok(false),
        "json" => Ok(true),
        _ => Err(CliError::Usage(format!("unknown format {format:?}; expected text or json"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Build { target, out, format, max_n } => {
            let format: ExportFormat = format.parse()?;
            let target = match target {
                BuildTarget::Torus { n } => Target::Torus(n),
                BuildTarget::Cube { n } => Target::Cube(n),
                BuildTarget::Block { spec } => Target::Block(spec),
                BuildTarget::Cpn { n } => Target::Cpn(n),
                BuildTarget::Toric { polytope, characteristic } => {
                    Target::Toric { polytope: read(&polytope)?, characteristic: read(&characteristic)? }
                }
            };
            let (file, warning) = build(&target, max_n)?;
            if let Some(w) = warning.filter(|_| !cli.quiet) {
                eprintln!("{w}");
            }
            emit(out.as_deref(), &export(&file, format))
        }
        Cmd::Verify { input, checks, format, out } => {
            let json_out = json_flag(&format)?;
            let checks = parse_checks(&checks)?;
            let file = parse_file(&read(&input)?)?;
            let report = verify(&file, checks.as_deref())?;
            let text = if json_out { report.render_json() } else { report.render_text() };
            if !(cli.quiet && out.is_none()) {
                emit(out.as_deref(), &text)?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
        Cmd::Homology { input, format, out } => {
            let json_out = json_flag(&format)?;
            let file = parse_file(&read(&input)?)?;
            let h = homology_of_file(&file);
            emit(out.as_deref(), &render_homology(&file, &h, json_out))
        }
        Cmd::Export { input, format, out } => {
            let format: ExportFormat = format.parse()?;
            let file = parse_file(&read(&input)?)?;
            emit(out.as_deref(), &export(&file, format))
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TORIC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("TORIC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e != CliError::VerifyFailed {
                eprintln!("eqtri: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
