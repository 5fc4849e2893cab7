use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tangle_cli::commands::{self, CliError, CliResult, RunConfig};
use tangle_cli::render::Style;
use tangle_core::Class;

#[derive(Parser)]
#[command(name = "tangles", version, about = "Enumerate prime k-tangle projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate all projections up to --max-n crossings and count them.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        /// Classes to count: proj, alt, reduced, weakfilter.
        #[arg(long, value_delimiter = ',', default_value = "proj")]
        class: Vec<Class>,
        /// Only count projections with 2k legs for this k.
        #[arg(long)]
        legs: Option<usize>,
        /// Directory for counts.tsv, catalogs and level files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Continue from the level files already in --out.
        #[arg(long)]
        resume: bool,
    },
    /// Compare counts with the published tables.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "proj,alt,reduced")]
        class: Vec<Class>,
        /// counts.tsv from an earlier run; computed on the fly if absent.
        #[arg(long)]
        counts: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Draw a code as SVG.
    Render {
        code: String,
        #[arg(long, value_enum, default_value = "cascade")]
        style: Style,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the canonical code of the projection a code draws.
    Canonicalize { code: String },
    /// Print the invariant root-code.
    Rootcode { code: String },
    /// Print the width profile and the map.
    Expand { code: String },
    /// Print every canonical code flype-equivalent to a code.
    FlypeClass { code: String },
}

fn default_workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn run(cli: Cli) -> CliResult<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut log = io::stderr();
    let text = match cli.command {
        Command::Enumerate {
            max_n,
            class,
            legs,
            out: dir,
            workers,
            resume,
        } => {
            let cfg = RunConfig {
                max_n,
                classes: class,
                legs,
                out: dir,
                workers: default_workers(workers),
                resume,
            };
            let res = commands::run_enumerate(&cfg, &mut log)?;
            for t in &res.tables {
                writeln!(out, "{}", commands::totals_line(t))?;
            }
            return Ok(());
        }
        Command::Verify {
            max_n,
            class,
            counts,
            workers,
        } => {
            let diff = commands::run_verify(
                max_n,
                &class,
                counts.as_deref(),
                default_workers(workers),
                &mut out,
                &mut log,
            )?;
            if !diff.is_empty() {
                return Err(CliError::Mismatch(diff.len()));
            }
            return Ok(());
        }
        Command::Render { code, style, out: file } => {
            let svg = commands::cmd_render(&code, style)?;
            if let Some(f) = file {
                std::fs::write(f, svg)?;
                return Ok(());
            }
            svg
        }
        Command::Canonicalize { code } => commands::cmd_canonicalize(&code)? + "\n",
        Command::Rootcode { code } => commands::cmd_rootcode(&code)? + "\n",
        Command::Expand { code } => commands::cmd_expand(&code)?,
        Command::FlypeClass { code } => commands::cmd_flype_class(&code)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tangles: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
