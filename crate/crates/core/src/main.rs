use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pspectrum::commands::{cmd_eigen, cmd_fig, cmd_table1, Figure, FigureOptions, Grid};
use pspectrum::output::{Cell, Format, OutputRecord};
use pspectrum::{EigenSolveConfig, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "pspectrum", version, about = "Spectra of central potentials via P-representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Output format: csv, json or text.
    #[arg(long)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one radial eigenvalue, e.g. `--pot "pow:1 + pow:-1 * -1" -n 1 -l 0`.
    Eigen {
        /// Potential: terms `pow:<q> [* c]` or `log [* c]` joined by `+`.
        #[arg(long, allow_hyphen_values = true)]
        pot: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: u32,
        #[arg(short = 'l', default_value_t = 0)]
        l: u32,
        /// Relative energy tolerance.
        #[arg(long, default_value_t = default_tol())]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Interpolated versus exact energies for V = r^{1/2}, n ≤ 5, ℓ ≤ 4.
    Table1 {
        #[arg(long, default_value_t = default_tol())]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Figure dataset: 1 eigenvalues, 2 P-curves, 4 envelopes, 5 and 6 quark sweeps.
    Fig {
        id: u32,
        /// q grid `lo:hi:steps` within [-1, 2] (figures 1 and 2).
        #[arg(long, allow_hyphen_values = true)]
        qgrid: Option<Grid>,
        /// Linear strength grid `lo:hi:steps` (figures 5 and 6).
        #[arg(long)]
        bgrid: Option<Grid>,
        /// Coupling grid `lo:hi:steps` (figure 4).
        #[arg(long)]
        vgrid: Option<Grid>,
        #[arg(long, default_value_t = default_tol())]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn default_tol() -> f64 {
    EigenSolveConfig::default().energy_tolerance
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Unconverged,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eigen { pot, n, l, tol, output } => {
            let rec = cmd_eigen(&pot, n, l, tol).map_err(Failure::Lib)?;
            emit(&rec, &output, Format::Json)?;
            let flag = rec.column_index("converged").map(|i| rec.rows[0][i]);
            if flag != Some(Cell::Int(1)) {
                return Err(Failure::Unconverged);
            }
        }
        Command::Table1 { tol, output } => {
            let rec = cmd_table1(tol).map_err(Failure::Lib)?;
            emit(&rec, &output, Format::Csv)?;
            // A CSV file gets an aligned-text companion next to it.
            if let (Some(path), Format::Csv) = (&output.out, output.format.unwrap_or(Format::Csv)) {
                write(&path.with_extension("txt"), &rec.to_text())?;
            }
        }
        Command::Fig { id, qgrid, bgrid, vgrid, tol, output } => {
            let figure = Figure::from_id(id).map_err(Failure::Lib)?;
            let opts = FigureOptions { qgrid, bgrid, vgrid, tolerance: tol };
            let rec = cmd_fig(figure, &opts).map_err(Failure::Lib)?;
            emit(&rec, &output, Format::Csv)?;
        }
    }
    Ok(())
}

fn emit(rec: &OutputRecord, args: &OutputArgs, default: Format) -> Result<(), Failure> {
    let text = rec.render(args.format.unwrap_or(default));
    match &args.out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE })
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Unconverged) => {
            eprintln!("error: eigenvalue did not converge to the requested state");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
