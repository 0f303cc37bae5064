use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncsec_cli::checks::{run_suite, Suite};
use ncsec_cli::figures::{figure_specs, DEFAULT_SAMPLES};
use ncsec_cli::spec::{default_workers, example_spec, parse, SpecError, WORKERS_ENV};
use ncsec_cli::sweep::{run_sweeps, to_csv};

#[derive(Parser)]
#[command(name = "ncsec", version, about = "Secrecy outage of network-coded cooperation: sweeps, figures and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a TOML spec file.
    Sweep {
        spec: PathBuf,
        /// Overrides the spec's `output`; `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce one figure's curve family (fig3 … fig10).
    Figure {
        id: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: closed_forms, oracle or statistical.
    Check { suite: String },
    /// Print a complete sweep spec with every default written out.
    PrintConfig,
}

enum Failure {
    Invalid(SpecError),
    Usage(String),
    Io(String),
    ChecksFailed,
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Invalid(e)
    }
}

fn write_output(csv: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, csv).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display())))
        }
        _ => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep { spec, out } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", spec.display())))?;
            let parsed = parse(&text)?;
            let resolved = parsed.validate()?;
            let csv = to_csv(&run_sweeps(std::slice::from_ref(&resolved)));
            write_output(&csv, out.as_deref().or(parsed.output.as_deref()))
        }
        Command::Figure { id, samples, seed, out } => {
            let specs = figure_specs(&id, samples, seed).map_err(|e| Failure::Usage(e.message))?;
            let resolved = specs.iter().map(|s| s.validate()).collect::<Result<Vec<_>, _>>()?;
            let csv = to_csv(&run_sweeps(&resolved));
            write_output(&csv, out.as_deref())
        }
        Command::Check { suite } => {
            let suite: Suite = suite.parse().map_err(Failure::Usage)?;
            let lines = run_suite(suite, default_workers()?);
            for l in &lines {
                println!("{l}");
            }
            if lines.iter().all(|l| l.passed) {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Command::PrintConfig => {
            println!("# Monte Carlo workers default to ${WORKERS_ENV}, else the number of cores.");
            println!("# mode \"auto\" picks inverse_transform for GNC with CSI and event_level otherwise.");
            print!("{}", toml::to_string(&example_spec()).expect("example spec serializes"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error kind=usage message={msg:?}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error kind=io message={msg:?}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
    }
}
