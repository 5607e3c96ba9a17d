use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lrwp::config::{parse_config, Mode};
use lrwp::output::ensure_dir;
use lrwp::runs::{run_mode, run_sweep};
use lrwp::LrwpError;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Analytic,
    Validate,
    Momentum,
    Sweep,
}

impl From<Command> for Mode {
    fn from(c: Command) -> Self {
        match c {
            Command::Analytic => Mode::Analytic,
            Command::Validate => Mode::Validate,
            Command::Momentum => Mode::Momentum,
            Command::Sweep => Mode::Sweep,
        }
    }
}

/// Gaussian wave packets of a linearly driven particle: closed forms,
/// grid oracles and parameter sweeps, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "lrwp", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Run configuration (INI-style).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to `outputs` from the [run] section.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sweep worker count; defaults to the number of logical cores.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

fn fail(e: &LrwpError) -> ExitCode {
    eprintln!("lrwp: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("lrwp: {}: {e}", cli.config.display());
            return ExitCode::from(2);
        }
    };
    let cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("lrwp: {}: {e}", cli.config.display());
            return ExitCode::from(2);
        }
    };
    let Some(out) = cli.out.clone().or_else(|| cfg.run.outputs.clone()) else {
        eprintln!("lrwp: no output directory (pass --out or set `outputs` in [run])");
        return ExitCode::from(2);
    };
    if let Err(e) = ensure_dir(&out) {
        return fail(&e);
    }

    let mode = Mode::from(cli.command);
    if let Some(declared) = cfg.run.mode.filter(|m| *m != mode) {
        eprintln!("lrwp: warning: config declares mode `{declared}`, running `{mode}`");
    }
    match mode {
        Mode::Sweep => {
            let Some(sweep) = &cfg.run.sweep else {
                eprintln!("lrwp: sweep needs `sweep_axis` and `sweep_values` in [run]");
                return ExitCode::from(2);
            };
            match run_sweep(&cfg, sweep, &out, cli.jobs.map(usize::from)) {
                Ok(rows) => {
                    for row in rows.iter().filter(|r| r.status() != "ok") {
                        eprintln!("lrwp: {}={} {}: {}", sweep.axis, row.label, row.status(), row.message());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        mode => match run_mode(mode, &cfg, &out).and_then(|s| s.into_result()) {
            Ok(_) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
    }
}
