use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use brillouin::config::{ConfigError, OutputFormat, ScenarioConfig, SweepRange};
use brillouin::model::HZ_PER_GHZ;
use brillouin::stokes::diagonalize_stokes;
use brillouin::sweep::{self, Table};
use brillouin::verify::run_verify;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;

const AUDIT_TOLERANCE: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "brillouin", version, about = "Photon-phonon entanglement from inter-modal Brillouin scattering")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML); defaults describe the silicon-nanowire point.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, global = true, value_name = "N")]
    points: Option<usize>,
    #[arg(long, global = true, value_name = "X", allow_negative_numbers = true)]
    min: Option<f64>,
    #[arg(long, global = true, value_name = "X", allow_negative_numbers = true)]
    max: Option<f64>,
    /// Fock-space truncation n_max.
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Stokes normal modes and squeezing over the half detuning delta_s (GHz).
    StokesSweep,
    /// Polariton frequencies and fractions over the half detuning delta_as (GHz).
    AntistokesSweep,
    /// Compare the closed forms with the truncated Fock-space oracle.
    Verify,
    /// Pair amplitudes of the two-mode squeezed vacuum.
    State {
        /// Squeeze parameter; defaults to r at the configured delta_s.
        #[arg(long, value_name = "R")]
        squeeze: Option<f64>,
    },
    /// Thermal phonon occupation over temperature (--min/--max in kelvin).
    Thermal {
        /// Mode frequency; defaults to the configured phonon frequency.
        #[arg(long, value_name = "GHZ")]
        freq_ghz: Option<f64>,
    },
}

enum Failure {
    Validation(String),
    Verification(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<brillouin::Error> for Failure {
    fn from(e: brillouin::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFICATION)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let cfg = match &common.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    let format = common.format.unwrap_or(cfg.output.format);
    let out = common.out.as_deref().or(cfg.output.path.as_deref());
    let truncation = common.truncation.unwrap_or(cfg.oracle.truncation);

    match cli.command {
        Command::StokesSweep => {
            let table = sweep::run_stokes_sweep(&cfg, &sweep_range(common, &cfg)?)?;
            report_flagged(&table);
            emit(out, &table.render(format))?;
            audit(sweep::audit_stokes_table(&table, AUDIT_TOLERANCE), "delta_s")
        }
        Command::AntistokesSweep => {
            let table = sweep::run_antistokes_sweep(&cfg, &sweep_range(common, &cfg)?)?;
            report_flagged(&table);
            emit(out, &table.render(format))?;
            audit(sweep::audit_antistokes_table(&table, AUDIT_TOLERANCE), "delta_as")
        }
        Command::Verify => {
            let report = run_verify(&cfg, truncation)?;
            let text = match format {
                OutputFormat::Json => report.render_json(),
                OutputFormat::Csv => report.render_text(),
            };
            emit(out, &text)?;
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<_> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name)
                    .collect();
                Err(Failure::Verification(failed.join(", ")))
            }
        }
        Command::State { squeeze } => {
            let r = match squeeze {
                Some(r) => r,
                None => diagonalize_stokes(&cfg.stokes_params(cfg.operating_point.delta_s_ghz)?)?.r,
            };
            let table = sweep::run_state_dump(r, truncation)?;
            emit(out, &table.render(format))
        }
        Command::Thermal { freq_ghz } => {
            let freq_hz = freq_ghz.unwrap_or(cfg.phonon.frequency_ghz) * HZ_PER_GHZ;
            let range = SweepRange::new(
                common.min.unwrap_or(1e-3),
                common.max.unwrap_or(300.0),
                common.points.unwrap_or(200),
            )?;
            let table = sweep::run_thermal(freq_hz, &range)?;
            emit(out, &table.render(format))
        }
    }
}

fn sweep_range(common: &Common, cfg: &ScenarioConfig) -> Result<SweepRange, ConfigError> {
    SweepRange::new(
        common.min.unwrap_or(cfg.sweep.min_ghz),
        common.max.unwrap_or(cfg.sweep.max_ghz),
        common.points.unwrap_or(cfg.sweep.points),
    )
}

fn report_flagged(table: &Table) {
    let flagged = table.flagged_rows();
    if flagged > 0 {
        eprintln!("warning: {flagged} of {} rows flagged", table.rows.len());
    }
}

fn audit(offending: Vec<f64>, variable: &str) -> Result<(), Failure> {
    if offending.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "row invariants violated at {variable} = {offending:?}"
        )))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::Validation(format!("cannot write output: {e}")))
}
