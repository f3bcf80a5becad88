//! Tables emitted by the command-line sweeps.
//!
//! Cells are formatted with nine significant digits (`%.9g` style) so the CSV
//! output is byte-stable for a fixed configuration. JSON mirrors the CSV: one
//! object per row, numbers re-parsed from the formatted cells.

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::antistokes::{diagonalize_antistokes, Polariton};
use crate::config::{ConfigError, OutputFormat, ScenarioConfig, SweepRange};
use crate::environment::thermal_occupation;
use crate::error::Error;
use crate::stokes::{diagonalize_stokes, squeezed_amplitudes, squeezed_statistics};

pub const STOKES_COLUMNS: [&str; 8] = [
    "delta_s",
    "omega_alpha",
    "omega_beta",
    "omega_0",
    "cosh2",
    "sinh2",
    "r",
    "entropy",
];

pub const ANTISTOKES_COLUMNS: [&str; 7] = [
    "delta_as",
    "omega_plus",
    "omega_minus",
    "x_plus_sq",
    "y_plus_sq",
    "x_minus_sq",
    "y_minus_sq",
];

pub const STATE_COLUMNS: [&str; 4] = ["n", "amplitude", "probability", "ratio"];

pub const THERMAL_COLUMNS: [&str; 2] = ["temperature_k", "n_thermal"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    StabilityViolation,
    DegenerateCoupling,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::StabilityViolation => "stability_violation",
            RowStatus::DegenerateCoupling => "degenerate_coupling",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// `None` for quantities undefined at a flagged point.
    pub cells: Vec<Option<f64>>,
    pub status: RowStatus,
}

impl Row {
    fn ok(cells: Vec<f64>) -> Row {
        Row {
            cells: cells.into_iter().map(Some).collect(),
            status: RowStatus::Ok,
        }
    }

    fn flagged(x: f64, width: usize, status: RowStatus) -> Row {
        let mut cells = vec![None; width];
        cells[0] = Some(x);
        Row { cells, status }
    }

    pub fn get(&self, col: usize) -> Option<f64> {
        self.cells[col]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// Sweep tables carry a trailing `status` column.
    pub with_status: bool,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn flagged_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.status != RowStatus::Ok).count()
    }

    fn header(&self) -> Vec<&'static str> {
        let mut h = self.columns.clone();
        if self.with_status {
            h.push("status");
        }
        h
    }

    fn formatted_rows(&self) -> impl Iterator<Item = (Vec<String>, RowStatus)> + '_ {
        self.rows.iter().map(|row| {
            let cells = row
                .cells
                .iter()
                .map(|c| c.map(format_sig9).unwrap_or_default())
                .collect();
            (cells, row.status)
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for (mut cells, status) in self.formatted_rows() {
            if self.with_status {
                cells.push(status.as_str().to_string());
            }
            w.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .formatted_rows()
            .map(|(cells, status)| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(cells) {
                    let v = cell
                        .parse::<f64>()
                        .ok()
                        .and_then(serde_json::Number::from_f64)
                        .map(Value::Number)
                        .unwrap_or(Value::Null);
                    obj.insert((*name).to_string(), v);
                }
                if self.with_status {
                    obj.insert("status".into(), Value::String(status.as_str().into()));
                }
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
        text.push('\n');
        text
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// `%.9g`-style formatting: nine significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 ≤ |x| < 1e9`.
pub fn format_sig9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Closed-form Stokes quantities over the half detuning `δ_s`. Unstable points
/// are kept and flagged.
pub fn run_stokes_sweep(cfg: &ScenarioConfig, range: &SweepRange) -> Result<Table, ConfigError> {
    let coupling = cfg.stokes_coupling()?;
    let phonon = cfg.phonon.frequency_ghz;
    let rows = range
        .linear()
        .into_par_iter()
        .map(|delta| {
            let p = crate::stokes::StokesParams::from_half_detuning(delta, phonon, coupling);
            match diagonalize_stokes(&p) {
                Ok(d) => {
                    let entropy = squeezed_statistics(d.r)?.entanglement_entropy;
                    Ok(Row::ok(vec![
                        delta,
                        d.omega_alpha,
                        d.omega_beta,
                        d.omega_0,
                        d.cosh2,
                        d.sinh2,
                        d.r,
                        entropy,
                    ]))
                }
                Err(Error::StabilityViolation { .. }) => Ok(Row::flagged(
                    delta,
                    STOKES_COLUMNS.len(),
                    RowStatus::StabilityViolation,
                )),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        columns: STOKES_COLUMNS.to_vec(),
        rows,
        with_status: true,
    })
}

/// Polariton frequencies and fractions over the half detuning `δ_as`.
pub fn run_antistokes_sweep(
    cfg: &ScenarioConfig,
    range: &SweepRange,
) -> Result<Table, ConfigError> {
    let coupling = cfg.antistokes_coupling()?;
    let phonon = cfg.phonon.frequency_ghz;
    let rows = range
        .linear()
        .into_par_iter()
        .map(|delta| {
            let p = crate::antistokes::AntiStokesParams::from_half_detuning(delta, phonon, coupling);
            match diagonalize_antistokes(&p) {
                Ok(d) => Ok(Row::ok(vec![
                    delta,
                    d.omega_plus,
                    d.omega_minus,
                    d.phonon_fraction(Polariton::Upper),
                    d.photon_fraction(Polariton::Upper),
                    d.phonon_fraction(Polariton::Lower),
                    d.photon_fraction(Polariton::Lower),
                ])),
                Err(Error::DegenerateCoupling) => Ok(Row::flagged(
                    delta,
                    ANTISTOKES_COLUMNS.len(),
                    RowStatus::DegenerateCoupling,
                )),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        columns: ANTISTOKES_COLUMNS.to_vec(),
        rows,
        with_status: true,
    })
}

/// Pair amplitudes `c_n` of the squeezed state. Trailing rows whose amplitude
/// is exactly zero are dropped; `ratio` is `c_n / c_{n−1}`.
pub fn run_state_dump(r: f64, n_max: usize) -> Result<Table, ConfigError> {
    let e = squeezed_amplitudes(r, n_max)?;
    let last = e.amplitudes.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    let rows = e.amplitudes[..=last]
        .iter()
        .enumerate()
        .map(|(n, c)| Row {
            cells: vec![
                Some(n as f64),
                Some(*c),
                Some(c * c),
                (n > 0).then(|| c / e.amplitudes[n - 1]),
            ],
            status: RowStatus::Ok,
        })
        .collect();
    Ok(Table {
        columns: STATE_COLUMNS.to_vec(),
        rows,
        with_status: false,
    })
}

/// Thermal occupation of a mode at `freq_hz` over log-spaced temperatures.
pub fn run_thermal(freq_hz: f64, range: &SweepRange) -> Result<Table, ConfigError> {
    let rows = range
        .geometric()?
        .into_iter()
        .map(|t| Ok(Row::ok(vec![t, thermal_occupation(freq_hz, t)?])))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        columns: THERMAL_COLUMNS.to_vec(),
        rows,
        with_status: false,
    })
}

/// Re-checks module invariants on emitted Stokes rows; returns offending
/// sweep values.
pub fn audit_stokes_table(table: &Table, tol: f64) -> Vec<f64> {
    table
        .rows
        .iter()
        .filter(|row| row.status == RowStatus::Ok)
        .filter_map(|row| {
            let v = |i: usize| row.get(i).unwrap_or(f64::NAN);
            let (delta, alpha, beta, cosh2, sinh2) = (v(0), v(1), v(2), v(4), v(5));
            let ok = (cosh2 - sinh2 - 1.0).abs() <= tol
                && (alpha - beta - 2.0 * delta).abs() <= tol * alpha.abs().max(1.0)
                && v(3) <= 0.0
                && v(6) >= 0.0;
            (!ok).then_some(delta)
        })
        .collect()
}

pub fn audit_antistokes_table(table: &Table, tol: f64) -> Vec<f64> {
    table
        .rows
        .iter()
        .filter(|row| row.status == RowStatus::Ok)
        .filter_map(|row| {
            let v = |i: usize| row.get(i).unwrap_or(f64::NAN);
            let ok = (v(3) + v(4) - 1.0).abs() <= tol
                && (v(5) + v(6) - 1.0).abs() <= tol
                && (v(3) - v(6)).abs() <= tol
                && v(1) >= v(2);
            (!ok).then_some(v(0))
        })
        .collect()
}
