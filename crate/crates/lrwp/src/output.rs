//! Deterministic CSV output.
//!
//! Numbers carry 17 significant digits in scientific notation and rows end
//! in LF. A missing value is an empty cell. Files appear atomically: rows go
//! to a temporary file in the target directory which is then renamed over
//! the destination.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{LrwpError, Result};

/// Column order of `observables.csv`.
pub const OBSERVABLE_COLUMNS: [&str; 11] =
    ["t", "norm", "x_mean", "p_mean", "dx", "dp", "dxdp", "inv_re", "inv_im", "l2_err_ss", "l2_err_cn"];
pub const SNAPSHOT_COLUMNS: [&str; 5] = ["t", "x", "psi_re", "psi_im", "prob"];
pub const COMPARISON_COLUMNS: [&str; 2] = ["t", "max_abs_diff"];
pub const SWEEP_COLUMNS: [&str; 13] = [
    "param",
    "value",
    "status",
    "final_l2_err_ss",
    "final_l2_err_cn",
    "l2_ratio_ss",
    "l2_ratio_cn",
    "min_dxdp",
    "t_star",
    "dx_t0",
    "max_abs_diff",
    "max_inv_drift",
    "message",
];

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn cell(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

/// In-memory table; nothing touches the disk until [`Table::write`].
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, row: &[Option<f64>]) {
        self.push(row.iter().map(|v| cell(*v)).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory");
        }
        w.into_inner().expect("writing to memory")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_bytes())
    }
}

fn io_error(path: &Path, source: std::io::Error) -> LrwpError {
    LrwpError::Io { path: path.to_path_buf(), source }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| io_error(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| io_error(path, e))?;
    tmp.as_file().sync_all().map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}
