//! FFT-backed operations on uniformly sampled fields: spectral derivative,
//! momentum moments, and the discrete momentum → position Fourier bridge.

use std::f64::consts::PI;
use std::sync::Arc;

use lrwp_core::{Complex64, Space, UniformGrid, WaveField};
use rustfft::{Fft, FftPlanner};

use crate::error::Result;

/// Edge amplitude above which spectral results are flagged.
pub const EDGE_LIMIT: f64 = 1e-10;

/// FFT plans and the wavenumber layout `0, 1, …, n/2−1, −n/2, …, −1` (×2π/L)
/// for one grid.
#[derive(Clone)]
pub struct Spectral {
    grid: UniformGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<f64>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("grid", &self.grid).finish_non_exhaustive()
    }
}

impl Spectral {
    pub fn new(grid: UniformGrid) -> Self {
        let n = grid.len();
        let mut planner = FftPlanner::new();
        let length = grid.max() - grid.min();
        let wavenumbers = (0..n)
            .map(|j| {
                let j = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                2.0 * PI * j / length
            })
            .collect();
        Self { grid, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n), wavenumbers }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Index of the unpaired Nyquist bin.
    pub fn nyquist(&self) -> usize {
        self.grid.len() / 2
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Inverse transform including the `1/n` factor.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        let scale = 1.0 / buf.len() as f64;
        buf.iter_mut().for_each(|v| *v *= scale);
    }

    /// `∂ψ/∂x` with the Nyquist coefficient dropped.
    pub fn derivative(&self, values: &[Complex64]) -> Vec<Complex64> {
        let mut buf = values.to_vec();
        self.forward(&mut buf);
        for (v, &k) in buf.iter_mut().zip(&self.wavenumbers) {
            *v *= Complex64::new(0.0, k);
        }
        buf[self.nyquist()] = Complex64::new(0.0, 0.0);
        self.inverse(&mut buf);
        buf
    }

    /// `(⟨p⟩, Δp)` from the discrete spectrum, Nyquist bin excluded.
    pub fn momentum_moments(&self, values: &[Complex64], hbar: f64) -> Option<(f64, f64)> {
        let mut buf = values.to_vec();
        self.forward(&mut buf);
        let ny = self.nyquist();
        let (mut w, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for (j, (v, &k)) in buf.iter().zip(&self.wavenumbers).enumerate() {
            if j == ny {
                continue;
            }
            let d = v.norm_sqr();
            let p = hbar * k;
            w += d;
            s1 += d * p;
            s2 += d * p * p;
        }
        if w == 0.0 {
            return None;
        }
        let mean = s1 / w;
        Some((mean, (s2 / w - mean * mean).max(0.0).sqrt()))
    }
}

/// Result of a spectral operation together with the boundary check on its input.
#[derive(Debug, Clone, PartialEq)]
pub struct Checked<T> {
    pub value: T,
    pub edge_amplitude: f64,
    /// Input amplitude at the grid edges exceeded [`EDGE_LIMIT`].
    pub flagged: bool,
}

impl<T> Checked<T> {
    fn new(value: T, edge_amplitude: f64) -> Self {
        Self { value, edge_amplitude, flagged: edge_amplitude > EDGE_LIMIT }
    }
}

/// `ψ(x) = (2πħ)^{−1/2} Σ_k φ(p_k) e^{i p_k x/ħ} Δp` on the position grid
/// starting at `x_min` with spacing `2πħ/(nΔp)`.
pub fn fourier_bridge(field: &WaveField, x_min: f64, hbar: f64) -> Result<Checked<WaveField>> {
    if field.space != Space::Momentum {
        return Err(lrwp_core::Error::InvalidGrid("fourier_bridge needs a momentum-space field").into());
    }
    let n = field.grid.len();
    let dp = field.grid.spacing();
    let p_min = field.grid.min();
    let dx = 2.0 * PI * hbar / (n as f64 * dp);
    let target = UniformGrid::new(x_min, x_min + n as f64 * dx, n)?;

    let mut buf: Vec<Complex64> = field
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| v * Complex64::from_polar(1.0, k as f64 * dp * x_min / hbar))
        .collect();
    // e^{+2πikj/n} is the unnormalized inverse DFT
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(&mut buf);
    let pref = dp / (2.0 * PI * hbar).sqrt();
    for (j, v) in buf.iter_mut().enumerate() {
        *v *= Complex64::from_polar(pref, p_min * target.point(j) / hbar);
    }
    let out = WaveField::new(target, field.t, Space::Position, buf)?;
    Ok(Checked::new(out, field.edge_amplitude()))
}

/// Inverse of [`fourier_bridge`]: samples `φ(p)` on the grid conjugate to
/// the field's position grid.
pub fn to_momentum(field: &WaveField, hbar: f64) -> Result<Checked<WaveField>> {
    if field.space != Space::Position {
        return Err(lrwp_core::Error::InvalidGrid("to_momentum needs a position-space field").into());
    }
    let n = field.grid.len();
    let target = field.grid.conjugate(hbar);
    let (dx, dp, x_min) = (field.grid.spacing(), target.spacing(), field.grid.min());
    let mut buf: Vec<Complex64> = field
        .values
        .iter()
        .enumerate()
        .map(|(j, &v)| v * Complex64::from_polar(1.0, -target.min() * field.grid.point(j) / hbar))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let pref = dx / (2.0 * PI * hbar).sqrt();
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= Complex64::from_polar(pref, -(k as f64) * dp * x_min / hbar);
    }
    let out = WaveField::new(target, field.t, Space::Momentum, buf)?;
    Ok(Checked::new(out, field.edge_amplitude()))
}
