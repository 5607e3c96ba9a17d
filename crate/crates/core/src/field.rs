//! Uniformly sampled wave functions.

use alloc::vec::Vec;
use core::f64::consts::PI;

// unused whenever std is in the build graph and f64 gets its inherent math
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::Complex64;

/// `n` points `min + j·spacing`, `spacing = (max − min)/n`. The right end is
/// excluded so the grid is periodic-consistent with a length-`n` DFT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    min: f64,
    max: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidGrid("need finite min < max"));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid("point count must be a power of two >= 16"));
        }
        Ok(Self { min, max, n })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.min + j as f64 * self.spacing()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Momentum grid conjugate to this position grid: spacing `2πħ/L`,
    /// centered with `n/2` points below zero.
    pub fn conjugate(&self, hbar: f64) -> Self {
        let dp = 2.0 * PI * hbar / (self.max - self.min);
        let min = -((self.n / 2) as f64) * dp;
        Self { min, max: min + self.n as f64 * dp, n: self.n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub grid: UniformGrid,
    pub t: f64,
    pub space: Space,
    pub values: Vec<Complex64>,
}

impl WaveField {
    pub fn new(grid: UniformGrid, t: f64, space: Space, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid("value count does not match grid"));
        }
        Ok(Self { grid, t, space, values })
    }

    /// Samples `f` at every grid point.
    pub fn sample<F>(grid: UniformGrid, t: f64, space: Space, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let values = grid.points().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, t, space, values })
    }

    /// `Σ|ψ|² Δ`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }

    /// Largest modulus among the two outermost samples on each side.
    pub fn edge_amplitude(&self) -> f64 {
        let n = self.values.len();
        [0, 1, n - 2, n - 1].iter().fold(0.0, |m, &j| m.max(self.values[j].norm()))
    }

    /// `‖ψ − reference‖ / ‖reference‖` on the shared grid.
    pub fn relative_l2(&self, reference: &WaveField) -> Result<f64> {
        if self.values.len() != reference.values.len() {
            return Err(Error::InvalidGrid("fields live on different grids"));
        }
        let (mut diff, mut base) = (0.0, 0.0);
        for (a, b) in self.values.iter().zip(&reference.values) {
            diff += (a - b).norm_sqr();
            base += b.norm_sqr();
        }
        if base == 0.0 {
            return Err(Error::DegenerateField);
        }
        Ok((diff / base).sqrt())
    }

    /// Largest pointwise `|ψ − reference|`.
    pub fn max_abs_diff(&self, reference: &WaveField) -> Result<f64> {
        if self.values.len() != reference.values.len() {
            return Err(Error::InvalidGrid("fields live on different grids"));
        }
        Ok(self.values.iter().zip(&reference.values).fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Moments of the sampled coordinate under `|ψ|²`.
    pub fn coordinate_moments(&self) -> Result<Moments> {
        let (mut w, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for (x, v) in self.grid.points().zip(&self.values) {
            let d = v.norm_sqr();
            w += d;
            s1 += d * x;
            s2 += d * x * x;
        }
        if w == 0.0 {
            return Err(Error::DegenerateField);
        }
        let mean = s1 / w;
        let var = (s2 / w - mean * mean).max(0.0);
        Ok(Moments { norm: w * self.grid.spacing(), mean, spread: var.sqrt() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub norm: f64,
    pub mean: f64,
    pub spread: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grid_validation() {
        assert!(UniformGrid::new(-1.0, 1.0, 8).is_err());
        assert!(UniformGrid::new(-1.0, 1.0, 100).is_err());
        assert!(UniformGrid::new(1.0, -1.0, 64).is_err());
        let g = UniformGrid::new(-20.0, 20.0, 2048).unwrap();
        assert_eq!(g.point(0), -20.0);
        assert!((g.point(2047) - (20.0 - g.spacing())).abs() < 1e-12);
    }

    #[test]
    fn conjugate_grid_spacing() {
        let g = UniformGrid::new(-20.0, 20.0, 64).unwrap();
        let p = g.conjugate(1.0);
        assert!((p.spacing() * g.spacing() * 64.0 - 2.0 * PI).abs() < 1e-12);
        assert!((p.point(32)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_moments() {
        let g = UniformGrid::new(-20.0, 20.0, 1024).unwrap();
        let sigma: f64 = 1.3;
        let f = WaveField::sample(g, 0.0, Space::Position, |x| {
            let a = (2.0 * PI * sigma * sigma).powf(-0.25) * (-(x - 0.5).powi(2) / (4.0 * sigma * sigma)).exp();
            Ok(Complex64::new(a, 0.0))
        })
        .unwrap();
        let m = f.coordinate_moments().unwrap();
        assert!((m.norm - 1.0).abs() < 1e-12);
        assert!((m.mean - 0.5).abs() < 1e-12);
        assert!((m.spread - sigma).abs() < 1e-12);
    }

    #[test]
    fn zero_field_is_degenerate() {
        let g = UniformGrid::new(0.0, 1.0, 16).unwrap();
        let f = WaveField::new(g, 0.0, Space::Position, vec![Complex64::new(0.0, 0.0); 16]).unwrap();
        assert_eq!(f.coordinate_moments(), Err(Error::DegenerateField));
        assert!(WaveField::new(g, 0.0, Space::Position, vec![]).is_err());
    }
}
