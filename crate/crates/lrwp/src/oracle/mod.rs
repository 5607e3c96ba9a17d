//! Direct numerical integration of `iħ∂ψ/∂t = (p²/2m − F(t)x)ψ`, used as an
//! independent check on every closed form.

mod cranknicolson;
mod minimize;
mod observables;
mod propagate;
mod splitstep;

pub use cranknicolson::CrankNicolson;
pub use minimize::locate_minimum;
pub use observables::{ehrenfest_check, observables, EhrenfestReport, ObservableRecord};
pub use propagate::{propagate_cranknicolson, propagate_splitstep, Propagation, Stepper, NORM_DRIFT_LIMIT};
pub use splitstep::SplitStep;

use lrwp_core::{PacketMode, PacketState, Quadratures, UniformGrid};

use crate::error::{LrwpError, Result};

/// Box and time stepping of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub dt: f64,
    pub t_max: f64,
    /// Snapshot every this many steps.
    pub output_every: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize, dt: f64, t_max: f64, output_every: usize) -> Result<Self> {
        let bad = |msg| Err(lrwp_core::Error::InvalidGrid(msg).into());
        if !(x_min < x_max) {
            return bad("x_min must be below x_max");
        }
        if n < 64 || !n.is_power_of_two() {
            return bad("n must be a power of two >= 64");
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(t_max >= dt && t_max.is_finite()) {
            return bad("t_max must be at least dt");
        }
        if output_every == 0 {
            return bad("output_every must be at least 1");
        }
        Ok(Self { x_min, x_max, n, dt, t_max, output_every })
    }

    pub fn space(&self) -> UniformGrid {
        UniformGrid::new(self.x_min, self.x_max, self.n).expect("validated on construction")
    }

    /// Number of time steps, `round(t_max/dt)`.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt).round() as usize).max(1)
    }

    /// Snapshot times `k·output_every·dt`, `k = 0, 1, …`, not past the last step.
    pub fn output_times(&self) -> Vec<f64> {
        (0..=self.steps()).step_by(self.output_every).map(|k| k as f64 * self.dt).collect()
    }
}

/// Refuses boxes that do not hold `x_c(t) ± 8Δx(t)` for all `t ∈ [0, t_max]`.
pub fn check_containment(state: &PacketState, q: &Quadratures, spec: &GridSpec) -> Result<()> {
    if state.mode() != PacketMode::Gaussian {
        return Ok(());
    }
    let classical = state.classical();
    let samples = 512;
    let times = (0..=samples).map(|k| spec.t_max * k as f64 / samples as f64).chain(spec.output_times());
    for t in times {
        let x_c = classical.x_c(q, t)?;
        let half = 8.0 * state.delta_x(t)?;
        let (lo, hi) = (x_c - half, x_c + half);
        if lo < spec.x_min || hi > spec.x_max {
            return Err(LrwpError::Containment { t, lo, hi, x_min: spec.x_min, x_max: spec.x_max });
        }
    }
    Ok(())
}
