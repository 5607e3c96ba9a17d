use lrwp_core::{Complex64, ForceProfile, Space, WaveField};

use super::{CrankNicolson, GridSpec, SplitStep};
use crate::error::{LrwpError, Result};
use crate::spectral::EDGE_LIMIT;

/// Largest tolerated change of the norm over a run.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

/// One time step `t → t + dt` in place.
pub trait Stepper {
    fn step(&mut self, psi: &mut [Complex64], t: f64) -> Result<()>;
}

/// Lazily advanced run yielding a snapshot every `output_every` steps,
/// starting with the initial field.
pub struct Propagation<S> {
    stepper: S,
    spec: GridSpec,
    field: WaveField,
    initial_norm: f64,
    step: usize,
    started: bool,
    failed: bool,
}

impl<S: Stepper> Propagation<S> {
    pub fn new(stepper: S, initial: &WaveField, spec: GridSpec) -> Result<Self> {
        if initial.space != Space::Position || initial.grid != spec.space() {
            return Err(lrwp_core::Error::InvalidGrid("initial field does not match the run grid").into());
        }
        let initial_norm = initial.norm_sqr();
        if initial_norm == 0.0 {
            return Err(lrwp_core::Error::DegenerateField.into());
        }
        let mut field = initial.clone();
        field.t = 0.0;
        Ok(Self { stepper, spec, field, initial_norm, step: 0, started: false, failed: false })
    }

    fn check(&self) -> Result<()> {
        let t = self.field.t;
        let drift = (self.field.norm_sqr() - self.initial_norm).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(LrwpError::Instability { t, drift });
        }
        let amplitude = self.field.edge_amplitude();
        if amplitude > EDGE_LIMIT {
            return Err(LrwpError::Aliasing { t, amplitude, limit: EDGE_LIMIT });
        }
        Ok(())
    }

    fn advance(&mut self) -> Result<WaveField> {
        let target = (self.step + self.spec.output_every).min(self.spec.steps());
        while self.step < target {
            let t = self.step as f64 * self.spec.dt;
            self.stepper.step(&mut self.field.values, t)?;
            self.step += 1;
        }
        self.field.t = self.step as f64 * self.spec.dt;
        self.check()?;
        Ok(self.field.clone())
    }
}

impl<S: Stepper> Iterator for Propagation<S> {
    type Item = Result<WaveField>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let out = if !self.started {
            self.started = true;
            self.check().map(|_| self.field.clone())
        } else if self.step + self.spec.output_every <= self.spec.steps() {
            self.advance()
        } else {
            return None;
        };
        self.failed = out.is_err();
        Some(out)
    }
}

pub fn propagate_splitstep(
    initial: &WaveField,
    profile: &ForceProfile,
    mass: f64,
    hbar: f64,
    spec: GridSpec,
) -> Result<Propagation<SplitStep>> {
    let stepper = SplitStep::new(spec, profile.clone(), mass, hbar)?;
    Propagation::new(stepper, initial, spec)
}

pub fn propagate_cranknicolson(
    initial: &WaveField,
    profile: &ForceProfile,
    mass: f64,
    hbar: f64,
    spec: GridSpec,
) -> Result<Propagation<CrankNicolson>> {
    let stepper = CrankNicolson::new(spec, profile.clone(), mass, hbar)?;
    Propagation::new(stepper, initial, spec)
}
