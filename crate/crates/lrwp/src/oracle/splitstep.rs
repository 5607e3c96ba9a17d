use lrwp_core::{Complex64, ForceProfile};

use super::propagate::Stepper;
use super::GridSpec;
use crate::error::Result;
use crate::spectral::Spectral;

/// Strang splitting: half kick with `F(t)`, free flight in Fourier space,
/// half kick with `F(t + dt)`.
pub struct SplitStep {
    spectral: Spectral,
    profile: ForceProfile,
    xs: Vec<f64>,
    kinetic: Vec<Complex64>,
    dt: f64,
    hbar: f64,
}

impl SplitStep {
    pub fn new(spec: GridSpec, profile: ForceProfile, mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0) {
            return Err(lrwp_core::Error::InvalidParameter("mass and hbar must be positive").into());
        }
        let grid = spec.space();
        let spectral = Spectral::new(grid);
        let kinetic = spectral
            .wavenumbers()
            .iter()
            .map(|&k| Complex64::from_polar(1.0, -hbar * k * k * spec.dt / (2.0 * mass)))
            .collect();
        Ok(Self { xs: grid.points().collect(), spectral, profile, kinetic, dt: spec.dt, hbar })
    }

    fn kick(&self, psi: &mut [Complex64], force: f64) {
        // e^{−iV dt/2ħ} with V = −F x
        let rate = force * self.dt / (2.0 * self.hbar);
        for (v, &x) in psi.iter_mut().zip(&self.xs) {
            *v *= Complex64::from_polar(1.0, rate * x);
        }
    }
}

impl Stepper for SplitStep {
    fn step(&mut self, psi: &mut [Complex64], t: f64) -> Result<()> {
        let (f0, f1) = (self.profile.eval(t)?, self.profile.eval(t + self.dt)?);
        self.kick(psi, f0);
        self.spectral.forward(psi);
        for (v, k) in psi.iter_mut().zip(&self.kinetic) {
            *v *= k;
        }
        self.spectral.inverse(psi);
        self.kick(psi, f1);
        Ok(())
    }
}
