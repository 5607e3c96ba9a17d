use lrwp_core::{Complex64, ForceProfile};

use super::propagate::Stepper;
use super::GridSpec;
use crate::error::Result;

/// Crank–Nicolson with a compact fourth-order kinetic operator.
///
/// With `Δ` the 3-point Laplacian and `M = 1 + (dx²/12)Δ`, the discrete
/// Hamiltonian is `H = −(ħ²/2m) M⁻¹Δ + V`, which is Hermitian because `M`
/// and `Δ` commute. Multiplying the Cayley step by `M` keeps it tridiagonal:
///
/// ```text
/// [M + a(T + MV)] ψ' = [M − a(T + MV)] ψ,   a = i dt/2ħ,  T = −(ħ²/2m)Δ
/// ```
///
/// The potential `V = −F x` uses `F` at the step midpoint. Boundaries are
/// Dirichlet.
pub struct CrankNicolson {
    profile: ForceProfile,
    xs: Vec<f64>,
    dt: f64,
    hbar: f64,
    /// `ħ²/(2m dx²)`.
    stiffness: f64,
    rhs: Vec<Complex64>,
    upper: Vec<Complex64>,
}

const M_DIAG: f64 = 10.0 / 12.0;
const M_OFF: f64 = 1.0 / 12.0;

impl CrankNicolson {
    pub fn new(spec: GridSpec, profile: ForceProfile, mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0) {
            return Err(lrwp_core::Error::InvalidParameter("mass and hbar must be positive").into());
        }
        let grid = spec.space();
        let dx = grid.spacing();
        let n = grid.len();
        Ok(Self {
            profile,
            xs: grid.points().collect(),
            dt: spec.dt,
            hbar,
            stiffness: hbar * hbar / (2.0 * mass * dx * dx),
            rhs: vec![Complex64::new(0.0, 0.0); n],
            upper: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    /// Row `j` of `M + s(T + MV)`: (sub, diag, super).
    fn row(&self, v: &[f64], j: usize, s: Complex64) -> (Complex64, Complex64, Complex64) {
        let n = self.xs.len();
        let k = self.stiffness;
        let diag = M_DIAG + s * (2.0 * k + M_DIAG * v[j]);
        let sub = if j > 0 { M_OFF + s * (-k + M_OFF * v[j - 1]) } else { Complex64::new(0.0, 0.0) };
        let sup = if j + 1 < n { M_OFF + s * (-k + M_OFF * v[j + 1]) } else { Complex64::new(0.0, 0.0) };
        (sub, diag, sup)
    }
}

impl Stepper for CrankNicolson {
    fn step(&mut self, psi: &mut [Complex64], t: f64) -> Result<()> {
        let force = self.profile.eval(t + 0.5 * self.dt)?;
        let v: Vec<f64> = self.xs.iter().map(|&x| -force * x).collect();
        let a = Complex64::new(0.0, self.dt / (2.0 * self.hbar));
        let n = psi.len();

        for j in 0..n {
            let (sub, diag, sup) = self.row(&v, j, -a);
            let mut r = diag * psi[j];
            if j > 0 {
                r += sub * psi[j - 1];
            }
            if j + 1 < n {
                r += sup * psi[j + 1];
            }
            self.rhs[j] = r;
        }

        // Thomas algorithm; the left matrix is strictly diagonally dominant
        let (_, d0, u0) = self.row(&v, 0, a);
        self.upper[0] = u0 / d0;
        self.rhs[0] /= d0;
        for j in 1..n {
            let (l, d, u) = self.row(&v, j, a);
            let denom = d - l * self.upper[j - 1];
            self.upper[j] = u / denom;
            self.rhs[j] = (self.rhs[j] - l * self.rhs[j - 1]) / denom;
        }
        psi[n - 1] = self.rhs[n - 1];
        for j in (0..n - 1).rev() {
            psi[j] = self.rhs[j] - self.upper[j] * psi[j + 1];
        }
        Ok(())
    }
}
