//! The linear invariant `I(t) = A(t)p̂ + B(t)x̂ + C(t)` for the driven
//! Hamiltonian `p²/2m − F(t)x`.
//!
//! The constants `A0, B0, C0` are complex and the invariant is in general
//! not Hermitian. Only the ratio `F0 = B0/A0` controls which solution family
//! the eigenfunctions belong to:
//!
//! * `Im F0 < 0`: Gaussian packets,
//! * `F0 = 0`: driven plane waves,
//! * `Im F0 > 0` or real nonzero `F0`: rejected (non-normalizable or divergent).

use crate::classical::ClassicalState;
use crate::error::{check_time, Error, PacketMode, Result};
use crate::forcing::Quadratures;
use crate::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSpec {
    a0: Complex64,
    b0: Complex64,
    c0: Complex64,
    mode: PacketMode,
}

/// Classifies `F0 = B0/A0`.
pub fn classify_ratio(ratio: Complex64) -> Result<PacketMode> {
    if ratio.im > 0.0 {
        Err(Error::UnphysicalInvariant { ratio })
    } else if ratio.im == 0.0 && ratio.re != 0.0 {
        Err(Error::DivergentInvariant { ratio })
    } else if ratio.im == 0.0 {
        Ok(PacketMode::PlaneWave)
    } else {
        Ok(PacketMode::Gaussian)
    }
}

impl InvariantSpec {
    pub fn new(a0: Complex64, b0: Complex64, c0: Complex64) -> Result<Self> {
        if a0 == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroMomentumCoefficient);
        }
        if !(a0.is_finite() && b0.is_finite() && c0.is_finite()) {
            return Err(Error::InvalidParameter("invariant constants must be finite"));
        }
        let mode = if b0 == Complex64::new(0.0, 0.0) { PacketMode::PlaneWave } else { classify_ratio(b0 / a0)? };
        Ok(Self { a0, b0, c0, mode })
    }

    /// `A0 = 1`, `B0 = F0`, `C0 = 0`.
    pub fn from_ratio(ratio: Complex64) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), ratio, Complex64::new(0.0, 0.0))
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    pub fn b0(&self) -> Complex64 {
        self.b0
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    /// `F0 = B0/A0`.
    pub fn ratio(&self) -> Complex64 {
        self.b0 / self.a0
    }

    pub fn mode(&self) -> PacketMode {
        self.mode
    }

    pub fn coeffs_at(&self, mass: f64, q: &Quadratures, t: f64) -> Result<InvariantCoefficients> {
        let (g, g1) = q.pair(t)?;
        Ok(self.coeffs_from(mass, t, g, g1))
    }

    fn coeffs_from(&self, mass: f64, t: f64, g: f64, g1: f64) -> InvariantCoefficients {
        let drift = self.b0 / mass;
        let a = self.a0 - drift * t;
        let c = self.c0 - a * g - drift * g1;
        InvariantCoefficients { a, b: self.b0, c, t }
    }

    /// `λ = A0 p0 + B0 x0 + C0`.
    pub fn eigenvalue(&self, state: &ClassicalState) -> Complex64 {
        self.a0 * state.p0 + self.b0 * state.x0 + self.c0
    }

    /// `A(t)/A0 = 1 − F0 t/m`.
    pub fn scale_at(&self, mass: f64, t: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.ratio() * (t / mass)
    }

    /// Smallest `|A(τ)/A0|` over `τ ∈ [0, t]`.
    fn min_scale(&self, mass: f64, t: f64) -> f64 {
        let f0 = self.ratio();
        if f0.norm() == 0.0 {
            return 1.0;
        }
        // |1 − F0 τ/m| = |F0|/m · |m/F0 − τ|, closest τ to m/F0 on the segment
        let z = mass / f0;
        let tau = z.re.clamp(0.0, t);
        f0.norm() / mass * (z - tau).norm()
    }

    /// `α(t) = α(0) − ∫₀ᵗ [(λ − C)² + iħB0A] / (2mħA²) dτ`.
    pub fn phase_alpha(
        &self,
        state: &ClassicalState,
        q: &Quadratures,
        lambda: Complex64,
        hbar: f64,
        t: f64,
        alpha0: Complex64,
    ) -> Result<Complex64> {
        check_time(t)?;
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter("hbar must be positive"));
        }
        let mass = state.mass();
        if self.min_scale(mass, t) < 1e-12 {
            return Err(Error::SingularIntegrand { t: (mass / self.ratio()).re });
        }
        let integral = q.integrator().try_integrate(
            |s| {
                let k = self.coeffs_at(mass, q, s)?;
                let d = lambda - k.c;
                Ok((d * d + I * hbar * self.b0 * k.a) / (2.0 * mass * hbar * k.a * k.a))
            },
            0.0,
            t,
        )?;
        Ok(alpha0 - integral)
    }
}

/// `A`, `B`, `C` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub t: f64,
}

impl InvariantCoefficients {
    /// Value of the invariant on a classical phase point, `A p + B x + C`.
    pub fn on_phase_point(&self, x: f64, p: f64) -> Complex64 {
        self.a * p + self.b * x + self.c
    }
}
