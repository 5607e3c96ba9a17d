//! Closed-form solutions of `iħ∂ψ/∂t = (p²/2m − F(t)x)ψ`.
//!
//! Configuration space: the Gaussian-type packet built from an eigenfunction
//! of the linear invariant,
//!
//! ```text
//! ψ(x,t) = e^{iα0} (A(t)/A0)^{-1/2} exp[−(i/ħ) S(t)]
//!          · exp[−i B0 (x − x_c)² / (2ħ A(t)) + (i/ħ) p_c x]
//! ```
//!
//! with `S(t) = ∫₀ᵗ p_c²/2m` and the square root taken on the branch that is
//! continuous in `t` from `+1` at `t = 0`. Momentum space: the general
//! solution `φ(p,t) = φ₀(p − G(t)) exp[−(i/ħ)∫₀ᵗ (p − G(t) + G(τ))²/2m dτ]`
//! and its Gaussian special case.

use alloc::vec::Vec;
use core::f64::consts::PI;

// unused whenever std is in the build graph and f64 gets its inherent math
#[allow(unused_imports)]
use num_traits::Float;

use crate::classical::ClassicalState;
use crate::error::{check_time, Error, PacketMode, Result};
use crate::forcing::{ForceProfile, QuadratureMethod, Quadratures};
use crate::invariant::{InvariantCoefficients, InvariantSpec};
use crate::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn positive(v: f64, what: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(what))
    }
}

/// `√(A(t)/A0)` for `A(t)/A0 = 1 − F0 t/m`.
///
/// With `Im F0 ≤ 0` and `t ≥ 0` the argument of `1 − F0 t/m` stays in
/// `[0, π)`, so halving the `atan2` angle follows the branch that starts at
/// `+1` without ever crossing a cut.
pub fn continuous_sqrt_scale(ratio: Complex64, mass: f64, t: f64) -> Complex64 {
    let z = Complex64::new(1.0, 0.0) - ratio * (t / mass);
    let theta = z.im.atan2(z.re);
    Complex64::from_polar(z.norm().sqrt(), 0.5 * theta)
}

/// Phase normalization that gives a unit-norm packet for ratio `F0`:
/// `e^{−2 Im α0} = √(−Im F0 / (πħ))`.
pub fn normalized_alpha0(ratio: Complex64, hbar: f64) -> Result<Complex64> {
    if !(ratio.im < 0.0) {
        return Err(Error::ModeMismatch { expected: PacketMode::Gaussian, found: PacketMode::PlaneWave });
    }
    Ok(Complex64::new(0.0, -0.25 * (-ratio.im / (PI * hbar)).ln()))
}

/// Everything that fixes one closed-form solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketState {
    mass: f64,
    hbar: f64,
    pub x0: f64,
    pub p0: f64,
    spec: InvariantSpec,
    pub alpha0: Complex64,
}

impl PacketState {
    pub fn new(mass: f64, hbar: f64, x0: f64, p0: f64, spec: InvariantSpec, alpha0: Complex64) -> Result<Self> {
        positive(mass, "mass must be positive")?;
        positive(hbar, "hbar must be positive")?;
        Ok(Self { mass, hbar, x0, p0, spec, alpha0 })
    }

    /// Like [`PacketState::new`], with `α0` chosen for unit norm (Gaussian
    /// mode) or zero (plane-wave mode).
    pub fn normalized(mass: f64, hbar: f64, x0: f64, p0: f64, spec: InvariantSpec) -> Result<Self> {
        let alpha0 = match spec.mode() {
            PacketMode::Gaussian => normalized_alpha0(spec.ratio(), hbar)?,
            PacketMode::PlaneWave => Complex64::new(0.0, 0.0),
        };
        Self::new(mass, hbar, x0, p0, spec, alpha0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn spec(&self) -> &InvariantSpec {
        &self.spec
    }

    pub fn mode(&self) -> PacketMode {
        self.spec.mode()
    }

    pub fn classical(&self) -> ClassicalState {
        ClassicalState::new(self.mass, self.x0, self.p0).expect("mass validated on construction")
    }

    pub fn lambda(&self) -> Complex64 {
        self.spec.eigenvalue(&self.classical())
    }

    pub fn coeffs_at(&self, q: &Quadratures, t: f64) -> Result<InvariantCoefficients> {
        self.spec.coeffs_at(self.mass, q, t)
    }

    fn require(&self, mode: PacketMode) -> Result<()> {
        if self.mode() == mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch { expected: mode, found: self.mode() })
        }
    }

    /// Time-dependent data of the Gaussian packet at `t`.
    pub fn gtwp_snapshot(&self, q: &Quadratures, t: f64) -> Result<GtwpSnapshot> {
        let action = self.classical().kinetic_action(q, t)?;
        self.gtwp_snapshot_with_action(q, t, action)
    }

    /// As [`PacketState::gtwp_snapshot`] with a precomputed kinetic action,
    /// e.g. read from an [`ActionTable`](crate::classical::ActionTable).
    pub fn gtwp_snapshot_with_action(&self, q: &Quadratures, t: f64, action: f64) -> Result<GtwpSnapshot> {
        self.require(PacketMode::Gaussian)?;
        check_time(t)?;
        let (x_c, p_c) = self.classical().phase_point(q, t)?;
        let ratio = self.spec.ratio();
        let scale = self.spec.scale_at(self.mass, t);
        // B0/A(t) = F0 / (A(t)/A0)
        let curvature = ratio / scale;
        Ok(GtwpSnapshot {
            hbar: self.hbar,
            x_c,
            p_c,
            curvature,
            log_amplitude: I * self.alpha0 - I * (action / self.hbar),
            root: continuous_sqrt_scale(ratio, self.mass, t),
        })
    }

    pub fn gtwp_psi(&self, q: &Quadratures, x: f64, t: f64) -> Result<Complex64> {
        Ok(self.gtwp_snapshot(q, t)?.eval(x))
    }

    /// `|ψ|²` from the packet itself.
    pub fn density(&self, q: &Quadratures, x: f64, t: f64) -> Result<f64> {
        Ok(self.gtwp_psi(q, x, t)?.norm_sqr())
    }

    /// Closed-form density
    /// `e^{−2 Im α0} / |A/A0| · exp[Im F0 (x − x_c)² / (ħ |A/A0|²)]`,
    /// kept as a consistency check on [`PacketState::density`].
    pub fn density_closed_form(&self, q: &Quadratures, x: f64, t: f64) -> Result<f64> {
        self.require(PacketMode::Gaussian)?;
        let x_c = self.classical().x_c(q, t)?;
        let s = self.spec.scale_at(self.mass, t).norm();
        let d = x - x_c;
        Ok((-2.0 * self.alpha0.im + self.spec.ratio().im * d * d / (self.hbar * s * s)).exp() / s)
    }

    /// `Δx = √(ħ/2) |A(t)/A0| / √(−Im F0)`.
    pub fn delta_x(&self, t: f64) -> Result<f64> {
        self.require(PacketMode::Gaussian)?;
        check_time(t)?;
        let s = self.spec.scale_at(self.mass, t).norm();
        Ok((0.5 * self.hbar).sqrt() * s / (-self.spec.ratio().im).sqrt())
    }

    /// `Δp = √(ħ/2) |F0| / √(−Im F0)`, constant in time.
    pub fn delta_p(&self) -> Result<f64> {
        self.require(PacketMode::Gaussian)?;
        let f0 = self.spec.ratio();
        Ok((0.5 * self.hbar).sqrt() * f0.norm() / (-f0.im).sqrt())
    }

    /// `ΔxΔp = (ħ/2) |F0 (1 − F0 t/m)| / (−Im F0)`.
    pub fn uncertainty_product(&self, t: f64) -> Result<f64> {
        self.require(PacketMode::Gaussian)?;
        check_time(t)?;
        let f0 = self.spec.ratio();
        Ok(0.5 * self.hbar * (f0 * self.spec.scale_at(self.mass, t)).norm() / (-f0.im))
    }

    /// `t* = Re(m/F0)`, where the product reaches `ħ/2`. May be negative, in
    /// which case the product only grows for `t ≥ 0`.
    pub fn minimum_uncertainty_time(&self) -> Result<f64> {
        self.require(PacketMode::Gaussian)?;
        Ok((self.mass / self.spec.ratio()).re)
    }

    /// Plane-wave solution for eigenvalue `λ` at time `t`.
    pub fn plane_wave_snapshot(&self, q: &Quadratures, lambda: Complex64, t: f64) -> Result<PlaneWaveSnapshot> {
        self.require(PacketMode::PlaneWave)?;
        let classical = self.classical();
        let alpha = self.spec.phase_alpha(&classical, q, lambda, self.hbar, t, self.alpha0)?;
        let k = self.coeffs_at(q, t)?;
        Ok(PlaneWaveSnapshot { alpha, wavenumber: (lambda - k.c) / (self.hbar * self.spec.a0()) })
    }

    pub fn plane_wave_psi(&self, q: &Quadratures, lambda: Complex64, x: f64, t: f64) -> Result<Complex64> {
        Ok(self.plane_wave_snapshot(q, lambda, t)?.eval(x))
    }

    /// Invariant eigenfunction `φ_λ(x,t) = exp{(i/ħ)[2(λ − C)x − B0 x²] / (2A)}`
    /// without its time-dependent phase.
    pub fn eigenfunction(&self, k: &InvariantCoefficients, x: f64) -> Complex64 {
        let lam = self.lambda();
        (I / self.hbar * ((lam - k.c) * (2.0 * x) - k.b * (x * x)) / (2.0 * k.a)).exp()
    }
}

/// The Gaussian packet at one instant; `eval` is cheap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GtwpSnapshot {
    hbar: f64,
    pub x_c: f64,
    pub p_c: f64,
    /// `B0/A(t)`.
    pub curvature: Complex64,
    log_amplitude: Complex64,
    root: Complex64,
}

impl GtwpSnapshot {
    pub fn eval(&self, x: f64) -> Complex64 {
        let d = x - self.x_c;
        let exponent =
            self.log_amplitude - I * self.curvature * (d * d / (2.0 * self.hbar)) + I * (self.p_c * x / self.hbar);
        exponent.exp() / self.root
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveSnapshot {
    pub alpha: Complex64,
    /// `(λ − C(t)) / (ħ A0)`.
    pub wavenumber: Complex64,
}

impl PlaneWaveSnapshot {
    pub fn eval(&self, x: f64) -> Complex64 {
        (I * (self.alpha + self.wavenumber * x)).exp()
    }
}

/// Gaussian momentum-space initial state of width `σ` (position units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMomentumParams {
    sigma: f64,
    pub x0: f64,
    pub p0: f64,
}

/// Invariant data equivalent to a Gaussian momentum state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedParameters {
    /// `F0 = B0/A0 = −im/T`.
    pub ratio: Complex64,
    /// `α0` with `e^{iα0} = (2πσ²)^{−1/4}`.
    pub alpha0: Complex64,
}

impl GaussianMomentumParams {
    pub fn new(sigma: f64, x0: f64, p0: f64) -> Result<Self> {
        positive(sigma, "sigma must be positive")?;
        Ok(Self { sigma, x0, p0 })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `T = 2mσ²/ħ`.
    pub fn spreading_time(&self, mass: f64, hbar: f64) -> f64 {
        2.0 * mass * self.sigma * self.sigma / hbar
    }

    /// `φ₀(p) = (2σ²/πħ²)^{1/4} exp[−σ²(p − p0)²/ħ² − i(p − p0)x0/ħ]`.
    pub fn phi0(&self, hbar: f64, p: f64) -> Complex64 {
        let d = p - self.p0;
        let amp = (2.0 * self.sigma * self.sigma / (PI * hbar * hbar)).powf(0.25);
        Complex64::new(-self.sigma * self.sigma * d * d / (hbar * hbar), -d * self.x0 / hbar).exp() * amp
    }

    pub fn classical(&self, mass: f64) -> Result<ClassicalState> {
        ClassicalState::new(mass, self.x0, self.p0)
    }

    pub fn momentum_snapshot(&self, mass: f64, hbar: f64, q: &Quadratures, t: f64) -> Result<MomentumSnapshot> {
        let state = self.classical(mass)?;
        let action = state.kinetic_action(q, t)?;
        self.momentum_snapshot_with_action(mass, hbar, q, t, action)
    }

    pub fn momentum_snapshot_with_action(
        &self,
        mass: f64,
        hbar: f64,
        q: &Quadratures,
        t: f64,
        action: f64,
    ) -> Result<MomentumSnapshot> {
        positive(hbar, "hbar must be positive")?;
        let (x_c, p_c) = self.classical(mass)?.phase_point(q, t)?;
        let spread = self.sigma * self.sigma / (hbar * hbar) * Complex64::new(1.0, t / self.spreading_time(mass, hbar));
        Ok(MomentumSnapshot {
            hbar,
            x_c,
            p_c,
            spread,
            amplitude: (2.0 * self.sigma * self.sigma / (PI * hbar * hbar)).powf(0.25),
            action,
        })
    }

    /// `φ(p,t)` in the three-factor closed form.
    pub fn phi_pt(&self, mass: f64, hbar: f64, q: &Quadratures, p: f64, t: f64) -> Result<Complex64> {
        Ok(self.momentum_snapshot(mass, hbar, q, t)?.eval(p))
    }

    pub fn match_parameters(&self, mass: f64, hbar: f64) -> Result<MatchedParameters> {
        positive(mass, "mass must be positive")?;
        positive(hbar, "hbar must be positive")?;
        let ratio = Complex64::new(0.0, -mass / self.spreading_time(mass, hbar));
        let alpha0 = Complex64::new(0.0, 0.25 * (2.0 * PI * self.sigma * self.sigma).ln());
        Ok(MatchedParameters { ratio, alpha0 })
    }

    /// Configuration-space packet with matched invariant (`A0 = 1`, `C0 = 0`).
    pub fn packet_state(&self, mass: f64, hbar: f64) -> Result<PacketState> {
        let m = self.match_parameters(mass, hbar)?;
        let spec = InvariantSpec::from_ratio(m.ratio)?;
        PacketState::new(mass, hbar, self.x0, self.p0, spec, m.alpha0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumSnapshot {
    hbar: f64,
    pub x_c: f64,
    pub p_c: f64,
    /// `σ²(1 + it/T)/ħ²`.
    spread: Complex64,
    amplitude: f64,
    pub action: f64,
}

impl MomentumSnapshot {
    pub fn eval(&self, p: f64) -> Complex64 {
        let d = p - self.p_c;
        let exponent = -I * (self.action / self.hbar) - self.spread * (d * d) - I * (d * self.x_c / self.hbar);
        exponent.exp() * self.amplitude
    }
}

/// General momentum-space solution for an arbitrary initial `φ₀`.
///
/// The time integral `∫₀ᵗ (p − G(t) + G(τ))² dτ` is done by adaptive
/// quadrature except for zero and constant forces, where it is a polynomial.
pub fn momentum_solution<P>(phi0: P, q: &Quadratures, mass: f64, hbar: f64, p: f64, t: f64) -> Result<Complex64>
where
    P: Fn(f64) -> Complex64,
{
    positive(mass, "mass must be positive")?;
    positive(hbar, "hbar must be positive")?;
    let g_t = q.g(t)?;
    let shifted = p - g_t;
    let closed = match (q.method(), q.profile()) {
        (QuadratureMethod::ClosedForm, ForceProfile::Zero) => Some(shifted * shifted * t),
        (QuadratureMethod::ClosedForm, ForceProfile::Constant { force }) => {
            let f = *force;
            Some(shifted * shifted * t + shifted * f * t * t + f * f * t * t * t / 3.0)
        }
        _ => None,
    };
    let integral = match closed {
        Some(v) => v,
        None => q.integrator().try_integrate(
            |s| {
                let u = shifted + q.g(s)?;
                Ok(u * u)
            },
            0.0,
            t,
        )?,
    };
    Ok(phi0(shifted) * Complex64::new(0.0, -integral / (2.0 * mass * hbar)).exp())
}

/// Finite superposition `Σ_j w_j ψ_{λ_j}` of driven plane waves
/// (`A0 = 1`, `B0 = C0 = 0`, `α0 = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveSuperposition {
    mass: f64,
    hbar: f64,
    components: Vec<(f64, Complex64)>,
}

impl PlaneWaveSuperposition {
    pub fn new(mass: f64, hbar: f64, components: Vec<(f64, Complex64)>) -> Result<Self> {
        positive(mass, "mass must be positive")?;
        positive(hbar, "hbar must be positive")?;
        Ok(Self { mass, hbar, components })
    }

    /// Trapezoid weights `φ₀(λ) Δλ / √(2πħ)` on `n` equally spaced
    /// eigenvalues in `[lo, hi]`; the sum then approximates the inverse
    /// Fourier integral of the Gaussian `φ₀`.
    pub fn gaussian(params: &GaussianMomentumParams, mass: f64, hbar: f64, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::InvalidParameter("superposition needs n >= 2 and hi > lo"));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let norm = step / (2.0 * PI * hbar).sqrt();
        let components = (0..n)
            .map(|j| {
                let lam = lo + j as f64 * step;
                let end = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                (lam, params.phi0(hbar, lam) * (norm * end))
            })
            .collect();
        Self::new(mass, hbar, components)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn snapshot(&self, q: &Quadratures, t: f64) -> Result<SuperpositionSnapshot> {
        let spec = InvariantSpec::from_ratio(Complex64::new(0.0, 0.0))?;
        let mut parts = Vec::with_capacity(self.components.len());
        for &(lam, w) in &self.components {
            let state = PacketState::new(self.mass, self.hbar, 0.0, lam, spec, Complex64::new(0.0, 0.0))?;
            let wave = state.plane_wave_snapshot(q, Complex64::new(lam, 0.0), t)?;
            parts.push((w, wave));
        }
        Ok(SuperpositionSnapshot { parts })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSnapshot {
    parts: Vec<(Complex64, PlaneWaveSnapshot)>,
}

impl SuperpositionSnapshot {
    pub fn eval(&self, x: f64) -> Complex64 {
        self.parts.iter().map(|(w, wave)| w * wave.eval(x)).sum()
    }
}
