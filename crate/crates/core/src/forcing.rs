//! Driving forces `F(t)` and their first and second time antiderivatives
//! `G(t) = ∫₀ᵗ F` and `G₁(t) = ∫₀ᵗ G`.

use alloc::vec::Vec;

// unused whenever std is in the build graph and f64 gets its inherent math
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check_time, Error, Result};
use crate::quadrature::AdaptiveSimpson;

/// Piecewise-linear force data with cumulative `G`, `G₁` at every knot.
#[derive(Debug, Clone, PartialEq)]
pub struct Knots {
    times: Vec<f64>,
    forces: Vec<f64>,
    g: Vec<f64>,
    g1: Vec<f64>,
}

impl Knots {
    fn new(mut points: Vec<(f64, f64)>, pad_to_zero: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidProfile("need at least two knots"));
        }
        if points.iter().any(|(t, f)| !t.is_finite() || !f.is_finite()) {
            return Err(Error::InvalidProfile("non-finite knot"));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidProfile("knot times must be strictly increasing"));
        }
        if points[0].0 < 0.0 {
            return Err(Error::InvalidProfile("knot times must be non-negative"));
        }
        if points[0].0 > 0.0 {
            if !pad_to_zero {
                return Err(Error::InvalidProfile("tabulated samples must start at t = 0"));
            }
            let f0 = points[0].1;
            points.insert(0, (0.0, f0));
        }
        let (times, forces): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        let mut g = Vec::with_capacity(times.len());
        let mut g1 = Vec::with_capacity(times.len());
        g.push(0.0);
        g1.push(0.0);
        for k in 0..times.len() - 1 {
            let h = times[k + 1] - times[k];
            let (gk, g1k) = (g[k], g1[k]);
            let df = forces[k + 1] - forces[k];
            g.push(gk + h * (forces[k] + forces[k + 1]) * 0.5);
            g1.push(g1k + gk * h + forces[k] * h * h * 0.5 + df * h * h / 6.0);
        }
        Ok(Self { times, forces, g, g1 })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.forces.iter().copied())
    }

    fn first(&self) -> f64 {
        self.times[0]
    }

    fn last(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Index of the segment `[t_k, t_{k+1})` holding `t`, clamped to the ends.
    fn segment(&self, t: f64) -> usize {
        let k = self.times.partition_point(|&tk| tk <= t);
        k.saturating_sub(1).min(self.times.len() - 2)
    }

    fn eval(&self, t: f64) -> f64 {
        if t >= self.last() {
            return self.forces[self.forces.len() - 1];
        }
        let k = self.segment(t);
        let h = self.times[k + 1] - self.times[k];
        let s = t - self.times[k];
        self.forces[k] + (self.forces[k + 1] - self.forces[k]) * s / h
    }

    /// `(G, G₁)` at `t ≥ 0`, holding the force constant past the last knot.
    fn integrals(&self, t: f64) -> (f64, f64) {
        let n = self.times.len();
        if t >= self.last() {
            let s = t - self.last();
            let (f, g, g1) = (self.forces[n - 1], self.g[n - 1], self.g1[n - 1]);
            return (g + f * s, g1 + g * s + f * s * s * 0.5);
        }
        let k = self.segment(t);
        let h = self.times[k + 1] - self.times[k];
        let s = t - self.times[k];
        let (f, df) = (self.forces[k], self.forces[k + 1] - self.forces[k]);
        let g = self.g[k] + f * s + df * s * s / (2.0 * h);
        let g1 = self.g1[k] + self.g[k] * s + f * s * s * 0.5 + df * s * s * s / (6.0 * h);
        (g, g1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForceProfile {
    Zero,
    Constant {
        force: f64,
    },
    /// `F(t) = amplitude · sin(omega·t + phase)`.
    Sinusoidal {
        amplitude: f64,
        omega: f64,
        phase: f64,
    },
    /// Linear between knots, held constant outside them.
    PiecewiseLinear(Knots),
    /// Linear between samples; undefined outside the sampled range.
    Tabulated(Knots),
}

impl ForceProfile {
    pub fn constant(force: f64) -> Self {
        ForceProfile::Constant { force }
    }

    pub fn sinusoidal(amplitude: f64, omega: f64, phase: f64) -> Self {
        ForceProfile::Sinusoidal { amplitude, omega, phase }
    }

    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self> {
        Knots::new(points, true).map(ForceProfile::PiecewiseLinear)
    }

    pub fn tabulated(samples: Vec<(f64, f64)>) -> Result<Self> {
        Knots::new(samples, false).map(ForceProfile::Tabulated)
    }

    /// Largest time at which the profile is defined.
    pub fn horizon(&self) -> f64 {
        match self {
            ForceProfile::Tabulated(k) => k.last(),
            _ => f64::INFINITY,
        }
    }

    /// Rough force scale, used to normalize finite-difference checks.
    pub fn magnitude(&self) -> f64 {
        match self {
            ForceProfile::Zero => 0.0,
            ForceProfile::Constant { force } => force.abs(),
            ForceProfile::Sinusoidal { amplitude, .. } => amplitude.abs(),
            ForceProfile::PiecewiseLinear(k) | ForceProfile::Tabulated(k) => {
                k.forces.iter().fold(0.0, |m, f| m.max(f.abs()))
            }
        }
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        check_time(t)?;
        if let ForceProfile::Tabulated(k) = self {
            if t < k.first() || t > k.last() {
                return Err(Error::OutOfDomain { t, min: k.first(), max: k.last() });
            }
        }
        Ok(())
    }

    /// `F(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.eval_unchecked(t))
    }

    /// Knot times, where a piecewise-linear force has kinks.
    fn kinks(&self) -> &[f64] {
        match self {
            ForceProfile::PiecewiseLinear(k) | ForceProfile::Tabulated(k) => &k.times,
            _ => &[],
        }
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            ForceProfile::Zero => 0.0,
            ForceProfile::Constant { force } => *force,
            ForceProfile::Sinusoidal { amplitude, omega, phase } => amplitude * (omega * t + phase).sin(),
            ForceProfile::PiecewiseLinear(k) | ForceProfile::Tabulated(k) => k.eval(t),
        }
    }

    fn closed_form(&self, t: f64) -> (f64, f64) {
        match self {
            ForceProfile::Zero => (0.0, 0.0),
            ForceProfile::Constant { force } => (force * t, force * t * t * 0.5),
            ForceProfile::Sinusoidal { amplitude, omega, phase } => {
                if *omega == 0.0 {
                    let f = amplitude * phase.sin();
                    return (f * t, f * t * t * 0.5);
                }
                // product forms of cos a − cos b and sin a − sin b
                let half = 0.5 * omega * t;
                let s = half.sin();
                let g = 2.0 * amplitude / omega * (phase + half).sin() * s;
                let dsin = 2.0 * (phase + half).cos() * s;
                let g1 = amplitude / omega * (t * phase.cos() - dsin / omega);
                (g, g1)
            }
            ForceProfile::PiecewiseLinear(k) | ForceProfile::Tabulated(k) => k.integrals(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    ClosedForm,
    Numeric,
}

/// The pair `G`, `G₁` for one force profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratures {
    profile: ForceProfile,
    method: QuadratureMethod,
    integrator: AdaptiveSimpson,
}

impl Quadratures {
    pub fn closed_form(profile: ForceProfile) -> Self {
        Self { profile, method: QuadratureMethod::ClosedForm, integrator: AdaptiveSimpson::default() }
    }

    pub fn numeric(profile: ForceProfile, integrator: AdaptiveSimpson) -> Self {
        Self { profile, method: QuadratureMethod::Numeric, integrator }
    }

    pub fn profile(&self) -> &ForceProfile {
        &self.profile
    }

    pub fn method(&self) -> QuadratureMethod {
        self.method
    }

    pub fn integrator(&self) -> &AdaptiveSimpson {
        &self.integrator
    }

    pub fn force(&self, t: f64) -> Result<f64> {
        self.profile.eval(t)
    }

    /// `G(t) = ∫₀ᵗ F(τ) dτ`.
    pub fn g(&self, t: f64) -> Result<f64> {
        self.profile.check_domain(t)?;
        match self.method {
            QuadratureMethod::ClosedForm => Ok(self.profile.closed_form(t).0),
            QuadratureMethod::Numeric => self.integrate_segments(|s| self.profile.eval_unchecked(s), t),
        }
    }

    /// `G₁(t) = ∫₀ᵗ G(τ) dτ`; the numeric path uses `∫₀ᵗ (t − τ) F(τ) dτ`.
    pub fn g1(&self, t: f64) -> Result<f64> {
        self.profile.check_domain(t)?;
        match self.method {
            QuadratureMethod::ClosedForm => Ok(self.profile.closed_form(t).1),
            QuadratureMethod::Numeric => self.integrate_segments(|s| (t - s) * self.profile.eval_unchecked(s), t),
        }
    }

    /// `[0, t]` cut at the knots of a piecewise-linear force. Adaptive
    /// Simpson's error estimate can miss a kink inside a panel, so numeric
    /// integrals over forcing-derived integrands run segment by segment.
    pub fn segments(&self, t: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let cuts = self.profile.kinks().iter().copied().filter(move |&b| b > 0.0 && b < t);
        core::iter::once(0.0).chain(cuts.clone()).zip(cuts.chain(core::iter::once(t)))
    }

    fn integrate_segments<F: Fn(f64) -> f64>(&self, f: F, t: f64) -> Result<f64> {
        self.segments(t).try_fold(0.0, |acc, (a, b)| Ok(acc + self.integrator.integrate(&f, a, b)?))
    }

    /// Both antiderivatives at once.
    pub fn pair(&self, t: f64) -> Result<(f64, f64)> {
        match self.method {
            QuadratureMethod::ClosedForm => {
                self.profile.check_domain(t)?;
                Ok(self.profile.closed_form(t))
            }
            QuadratureMethod::Numeric => Ok((self.g(t)?, self.g1(t)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ForceProfile::constant(1.0).eval(0.7).unwrap(), 1.0);
        assert_eq!(ForceProfile::Zero.eval(123.0).unwrap(), 0.0);
        let s = ForceProfile::sinusoidal(2.0, 3.0, 0.0).eval(PI / 6.0).unwrap();
        assert!(close(s, 2.0, 1e-15));
    }

    #[test]
    fn g_and_g1_examples() {
        let q = Quadratures::closed_form(ForceProfile::constant(1.0));
        assert_eq!(q.g(2.0).unwrap(), 2.0);
        assert_eq!(q.g1(2.0).unwrap(), 2.0);
        let z = Quadratures::closed_form(ForceProfile::Zero);
        assert_eq!(z.g(5.0).unwrap(), 0.0);
        assert_eq!(z.g1(3.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_time_rejected() {
        let q = Quadratures::closed_form(ForceProfile::Zero);
        assert_eq!(q.g(-1.0), Err(Error::NegativeTime { t: -1.0 }));
        assert!(ForceProfile::constant(1.0).eval(-0.1).is_err());
    }

    #[test]
    fn zero_time_is_exactly_zero() {
        let profiles = [
            ForceProfile::constant(3.0),
            ForceProfile::sinusoidal(1.0, 2.0, 0.4),
            ForceProfile::piecewise_linear(vec![(0.5, 1.0), (2.0, -1.0)]).unwrap(),
        ];
        for p in profiles {
            for q in [Quadratures::closed_form(p.clone()), Quadratures::numeric(p, AdaptiveSimpson::default())] {
                assert_eq!(q.pair(0.0).unwrap(), (0.0, 0.0));
            }
        }
    }

    #[test]
    fn tabulated_domain() {
        let p = ForceProfile::tabulated(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 2.0)]).unwrap();
        assert!(close(p.eval(0.5).unwrap(), 1.0, 1e-15));
        assert_eq!(p.eval(3.5), Err(Error::OutOfDomain { t: 3.5, min: 0.0, max: 3.0 }));
        let q = Quadratures::closed_form(p);
        // G(3) = 1 + 4, G1(3) = ∫₀¹ τ² dτ + ∫₁³ (1 + 2(τ−1)) dτ = 1/3 + 2 + 4
        let (g, g1) = q.pair(3.0).unwrap();
        assert!(close(g, 5.0, 1e-14));
        assert!(close(g1, 1.0 / 3.0 + 6.0, 1e-14));
        assert!(q.g(3.01).is_err());
    }

    #[test]
    fn invalid_knots() {
        assert!(ForceProfile::piecewise_linear(vec![(0.0, 1.0)]).is_err());
        assert!(ForceProfile::piecewise_linear(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(ForceProfile::piecewise_linear(vec![(1.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(ForceProfile::tabulated(vec![(0.1, 1.0), (0.5, 2.0)]).is_err());
        assert!(ForceProfile::tabulated(vec![(-1.0, 1.0), (0.5, 2.0)]).is_err());
    }

    #[test]
    fn piecewise_linear_holds_ends() {
        let p = ForceProfile::piecewise_linear(vec![(1.0, 2.0), (2.0, 0.0)]).unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 2.0);
        assert_eq!(p.eval(5.0).unwrap(), 0.0);
        let q = Quadratures::closed_form(p);
        // G: 2 on [0,1], then triangle of area 1, then flat
        assert!(close(q.g(5.0).unwrap(), 3.0, 1e-14));
    }

    #[test]
    fn numeric_quadrature_splits_at_kinks() {
        // a kink that a single adaptive panel misses by ~1e-7
        let f = ForceProfile::piecewise_linear(vec![(0.0, 0.0), (0.7, 0.0), (1.4, 0.0), (2.1, -1.4217727394715027)])
            .unwrap();
        let t = 2.1075367419845237;
        let exact = Quadratures::closed_form(f.clone()).pair(t).unwrap();
        let numeric = Quadratures::numeric(f.clone(), AdaptiveSimpson::default()).pair(t).unwrap();
        assert!((exact.0 - numeric.0).abs() < 1e-12);
        assert!((exact.1 - numeric.1).abs() < 1e-12);
        let q = Quadratures::closed_form(f);
        let segs: Vec<_> = q.segments(1.0).collect();
        assert_eq!(segs, vec![(0.0, 0.7), (0.7, 1.0)]);
        assert_eq!(Quadratures::closed_form(ForceProfile::Zero).segments(2.0).collect::<Vec<_>>(), vec![(0.0, 2.0)]);
    }
}
