//! Adaptive Simpson quadrature over real or complex integrands.
//!
//! Complex integrands are refined on a single shared subdivision: the local
//! error estimate is the modulus of the complex Richardson difference, so the
//! real and imaginary parts always see the same panels.

use core::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::Complex64;

/// Values that can be accumulated by [`AdaptiveSimpson`].
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        num_traits::Float::abs(self)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveSimpson {
    /// Absolute tolerance on the whole integral.
    pub tolerance: f64,
    pub max_depth: u32,
    /// Panels are always split at least this many times, so integrands that
    /// happen to fool the first Simpson estimate still get refined.
    pub min_depth: u32,
}

impl Default for AdaptiveSimpson {
    fn default() -> Self {
        Self { tolerance: 1e-12, max_depth: 40, min_depth: 4 }
    }
}

struct Panel<V> {
    a: f64,
    b: f64,
    fa: V,
    fm: V,
    fb: V,
    whole: V,
}

impl AdaptiveSimpson {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self { tolerance, ..Self::default() }
    }

    /// Integrates an infallible integrand over `[a, b]`.
    pub fn integrate<V, F>(&self, mut f: F, a: f64, b: f64) -> Result<V>
    where
        V: QuadValue,
        F: FnMut(f64) -> V,
    {
        self.try_integrate(|x| Ok(f(x)), a, b)
    }

    /// Integrates an integrand that may itself fail; the first error aborts
    /// the whole integration.
    pub fn try_integrate<V, F>(&self, mut f: F, a: f64, b: f64) -> Result<V>
    where
        V: QuadValue,
        F: FnMut(f64) -> Result<V>,
    {
        if a == b {
            return Ok(V::zero());
        }
        if b < a {
            return self.try_integrate(f, b, a).map(|v| v * -1.0);
        }
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
        let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
        let mut residual = 0.0;
        let value = self.refine(&mut f, Panel { a, b, fa, fm, fb, whole }, self.tolerance, 0, &mut residual)?;
        if residual > self.tolerance {
            return Err(Error::QuadratureNonConvergence { residual, tolerance: self.tolerance });
        }
        Ok(value)
    }

    fn refine<V, F>(&self, f: &mut F, p: Panel<V>, tol: f64, depth: u32, residual: &mut f64) -> Result<V>
    where
        V: QuadValue,
        F: FnMut(f64) -> Result<V>,
    {
        let m = 0.5 * (p.a + p.b);
        let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
        let (flm, frm) = (f(lm)?, f(rm)?);
        let h = (p.b - p.a) / 12.0;
        let left = (p.fa + flm * 4.0 + p.fm) * h;
        let right = (p.fm + frm * 4.0 + p.fb) * h;
        let split = left + right;
        let delta = split - p.whole;
        let err = delta.magnitude() / 15.0;
        if depth >= self.min_depth && err <= tol {
            return Ok(split + delta * (1.0 / 15.0));
        }
        if depth >= self.max_depth || m <= p.a || m >= p.b {
            *residual += err;
            return Ok(split + delta * (1.0 / 15.0));
        }
        let l = self.refine(
            f,
            Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left },
            0.5 * tol,
            depth + 1,
            residual,
        )?;
        let r = self.refine(
            f,
            Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right },
            0.5 * tol,
            depth + 1,
            residual,
        )?;
        Ok(l + r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Float;

    #[test]
    fn polynomial_is_exact() {
        let q = AdaptiveSimpson::default();
        let v: f64 = q.integrate(|x| x * x * x - 2.0 * x, 0.0, 3.0).unwrap();
        assert!((v - (81.0 / 4.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let q = AdaptiveSimpson::default();
        let fwd: f64 = q.integrate(|x| x.sin(), 0.0, 2.0).unwrap();
        let back: f64 = q.integrate(|x| x.sin(), 2.0, 0.0).unwrap();
        assert_eq!(fwd, -back);
        assert!((fwd - (1.0 - 2.0.cos())).abs() < 1e-12);
    }

    #[test]
    fn complex_integrand_shares_panels() {
        let q = AdaptiveSimpson::default();
        // ∫₀^π e^{ix} dx = 2i
        let v: Complex64 = q.integrate(|x| Complex64::new(0.0, x).exp(), 0.0, core::f64::consts::PI).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn periodic_integrand_not_fooled_by_first_estimate() {
        // The three initial samples of sin²(4x) on [0, π] are all zero.
        let q = AdaptiveSimpson::default();
        let v: f64 = q.integrate(|x| (4.0 * x).sin().powi(2), 0.0, core::f64::consts::PI).unwrap();
        assert!((v - core::f64::consts::FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn non_convergence_reports_residual() {
        let q = AdaptiveSimpson { tolerance: 1e-14, max_depth: 3, min_depth: 0 };
        let err = q.integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0).unwrap_err();
        match err {
            Error::QuadratureNonConvergence { residual, tolerance } => {
                assert!(residual > tolerance);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integrand_error_propagates() {
        let q = AdaptiveSimpson::default();
        let err = q
            .try_integrate::<f64, _>(|x| if x > 0.5 { Err(Error::NegativeTime { t: -1.0 }) } else { Ok(x) }, 0.0, 1.0)
            .unwrap_err();
        assert_eq!(err, Error::NegativeTime { t: -1.0 });
    }
}
