//! Classical trajectory followed by the packet center, and the kinetic
//! action `S(t) = ∫₀ᵗ p_c(τ)²/(2m) dτ` that enters the packet phase.

use alloc::vec::Vec;

// unused whenever std is in the build graph and f64 gets its inherent math
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check_time, Error, Result};
use crate::forcing::{ForceProfile, QuadratureMethod, Quadratures};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    mass: f64,
    pub x0: f64,
    pub p0: f64,
}

impl ClassicalState {
    pub fn new(mass: f64, x0: f64, p0: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter("mass must be positive"));
        }
        Ok(Self { mass, x0, p0 })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `x_c(t) = x₀ + (p₀ t + G₁(t))/m`.
    pub fn x_c(&self, q: &Quadratures, t: f64) -> Result<f64> {
        Ok(self.x0 + (self.p0 * t + q.g1(t)?) / self.mass)
    }

    /// `p_c(t) = p₀ + G(t)`.
    pub fn p_c(&self, q: &Quadratures, t: f64) -> Result<f64> {
        Ok(self.p0 + q.g(t)?)
    }

    /// `(x_c, p_c)` sharing one quadrature evaluation.
    pub fn phase_point(&self, q: &Quadratures, t: f64) -> Result<(f64, f64)> {
        let (g, g1) = q.pair(t)?;
        Ok((self.x0 + (self.p0 * t + g1) / self.mass, self.p0 + g))
    }

    pub fn kinetic_action(&self, q: &Quadratures, t: f64) -> Result<f64> {
        check_time(t)?;
        let two_m = 2.0 * self.mass;
        if q.method() == QuadratureMethod::ClosedForm {
            match q.profile() {
                ForceProfile::Zero => return Ok(self.p0 * self.p0 * t / two_m),
                ForceProfile::Constant { force } => {
                    let f = *force;
                    let p0 = self.p0;
                    return Ok((p0 * p0 * t + p0 * f * t * t + f * f * t * t * t / 3.0) / two_m);
                }
                _ => {}
            }
        }
        q.segments(t).try_fold(0.0, |acc, (a, b)| {
            let piece = q.integrator().try_integrate(
                |s| {
                    let p = self.p_c(q, s)?;
                    Ok(p * p / two_m)
                },
                a,
                b,
            )?;
            Ok(acc + piece)
        })
    }
}

/// Cumulative kinetic action on a uniform grid over `[0, t_max]`, read back
/// by cubic Hermite interpolation with the exact integrand `p_c²/2m` as the
/// node derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionTable {
    step: f64,
    values: Vec<f64>,
    rates: Vec<f64>,
}

impl ActionTable {
    pub fn build(state: &ClassicalState, q: &Quadratures, t_max: f64, step: f64) -> Result<Self> {
        check_time(t_max)?;
        if !(step > 0.0) {
            return Err(Error::InvalidParameter("action table step must be positive"));
        }
        let cells = ((t_max / step).ceil() as usize).max(1);
        let step = t_max / cells as f64;
        let two_m = 2.0 * state.mass();
        let mut values = Vec::with_capacity(cells + 1);
        let mut rates = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        let p = state.p_c(q, 0.0)?;
        values.push(0.0);
        rates.push(p * p / two_m);
        for k in 0..cells {
            let (a, b) = (k as f64 * step, (k + 1) as f64 * step);
            acc += q.integrator().try_integrate(
                |s| {
                    let p = state.p_c(q, s)?;
                    Ok(p * p / two_m)
                },
                a,
                b.min(t_max),
            )?;
            let p = state.p_c(q, b.min(t_max))?;
            values.push(acc);
            rates.push(p * p / two_m);
        }
        Ok(Self { step, values, rates })
    }

    pub fn t_max(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let t_max = self.t_max();
        if t > t_max * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain { t, min: 0.0, max: t_max });
        }
        let cells = self.values.len() - 1;
        let k = ((t / self.step) as usize).min(cells - 1);
        let h = self.step;
        let s = ((t - k as f64 * h) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (d0, d1) = (self.rates[k] * h, self.rates[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        Ok(y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + d0 * (s3 - 2.0 * s2 + s) + y1 * (3.0 * s2 - 2.0 * s3) + d1 * (s3 - s2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::AdaptiveSimpson;

    fn sine() -> Quadratures {
        Quadratures::closed_form(ForceProfile::sinusoidal(1.0, 2.0, 0.0))
    }

    #[test]
    fn trajectory_examples() {
        let rest = ClassicalState::new(1.0, 0.0, 0.0).unwrap();
        let zero = Quadratures::closed_form(ForceProfile::Zero);
        assert_eq!(rest.x_c(&zero, 4.0).unwrap(), 0.0);
        assert_eq!(rest.p_c(&zero, 7.0).unwrap(), 0.0);

        let push = Quadratures::closed_form(ForceProfile::constant(1.0));
        assert_eq!(rest.x_c(&push, 2.0).unwrap(), 2.0);
        let moving = ClassicalState::new(1.0, 0.0, 1.0).unwrap();
        assert_eq!(moving.p_c(&push, 2.0).unwrap(), 3.0);

        // values frozen from nested adaptive quadrature of the force
        let s = ClassicalState::new(2.0, 1.0, 3.0).unwrap();
        assert!((s.x_c(&sine(), 1.0).unwrap() - 2.636_337_9).abs() < 1e-7);
        assert!((rest.p_c(&sine(), 1.0).unwrap() - 0.708_073_4).abs() < 1e-7);
    }

    #[test]
    fn mass_must_be_positive() {
        assert!(ClassicalState::new(0.0, 0.0, 0.0).is_err());
        assert!(ClassicalState::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn kinetic_action_closed_forms() {
        let rest = ClassicalState::new(1.0, 0.0, 0.0).unwrap();
        let zero = Quadratures::closed_form(ForceProfile::Zero);
        assert_eq!(rest.kinetic_action(&zero, 9.0).unwrap(), 0.0);
        let push = Quadratures::closed_form(ForceProfile::constant(1.0));
        assert!((rest.kinetic_action(&push, 2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        // the closed form and the adaptive path agree
        let s = ClassicalState::new(1.3, 0.2, -0.7).unwrap();
        let numeric = Quadratures::numeric(ForceProfile::constant(0.8), AdaptiveSimpson::default());
        let push = Quadratures::closed_form(ForceProfile::constant(0.8));
        let a = s.kinetic_action(&push, 2.5).unwrap();
        let b = s.kinetic_action(&numeric, 2.5).unwrap();
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn kinetic_action_matches_trapezoid() {
        // fine-grid trapezoid with closed-form p_c, error ~ h²/12 · max|f''|
        let s = ClassicalState::new(1.0, 0.0, 1.0).unwrap();
        let q = sine();
        let n = 200_000;
        let h = 1.0 / n as f64;
        let f = |t: f64| {
            let p = 1.0 + (1.0 - (2.0 * t).cos()) / 2.0;
            p * p / 2.0
        };
        let mut trap = 0.5 * (f(0.0) + f(1.0));
        for k in 1..n {
            trap += f(k as f64 * h);
        }
        trap *= h;
        let v = s.kinetic_action(&q, 1.0).unwrap();
        assert!((v - trap).abs() < 1e-9, "{v} vs {trap}");
    }

    #[test]
    fn action_table_interpolates() {
        let s = ClassicalState::new(1.0, 0.3, 0.5).unwrap();
        let q = sine();
        let table = ActionTable::build(&s, &q, 2.0, 2.5e-4).unwrap();
        for k in 0..=37 {
            let t = 2.0 * k as f64 / 37.0;
            let direct = s.kinetic_action(&q, t).unwrap();
            assert!((table.eval(t).unwrap() - direct).abs() < 1e-11);
        }
        assert!(table.eval(2.1).is_err());
    }
}
