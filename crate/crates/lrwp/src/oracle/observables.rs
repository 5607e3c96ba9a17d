use lrwp_core::{Complex64, Error as CoreError, ForceProfile, InvariantCoefficients, WaveField};

use crate::error::Result;
use crate::invariant_ops::invariant_expectation;
use crate::spectral::Spectral;

/// Grid-measured quantities at one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRecord {
    pub t: f64,
    pub norm: f64,
    pub x_mean: f64,
    pub p_mean: f64,
    pub dx: f64,
    pub dp: f64,
    pub dxdp: f64,
    /// `⟨ψ|Iψ⟩/⟨ψ|ψ⟩`.
    pub invariant: Complex64,
    /// `‖ψ − ψ_analytic‖ / ‖ψ_analytic‖` when a reference was supplied.
    pub l2_err: Option<f64>,
}

pub fn observables(
    spectral: &Spectral,
    field: &WaveField,
    hbar: f64,
    coeffs: &InvariantCoefficients,
    analytic: Option<&WaveField>,
) -> Result<ObservableRecord> {
    let x = field.coordinate_moments()?;
    let (p_mean, dp) = spectral.momentum_moments(&field.values, hbar).ok_or(CoreError::DegenerateField)?;
    let invariant = invariant_expectation(spectral, coeffs, field, hbar)?;
    let l2_err = analytic.map(|a| field.relative_l2(a)).transpose()?;
    Ok(ObservableRecord {
        t: field.t,
        norm: x.norm,
        x_mean: x.mean,
        p_mean,
        dx: x.spread,
        dp,
        dxdp: x.spread * dp,
        invariant,
        l2_err,
    })
}

/// Largest deviations from `d⟨x⟩/dt = ⟨p⟩/m` and `d⟨p⟩/dt = F(t)`, using
/// central differences over interior records.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EhrenfestReport {
    pub max_velocity_deviation: f64,
    pub max_force_deviation: f64,
    pub samples: usize,
}

pub fn ehrenfest_check(records: &[ObservableRecord], profile: &ForceProfile, mass: f64) -> Result<EhrenfestReport> {
    if records.len() < 3 {
        return Err(CoreError::InvalidParameter("Ehrenfest check needs at least three records").into());
    }
    let h = records[1].t - records[0].t;
    if !(h > 0.0) || records.windows(2).any(|w| ((w[1].t - w[0].t) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(CoreError::InvalidParameter("Ehrenfest check needs uniformly spaced records").into());
    }
    let mut report = EhrenfestReport { max_velocity_deviation: 0.0, max_force_deviation: 0.0, samples: 0 };
    for w in records.windows(3) {
        let (prev, mid, next) = (&w[0], &w[1], &w[2]);
        let dxdt = (next.x_mean - prev.x_mean) / (2.0 * h);
        let dpdt = (next.p_mean - prev.p_mean) / (2.0 * h);
        report.max_velocity_deviation = report.max_velocity_deviation.max((dxdt - mid.p_mean / mass).abs());
        report.max_force_deviation = report.max_force_deviation.max((dpdt - profile.eval(mid.t)?).abs());
        report.samples += 1;
    }
    Ok(report)
}
