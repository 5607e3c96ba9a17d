//! The linear invariant applied to sampled wave functions.

use lrwp_core::{Complex64, Error as CoreError, InvariantCoefficients, PacketMode, PacketState, Space, WaveField};

use crate::error::Result;
use crate::spectral::{Checked, Spectral};

/// `I ψ = A(−iħ ∂ₓψ) + B x ψ + C ψ`, derivative taken spectrally.
pub fn apply_invariant(
    spectral: &Spectral,
    coeffs: &InvariantCoefficients,
    field: &WaveField,
    hbar: f64,
) -> Result<Checked<WaveField>> {
    if field.space != Space::Position || field.grid != *spectral.grid() {
        return Err(CoreError::InvalidGrid("field does not live on the spectral grid").into());
    }
    let d = spectral.derivative(&field.values);
    let minus_i_hbar = Complex64::new(0.0, -hbar);
    let values = field
        .grid
        .points()
        .zip(field.values.iter().zip(d))
        .map(|(x, (&v, dv))| coeffs.a * minus_i_hbar * dv + coeffs.b * x * v + coeffs.c * v)
        .collect();
    let out = WaveField::new(field.grid, field.t, Space::Position, values)?;
    let edge = field.edge_amplitude();
    Ok(Checked { value: out, edge_amplitude: edge, flagged: edge > crate::spectral::EDGE_LIMIT })
}

/// `⟨ψ|Iψ⟩ / ⟨ψ|ψ⟩`.
pub fn invariant_expectation(
    spectral: &Spectral,
    coeffs: &InvariantCoefficients,
    field: &WaveField,
    hbar: f64,
) -> Result<Complex64> {
    let applied = apply_invariant(spectral, coeffs, field, hbar)?.value;
    let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
    for (v, iv) in field.values.iter().zip(&applied.values) {
        num += v.conj() * iv;
        den += v.norm_sqr();
    }
    if den == 0.0 {
        return Err(CoreError::DegenerateField.into());
    }
    Ok(num / den)
}

/// `‖(I − λ)ψ‖ / ‖λψ‖`.
pub fn eigen_residual(
    spectral: &Spectral,
    coeffs: &InvariantCoefficients,
    field: &WaveField,
    lambda: Complex64,
    hbar: f64,
) -> Result<f64> {
    let applied = apply_invariant(spectral, coeffs, field, hbar)?.value;
    let (mut num, mut den) = (0.0, 0.0);
    for (v, iv) in field.values.iter().zip(&applied.values) {
        num += (iv - lambda * v).norm_sqr();
        den += (lambda * v).norm_sqr();
    }
    if den == 0.0 {
        return Err(CoreError::DegenerateField.into());
    }
    Ok((num / den).sqrt())
}

/// Size of the invariant on the initial packet, `|λ| + |A0|Δp + |B0|Δx(0)`.
///
/// Used to normalize drifts of `⟨I⟩` when `λ` itself may vanish.
pub fn invariant_scale(state: &PacketState) -> Result<f64> {
    let spec = state.spec();
    let mut s = state.lambda().norm();
    if state.mode() == PacketMode::Gaussian {
        s += spec.a0().norm() * state.delta_p()? + spec.b0().norm() * state.delta_x(0.0)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lrwp_core::{ForceProfile, GaussianMomentumParams, InvariantSpec, Quadratures, UniformGrid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn momentum_operator_on_plane_wave() {
        let grid = UniformGrid::new(0.0, 10.0, 256).unwrap();
        // periodic plane wave: p0 = 2π·3/L
        let hbar = 0.8;
        let p0 = hbar * 2.0 * std::f64::consts::PI * 3.0 / 10.0;
        let f = WaveField::sample(grid, 0.0, Space::Position, |x| Ok(c(0.0, p0 * x / hbar).exp())).unwrap();
        let k = InvariantCoefficients { a: c(1.0, 0.0), b: c(0.0, 0.0), c: c(0.0, 0.0), t: 0.0 };
        let s = Spectral::new(grid);
        let out = apply_invariant(&s, &k, &f, hbar).unwrap();
        for (v, w) in f.values.iter().zip(&out.value.values) {
            assert!((w - v * p0).norm() < 1e-12);
        }
        // plane wave fills the box, so the boundary flag is raised
        assert!(out.flagged);
    }

    #[test]
    fn matches_fourth_order_finite_differences() {
        // ψ = x·e^{−x²/2}, A = B = 1, C = 0, ħ = 1
        let grid = UniformGrid::new(-16.0, 16.0, 2048).unwrap();
        let psi = |x: f64| c(x * (-x * x / 2.0).exp(), 0.0);
        let f = WaveField::sample(grid, 0.0, Space::Position, |x| Ok(psi(x))).unwrap();
        let k = InvariantCoefficients { a: c(1.0, 0.0), b: c(1.0, 0.0), c: c(0.0, 0.0), t: 0.0 };
        let out = apply_invariant(&Spectral::new(grid), &k, &f, 1.0).unwrap();
        assert!(!out.flagged);
        let h = grid.spacing();
        for j in (2..grid.len() - 2).step_by(7) {
            let x = grid.point(j);
            let d = (-psi(x + 2.0 * h) + psi(x + h) * 8.0 - psi(x - h) * 8.0 + psi(x - 2.0 * h)) / (12.0 * h);
            let expect = c(0.0, -1.0) * d + psi(x) * x;
            assert!((out.value.values[j] - expect).norm() < 1e-6);
        }
    }

    #[test]
    fn packet_is_eigenfunction() {
        let g = GaussianMomentumParams::new(1.0, 1.0, 1.0).unwrap();
        let state = g.packet_state(1.0, 1.0).unwrap();
        let q = Quadratures::closed_form(ForceProfile::constant(1.0));
        let grid = UniformGrid::new(-20.0, 20.0, 2048).unwrap();
        let s = Spectral::new(grid);
        for &t in &[0.0, 1.0, 2.0] {
            let snap = state.gtwp_snapshot(&q, t).unwrap();
            let f = WaveField::sample(grid, t, Space::Position, |x| Ok(snap.eval(x))).unwrap();
            let k = state.coeffs_at(&q, t).unwrap();
            let r = eigen_residual(&s, &k, &f, state.lambda(), 1.0).unwrap();
            assert!(r < 1e-6, "t={t}: {r}");
            let e = invariant_expectation(&s, &k, &f, 1.0).unwrap();
            assert!((e - state.lambda()).norm() < 1e-10);
        }
    }

    #[test]
    fn scale_of_matched_packet() {
        let spec = InvariantSpec::from_ratio(c(0.0, -0.5)).unwrap();
        let state = PacketState::normalized(1.0, 1.0, 0.0, 0.0, spec).unwrap();
        assert!((invariant_scale(&state).unwrap() - 1.0).abs() < 1e-15);
    }
}
