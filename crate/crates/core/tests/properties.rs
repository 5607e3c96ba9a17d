//! Randomized identities of the closed-form packet and its classical
//! trajectory.

use lrwp_core::{
    AdaptiveSimpson, ClassicalState, Complex64, ForceProfile, GaussianMomentumParams, InvariantSpec, PacketState,
    Quadratures,
};
use proptest::prelude::*;

fn force() -> impl Strategy<Value = ForceProfile> {
    prop_oneof![
        Just(ForceProfile::Zero),
        (-3.0..3.0f64).prop_map(ForceProfile::constant),
        (-2.0..2.0f64, 0.0..5.0f64, -3.0..3.0f64).prop_map(|(a, w, ph)| ForceProfile::sinusoidal(a, w, ph)),
        prop::collection::vec(-2.0..2.0f64, 2..6).prop_map(|fs| {
            let points = fs.iter().enumerate().map(|(k, &f)| (0.7 * k as f64, f)).collect();
            ForceProfile::piecewise_linear(points).unwrap()
        }),
    ]
}

/// Ratios with Im F0 < 0, kept away from the real axis.
fn gaussian_ratio() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -3.0..-0.05f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uncertainty_product_bounded_below(ratio in gaussian_ratio(), mass in 0.2..5.0f64, hbar in 0.1..3.0f64, t in 0.0..10.0f64) {
        let state = PacketState::normalized(mass, hbar, 0.0, 0.0, InvariantSpec::from_ratio(ratio).unwrap()).unwrap();
        let product = state.uncertainty_product(t).unwrap();
        prop_assert!(product >= 0.5 * hbar * (1.0 - 1e-12));
        prop_assert!(close(product, state.delta_x(t).unwrap() * state.delta_p().unwrap(), 1e-12));
        let t_star = state.minimum_uncertainty_time().unwrap();
        if t_star >= 0.0 {
            prop_assert!(close(state.uncertainty_product(t_star).unwrap(), 0.5 * hbar, 1e-10));
        }
    }

    #[test]
    fn trajectory_affine_in_initial_conditions(f in force(), x0 in -5.0..5.0f64, p0 in -5.0..5.0f64, dx in -3.0..3.0f64, dp in -3.0..3.0f64, t in 0.0..3.0f64) {
        let q = Quadratures::closed_form(f);
        let m = 1.7;
        let base = ClassicalState::new(m, x0, p0).unwrap();
        let moved = ClassicalState::new(m, x0 + dx, p0 + dp).unwrap();
        let (xa, pa) = base.phase_point(&q, t).unwrap();
        let (xb, pb) = moved.phase_point(&q, t).unwrap();
        prop_assert!(close(xb - xa, dx + dp * t / m, 1e-12));
        prop_assert!(close(pb - pa, dp, 1e-12));
    }

    #[test]
    fn closed_form_matches_quadrature(f in force(), t in 0.0..3.0f64) {
        let exact = Quadratures::closed_form(f.clone());
        let numeric = Quadratures::numeric(f, AdaptiveSimpson::default());
        let (g, g1) = exact.pair(t).unwrap();
        let (ng, ng1) = numeric.pair(t).unwrap();
        prop_assert!((g - ng).abs() < 1e-10, "G {g} vs {ng}");
        prop_assert!((g1 - ng1).abs() < 1e-10, "G1 {g1} vs {ng1}");
    }

    #[test]
    fn invariant_is_conserved_along_trajectory(
        f in force(), ratio in gaussian_ratio(), a0 in (0.2..2.0f64, -1.0..1.0f64), c0 in (-2.0..2.0f64, -2.0..2.0f64),
        x0 in -3.0..3.0f64, p0 in -3.0..3.0f64, t in 0.0..3.0f64,
    ) {
        let a0 = Complex64::new(a0.0, a0.1);
        let spec = InvariantSpec::new(a0, ratio * a0, Complex64::new(c0.0, c0.1)).unwrap();
        let state = PacketState::normalized(1.3, 0.8, x0, p0, spec).unwrap();
        let q = Quadratures::closed_form(f);
        let (x_c, p_c) = state.classical().phase_point(&q, t).unwrap();
        let k = state.coeffs_at(&q, t).unwrap();
        let lambda = state.lambda();
        prop_assert!((k.on_phase_point(x_c, p_c) - lambda).norm() <= 1e-10 * (1.0 + lambda.norm()));
        // (λ − C)/A = p_c + (B0/A) x_c
        let lhs = (lambda - k.c) / k.a;
        let rhs = p_c + spec.b0() / k.a * x_c;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn packet_density_is_the_closed_form(f in force(), ratio in gaussian_ratio(), x0 in -2.0..2.0f64, p0 in -2.0..2.0f64, x in -6.0..6.0f64, t in 0.0..2.0f64) {
        let state = PacketState::normalized(1.0, 1.0, x0, p0, InvariantSpec::from_ratio(ratio).unwrap()).unwrap();
        let q = Quadratures::closed_form(f);
        let psi = state.gtwp_psi(&q, x, t).unwrap();
        let closed = state.density_closed_form(&q, x, t).unwrap();
        prop_assert!(close(psi.norm_sqr(), closed, 1e-10));
    }

    #[test]
    fn matched_width_at_start(sigma in 0.1..5.0f64, x0 in -3.0..3.0f64, p0 in -3.0..3.0f64, mass in 0.2..4.0f64, hbar in 0.2..2.0f64) {
        let params = GaussianMomentumParams::new(sigma, x0, p0).unwrap();
        let state = params.packet_state(mass, hbar).unwrap();
        prop_assert!(close(state.delta_x(0.0).unwrap(), sigma, 1e-12));
        prop_assert!(close(state.delta_p().unwrap(), hbar / (2.0 * sigma), 1e-12));
        let tt = params.spreading_time(mass, hbar);
        prop_assert!(close(state.delta_x(tt).unwrap(), sigma * 2f64.sqrt(), 1e-12));
    }
}
