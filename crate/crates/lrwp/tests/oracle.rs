//! Propagators against the closed-form packet.

use lrwp::oracle::{
    ehrenfest_check, observables, propagate_cranknicolson, propagate_splitstep, GridSpec, ObservableRecord,
};
use lrwp::spectral::Spectral;
use lrwp_core::{ForceProfile, GaussianMomentumParams, PacketState, Quadratures, Space, WaveField};

fn analytic(state: &PacketState, q: &Quadratures, spec: &GridSpec, t: f64) -> WaveField {
    let snap = state.gtwp_snapshot(q, t).unwrap();
    WaveField::sample(spec.space(), t, Space::Position, |x| Ok(snap.eval(x))).unwrap()
}

fn matched() -> PacketState {
    GaussianMomentumParams::new(1.0, 0.0, 0.0).unwrap().packet_state(1.0, 1.0).unwrap()
}

fn final_errors(profile: &ForceProfile, dt: f64, t_max: f64) -> (f64, f64) {
    let state = matched();
    let q = Quadratures::closed_form(profile.clone());
    let spec = GridSpec::new(-20.0, 20.0, 2048, dt, t_max, (t_max / dt).round() as usize).unwrap();
    let init = analytic(&state, &q, &spec, 0.0);
    let reference = analytic(&state, &q, &spec, t_max);
    let ss = propagate_splitstep(&init, profile, 1.0, 1.0, spec).unwrap().last().unwrap().unwrap();
    let cn = propagate_cranknicolson(&init, profile, 1.0, 1.0, spec).unwrap().last().unwrap().unwrap();
    (ss.relative_l2(&reference).unwrap(), cn.relative_l2(&reference).unwrap())
}

#[test]
fn free_packet_splitstep_matches_analytic() {
    let (ss, cn) = final_errors(&ForceProfile::Zero, 1e-3, 1.0);
    assert!(ss < 1e-6, "split-step {ss:e}");
    assert!(cn < 1e-5, "crank-nicolson {cn:e}");
}

#[test]
fn dt_halving_gives_second_order() {
    let profile = ForceProfile::constant(1.0);
    let (ss1, cn1) = final_errors(&profile, 2e-3, 1.0);
    let (ss2, cn2) = final_errors(&profile, 1e-3, 1.0);
    eprintln!("ss {ss1:e} {ss2:e} ratio {}; cn {cn1:e} {cn2:e} ratio {}", ss1 / ss2, cn1 / cn2);
    assert!((3.6..=4.4).contains(&(ss1 / ss2)));
    assert!((3.6..=4.4).contains(&(cn1 / cn2)));
}

fn run_records(profile: &ForceProfile, every: usize, t_max: f64) -> (Vec<ObservableRecord>, Vec<ObservableRecord>) {
    let state = matched();
    let q = Quadratures::closed_form(profile.clone());
    let spec = GridSpec::new(-20.0, 20.0, 2048, 1e-3, t_max, every).unwrap();
    let spectral = Spectral::new(spec.space());
    let init = analytic(&state, &q, &spec, 0.0);
    let record = |f: WaveField| {
        let k = state.coeffs_at(&q, f.t).unwrap();
        let a = analytic(&state, &q, &spec, f.t);
        observables(&spectral, &f, 1.0, &k, Some(&a)).unwrap()
    };
    let ss = propagate_splitstep(&init, profile, 1.0, 1.0, spec).unwrap().map(|f| record(f.unwrap())).collect();
    let cn = propagate_cranknicolson(&init, profile, 1.0, 1.0, spec).unwrap().map(|f| record(f.unwrap())).collect();
    (ss, cn)
}

#[test]
fn benchmark_observables() {
    let (ss, cn) = run_records(&ForceProfile::constant(1.0), 100, 2.0);
    assert_eq!(ss.len(), 21);
    for recs in [&ss, &cn] {
        let i0 = recs[0].invariant;
        for r in recs.iter() {
            assert!(r.l2_err.unwrap() < 1e-4, "t={} l2={:e}", r.t, r.l2_err.unwrap());
            assert!((r.norm - 1.0).abs() < 1e-10);
            assert!((r.invariant - i0).norm() < 1e-6);
            assert!(r.dxdp >= 0.5 - 1e-9);
        }
    }
    let r0 = &ss[0];
    assert!(r0.x_mean.abs() < 1e-8 && r0.p_mean.abs() < 1e-8);
    assert!((r0.dx - 1.0).abs() < 1e-8 && (r0.dp - 0.5).abs() < 1e-8);
}

#[test]
fn ehrenfest_on_sinusoidal_drive() {
    let profile = ForceProfile::sinusoidal(1.0, 2.0, 0.0);
    let (ss, cn) = run_records(&profile, 1, 1.0);
    for recs in [&ss, &cn] {
        let rep = ehrenfest_check(recs, &profile, 1.0).unwrap();
        eprintln!("{rep:?}");
        assert!(rep.max_velocity_deviation < 1e-5 && rep.max_force_deviation < 1e-5);
    }
}
