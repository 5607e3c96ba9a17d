//! The four run modes behind the command line.
//!
//! Each mode writes its CSV files into an output directory and returns a
//! [`RunSummary`] with the scalar metrics a sweep tabulates.

use std::path::Path;

use lrwp_core::{
    classify_ratio, normalized_alpha0, Complex64, ForceProfile, GaussianMomentumParams, InvariantSpec, PacketMode,
    Quadratures, Space, UniformGrid, WaveField,
};
use rayon::prelude::*;

use crate::config::{ConfigError, ConfigErrorKind, Mode, PacketConfig, RunConfig, SweepAxis, SweepSpec};
use crate::invariant_ops::invariant_scale;
use crate::oracle::{
    check_containment, observables, propagate_cranknicolson, propagate_splitstep, GridSpec, ObservableRecord,
};
use crate::output::{cell, ensure_dir, Table, COMPARISON_COLUMNS, OBSERVABLE_COLUMNS, SNAPSHOT_COLUMNS, SWEEP_COLUMNS};
use crate::spectral::{fourier_bridge, Spectral, EDGE_LIMIT};
use crate::{LrwpError, Result};

/// Validate-mode thresholds.
pub const L2_LIMIT: f64 = 1e-4;
pub const INVARIANT_DRIFT_LIMIT: f64 = 1e-6;
pub const NORM_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSummary {
    pub final_l2_err_ss: Option<f64>,
    pub final_l2_err_cn: Option<f64>,
    pub min_dxdp: Option<f64>,
    pub t_star: Option<f64>,
    pub dx_t0: Option<f64>,
    pub max_abs_diff: Option<f64>,
    /// Largest `|⟨I(t)⟩ − ⟨I(0)⟩|` over both oracles, in units of the invariant scale.
    pub max_inv_drift: Option<f64>,
    /// Validate-mode thresholds that were exceeded.
    pub violations: Vec<String>,
}

impl RunSummary {
    /// Turns threshold violations into an acceptance error.
    pub fn into_result(self) -> Result<Self> {
        if self.violations.is_empty() {
            Ok(self)
        } else {
            Err(LrwpError::Acceptance(self.violations.join("; ")))
        }
    }
}

fn config_error(msg: impl Into<String>) -> LrwpError {
    ConfigError::global(ConfigErrorKind::Invalid(msg.into())).into()
}

fn sample(grid: UniformGrid, t: f64, space: Space, f: impl FnMut(f64) -> Complex64) -> Result<WaveField> {
    let mut f = f;
    Ok(WaveField::sample(grid, t, space, |x| Ok(f(x)))?)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    values.into_iter().fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

fn min_of(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    values.into_iter().fold(None, |m, v| Some(m.map_or(v, |m: f64| m.min(v))))
}

/// Dispatches one non-sweep mode. Threshold violations are reported in the
/// summary, not as an error.
pub fn run_mode(mode: Mode, cfg: &RunConfig, out: &Path) -> Result<RunSummary> {
    match mode {
        Mode::Analytic => run_analytic(cfg, out),
        Mode::Validate => run_validate(cfg, out),
        Mode::Momentum => run_momentum(cfg, out),
        Mode::Sweep => Err(config_error("a sweep cannot be nested inside a sweep")),
    }
}

/// Closed-form observables and snapshots at every output time.
pub fn run_analytic(cfg: &RunConfig, out: &Path) -> Result<RunSummary> {
    let state = cfg.packet_state()?;
    let q = Quadratures::closed_form(cfg.force.clone());
    let grid = cfg.grid.space();
    let hbar = cfg.system.hbar;
    let lambda = state.lambda();
    let classical = state.classical();
    let mut obs = Table::new(&OBSERVABLE_COLUMNS);
    let mut snaps = Table::new(&SNAPSHOT_COLUMNS);
    let mut summary = RunSummary::default();
    let mut products = Vec::new();

    for t in cfg.grid.output_times() {
        let (x_c, p_c) = classical.phase_point(&q, t)?;
        let inv = state.coeffs_at(&q, t)?.on_phase_point(x_c, p_c);
        let field = match state.mode() {
            PacketMode::Gaussian => {
                let snap = state.gtwp_snapshot(&q, t)?;
                let field = sample(grid, t, Space::Position, |x| snap.eval(x))?;
                let (dx, dp, dxdp) = (state.delta_x(t)?, state.delta_p()?, state.uncertainty_product(t)?);
                products.push(dxdp);
                obs.push_numbers(&[
                    Some(t),
                    Some(field.norm_sqr()),
                    Some(x_c),
                    Some(p_c),
                    Some(dx),
                    Some(dp),
                    Some(dxdp),
                    Some(inv.re),
                    Some(inv.im),
                    None,
                    None,
                ]);
                field
            }
            PacketMode::PlaneWave => {
                let snap = state.plane_wave_snapshot(&q, lambda, t)?;
                let p = hbar * snap.wavenumber.re;
                obs.push_numbers(&[
                    Some(t),
                    None,
                    None,
                    Some(p),
                    None,
                    None,
                    None,
                    Some(inv.re),
                    Some(inv.im),
                    None,
                    None,
                ]);
                sample(grid, t, Space::Position, |x| snap.eval(x))?
            }
        };
        for (x, v) in grid.points().zip(&field.values) {
            snaps.push_numbers(&[Some(t), Some(x), Some(v.re), Some(v.im), Some(v.norm_sqr())]);
        }
    }
    obs.write(&out.join("observables.csv"))?;
    snaps.write(&out.join("snapshots.csv"))?;

    if state.mode() == PacketMode::Gaussian {
        summary.min_dxdp = min_of(products);
        summary.t_star = Some(state.minimum_uncertainty_time()?);
        summary.dx_t0 = Some(state.delta_x(0.0)?);
    }
    Ok(summary)
}

fn observable_row(r: &ObservableRecord, l2_ss: Option<f64>, l2_cn: Option<f64>) -> Vec<Option<f64>> {
    vec![
        Some(r.t),
        Some(r.norm),
        Some(r.x_mean),
        Some(r.p_mean),
        Some(r.dx),
        Some(r.dp),
        Some(r.dxdp),
        Some(r.invariant.re),
        Some(r.invariant.im),
        l2_ss,
        l2_cn,
    ]
}

/// Both oracles against the closed form. Writes `observables.csv` (split-step
/// observables, both error columns) and `observables_cn.csv` (the same for
/// Crank–Nicolson).
pub fn run_validate(cfg: &RunConfig, out: &Path) -> Result<RunSummary> {
    let state = cfg.packet_state()?;
    if state.mode() != PacketMode::Gaussian {
        return Err(config_error("validate mode needs a Gaussian packet (Im F0 < 0)"));
    }
    let (mass, hbar) = (cfg.system.mass, cfg.system.hbar);
    let q = Quadratures::closed_form(cfg.force.clone());
    check_containment(&state, &q, &cfg.grid)?;

    let grid = cfg.grid.space();
    let spectral = Spectral::new(grid);
    let analytic = |t: f64| -> Result<WaveField> {
        let snap = state.gtwp_snapshot(&q, t)?;
        sample(grid, t, Space::Position, |x| snap.eval(x))
    };
    let record = |f: WaveField| -> Result<ObservableRecord> {
        let k = state.coeffs_at(&q, f.t)?;
        let reference = analytic(f.t)?;
        observables(&spectral, &f, hbar, &k, Some(&reference))
    };
    let initial = analytic(0.0)?;
    let (ss, cn) = rayon::join(
        || -> Result<Vec<ObservableRecord>> {
            propagate_splitstep(&initial, &cfg.force, mass, hbar, cfg.grid)?.map(|f| record(f?)).collect()
        },
        || -> Result<Vec<ObservableRecord>> {
            propagate_cranknicolson(&initial, &cfg.force, mass, hbar, cfg.grid)?.map(|f| record(f?)).collect()
        },
    );
    let (ss, cn) = (ss?, cn?);

    let mut table = Table::new(&OBSERVABLE_COLUMNS);
    let mut table_cn = Table::new(&OBSERVABLE_COLUMNS);
    for (a, b) in ss.iter().zip(&cn) {
        table.push_numbers(&observable_row(a, a.l2_err, b.l2_err));
        table_cn.push_numbers(&observable_row(b, a.l2_err, b.l2_err));
    }
    table.write(&out.join("observables.csv"))?;
    table_cn.write(&out.join("observables_cn.csv"))?;

    let scale = invariant_scale(&state)?;
    let mut summary = RunSummary {
        final_l2_err_ss: ss.last().and_then(|r| r.l2_err),
        final_l2_err_cn: cn.last().and_then(|r| r.l2_err),
        min_dxdp: min_of(ss.iter().map(|r| r.dxdp)),
        t_star: Some(state.minimum_uncertainty_time()?),
        dx_t0: ss.first().map(|r| r.dx),
        ..RunSummary::default()
    };
    let mut worst_drift = 0.0f64;
    for (name, recs) in [("split-step", &ss), ("crank-nicolson", &cn)] {
        let i0 = recs[0].invariant;
        let l2 = max_of(recs.iter().filter_map(|r| r.l2_err)).unwrap_or(0.0);
        let drift = max_of(recs.iter().map(|r| (r.invariant - i0).norm() / scale)).unwrap_or(0.0);
        let norm = max_of(recs.iter().map(|r| (r.norm - 1.0).abs())).unwrap_or(0.0);
        worst_drift = worst_drift.max(drift);
        if !(l2 < L2_LIMIT) {
            summary.violations.push(format!("{name} l2 error {l2:e} >= {L2_LIMIT:e}"));
        }
        if !(drift < INVARIANT_DRIFT_LIMIT) {
            summary.violations.push(format!("{name} invariant drift {drift:e} >= {INVARIANT_DRIFT_LIMIT:e}"));
        }
        if !(norm <= NORM_LIMIT) {
            summary.violations.push(format!("{name} norm deviation {norm:e} > {NORM_LIMIT:e}"));
        }
    }
    summary.max_inv_drift = Some(worst_drift);
    Ok(summary)
}

/// Momentum-space solution carried to position space and compared with the
/// matched configuration-space packet.
pub fn run_momentum(cfg: &RunConfig, out: &Path) -> Result<RunSummary> {
    let PacketConfig::Gaussian(params) = &cfg.packet else {
        return Err(config_error("momentum mode needs the sigma/x0/p0 packet parameterization"));
    };
    let (mass, hbar) = (cfg.system.mass, cfg.system.hbar);
    let state = params.packet_state(mass, hbar)?;
    let q = Quadratures::closed_form(cfg.force.clone());
    let grid = cfg.grid.space();
    let momenta = grid.conjugate(hbar);
    let mut table = Table::new(&COMPARISON_COLUMNS);
    let mut diffs = Vec::new();
    for t in cfg.grid.output_times() {
        let snap = params.momentum_snapshot(mass, hbar, &q, t)?;
        let phi = sample(momenta, t, Space::Momentum, |p| snap.eval(p))?;
        let bridged = fourier_bridge(&phi, grid.min(), hbar)?;
        if bridged.flagged {
            return Err(LrwpError::Aliasing { t, amplitude: bridged.edge_amplitude, limit: EDGE_LIMIT });
        }
        let packet = state.gtwp_snapshot(&q, t)?;
        let reference = sample(bridged.value.grid, t, Space::Position, |x| packet.eval(x))?;
        let diff = bridged.value.max_abs_diff(&reference)?;
        diffs.push(diff);
        table.push_numbers(&[Some(t), Some(diff)]);
    }
    table.write(&out.join("comparison.csv"))?;
    Ok(RunSummary {
        max_abs_diff: max_of(diffs),
        min_dxdp: min_of(
            cfg.grid.output_times().into_iter().map(|t| state.uncertainty_product(t)).collect::<Result<Vec<_>, _>>()?,
        ),
        t_star: Some(state.minimum_uncertainty_time()?),
        dx_t0: Some(state.delta_x(0.0)?),
        ..RunSummary::default()
    })
}

/// Rejects axis/config combinations that cannot work for any value.
fn check_axis(cfg: &RunConfig, axis: SweepAxis) -> Result<()> {
    match axis {
        SweepAxis::Sigma if !matches!(cfg.packet, PacketConfig::Gaussian(_)) => {
            Err(config_error("sigma sweep needs the sigma/x0/p0 packet parameterization"))
        }
        SweepAxis::ForceAmplitude
            if !matches!(
                cfg.force,
                ForceProfile::Zero | ForceProfile::Constant { .. } | ForceProfile::Sinusoidal { .. }
            ) =>
        {
            Err(config_error("force-amplitude sweep needs a zero, constant or sinusoidal force"))
        }
        _ => Ok(()),
    }
}

/// The configuration for one sweep value. A value the configuration rules
/// reject is a config error, like the same value written in the file.
pub fn apply_axis(cfg: &RunConfig, axis: SweepAxis, value: f64) -> Result<RunConfig> {
    check_axis(cfg, axis)?;
    build_axis(cfg, axis, value).map_err(|e| match e {
        LrwpError::Core(c) => config_error(c.to_string()),
        other => other,
    })
}

fn build_axis(cfg: &RunConfig, axis: SweepAxis, value: f64) -> Result<RunConfig> {
    let mut next = cfg.clone();
    let g = cfg.grid;
    match axis {
        SweepAxis::Sigma => {
            let PacketConfig::Gaussian(p) = &cfg.packet else { unreachable!("checked above") };
            next.packet = PacketConfig::Gaussian(GaussianMomentumParams::new(value, p.x0, p.p0)?);
        }
        SweepAxis::F0Imag => {
            let one = Complex64::new(1.0, 0.0);
            let (a0, c0, re, x0, p0) = match &cfg.packet {
                PacketConfig::Gaussian(p) => (one, Complex64::default(), 0.0, p.x0, p.p0),
                PacketConfig::Invariant { spec, x0, p0, .. } => (spec.a0(), spec.c0(), spec.ratio().re, *x0, *p0),
            };
            let ratio = Complex64::new(re, value);
            let alpha0 = match classify_ratio(ratio)? {
                PacketMode::Gaussian => normalized_alpha0(ratio, cfg.system.hbar)?,
                PacketMode::PlaneWave => Complex64::default(),
            };
            let spec = InvariantSpec::new(a0, ratio * a0, c0)?;
            next.packet = PacketConfig::Invariant { spec, x0, p0, alpha0 };
        }
        SweepAxis::Dt => {
            // keep the output interval fixed so every run reports the same times
            let every = ((g.output_every as f64 * g.dt / value).round() as usize).max(1);
            next.grid = GridSpec::new(g.x_min, g.x_max, g.n, value, g.t_max, every)?;
        }
        SweepAxis::N => {
            if !(value >= 1.0 && value.fract() == 0.0) {
                return Err(config_error(format!("grid size {value} is not a positive integer")));
            }
            next.grid = GridSpec::new(g.x_min, g.x_max, value as usize, g.dt, g.t_max, g.output_every)?;
        }
        SweepAxis::ForceAmplitude => {
            next.force = match cfg.force {
                ForceProfile::Sinusoidal { omega, phase, .. } => ForceProfile::sinusoidal(value, omega, phase),
                _ => ForceProfile::constant(value),
            };
        }
    }
    Ok(next)
}

/// One line of `sweep_summary.csv`.
#[derive(Debug)]
pub struct SweepRow {
    pub label: String,
    pub value: f64,
    pub outcome: Result<RunSummary>,
}

impl SweepRow {
    pub fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(s) if s.violations.is_empty() => "ok",
            Ok(_) => "acceptance",
            Err(e) => match e.exit_code() {
                2 => "config",
                3 => "numeric",
                4 => "acceptance",
                _ => "io",
            },
        }
    }

    pub fn message(&self) -> String {
        match &self.outcome {
            Ok(s) => s.violations.join("; "),
            Err(e) => e.to_string(),
        }
    }
}

/// Directory name for one sweep value.
pub fn sweep_dir_name(axis: SweepAxis, label: &str) -> String {
    format!("{axis}_{label}")
}

/// Runs `sweep.mode` once per value on a pool of `jobs` workers (all logical
/// cores when `None`), each into its own subdirectory of `out`, then writes
/// `sweep_summary.csv`. Failed values are recorded and do not stop the sweep.
pub fn run_sweep(cfg: &RunConfig, sweep: &SweepSpec, out: &Path, jobs: Option<usize>) -> Result<Vec<SweepRow>> {
    if sweep.mode == Mode::Sweep {
        return Err(config_error("a sweep cannot be nested inside a sweep"));
    }
    check_axis(cfg, sweep.axis)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| config_error(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        sweep
            .values
            .par_iter()
            .map(|(label, value)| {
                let dir = out.join(sweep_dir_name(sweep.axis, label));
                let outcome = apply_axis(cfg, sweep.axis, *value)
                    .and_then(|c| ensure_dir(&dir).map(|_| c))
                    .and_then(|c| run_mode(sweep.mode, &c, &dir));
                SweepRow { label: label.clone(), value: *value, outcome }
            })
            .collect()
    });

    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut prev: Option<&RunSummary> = None;
    for row in &rows {
        let s = row.outcome.as_ref().ok();
        let ratio = |f: fn(&RunSummary) -> Option<f64>| match (sweep.axis, prev, s) {
            (SweepAxis::Dt, Some(p), Some(s)) => f(p).zip(f(s)).map(|(a, b)| a / b),
            _ => None,
        };
        let metric = |f: fn(&RunSummary) -> Option<f64>| cell(s.and_then(f));
        table.push(vec![
            sweep.axis.to_string(),
            row.label.clone(),
            row.status().to_string(),
            metric(|s| s.final_l2_err_ss),
            metric(|s| s.final_l2_err_cn),
            cell(ratio(|s| s.final_l2_err_ss)),
            cell(ratio(|s| s.final_l2_err_cn)),
            metric(|s| s.min_dxdp),
            metric(|s| s.t_star),
            metric(|s| s.dx_t0),
            metric(|s| s.max_abs_diff),
            metric(|s| s.max_inv_drift),
            row.message(),
        ]);
        prev = s;
    }
    table.write(&out.join("sweep_summary.csv"))?;
    Ok(rows)
}
