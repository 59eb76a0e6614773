//! Grid construction and row assembly for the report/sweep/figure/response/
//! coupling subcommands. Rows are computed in parallel but always gathered
//! back into grid order, so output is deterministic for any thread count.

use optomech::cooling::{report_at_bare, report_at_effective, CoolingContext, CoolingReport};
use optomech::coupling;
use optomech::error::Error;
use optomech::params::SystemConfig;
use optomech::response::response_point;
use optomech::steady_state::{linearize, steady_at_detuning};
use rayon::prelude::*;

use crate::output::{fmt, fmt_opt};
use crate::presets::{FigureKind, FigurePreset, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Delta,
    LdpScale,
    Reflectivity,
    Temperature,
    Power,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Delta => "delta",
            SweepAxis::LdpScale => "ldp_scale",
            SweepAxis::Reflectivity => "reflectivity",
            SweepAxis::Temperature => "temperature",
            SweepAxis::Power => "power",
        }
    }
}

/// One sweep grid: `points` values from `start` to `stop` inclusive, linear
/// or logarithmic. Delta is in units of ω_m; the other axes are in the
/// config's own units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log_scale: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.start < self.stop) {
            return Err(format!(
                "sweep start must be below stop (got {} .. {})",
                self.start, self.stop
            ));
        }
        if self.points < 2 {
            return Err(format!("sweep needs at least 2 points (got {})", self.points));
        }
        if self.log_scale && self.start <= 0.0 {
            return Err("log-scale sweep needs a positive start".to_string());
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.log_scale {
                    (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp()
                } else {
                    self.start + (self.stop - self.start) * t
                }
            })
            .collect()
    }
}

/// Run `f` on a dedicated pool of `threads` workers (or the default pool).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub const COOLING_HEADER: [&str; 18] = [
    "axis",
    "x",
    "delta_over_omega_m",
    "eta0_scale",
    "reflectivity",
    "var_q_lyapunov",
    "var_q_closed_form",
    "var_q_spectral",
    "var_p_lyapunov",
    "var_p_closed_form",
    "var_p_spectral",
    "n_eff",
    "t_eff_k",
    "m1",
    "m2",
    "max_re_eig",
    "consistency",
    "flag",
];

pub const RESPONSE_HEADER: [&str; 5] = [
    "eta0_scale",
    "omega_over_omega_m",
    "omega_eff_over_omega_m",
    "gamma_eff_over_gamma",
    "flag",
];

pub const COUPLING_HEADER: [&str; 4] = ["r_c", "eta0_eff", "n_b", "f_nb"];

fn flag_for(e: &Error) -> &'static str {
    match e {
        Error::NoConvergence { .. } => "no-converge",
        Error::QuadratureStall { .. } => "quad-stall",
        Error::NearPole { .. } => "near-pole",
        Error::Unstable => "unstable",
        _ => "error",
    }
}

/// One full-schema row from a cooling report (or its failure).
fn cooling_row(
    axis: &str,
    x: f64,
    cfg: &SystemConfig,
    omega_m: f64,
    res: optomech::Result<CoolingReport>,
) -> Vec<String> {
    let mut row = vec![
        axis.to_string(),
        fmt(x),
        String::new(),
        fmt(cfg.ldp_scale),
        fmt(cfg.reflectivity),
    ];
    match res {
        Ok(r) => {
            row[2] = fmt(r.steady.delta / omega_m);
            let o = r.outcome;
            row.extend([
                fmt_opt(o.map(|o| o.var_q.lyapunov)),
                fmt_opt(o.map(|o| o.var_q.closed_form)),
                fmt_opt(o.map(|o| o.var_q.spectral)),
                fmt_opt(o.map(|o| o.var_p.lyapunov)),
                fmt_opt(o.map(|o| o.var_p.closed_form)),
                fmt_opt(o.map(|o| o.var_p.spectral)),
                fmt_opt(o.map(|o| o.n_eff)),
                fmt_opt(o.map(|o| o.t_eff)),
                fmt(r.m1),
                fmt(r.m2),
                fmt(r.max_re_eig),
                fmt_opt(o.map(|o| o.consistency)),
                if r.stable { "ok" } else { "unstable" }.to_string(),
            ]);
        }
        Err(e) => {
            row.extend(std::iter::repeat_n(String::new(), 12));
            row.push(flag_for(&e).to_string());
        }
    }
    row
}

fn apply_axis(cfg: &mut SystemConfig, axis: SweepAxis, x: f64) {
    match axis {
        SweepAxis::Delta => unreachable!("delta sweeps do not rewrite the config"),
        SweepAxis::LdpScale => cfg.ldp_scale = x,
        SweepAxis::Reflectivity => cfg.reflectivity = x,
        SweepAxis::Temperature => cfg.bath_temperature = x,
        SweepAxis::Power => cfg.input_power = x,
    }
}

/// Cooling rows over one sweep for each series in turn. `fixed_delta` (in
/// units of ω_m) is the working detuning for non-delta axes; `bare` makes
/// every detuning a bare Δ₀ instead of an effective one.
pub fn cooling_sweep_rows(
    base: &SystemConfig,
    series: &[Series],
    sweep: &SweepSpec,
    fixed_delta: f64,
    bare: bool,
    tol: f64,
) -> Result<Vec<Vec<String>>, String> {
    sweep.validate()?;
    let grid = sweep.grid();
    let mut rows = Vec::with_capacity(series.len() * grid.len());
    for s in series {
        let cfg = s.apply(base);
        if sweep.axis == SweepAxis::Delta {
            let mut ctx = CoolingContext::new(&cfg).map_err(|e| e.to_string())?;
            ctx.spectral_tol = tol;
            let om = ctx.derived.omega_m;
            rows.par_extend(grid.par_iter().map(|&x| {
                let res = if bare {
                    report_at_bare(&ctx, x * om)
                } else {
                    report_at_effective(&ctx, x * om)
                };
                cooling_row("delta", x, &cfg, om, res)
            }));
        } else {
            let axis = sweep.axis;
            rows.par_extend(grid.par_iter().map(|&x| {
                let mut cfg_x = cfg.clone();
                apply_axis(&mut cfg_x, axis, x);
                match CoolingContext::new(&cfg_x) {
                    Ok(mut ctx) => {
                        ctx.spectral_tol = tol;
                        let om = ctx.derived.omega_m;
                        let res = if bare {
                            report_at_bare(&ctx, fixed_delta * om)
                        } else {
                            report_at_effective(&ctx, fixed_delta * om)
                        };
                        cooling_row(axis.name(), x, &cfg_x, om, res)
                    }
                    // A bad grid point (say a reflectivity sweep reaching 1)
                    // is a flagged row, not a fatal error.
                    Err(e) => {
                        let mut row = vec![
                            axis.name().to_string(),
                            fmt(x),
                            String::new(),
                            fmt(cfg_x.ldp_scale),
                            fmt(cfg_x.reflectivity),
                        ];
                        row.extend(std::iter::repeat_n(String::new(), 12));
                        row.push(flag_for(&e).to_string());
                        row
                    }
                }
            }));
        }
    }
    Ok(rows)
}

/// The single-point `report` subcommand: one full-schema row.
pub fn report_rows(
    cfg: &SystemConfig,
    delta_over_om: f64,
    bare: bool,
    tol: f64,
) -> Result<Vec<Vec<String>>, String> {
    let mut ctx = CoolingContext::new(cfg).map_err(|e| e.to_string())?;
    ctx.spectral_tol = tol;
    let om = ctx.derived.omega_m;
    let res = if bare {
        report_at_bare(&ctx, delta_over_om * om)
    } else {
        report_at_effective(&ctx, delta_over_om * om)
    };
    Ok(vec![cooling_row("delta", delta_over_om, cfg, om, res)])
}

/// Effective-response rows: (ω_eff, γ_eff) against probe frequency for each
/// series, at a fixed effective detuning. A negative `omega_eff_over_omega_m`
/// value means ω_eff² < 0 (the optical spring has pulled the squared
/// frequency through zero); the magnitude is √|ω_eff²|/ω_m.
pub fn response_rows(
    base: &SystemConfig,
    series: &[Series],
    delta_over_om: f64,
    omega_max_over_om: f64,
    points: usize,
) -> Result<Vec<Vec<String>>, String> {
    if points < 2 {
        return Err(format!("response grid needs at least 2 points (got {points})"));
    }
    let mut rows = Vec::with_capacity(series.len() * points);
    for s in series {
        let cfg = s.apply(base);
        let ctx = CoolingContext::new(&cfg).map_err(|e| e.to_string())?;
        let om = ctx.derived.omega_m;
        let ss = steady_at_detuning(&ctx.derived, ctx.eps, ctx.sig, delta_over_om * om)
            .map_err(|e| e.to_string())?;
        let lp = linearize(&ss, &ctx.derived, ctx.eps, ctx.sig);
        let gamma = ctx.derived.gamma;
        for i in 0..points {
            let w = omega_max_over_om * om * i as f64 / (points - 1) as f64;
            let mut row = vec![fmt(cfg.ldp_scale), fmt(w / om)];
            match response_point(w, &lp) {
                Ok(p) => {
                    let weff = p.omega_eff_sq.signum() * p.omega_eff_sq.abs().sqrt();
                    row.push(fmt(weff / om));
                    row.push(fmt(p.gamma_eff / gamma));
                    row.push("ok".to_string());
                }
                Err(e) => {
                    row.push(String::new());
                    row.push(String::new());
                    row.push(flag_for(&e).to_string());
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Coupling-profile rows: f(n_b) on an integer ladder from 0 to n_max.
pub fn coupling_rows(
    r_c: f64,
    eta_eff: f64,
    n_max: u32,
    points: usize,
) -> Result<Vec<Vec<String>>, String> {
    if points < 2 {
        return Err(format!("coupling grid needs at least 2 points (got {points})"));
    }
    let exp = coupling::expand(r_c, eta_eff, coupling::DEFAULT_TOL).map_err(|e| e.to_string())?;
    let mut samples: Vec<u32> = (0..points)
        .map(|i| ((n_max as f64) * i as f64 / (points - 1) as f64).round() as u32)
        .collect();
    samples.dedup();
    let vals = coupling::f_profile(&exp, 1, &samples);
    Ok(samples
        .iter()
        .zip(vals.iter())
        .map(|(&n, &f)| vec![fmt(r_c), fmt(eta_eff), n.to_string(), fmt(f)])
        .collect())
}

/// Evaluate a figure preset: header plus rows, kind-dependent.
pub fn figure_rows(
    preset: &FigurePreset,
    points_override: Option<usize>,
    tol: f64,
) -> Result<(Vec<&'static str>, Vec<Vec<String>>), String> {
    match preset.kind {
        FigureKind::CouplingProfile { r_c, eta_eff, n_max, points } => {
            let rows = coupling_rows(r_c, eta_eff, n_max, points_override.unwrap_or(points))?;
            Ok((COUPLING_HEADER.to_vec(), rows))
        }
        FigureKind::Response { delta_over_omega_m, omega_max_over_omega_m, points } => {
            let rows = response_rows(
                &preset.config,
                &preset.series,
                delta_over_omega_m,
                omega_max_over_omega_m,
                points_override.unwrap_or(points),
            )?;
            Ok((RESPONSE_HEADER.to_vec(), rows))
        }
        FigureKind::Cooling { sweep } => {
            let mut sweep = sweep;
            if let Some(p) = points_override {
                sweep.points = p;
            }
            let rows = cooling_sweep_rows(&preset.config, &preset.series, &sweep, 1.65, false, tol)?;
            Ok((COOLING_HEADER.to_vec(), rows))
        }
    }
}

/// Column choices for the convenience gnuplot script of one table kind.
/// Returns (x column, y column, series column, y label).
pub fn gnuplot_columns(preset: &FigurePreset) -> (usize, usize, usize, &'static str) {
    match preset.kind {
        FigureKind::CouplingProfile { .. } => (2, 3, 0, "f(n_b)"),
        FigureKind::Response { .. } => {
            if preset.name == "fig3a" {
                (1, 2, 0, "omega_eff/omega_m")
            } else {
                (1, 3, 0, "gamma_eff/gamma")
            }
        }
        FigureKind::Cooling { .. } => match preset.name {
            "fig4" => (1, 5, 3, "var_q"),
            "fig6" => (1, 12, 3, "t_eff_k"),
            "fig5b" => (1, 11, 4, "n_eff"),
            _ => (1, 11, 3, "n_eff"),
        },
    }
}

/// The cell values that appear in the series column, for the gnuplot filter.
/// Must agree textually with what the row builders write.
pub fn gnuplot_series_values(preset: &FigurePreset) -> Vec<String> {
    match preset.kind {
        FigureKind::CouplingProfile { r_c, .. } => vec![fmt(r_c)],
        FigureKind::Response { .. } | FigureKind::Cooling { .. } => {
            let (_, _, sc, _) = gnuplot_columns(preset);
            preset
                .series
                .iter()
                .map(|s| {
                    let cfg = s.apply(&preset.config);
                    if sc == 4 {
                        fmt(cfg.reflectivity)
                    } else {
                        fmt(cfg.ldp_scale)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use approx::assert_relative_eq;

    #[test]
    fn grids_hit_both_endpoints() {
        let lin = SweepSpec {
            axis: SweepAxis::Delta,
            start: 0.5,
            stop: 3.0,
            points: 6,
            log_scale: false,
        };
        let g = lin.grid();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 0.5);
        assert_eq!(g[5], 3.0);
        assert_relative_eq!(g[1] - g[0], 0.5, max_relative = 1e-12);

        let log = SweepSpec {
            axis: SweepAxis::Power,
            start: 1e-6,
            stop: 1e-3,
            points: 4,
            log_scale: true,
        };
        let lg = log.grid();
        assert_relative_eq!(lg[1] / lg[0], 10.0, max_relative = 1e-12);
        assert_relative_eq!(lg[3], 1e-3, max_relative = 1e-12);
    }

    #[test]
    fn bad_sweeps_are_rejected() {
        let mut s = SweepSpec {
            axis: SweepAxis::Delta,
            start: 2.0,
            stop: 1.0,
            points: 5,
            log_scale: false,
        };
        assert!(s.validate().is_err());
        s.stop = 3.0;
        s.points = 1;
        assert!(s.validate().is_err());
        s.points = 5;
        assert!(s.validate().is_ok());
        s.log_scale = true;
        s.start = 0.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn report_row_has_full_schema_and_round_trips() {
        let mut cfg = presets::cooling_base();
        cfg.input_power = 0.0;
        let rows = report_rows(&cfg, 1.3, false, 1e-6).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].len(), COOLING_HEADER.len());
        assert_eq!(rows[0][17], "ok");
        let n_eff: f64 = rows[0][11].parse().unwrap();
        let nbar = optomech::params::derive(&cfg).unwrap().nbar;
        assert_relative_eq!(n_eff, nbar, max_relative = 1e-9);
    }

    #[test]
    fn unstable_sweep_points_are_flagged_rows() {
        let sweep = SweepSpec {
            axis: SweepAxis::Delta,
            start: 1.0,
            stop: 1.65,
            points: 2,
            log_scale: false,
        };
        let series = [Series { label: "base", ldp_scale: None, reflectivity: None }];
        let rows =
            cooling_sweep_rows(&presets::cooling_base(), &series, &sweep, 1.65, false, 1e-6)
                .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0][17], "unstable");
        assert_eq!(rows[0][5], ""); // no variances at the unstable point
        assert_ne!(rows[0][13], ""); // stability tokens still reported
        assert_eq!(rows[1][17], "ok");
        assert_ne!(rows[1][5], "");
    }

    #[test]
    fn coupling_table_starts_at_the_moment_sum() {
        let rows = coupling_rows(0.9, 1e-3, 1000, 11).unwrap();
        assert_eq!(rows.len(), 11);
        let exp = coupling::expand(0.9, 1e-3, coupling::DEFAULT_TOL).unwrap();
        let f0: f64 = rows[0][3].parse().unwrap();
        assert_relative_eq!(f0, exp.epsilon, max_relative = 1e-12);
        assert_eq!(rows[0][2], "0");
        assert_eq!(rows[10][2], "1000");
    }

    #[test]
    fn response_rows_cover_series_and_flag_column() {
        let preset = presets::find("fig3b").unwrap();
        let rows = response_rows(&preset.config, &preset.series, 1.0, 2.0, 5).unwrap();
        assert_eq!(rows.len(), 15);
        assert!(rows.iter().all(|r| r.len() == RESPONSE_HEADER.len()));
        assert!(rows.iter().all(|r| r[4] == "ok"));
        // Series identify themselves through the scaling column.
        assert_eq!(rows[0][0], fmt(0.65));
        assert_eq!(rows[14][0], fmt(1.0));
    }
}
