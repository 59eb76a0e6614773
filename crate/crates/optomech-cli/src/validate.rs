//! The `validate` subcommand: every analytic result is recomputed against an
//! independent oracle, and the known transcription defects of the reference
//! derivation are re-measured so their corrections stay justified by numbers
//! rather than by fiat.

use num_complex::Complex64;
use optomech::cooling::{
    closed_form_coefficients, moment_integrals, reference_density_variance, report_at_effective,
    variance_p_spectral, variance_q_spectral, variances_closed, variances_lyapunov,
    CoolingContext,
};
use optomech::coupling;
use optomech::numerics::{eigenvalues_4, integrate_adaptive};
use optomech::params::SystemConfig;
use optomech::response::{
    delta_prime_sq, effective_damping, effective_frequency_sq, i_of_omega, susceptibility,
};
use optomech::steady_state::{
    build_fluctuation_model, char_coeffs, eigen_stability, linearize, routh_hurwitz,
    steady_at_detuning, LinearizedParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::output::emit_csv;
use crate::presets;
use crate::runner::{cooling_sweep_rows, with_threads, SweepAxis, SweepSpec, COOLING_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

fn pass(name: &'static str, ok: bool, detail: String) -> CheckLine {
    CheckLine {
        name,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail,
    }
}

fn info(name: &'static str, detail: String) -> CheckLine {
    CheckLine {
        name,
        verdict: Verdict::Info,
        detail,
    }
}

pub fn all_ok(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.verdict != Verdict::Fail)
}

pub fn render(lines: &[CheckLine]) -> String {
    let mut s = String::new();
    s.push_str("oracle cross-checks\n-------------------\n");
    for l in lines.iter().filter(|l| l.verdict != Verdict::Info) {
        let tag = if l.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{tag}  {:<48} {}\n", l.name, l.detail));
    }
    s.push_str("\nconsistency-ledger residuals\n----------------------------\n");
    for l in lines.iter().filter(|l| l.verdict == Verdict::Info) {
        s.push_str(&format!("note  {:<48} {}\n", l.name, l.detail));
    }
    s
}

// -- helpers ---------------------------------------------------------------

fn lp_at(ctx: &CoolingContext, x: f64) -> optomech::Result<LinearizedParams> {
    let ss = steady_at_detuning(&ctx.derived, ctx.eps, ctx.sig, x * ctx.derived.omega_m)?;
    Ok(linearize(&ss, &ctx.derived, ctx.eps, ctx.sig))
}

/// The paired-Lorentzian cavity factor of the closed response forms,
/// branch-matched to the library.
fn lorentzian_pair(omega: f64, kappa: f64, dp2: f64) -> f64 {
    let k2 = kappa * kappa;
    if dp2 >= 0.0 {
        let dp = dp2.sqrt();
        (k2 + (omega - dp) * (omega - dp)) * (k2 + (omega + dp) * (omega + dp))
    } else {
        let r = k2 + dp2 - omega * omega;
        r * r + 4.0 * k2 * omega * omega
    }
}

/// Characteristic quartic at s = −iω from the published coefficients.
fn quartic_at(lp: &LinearizedParams, omega: f64) -> Complex64 {
    let c = char_coeffs(lp);
    let s = Complex64::new(0.0, -omega);
    (((s + c.a1) * s + c.a2) * s + c.a3) * s + c.a4
}

/// Asymmetric-damping draw used by the stability and token checks.
fn stress_draw(rng: &mut ChaCha8Rng) -> LinearizedParams {
    let om: f64 = 10f64.powf(rng.random_range(4.0..5.0));
    let gamma = 10f64.powf(rng.random_range(2.0..3.0));
    let asym: f64 = rng.random_range(-0.95..0.95);
    let split = rng.random_range(-0.3..0.3) * om;
    LinearizedParams {
        omega_m: om,
        omega1: om + split,
        omega2: om - split,
        gamma1: gamma * (1.0 + asym),
        gamma2: gamma * (1.0 - asym),
        g_r: 10f64.powf(rng.random_range(2.5..3.5)),
        g_i: 10f64.powf(rng.random_range(2.0..3.0)),
        delta: 10f64.powf(rng.random_range(3.0..4.0)),
        kappa: 10f64.powf(rng.random_range(3.0..4.0)),
        gamma,
        nbar: 50.0,
        nth: 0.0,
        omega_m_bare: om,
    }
}

/// Band-limited symmetrized integral of |χ|²·(reference density variant):
/// `omega1_power` = 1 reproduces the printed normalization, 2 the
/// dimensionally consistent alternative.
fn density_variant_integral(lp: &LinearizedParams, omega1_power: i32) -> f64 {
    let fm = build_fluctuation_model(lp);
    let eigs = eigenvalues_4(&fm.a).expect("eigenvalues");
    let upper = (20.0 * lp.kappa)
        .max(20.0 * lp.omega_m_bare)
        .max(5.0 * lp.delta.abs());
    let mut edges = vec![0.0, upper];
    for e in &eigs {
        let beta = e.im.abs();
        if beta > 0.0 && beta < upper {
            let w = e.re.abs().max(1e-9 * beta);
            for m in [-4.0, -1.0, 0.0, 1.0, 4.0] {
                let p = beta + m * w;
                if p > 0.0 && p < upper {
                    edges.push(p);
                }
            }
        }
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let panels: Vec<(f64, f64)> = edges.windows(2).map(|p| (p[0], p[1])).collect();
    let nb2 = 2.0 * lp.nbar + 1.0;
    let nt2 = 2.0 * lp.nth + 1.0;
    let norm = lp.omega1.powi(omega1_power);
    let half = |sign: f64| -> f64 {
        let mut f = |w: f64| -> f64 {
            let ww = sign * w;
            let del = lp.delta;
            let dm = Complex64::new(lp.kappa, -ww).powi(2) + delta_prime_sq(lp);
            let cw = Complex64::new(lp.g_r, 0.0)
                - lp.g_i * Complex64::new(lp.gamma2, -ww) / lp.omega1;
            let cd = cw / dm;
            let dens = lp.gamma * nb2
                + lp.gamma * nb2 / norm
                    * (Complex64::new(lp.gamma2, -ww) - del * cd).norm_sqr()
                + 2.0 * lp.gamma * (ww + del * cd.im)
                + lp.kappa * cd.norm_sqr() * (del * del + lp.kappa * lp.kappa + ww * ww + del * ww)
                    * nt2;
            susceptibility(ww, lp).map(|c| c.norm_sqr()).unwrap_or(f64::NAN) * dens
        };
        integrate_adaptive(&mut f, &panels, 1e-10, 4000).value
    };
    (half(1.0) + half(-1.0)) / (2.0 * std::f64::consts::PI)
}

// -- the battery -----------------------------------------------------------

pub fn run(base: &SystemConfig) -> Vec<CheckLine> {
    let mut lines = Vec::new();

    // 1. Cavity map: truncated harmonic series against the closed arccos form.
    {
        let (cl, wl) = (0.067, 1064e-9);
        let omega0 = std::f64::consts::PI * optomech::params::C_LIGHT / (2.0 * cl);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut max_rel = 0.0f64;
        for r_c in [0.1, 0.5, 0.9, 0.999] {
            let exp = coupling::expand(r_c, 1e-5, 1e-12).expect("expansion");
            for _ in 0..50 {
                let x = rng.random_range(0.0..0.5) * wl;
                let series = coupling::omega_c_series(&exp, x, cl, wl);
                let closed = coupling::omega_c_closed(x, r_c, cl, wl);
                max_rel = max_rel.max((series - closed).abs() / omega0);
            }
        }
        lines.push(pass(
            "cavity map: series vs closed form",
            max_rel < 1e-10,
            format!("max |series-closed|/omega_0 = {max_rel:.3e} (gate 1e-10)"),
        ));
    }

    // 2. Coupling profile at n_b = 0 must equal the first moment sum.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut max_rel = 0.0f64;
        for _ in 0..25 {
            let r_c = rng.random_range(0.05..0.995);
            let eta = 10f64.powf(rng.random_range(-7.0..-3.0));
            let exp = coupling::expand(r_c, eta, 1e-12).expect("expansion");
            let f0 = coupling::f_j(&exp, 1, 0);
            max_rel = max_rel.max((f0 - exp.epsilon).abs() / exp.epsilon.abs());
        }
        lines.push(pass(
            "coupling profile at n_b=0 equals moment sum",
            max_rel < 1e-12,
            format!("max relative deviation = {max_rel:.3e} (gate 1e-12)"),
        ));
    }

    // 3. Uncoupled limit: all three variance routes at the thermal value.
    {
        let mut cfg = base.clone();
        cfg.input_power = 0.0;
        match CoolingContext::new(&cfg).and_then(|ctx| report_at_effective(&ctx, 1.65 * ctx.derived.omega_m)) {
            Ok(report) => {
                let want = report.linearized.nbar + 0.5;
                let o = report.outcome.expect("undriven point is stable");
                let max_rel = [
                    o.var_q.lyapunov,
                    o.var_q.closed_form,
                    o.var_q.spectral,
                    o.var_p.lyapunov,
                    o.var_p.closed_form,
                    o.var_p.spectral,
                ]
                .iter()
                .map(|v| (v - want).abs() / want)
                .fold(0.0f64, f64::max);
                lines.push(pass(
                    "uncoupled limit: three methods at thermal value",
                    max_rel < 1e-9,
                    format!("max relative deviation from n+1/2 = {max_rel:.3e} (gate 1e-9)"),
                ));
            }
            Err(e) => lines.push(pass(
                "uncoupled limit: three methods at thermal value",
                false,
                format!("pipeline failed: {e}"),
            )),
        }
    }

    // 4+5+6. Detuning-window agreement. The quoted comparison window
    // [0.5, 1.5] omega_m contains no stable point at these parameters, so the
    // cross-method gates run on the adjacent stable window [1.6, 2.5].
    {
        let ctx = match CoolingContext::new(base) {
            Ok(mut c) => {
                c.spectral_tol = 1e-9;
                c
            }
            Err(e) => {
                lines.push(pass("stable window: spectral vs covariance", false, e.to_string()));
                return lines;
            }
        };
        let quoted_stable = (0..50)
            .map(|i| 0.5 + i as f64 / 49.0)
            .filter(|&x| {
                lp_at(&ctx, x).map(|lp| routh_hurwitz(&lp).stable).unwrap_or(false)
            })
            .count();

        let grid: Vec<f64> = (0..25).map(|i| 1.6 + 0.9 * i as f64 / 24.0).collect();
        let resids: Vec<(f64, f64)> = grid
            .par_iter()
            .map(|&x| {
                let lp = lp_at(&ctx, x).expect("steady state");
                let v = variances_lyapunov(&build_fluctuation_model(&lp)).expect("stable");
                let sq = variance_q_spectral(&lp, 1e-9).expect("quadrature");
                let sp = variance_p_spectral(&lp, 1e-9).expect("quadrature");
                let (cq, cp) = variances_closed(&lp).expect("stable");
                let spec = ((sq - v[(2, 2)]) / v[(2, 2)])
                    .abs()
                    .max(((sp - v[(3, 3)]) / v[(3, 3)]).abs());
                let closed = ((cq - v[(2, 2)]) / v[(2, 2)])
                    .abs()
                    .max(((cp - v[(3, 3)]) / v[(3, 3)]).abs());
                (spec, closed)
            })
            .collect();
        let max_spec = resids.iter().map(|r| r.0).fold(0.0f64, f64::max);
        let max_closed = resids.iter().map(|r| r.1).fold(0.0f64, f64::max);

        // sigma = 0 regime: same window with the intensity slope removed.
        let ctx0 = CoolingContext {
            derived: ctx.derived,
            eps: ctx.eps,
            sig: 0.0,
            spectral_tol: 1e-9,
        };
        let mut max_closed0 = 0.0f64;
        let mut stable0 = 0;
        for &x in &grid {
            let Ok(lp) = lp_at(&ctx0, x) else { continue };
            let Ok(v) = variances_lyapunov(&build_fluctuation_model(&lp)) else {
                continue;
            };
            let Ok((cq, cp)) = variances_closed(&lp) else { continue };
            stable0 += 1;
            max_closed0 = max_closed0
                .max(((cq - v[(2, 2)]) / v[(2, 2)]).abs())
                .max(((cp - v[(3, 3)]) / v[(3, 3)]).abs());
        }

        lines.push(pass(
            "stable window: spectral vs covariance",
            max_spec < 1e-4,
            format!("max relative gap = {max_spec:.3e} over 25 detunings (gate 1e-4)"),
        ));
        lines.push(pass(
            "stable window: closed form vs covariance",
            max_closed < 1e-6 && stable0 > 0 && max_closed0 < 1e-6,
            format!(
                "full regime {max_closed:.3e}; slope-free regime {max_closed0:.3e} on {stable0} stable points (gate 1e-6)"
            ),
        ));
        lines.push(info(
            "quoted comparison window [0.5, 1.5]",
            format!(
                "{quoted_stable}/50 detunings stable: the stated window sits inside the unstable region, so the agreement gates above run on [1.6, 2.5]"
            ),
        ));
    }

    // 7. Stability: algebraic pair against eigenvalues, margin-excluded.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        let mut agreed = 0;
        for _ in 0..300 {
            let lp = stress_draw(&mut rng);
            let fm = build_fluctuation_model(&lp);
            let Ok((max_re, eig_stable)) = eigen_stability(&fm.a) else {
                continue;
            };
            if max_re.abs() < 1e-6 * lp.omega_m {
                continue;
            }
            checked += 1;
            if routh_hurwitz(&lp).stable == eig_stable {
                agreed += 1;
            }
        }
        lines.push(pass(
            "stability: algebraic pair vs eigenvalues",
            checked > 200 && agreed == checked,
            format!("{agreed}/{checked} off-margin draws agree"),
        ));
    }

    // 8. Response closed forms against the susceptibility kernel, plus the
    // damping-numerator token residuals (13).
    {
        let mut max_kernel = 0.0f64;
        let mut max_ref_tok = 0.0f64;
        let mut max_alt_tok = 0.0f64;
        let mut points: Vec<LinearizedParams> = Vec::new();
        if let Ok(ctx) = CoolingContext::new(base) {
            if let Ok(lp) = lp_at(&ctx, 1.65) {
                points.push(lp);
            }
        }
        if let Ok(ctx) = CoolingContext::new(&presets::response_base()) {
            if let Ok(lp) = lp_at(&ctx, 1.0) {
                points.push(lp);
            }
        }
        for lp in &points {
            let om = lp.omega_m_bare;
            for i in 0..300 {
                let w = 1e3 + (2.0 * om - 1e3) * i as f64 / 299.0;
                let Ok(chi) = susceptibility(w, lp) else { continue };
                let invc = lp.omega1 * chi.inv();
                let weff2_k = invc.re + w * w;
                let geff_k = -invc.im / w;
                let weff2 = effective_frequency_sq(w, lp);
                let geff = effective_damping(w, lp);
                let wscale = weff2_k.abs() + w * w;
                max_kernel = max_kernel
                    .max((weff2 - weff2_k).abs() / wscale)
                    .max((geff - geff_k).abs() / geff_k.abs());
                max_ref_tok = max_ref_tok.max((geff - geff_k).abs() / geff_k.abs());
                // Sign-flipped omega^2 token: + (kappa - gamma) G_I^2 w^2
                // in place of the printed - (kappa + gamma) G_I^2 w^2.
                let pair = lorentzian_pair(w, lp.kappa, delta_prime_sq(lp));
                let alt = geff
                    + 4.0 * lp.kappa * lp.delta * lp.g_i * lp.g_i * w * w / (lp.omega1 * pair);
                max_alt_tok = max_alt_tok.max((alt - geff_k).abs() / geff_k.abs());
            }
        }
        lines.push(pass(
            "response closed forms vs susceptibility kernel",
            !points.is_empty() && max_kernel < 1e-9,
            format!("max relative residual = {max_kernel:.3e} over {} working points (gate 1e-9)", points.len()),
        ));
        lines.push(info(
            "damping numerator omega^2 token",
            format!(
                "printed -(kappa+gamma)G_I^2 leaves residual {max_ref_tok:.3e} (within the 1e-9 gate); sign-corrected +(kappa-gamma)G_I^2 leaves {max_alt_tok:.3e}"
            ),
        ));
    }

    // 9. Effective damping grows with the coupling scale.
    {
        let mut vals = Vec::new();
        for s in [0.65, 0.7, 1.0] {
            let mut cfg = presets::response_base();
            cfg.ldp_scale = s;
            let g = CoolingContext::new(&cfg)
                .and_then(|ctx| {
                    lp_at(&ctx, 1.0).map(|lp| effective_damping(ctx.derived.omega_m, &lp))
                })
                .unwrap_or(f64::NAN);
            vals.push(g);
        }
        let ok = vals.windows(2).all(|p| p[0].is_finite() && p[0] < p[1]);
        lines.push(pass(
            "damping grows with coupling scale",
            ok,
            format!(
                "gamma_eff(omega_m) = {:.6e}, {:.6e}, {:.6e} for scales 0.65, 0.7, 1.0",
                vals[0], vals[1], vals[2]
            ),
        ));
    }

    // 10. Deterministic emission across thread counts.
    {
        let sweep = SweepSpec {
            axis: SweepAxis::Delta,
            start: 1.6,
            stop: 2.3,
            points: 7,
            log_scale: false,
        };
        let preset = presets::find("fig5a").expect("preset");
        let run_once = |threads: usize| -> String {
            with_threads(Some(threads), || {
                cooling_sweep_rows(&preset.config, &preset.series, &sweep, 1.65, false, 1e-6)
                    .map(|rows| emit_csv(&COOLING_HEADER, &rows))
                    .unwrap_or_default()
            })
        };
        let a = run_once(1);
        let b = run_once(2);
        lines.push(pass(
            "deterministic emission across thread counts",
            !a.is_empty() && a == b,
            format!("{} bytes, single- vs multi-thread identical = {}", a.len(), a == b),
        ));
    }

    // 11. Second stability token: corrected vs reference form.
    if let Ok(ctx) = CoolingContext::new(base) {
        if let Ok(lp) = lp_at(&ctx, 1.65) {
            let rh = routh_hurwitz(&lp);
            lines.push(info(
                "second stability token: reference vs corrected",
                format!(
                    "reference/corrected = {:.9}; the reference form doubles the cross term and drops a factor 4 on gamma^2 delta^2; verdicts use the corrected token",
                    rh.m2_reference / rh.m2
                ),
            ));
        }
    }

    // 12. Susceptibility damping product: retarded factors put the response
    // poles exactly on the drift spectrum.
    if let Ok(ctx) = CoolingContext::new(base) {
        if let Ok(lp) = lp_at(&ctx, 1.65) {
            let om = lp.omega_m_bare;
            let dp2 = delta_prime_sq(&lp);
            let mut max_corr = 0.0f64;
            let mut max_refm = 0.0f64;
            for i in 0..200 {
                let w = 1e3 + (2.0 * om - 1e3) * i as f64 / 199.0;
                let d = Complex64::new(lp.kappa, -w).powi(2) + dp2;
                let p = quartic_at(&lp, w);
                let g1 = Complex64::new(lp.gamma1, -w);
                let g2r = Complex64::new(lp.gamma2, -w);
                let g2a = Complex64::new(lp.gamma2, w);
                let ival = i_of_omega(w, &lp).expect("off-pole");
                let q_corr = (lp.omega1 * lp.omega2 + g1 * g2r - lp.omega1 * ival) * d;
                let q_ref = (lp.omega1 * lp.omega2 + g1 * g2a - lp.omega1 * ival) * d;
                max_corr = max_corr.max((q_corr - p).norm() / p.norm());
                max_refm = max_refm.max((q_ref - p).norm() / p.norm());
            }
            lines.push(pass(
                "susceptibility factors: retarded damping product",
                max_corr < 1e-12,
                format!(
                    "(Gamma_2 - i omega) residual vs characteristic quartic {max_corr:.3e} (gate 1e-12); printed advanced factor leaves {max_refm:.3e}"
                ),
            ));
        }
    }

    // 14. Momentum-block first damping token on asymmetric draws.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut stable = 0;
        let mut max_corr = 0.0f64;
        let mut max_shared = 0.0f64;
        for _ in 0..200 {
            let lp = stress_draw(&mut rng);
            let Ok(v) = variances_lyapunov(&build_fluctuation_model(&lp)) else {
                continue;
            };
            let Ok((_, vp)) = variances_closed(&lp) else { continue };
            stable += 1;
            max_corr = max_corr.max(((vp - v[(3, 3)]) / v[(3, 3)]).abs());
            let cf = closed_form_coefficients(&lp);
            let j = moment_integrals(&lp);
            let shared = vp + lp.gamma * (2.0 * lp.nbar + 1.0) * (cf.d1 - cf.d1p) * j[2];
            max_shared = max_shared.max(((shared - v[(3, 3)]) / v[(3, 3)]).abs());
        }
        lines.push(pass(
            "momentum-block damping token: primed form",
            stable >= 30 && max_corr < 1e-9 && max_shared > 1e2 * max_corr.max(1e-300),
            format!(
                "Gamma_1^2 token residual {max_corr:.3e} vs covariance oracle on {stable} asymmetric stable draws; reusing the position-block Gamma_2^2 token leaves {max_shared:.3e}"
            ),
        ));
    }

    // 15. Cavity noise prefactor: (2 n_th + 1) kappa N2, not bare kappa N2.
    if let Ok(ctx) = CoolingContext::new(base) {
        if let Ok(mut lp) = lp_at(&ctx, 1.65) {
            lp.nth = 0.3;
            if let (Ok(v), Ok((vq, _))) = (
                variances_lyapunov(&build_fluctuation_model(&lp)),
                variances_closed(&lp),
            ) {
                let corr = ((vq - v[(2, 2)]) / v[(2, 2)]).abs();
                let cf = closed_form_coefficients(&lp);
                let bare = vq - lp.kappa * 2.0 * lp.nth * cf.n2;
                let bare_rel = ((bare - v[(2, 2)]) / v[(2, 2)]).abs();
                lines.push(info(
                    "cavity noise prefactor at n_th = 0.3",
                    format!(
                        "kappa(2n_th+1)N2 agrees with the covariance oracle to {corr:.3e}; the bare kappa N2 reading (printed, coincident at n_th = 0) misses by {bare_rel:.3e}"
                    ),
                ));
            }
        }
    }

    // 16. Force-noise density as printed: integral of |chi|^2 density vs the
    // covariance oracle, plus the alternative 1/Omega_1^2 normalization.
    if let Ok(ctx) = CoolingContext::new(base) {
        if let Ok(lp) = lp_at(&ctx, 1.65) {
            let v = variances_lyapunov(&build_fluctuation_model(&lp)).expect("stable");
            let d = reference_density_variance(&lp, 1e-10).expect("stable");
            let alt = density_variant_integral(&lp, 2);
            lines.push(info(
                "force-noise density as printed",
                format!(
                    "symmetrized band-limited integral / covariance position variance = {:.6e}; odd part {:.3e}; with 1/Omega_1^2 in place of 1/Omega_1 the ratio becomes {:.6e} (shortfall at the truncated-tail scale), so the mismatch is consistent with a missing square in the normalization — the line is kept diagnostic only",
                    d.symmetrized / v[(2, 2)],
                    d.odd_part,
                    alt / v[(2, 2)],
                ),
            ));
        }
    }

    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_on_the_default_config() {
        let lines = run(&presets::cooling_base());
        let rendered = render(&lines);
        assert!(
            all_ok(&lines),
            "validation failures:\n{rendered}"
        );
        // Both sections present, and the known-defect notes are emitted.
        assert!(rendered.contains("oracle cross-checks"));
        assert!(rendered.contains("consistency-ledger residuals"));
        assert!(rendered.contains("force-noise density as printed"));
        let fails = rendered.matches("FAIL").count();
        assert_eq!(fails, 0, "{rendered}");
    }
}
