//! Semiclassical fixed point, linearization, and the 4×4 fluctuation model.
//!
//! The driven cavity–membrane system settles into a steady state described by
//! three coupled conditions: the field amplitude follows the effective
//! detuning, the membrane amplitude follows the circulating intensity through
//! the intensity-dependent coupling, and the effective detuning is the bare
//! one shifted by the static membrane displacement. At strong drive the map
//! folds and several branches coexist; solvers here select branches
//! deterministically and report what they found.

// `!(x < tol)` is used deliberately throughout: a NaN residual must count
// as "not converged", which `x >= tol` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::eigenvalues_4;
use crate::params::DerivedParams;

/// Relative residual demanded of every reported fixed point.
pub const STEADY_TOL: f64 = 1e-12;

/// Position of a steady-state solution among the branches that coexist at
/// its bare detuning. "Lower"/"upper" refer to the intracavity intensity:
/// the lower branch is the one reached by ramping the drive up from zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchNote {
    Unique,
    MultistableLower,
    MultistableUpper,
}

impl BranchNote {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchNote::Unique => "unique",
            BranchNote::MultistableLower => "multistable-lower",
            BranchNote::MultistableUpper => "multistable-upper",
        }
    }
}

/// A converged semiclassical working point.
#[derive(Debug, Clone, Copy)]
pub struct SteadyState {
    /// Effective detuning Δ, rad/s.
    pub delta: f64,
    /// Intracavity field amplitude a_s = E/√(κ² + Δ²), real and ≥ 0.
    pub a_s: f64,
    /// Membrane amplitude b_s.
    pub b_s: Complex64,
    /// Effective coupling G = 2a_s·g·[ε + σ(b_s² + 2|b_s|²)], 1/s.
    pub g_eff: Complex64,
    /// Worst relative residual of the three fixed-point equations.
    pub residual: f64,
    pub branch_note: BranchNote,
}

/// Coefficients of the linearized fluctuation dynamics.
///
/// The intensity dependence of the coupling splits the mechanical frequency
/// and damping into pairs (Ω₁, Ω₂) and (Γ₁, Γ₂) that straddle the shifted
/// values: Ω₁ + Ω₂ = 2Ω_m and Γ₁ + Γ₂ = 2γ identically.
#[derive(Debug, Clone, Copy)]
pub struct LinearizedParams {
    /// Shifted mechanical frequency Ω_m = ω_m − 4gσa_s²Re(b_s), rad/s.
    pub omega_m: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Re G.
    pub g_r: f64,
    /// Im G (vanishes with σ).
    pub g_i: f64,
    /// Effective detuning Δ, rad/s.
    pub delta: f64,
    pub kappa: f64,
    /// Bare mechanical damping γ, 1/s.
    pub gamma: f64,
    /// Mechanical bath occupancy.
    pub nbar: f64,
    /// Optical bath occupancy.
    pub nth: f64,
    /// Unshifted mechanical frequency ω_m — the frequency scale used for
    /// grids, integration windows, and the phonon energy quantum.
    pub omega_m_bare: f64,
}

/// Drift and diffusion matrices of the Gaussian fluctuation model,
/// quadrature ordering (δX, δY, δq, δp).
#[derive(Debug, Clone, Copy)]
pub struct FluctuationModel {
    pub a: Matrix4<f64>,
    pub d: Matrix4<f64>,
}

/// Coefficients of the characteristic polynomial
/// s⁴ + a₁s³ + a₂s² + a₃s + a₄ of the drift matrix, kept in factored pieces
/// so downstream combinations can avoid cancellation.
#[derive(Debug, Clone, Copy)]
pub struct CharCoeffs {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Coupling combination S = Ω₁G_R² + Ω₂G_I² + G_RG_I(Γ₁ − Γ₂).
    pub coupling: f64,
    /// Optical quadratic term κ² + Δ².
    pub optical: f64,
    /// Mechanical quadratic term Γ₁Γ₂ + Ω₁Ω₂.
    pub mechanical: f64,
}

/// Routh-Hurwitz test of the quartic characteristic polynomial.
///
/// `m2_reference` is the discriminant in its reference form; `m2` is the
/// re-derived combination H/(4γκ) with H = a₁a₂a₃ − a₃² − a₁²a₄, which the
/// reference form mis-transcribes in two tokens (see the consistency notes).
/// The verdict uses `m1` and the re-derived `m2`.
#[derive(Debug, Clone, Copy)]
pub struct StabilityCheck {
    pub m1: f64,
    pub m2: f64,
    pub m2_reference: f64,
    pub stable: bool,
}

/// Newton iteration for the membrane amplitude equation
/// b(ω_m − iγ) = g·a²·[ε + σ(2|b|² + b²)], split into real components.
/// Damped steps keep the strongly saturated regime from overshooting.
fn newton_membrane(
    ga2: f64,
    eps: f64,
    sig: f64,
    om: f64,
    gam: f64,
    start: Option<(f64, f64)>,
) -> (f64, f64) {
    if ga2 == 0.0 {
        return start.unwrap_or((0.0, 0.0));
    }
    let (mut x, mut y) = match start {
        Some(p) => p,
        None => {
            let b0 = Complex64::new(ga2 * eps, 0.0) / Complex64::new(om, -gam);
            (b0.re, b0.im)
        }
    };
    for _ in 0..200 {
        let fx = om * x + gam * y - ga2 * (eps + sig * (3.0 * x * x + y * y));
        let fy = om * y - gam * x - ga2 * sig * 2.0 * x * y;
        let j00 = om - 6.0 * ga2 * sig * x;
        let j01 = gam - 2.0 * ga2 * sig * y;
        let j10 = -gam - 2.0 * ga2 * sig * y;
        let j11 = om - 2.0 * ga2 * sig * x;
        let det = j00 * j11 - j01 * j10;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (-j11 * fx + j01 * fy) / det;
        let dy = (j10 * fx - j00 * fy) / det;
        let step = dx.hypot(dy);
        let scale = x.hypot(y).max((ga2 * eps / om).abs()).max(1.0);
        let damp = if step > 0.5 * scale { 0.5 } else { 1.0 };
        x += damp * dx;
        y += damp * dy;
        if fx.hypot(fy) < 1e-13 * (om * x.hypot(y)).max(ga2 * eps) {
            break;
        }
    }
    (x, y)
}

fn membrane_equation_residual(ga2: f64, eps: f64, sig: f64, om: f64, gam: f64, b: Complex64) -> f64 {
    let lhs = b * Complex64::new(om, -gam);
    let rhs = ga2 * (eps + sig * (2.0 * b.norm_sqr())) + ga2 * sig * b * b;
    (lhs - rhs).norm()
}

/// Membrane amplitude at a given drive and effective detuning. Falls back to
/// a 20-step geometric drive ramp when the cold Newton start does not
/// converge (strong saturation). Returns the amplitude and the *relative*
/// equation residual.
#[allow(clippy::too_many_arguments)]
fn membrane_fixed_point(
    g: f64,
    drive: f64,
    kappa: f64,
    delta: f64,
    eps: f64,
    sig: f64,
    om: f64,
    gam: f64,
) -> (Complex64, f64) {
    if !delta.is_finite() {
        return (Complex64::new(f64::NAN, f64::NAN), f64::INFINITY);
    }
    let ga2 = g * (drive / kappa.hypot(delta)).powi(2);
    let (x, y) = newton_membrane(ga2, eps, sig, om, gam, None);
    let mut b = Complex64::new(x, y);
    let mut res = membrane_equation_residual(ga2, eps, sig, om, gam, b);
    if !res.is_finite() || res > 1e-10 * (om * b.norm()).max(1.0) {
        let (mut wx, mut wy) = (0.0, 0.0);
        for frac in drive_fractions() {
            let (nx, ny) = newton_membrane(ga2 * frac * frac, eps, sig, om, gam, Some((wx, wy)));
            wx = nx;
            wy = ny;
        }
        b = Complex64::new(wx, wy);
        res = membrane_equation_residual(ga2, eps, sig, om, gam, b);
    }
    let rel = res / (om * b.norm()).max(ga2 * eps).max(1e-300);
    (b, rel)
}

/// Twenty drive fractions from 5% to 100% in geometric progression.
fn drive_fractions() -> impl Iterator<Item = f64> {
    (0..20).map(|i| 0.05f64.powf((19 - i) as f64 / 19.0))
}

/// Static detuning shift 2g·Re(b)·(ε + σ|b|²) produced by the membrane
/// displacement.
fn detuning_shift(g: f64, eps: f64, sig: f64, b: Complex64) -> f64 {
    2.0 * g * b.re * (eps + sig * b.norm_sqr())
}

fn effective_coupling(a_s: f64, g: f64, eps: f64, sig: f64, b: Complex64) -> Complex64 {
    2.0 * a_s * g * (Complex64::new(eps + sig * 2.0 * b.norm_sqr(), 0.0) + sig * b * b)
}

/// Mismatch of the scalar detuning self-consistency map,
/// F(Δ) = Δ₀ − shift(Δ) − Δ. Roots of F are steady states.
fn map_mismatch(d: &DerivedParams, eps: f64, sig: f64, delta0: f64, delta: f64) -> f64 {
    let (b, _) = membrane_fixed_point(
        d.g, d.drive, d.kappa, delta, eps, sig, d.omega_m, d.gamma,
    );
    delta0 - detuning_shift(d.g, eps, sig, b) - delta
}

/// Every root of the detuning self-consistency map at a bare detuning,
/// ascending. A bracketing scan at mechanical-frequency resolution feeds a
/// bisection polish; root pairs closer than the scan step are not resolved.
fn scan_roots(d: &DerivedParams, eps: f64, sig: f64, delta0: f64) -> Vec<f64> {
    let scale = d.omega_m.max(delta0.abs());
    // The shift is maximal at Δ = 0 where the circulating intensity peaks,
    // so every root lies in [Δ₀ − shift_max, Δ₀].
    let (b0, _) = membrane_fixed_point(d.g, d.drive, d.kappa, 0.0, eps, sig, d.omega_m, d.gamma);
    let shift_max = detuning_shift(d.g, eps, sig, b0).max(0.0);
    let lo = delta0 - 1.1 * shift_max - 0.02 * scale;
    let hi = delta0 + 0.02 * scale;
    let n = (((hi - lo) / (0.02 * d.omega_m)).ceil() as usize).clamp(240, 50_000);
    let f = |delta: f64| map_mismatch(d, eps, sig, delta0, delta);
    let mut roots: Vec<f64> = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for k in 1..=n {
        let x = lo + (hi - lo) * k as f64 / n as f64;
        let fx = f(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if fx.is_finite() && prev_f.is_finite() && (prev_f < 0.0) != (fx < 0.0) {
            // bisect the bracket
            let (mut a, mut b) = (prev_x, x);
            let (mut fa, _fb) = (prev_f, fx);
            for _ in 0..90 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (fa < 0.0) == (fm < 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
                if (b - a).abs() < 1e-13 * scale {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    if prev_f == 0.0 {
        roots.push(prev_x);
    }
    roots.dedup_by(|p, q| (*p - *q).abs() < 1e-9 * scale);
    roots
}

fn classify_among(roots: &[f64], delta: f64, scale: f64) -> BranchNote {
    let known = roots
        .iter()
        .any(|r| (r - delta).abs() < 1e-6 * scale);
    let count = roots.len() + usize::from(!known);
    if count <= 1 {
        return BranchNote::Unique;
    }
    let top = roots.iter().cloned().fold(delta, f64::max);
    if (top - delta).abs() < 1e-6 * scale {
        BranchNote::MultistableLower
    } else {
        BranchNote::MultistableUpper
    }
}

fn assemble_state(
    d: &DerivedParams,
    eps: f64,
    sig: f64,
    delta: f64,
    b: Complex64,
    residual: f64,
    branch_note: BranchNote,
) -> SteadyState {
    let a_s = d.drive / d.kappa.hypot(delta);
    SteadyState {
        delta,
        a_s,
        b_s: b,
        g_eff: effective_coupling(a_s, d.g, eps, sig, b),
        residual,
        branch_note,
    }
}

/// Steady state at a prescribed *effective* detuning. The field equation and
/// the detuning equation are then satisfied identically (the bare detuning is
/// whatever Δ + shift evaluates to), so the residual is the membrane
/// equation's. This is the evaluation the figure sweeps use: the plotted
/// axis is the effective detuning.
pub fn steady_at_detuning(
    d: &DerivedParams,
    eps: f64,
    sig: f64,
    delta_eff: f64,
) -> Result<SteadyState> {
    let (b, rel) = membrane_fixed_point(
        d.g, d.drive, d.kappa, delta_eff, eps, sig, d.omega_m, d.gamma,
    );
    if !(rel < STEADY_TOL) {
        return Err(Error::NoConvergence { residual: rel });
    }
    let delta0 = delta_eff + detuning_shift(d.g, eps, sig, b);
    let scale = d.omega_m.max(delta0.abs());
    let note = classify_among(&scan_roots(d, eps, sig, delta0), delta_eff, scale);
    Ok(assemble_state(d, eps, sig, delta_eff, b, rel, note))
}

/// Steady state at a bare detuning Δ₀.
///
/// The effective detuning is converged by the damped iteration
/// Δ ← Δ/2 + Φ(Δ)/2 on the self-consistency map, warm-started by ramping the
/// drive up from zero in twenty geometric steps; ramping from the undriven
/// state makes the branch selection deterministic (the lowest-intensity
/// branch wherever several coexist). If the damped iteration stalls, the
/// topmost root of the map is bisected directly.
pub fn solve_steady(d: &DerivedParams, eps: f64, sig: f64, delta0: f64) -> Result<SteadyState> {
    if !delta0.is_finite() {
        return Err(Error::NoConvergence {
            residual: f64::INFINITY,
        });
    }
    let scale = d.omega_m.max(delta0.abs());
    let tol = STEADY_TOL * scale;
    let mut delta = delta0;
    for frac in drive_fractions() {
        let drive = frac * d.drive;
        let mut converged = false;
        for _ in 0..400 {
            let (b, _) = membrane_fixed_point(
                d.g, drive, d.kappa, delta, eps, sig, d.omega_m, d.gamma,
            );
            let phi = delta0 - detuning_shift(d.g, eps, sig, b);
            if !phi.is_finite() {
                break;
            }
            if (phi - delta).abs() < tol {
                converged = true;
                break;
            }
            delta = 0.5 * delta + 0.5 * phi;
        }
        if !converged {
            delta = bisect_topmost_root(d, eps, sig, delta0, drive, scale)?;
        }
    }
    let (b, rel) = membrane_fixed_point(
        d.g, d.drive, d.kappa, delta, eps, sig, d.omega_m, d.gamma,
    );
    let gap = (delta0 - detuning_shift(d.g, eps, sig, b) - delta).abs() / scale;
    let residual = rel.max(gap);
    if !(residual < STEADY_TOL) {
        return Err(Error::NoConvergence { residual });
    }
    let note = classify_among(&scan_roots(d, eps, sig, delta0), delta, scale);
    Ok(assemble_state(d, eps, sig, delta, b, residual, note))
}

/// Bisect the largest root of the self-consistency map at a (possibly
/// reduced) drive — the branch the ramp is tracking.
fn bisect_topmost_root(
    d: &DerivedParams,
    eps: f64,
    sig: f64,
    delta0: f64,
    drive: f64,
    scale: f64,
) -> Result<f64> {
    let reduced = DerivedParams { drive, ..*d };
    let (b0, _) = membrane_fixed_point(
        reduced.g, drive, reduced.kappa, 0.0, eps, sig, reduced.omega_m, reduced.gamma,
    );
    let shift_max = detuning_shift(reduced.g, eps, sig, b0).max(0.0);
    let lo = delta0 - 1.1 * shift_max - 0.02 * scale;
    let hi = delta0 + 0.02 * scale;
    let f = |delta: f64| map_mismatch(&reduced, eps, sig, delta0, delta);
    let n = 128;
    let mut hi_x = hi;
    let mut hi_f = f(hi);
    for k in 1..=n {
        let x = hi + (lo - hi) * k as f64 / n as f64;
        let fx = f(x);
        if fx.is_finite() && hi_f.is_finite() && (fx < 0.0) != (hi_f < 0.0) {
            let (mut a, mut b) = (x, hi_x);
            let mut fa = fx;
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 {
                    return Ok(m);
                }
                if (fa < 0.0) == (fm < 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
                if (b - a).abs() < 1e-14 * scale {
                    break;
                }
            }
            return Ok(0.5 * (a + b));
        }
        hi_x = x;
        hi_f = fx;
    }
    Err(Error::NoConvergence {
        residual: f64::INFINITY,
    })
}

/// All coexisting steady states at a bare detuning, ascending in Δ.
pub fn steady_branches(d: &DerivedParams, eps: f64, sig: f64, delta0: f64) -> Result<Vec<SteadyState>> {
    let roots = scan_roots(d, eps, sig, delta0);
    let scale = d.omega_m.max(delta0.abs());
    let top = roots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    roots
        .iter()
        .map(|&delta| {
            let (b, rel) = membrane_fixed_point(
                d.g, d.drive, d.kappa, delta, eps, sig, d.omega_m, d.gamma,
            );
            if !(rel < STEADY_TOL) {
                return Err(Error::NoConvergence { residual: rel });
            }
            let note = if roots.len() <= 1 {
                BranchNote::Unique
            } else if (delta - top).abs() < 1e-9 * scale {
                BranchNote::MultistableLower
            } else {
                BranchNote::MultistableUpper
            };
            Ok(assemble_state(d, eps, sig, delta, b, rel, note))
        })
        .collect()
}

/// Bare detuning that places the effective detuning at `delta_target`:
/// the exact inverse Δ₀ = Δ_target + shift(b_s(Δ_target)) of the detuning
/// definition, with the fixed point at Δ_target solved and residual-checked
/// on the way.
pub fn target_detuning(d: &DerivedParams, eps: f64, sig: f64, delta_target: f64) -> Result<f64> {
    let (b, rel) = membrane_fixed_point(
        d.g, d.drive, d.kappa, delta_target, eps, sig, d.omega_m, d.gamma,
    );
    if !(rel < STEADY_TOL) {
        return Err(Error::NoConvergence { residual: rel });
    }
    let delta0 = delta_target + detuning_shift(d.g, eps, sig, b);
    if !delta0.is_finite() {
        return Err(Error::RootNotBracketed {
            target: delta_target,
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        });
    }
    Ok(delta0)
}

/// Linearization coefficients at a converged steady state.
pub fn linearize(
    ss: &SteadyState,
    d: &DerivedParams,
    eps: f64,
    sig: f64,
) -> LinearizedParams {
    let _ = eps; // the split depends on σ and the amplitudes only
    let a2 = ss.a_s * ss.a_s;
    let split_r = 2.0 * d.g * sig * a2 * ss.b_s.re;
    let split_i = 2.0 * d.g * sig * a2 * ss.b_s.im;
    let omega_m = d.omega_m - 2.0 * split_r;
    LinearizedParams {
        omega_m,
        omega1: omega_m + split_r,
        omega2: omega_m - split_r,
        gamma1: d.gamma + split_i,
        gamma2: d.gamma - split_i,
        g_r: ss.g_eff.re,
        g_i: ss.g_eff.im,
        delta: ss.delta,
        kappa: d.kappa,
        gamma: d.gamma,
        nbar: d.nbar,
        nth: d.nth,
        omega_m_bare: d.omega_m,
    }
}

/// Drift and diffusion matrices of the linearized quantum Langevin equations.
pub fn build_fluctuation_model(lp: &LinearizedParams) -> FluctuationModel {
    let a = Matrix4::new(
        -lp.kappa, lp.delta, 0.0, 0.0,
        -lp.delta, -lp.kappa, lp.g_r, lp.g_i,
        -lp.g_i, 0.0, -lp.gamma1, lp.omega1,
        lp.g_r, 0.0, -lp.omega2, -lp.gamma2,
    );
    let opt = lp.kappa * (2.0 * lp.nth + 1.0);
    let mech = lp.gamma * (2.0 * lp.nbar + 1.0);
    let d = Matrix4::new(
        opt, 0.0, 0.0, 0.0,
        0.0, opt, 0.0, 0.0,
        0.0, 0.0, mech, 0.0,
        0.0, 0.0, 0.0, mech,
    );
    FluctuationModel { a, d }
}

/// Characteristic-polynomial coefficients of the drift matrix, in closed
/// form.
pub fn char_coeffs(lp: &LinearizedParams) -> CharCoeffs {
    let (k, del, gam) = (lp.kappa, lp.delta, lp.gamma);
    let coupling = lp.omega1 * lp.g_r * lp.g_r
        + lp.omega2 * lp.g_i * lp.g_i
        + lp.g_r * lp.g_i * (lp.gamma1 - lp.gamma2);
    let optical = k * k + del * del;
    let mechanical = lp.gamma1 * lp.gamma2 + lp.omega1 * lp.omega2;
    CharCoeffs {
        a1: 2.0 * (k + gam),
        a2: optical + mechanical + 4.0 * gam * k,
        a3: 2.0 * (gam * optical + k * mechanical),
        a4: optical * mechanical - del * coupling,
        coupling,
        optical,
        mechanical,
    }
}

/// The cubic Hurwitz combination H = a₁a₂a₃ − a₃² − a₁²a₄ in a factored form
/// that avoids the catastrophic cancellation of the naive product:
/// H = 4γκ(a−b)² + 16γκ(γ+κ)(γa+κb) + 4(γ+κ)²ΔS with a = κ²+Δ²,
/// b = Γ₁Γ₂+Ω₁Ω₂.
pub fn hurwitz_discriminant(lp: &LinearizedParams) -> f64 {
    let c = char_coeffs(lp);
    let (k, gam, del) = (lp.kappa, lp.gamma, lp.delta);
    let diff = c.optical - c.mechanical;
    4.0 * gam * k * diff * diff
        + 16.0 * gam * k * (gam + k) * (gam * c.optical + k * c.mechanical)
        + 4.0 * (gam + k) * (gam + k) * del * c.coupling
}

/// Routh-Hurwitz stability test. `m1` is the constant coefficient a₄ of the
/// characteristic quartic; `m2` the re-derived discriminant H/(4γκ);
/// `m2_reference` the reference-form discriminant kept for the consistency
/// report. Stable iff m1 > 0 and m2 > 0.
pub fn routh_hurwitz(lp: &LinearizedParams) -> StabilityCheck {
    let (k, del, gam) = (lp.kappa, lp.delta, lp.gamma);
    let (g1, g2) = (lp.gamma1, lp.gamma2);
    let (o1, o2) = (lp.omega1, lp.omega2);
    let s = o2 * lp.g_i * lp.g_i + o1 * lp.g_r * lp.g_r + lp.g_r * lp.g_i * (g1 - g2);
    let m1 = (k * k + del * del) * (o1 * o2 + g1 * g2) - del * s;
    let tail = (o1 * o2 + (g1 + k) * (g2 + k)).powi(2);
    let m2_reference = del.powi(4)
        + del * del * (gam * gam - 2.0 * g1 * g2 + 4.0 * k * gam + 2.0 * (k * k - o1 * o2))
        + del * (2.0 * (k + gam) * (k + gam) / (k * gam)) * s
        + tail;
    let m2 = del.powi(4)
        + del * del
            * (4.0 * gam * gam - 2.0 * g1 * g2 + 4.0 * k * gam + 2.0 * (k * k - o1 * o2))
        + del * ((k + gam) * (k + gam) / (k * gam)) * s
        + tail;
    StabilityCheck {
        m1,
        m2,
        m2_reference,
        stable: m1 > 0.0 && m2 > 0.0,
    }
}

/// Largest real part of the drift-matrix spectrum and the stability verdict
/// it implies. Independent of the algebraic criterion.
pub fn eigen_stability(a: &Matrix4<f64>) -> Result<(f64, bool)> {
    let ev = eigenvalues_4(a)?;
    let max_re = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok((max_re, max_re < 0.0))
}
