//! Periodic cavity-detuning series, the phonon-number-dependent coupling
//! profile f_j(n_b), and its linearization coefficients ε and σ.
//!
//! The cavity frequency of a membrane-in-the-middle cavity is
//! ω_c(x) = (c/L)·arccos(r_c·cos(4πx/λ)), a periodic function of the membrane
//! displacement. Expanding it in harmonics of the displacement phase yields a
//! double series over odd m and k ∈ [0, (m−1)/2] whose terms depend on the
//! displacement only through μ = m − 2k. This module accumulates the series
//! in *collapsed* form — one weight per odd μ — which keeps the term count
//! linear in the cutoff rather than quadratic, and evaluates every derived
//! quantity (ω_c series, f_j, ε, σ) from those collapsed weights.
//!
//! Truncation is adaptive in m: accumulation stops once three consecutive
//! odd-m blocks each contribute less than tol·(1−r_c²)/2 of the running total
//! on both the ε-moment (Σ w·μ) and the σ-moment (Σ w·μ³). The (1−r_c²)/2
//! factor compensates the slow geometric tail decay at high reflectivity
//! (the tail sums to ≈ block/(1−r_c²)); with the plain tol threshold the
//! σ-moment tail can reach ~50·tol at r_c = 0.999.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::params::C_LIGHT;

/// Default relative truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default hard cap on the series order m for collapsed accumulation.
/// r_c = 0.9999 needs m ≈ 2.9e5, so the cap is generous.
pub const DEFAULT_CAP: u64 = 1_000_001;
/// Hard cap used by the explicit per-term enumeration, which materializes
/// O(m²) terms and is only sensible at moderate reflectivity.
pub const SERIES_TERM_CAP: u64 = 2001;

/// Weights with ln below this floor underflow f64 and are skipped.
const LN_FLOOR: f64 = -650.0;

/// One explicit term of the detuning double series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTerm {
    /// Odd series order.
    pub m: u64,
    /// Binomial index, 0 ≤ k ≤ (m−1)/2.
    pub k: u64,
    /// Harmonic μ = m − 2k (odd, ≥ 1).
    pub mu: u64,
    /// (r_c^m/m)·C(m,k)·(m−1)!/(4^{m−1}·[((m−1)/2)!]²).
    pub weight: f64,
}

/// Truncated detuning series in collapsed form, with the derived
/// linearization scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingExpansion {
    /// Collapsed weight for harmonic μ = 2i+1 at index i.
    pub weights: Vec<f64>,
    /// Largest odd m that contributed.
    pub m_max: u64,
    /// Relative truncation tolerance the expansion was built with.
    pub tol: f64,
    /// ε = Σ w·μ·e^{−η₀²μ²/2} — the coupling linearization constant.
    pub epsilon: f64,
    /// σ = −(η₀²/2)·Σ w·μ³·e^{−η₀²μ²/2} — the intensity-dependence slope
    /// (≤ 0: the (iη₀)² factor makes every term real and non-positive).
    pub sigma: f64,
    /// Lamb-Dicke parameter the Gaussian factors were evaluated at.
    pub eta0: f64,
    /// Membrane field reflectivity.
    pub r_c: f64,
}

/// Smallest odd harmonic cutoff that keeps the dropped μ > cutoff mass
/// below tol: harmonics decay like e^{−μ·arccosh(1/r)}.
fn mu_cutoff(r_c: f64, tol: f64) -> u64 {
    let a = (1.0 / r_c).acosh();
    let cut = ((1.0 / tol).ln() + 3.0 * (1.0 / a).ln() + 30.0) / a;
    let m = cut.ceil() as u64;
    if m % 2 == 0 {
        m + 1
    } else {
        m
    }
}

/// ln of (r^m/m)·C(m,k)·(m−1)!/(4^{m−1}·[((m−1)/2)!]²), all in log-domain
/// so no intermediate overflows for any m.
fn ln_weight(r: f64, m: u64, k: u64) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    let ln_binom = ln_gamma(mf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(mf - kf + 1.0);
    let ln_base = mf * r.ln() - mf.ln() + ln_gamma(mf)
        - (mf - 1.0) * 4.0f64.ln()
        - 2.0 * ln_gamma((mf - 1.0) / 2.0 + 1.0);
    ln_base + ln_binom
}

/// Accumulate the m-block into `weights`; returns the block's
/// (ε-moment, σ-moment) contribution, or None if the whole block
/// underflows.
///
/// The k-range is restricted to μ ≤ mu_cut, then walked from the first k
/// whose weight clears the underflow floor; successive weights follow the
/// exact ratio w(k+1)/w(k) = (m−k)/(k+1), so only one log-gamma evaluation
/// is needed per block.
fn accumulate_block(weights: &mut [f64], r: f64, m: u64, mu_cut: u64) -> Option<(f64, f64)> {
    let kmax = (m - 1) / 2;
    let k_lo = ((m as i64 - mu_cut as i64 + 1).div_euclid(2)).max(0) as u64;
    let mut k0 = k_lo;
    let mut lw = ln_weight(r, m, k0);
    let mut guard = 0;
    while lw < LN_FLOOR && k0 < kmax && guard < 200 {
        // d ln(w)/dk ≈ ln((m−k)/(k+1)); jump straight to the floor crossing.
        let slope = (((m - k0) as f64) / (k0 as f64 + 1.0)).ln();
        let step = (((LN_FLOOR - lw) / slope.max(1e-3)) as u64).max(1);
        k0 = (k0 + step).min(kmax);
        lw = ln_weight(r, m, k0);
        guard += 1;
    }
    if lw < LN_FLOOR {
        return None;
    }
    let mut w = lw.exp();
    let mut blk_eps = 0.0;
    let mut blk_sig = 0.0;
    for k in k0..=kmax {
        let mu = (m - 2 * k) as f64;
        weights[((m - 2 * k - 1) / 2) as usize] += w;
        blk_eps += w * mu;
        blk_sig += w * mu * mu * mu;
        w *= ((m - k) as f64) / ((k + 1) as f64);
    }
    Some((blk_eps, blk_sig))
}

/// Core builder: collapsed weights, the largest contributing m, and the last
/// block's relative ε-contribution (the tail estimate).
fn build_weights(r_c: f64, tol: f64, cap: u64) -> Result<(Vec<f64>, u64, f64)> {
    if r_c == 0.0 {
        return Ok((vec![0.0], 1, 0.0));
    }
    let mu_cut = mu_cutoff(r_c, tol);
    let mut weights = vec![0.0; ((mu_cut + 1) / 2) as usize];
    let mut eps_run = 0.0f64;
    let mut sig_run = 0.0f64;
    let mut small = 0;
    let mut tail = 1.0;
    let thr = tol * 0.5 * (1.0 - r_c * r_c);
    let mut m = 1;
    while m <= cap {
        if let Some((blk_eps, blk_sig)) = accumulate_block(&mut weights, r_c, m, mu_cut) {
            eps_run += blk_eps;
            sig_run += blk_sig;
            tail = blk_eps / eps_run.max(1e-300);
            let ok_eps = blk_eps < thr * eps_run.max(1e-300);
            let ok_sig = blk_sig < thr * sig_run.max(1e-300);
            small = if ok_eps && ok_sig { small + 1 } else { 0 };
            if small >= 3 {
                return Ok((weights, m, tail));
            }
        }
        m += 2;
    }
    Err(Error::TruncationCap {
        r_c,
        cap,
        tail_estimate: tail,
    })
}

/// (ε, σ) moments of a collapsed weight vector at a given Lamb-Dicke
/// parameter.
fn moments(weights: &[f64], eta0: f64) -> (f64, f64) {
    let mut eps = 0.0;
    let mut sig_sum = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        let mu = 2.0 * i as f64 + 1.0;
        let gauss = (-0.5 * eta0 * eta0 * mu * mu).exp();
        eps += w * mu * gauss;
        sig_sum += w * mu * mu * mu * gauss;
    }
    (eps, -0.5 * eta0 * eta0 * sig_sum)
}

/// Build the truncated expansion for a reflectivity and Lamb-Dicke
/// parameter with the default order cap.
pub fn expand(r_c: f64, eta0: f64, tol: f64) -> Result<CouplingExpansion> {
    expand_capped(r_c, eta0, tol, DEFAULT_CAP)
}

/// [`expand`] with an explicit hard cap on the series order.
pub fn expand_capped(r_c: f64, eta0: f64, tol: f64, cap: u64) -> Result<CouplingExpansion> {
    if !(0.0..1.0).contains(&r_c) {
        return Err(Error::InvalidField {
            field: "reflectivity",
            reason: format!("must lie in [0, 1), got {r_c}"),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidField {
            field: "tol",
            reason: format!("must be > 0, got {tol}"),
        });
    }
    let (weights, m_max, _) = build_weights(r_c, tol, cap)?;
    let (epsilon, sigma) = moments(&weights, eta0);
    Ok(CouplingExpansion {
        weights,
        m_max,
        tol,
        epsilon,
        sigma,
        eta0,
        r_c,
    })
}

/// Convenience wrapper returning just (ε, σ).
pub fn epsilon_sigma(r_c: f64, eta0: f64, tol: f64) -> Result<(f64, f64)> {
    let e = expand(r_c, eta0, tol)?;
    Ok((e.epsilon, e.sigma))
}

/// Explicit enumeration of the double series, one [`SeriesTerm`] per (m, k).
///
/// Materializing O(m²) terms is only sensible at moderate reflectivity, so
/// this uses the small [`SERIES_TERM_CAP`] and reports a truncation error
/// with the achieved tail estimate when the reflectivity needs more orders.
/// Terms below the f64 underflow floor are omitted. Collapsed accumulation
/// via [`expand`] is the workhorse everywhere else.
pub fn series_terms(r_c: f64, tol: f64) -> Result<(Vec<SeriesTerm>, u64)> {
    if r_c == 0.0 {
        return Ok((Vec::new(), 1));
    }
    let thr = tol * 0.5 * (1.0 - r_c * r_c);
    let mut terms = Vec::new();
    let mut eps_run = 0.0f64;
    let mut sig_run = 0.0f64;
    let mut small = 0;
    let mut tail = 1.0;
    let mut m = 1;
    while m <= SERIES_TERM_CAP {
        let kmax = (m - 1) / 2;
        let mut blk_eps = 0.0;
        let mut blk_sig = 0.0;
        let mut any = false;
        for k in 0..=kmax {
            let lw = ln_weight(r_c, m, k);
            if lw < LN_FLOOR {
                continue;
            }
            let weight = lw.exp();
            let mu = m - 2 * k;
            terms.push(SeriesTerm { m, k, mu, weight });
            let muf = mu as f64;
            blk_eps += weight * muf;
            blk_sig += weight * muf * muf * muf;
            any = true;
        }
        if any {
            eps_run += blk_eps;
            sig_run += blk_sig;
            tail = blk_eps / eps_run.max(1e-300);
            let ok = blk_eps < thr * eps_run.max(1e-300) && blk_sig < thr * sig_run.max(1e-300);
            small = if ok { small + 1 } else { 0 };
            if small >= 3 {
                return Ok((terms, m));
            }
        }
        m += 2;
    }
    Err(Error::TruncationCap {
        r_c,
        cap: SERIES_TERM_CAP,
        tail_estimate: tail,
    })
}

/// Associated Laguerre polynomial L_n^j(x) by the three-term recurrence
/// in n (stable for the j, n ≤ 200 this crate needs).
pub fn laguerre_assoc(j: u32, n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let jf = j as f64;
    let mut lm1 = 1.0;
    let mut l = 1.0 + jf - x;
    for i in 1..n {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + jf - x) * l - (i + jf) * lm1) / (i + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

/// Closed-form cavity frequency (c/L)·arccos(r_c·cos(4πx/λ)).
pub fn omega_c_closed(x: f64, r_c: f64, cavity_length: f64, wavelength: f64) -> f64 {
    let theta = 4.0 * std::f64::consts::PI * x / wavelength;
    C_LIGHT / cavity_length * (r_c * theta.cos()).acos()
}

/// Series form πc/(2L) − (c/2L)·Σ w·2cos(μ·4πx/λ); converges to
/// [`omega_c_closed`] as tol → 0.
pub fn omega_c_series(
    expansion: &CouplingExpansion,
    x: f64,
    cavity_length: f64,
    wavelength: f64,
) -> f64 {
    let theta = 4.0 * std::f64::consts::PI * x / wavelength;
    let mut s = 0.0;
    for (i, &w) in expansion.weights.iter().enumerate() {
        let mu = 2.0 * i as f64 + 1.0;
        s += w * 2.0 * (mu * theta).cos();
    }
    let half = C_LIGHT / (2.0 * cavity_length);
    std::f64::consts::PI * half - half * s
}

/// Vibrational-sideband coupling profile along a strictly increasing ladder
/// of phonon numbers, evaluated in a single upward Laguerre recurrence per
/// harmonic. Use this instead of [`f_j`] in a loop when the ladder reaches
/// large n_b: the whole table costs one sweep to max(samples) per harmonic.
pub fn f_profile(expansion: &CouplingExpansion, j: u32, samples: &[u32]) -> Vec<f64> {
    let mut out = vec![0.0; samples.len()];
    let Some(&n_max) = samples.last() else {
        return out;
    };
    let eta0 = expansion.eta0;
    let jf = j as f64;
    for (i, &w) in expansion.weights.iter().enumerate() {
        let mu = 2.0 * i as f64 + 1.0;
        let z = eta0 * eta0 * mu * mu;
        let pre = w * (-0.5 * z).exp() * mu.powi(j as i32);
        let mut lm1 = 0.0;
        let mut l = 1.0;
        let mut k = 0usize;
        for n in 0..=n_max {
            let nf = n as f64;
            if k < samples.len() && samples[k] == n {
                let fac = (ln_gamma(nf + 1.0) - ln_gamma(nf + jf + 1.0)).exp();
                out[k] += pre * fac * l;
                k += 1;
            }
            let next = ((2.0 * nf + 1.0 + jf - z) * l - (nf + jf) * lm1) / (nf + 1.0);
            lm1 = l;
            l = next;
        }
    }
    out
}

/// Vibrational-sideband coupling profile
/// f_j(n_b) = Σ w·e^{−η₀²μ²/2}·(n_b!·μ^j/(n_b+j)!)·L_{n_b}^j(η₀²μ²).
///
/// For j = 1, n_b = 0 this reduces term-by-term to the ε series.
pub fn f_j(expansion: &CouplingExpansion, j: u32, n_b: u32) -> f64 {
    let eta0 = expansion.eta0;
    let fac = (ln_gamma(n_b as f64 + 1.0) - ln_gamma((n_b + j) as f64 + 1.0)).exp();
    let mut sum = 0.0;
    for (i, &w) in expansion.weights.iter().enumerate() {
        let mu = 2.0 * i as f64 + 1.0;
        let z = eta0 * eta0 * mu * mu;
        let gauss = (-0.5 * z).exp();
        sum += w * gauss * fac * mu.powi(j as i32) * laguerre_assoc(j, n_b, z);
    }
    sum
}

#[cfg(test)]
pub(crate) fn build_weights_to_order(r_c: f64, tol: f64, m_stop: u64) -> Vec<f64> {
    // Test-only: accumulate every odd m up to m_stop with no stop rule,
    // for truncation-soundness comparisons.
    let mu_cut = mu_cutoff(r_c, tol);
    let mut weights = vec![0.0; ((mu_cut + 1) / 2) as usize];
    let mut m = 1;
    while m <= m_stop {
        let _ = accumulate_block(&mut weights, r_c, m, mu_cut);
        m += 2;
    }
    weights
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn term_weight_spot_values() {
        // m = 1: every combinatorial factor is 1, weight = r.
        let (terms, _) = series_terms(0.37, 1e-12).unwrap();
        assert_eq!(terms[0].m, 1);
        assert_eq!(terms[0].mu, 1);
        assert_relative_eq!(terms[0].weight, 0.37, max_relative = 1e-14);

        // m = 3, r = 0.9: C(3,k)·2!/(4²·1) /3 gives r³/24 and r³/8.
        let (terms, _) = series_terms(0.9, 1e-12).unwrap();
        let w30 = terms.iter().find(|t| t.m == 3 && t.k == 0).unwrap();
        let w31 = terms.iter().find(|t| t.m == 3 && t.k == 1).unwrap();
        assert_relative_eq!(w30.weight, 0.9f64.powi(3) / 24.0, max_relative = 1e-13);
        assert_relative_eq!(w31.weight, 0.9f64.powi(3) / 8.0, max_relative = 1e-13);
        assert_relative_eq!(w30.weight, 3.0375000000000006e-2, max_relative = 1e-13);
        assert_relative_eq!(w31.weight, 9.1125000000000012e-2, max_relative = 1e-13);
        assert_eq!(w30.mu, 3);
        assert_eq!(w31.mu, 1);
    }

    #[test]
    fn series_terms_structure() {
        let (terms, m_max) = series_terms(0.0, 1e-12).unwrap();
        assert!(terms.is_empty());
        assert_eq!(m_max, 1);

        let (terms, m_max) = series_terms(0.5, 1e-12).unwrap();
        assert!(m_max % 2 == 1);
        for t in &terms {
            assert!(t.m % 2 == 1);
            assert!(t.k <= (t.m - 1) / 2);
            assert_eq!(t.mu, t.m - 2 * t.k);
            assert!(t.weight > 0.0);
        }
        // Collapsing the explicit terms over mu reproduces the collapsed
        // builder. The explicit list has no harmonic window, so size by its
        // own largest mu.
        let exp = expand(0.5, 0.0, 1e-12).unwrap();
        let n_mu = terms.iter().map(|t| ((t.mu + 1) / 2) as usize).max().unwrap();
        let mut collapsed = vec![0.0; n_mu];
        for t in &terms {
            collapsed[((t.mu - 1) / 2) as usize] += t.weight;
        }
        assert_relative_eq!(collapsed[0], exp.weights[0], max_relative = 1e-12);
        let eps_terms: f64 = terms.iter().map(|t| t.weight * t.mu as f64).sum();
        assert_relative_eq!(eps_terms, exp.epsilon, max_relative = 1e-13);
    }

    #[test]
    fn explicit_enumeration_caps_out_at_high_reflectivity() {
        match series_terms(0.999, 1e-12) {
            Err(Error::TruncationCap {
                cap,
                tail_estimate,
                ..
            }) => {
                assert_eq!(cap, SERIES_TERM_CAP);
                assert!(tail_estimate > 0.0);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
        // The collapsed builder handles the same reflectivity fine.
        assert!(expand(0.999, 0.0, 1e-12).is_ok());
    }

    #[test]
    fn laguerre_against_explicit_sum() {
        // Independent oracle: L_n^j(x) = sum_i (-1)^i C(n+j, n-i) x^i/i!.
        fn explicit(j: u32, n: u32, x: f64) -> f64 {
            let mut sum = 0.0;
            for i in 0..=n {
                let mut binom = 1.0;
                // C(n+j, n-i)
                let top = (n + j) as f64;
                let bot = (n - i) as f64;
                for t in 0..(n - i) {
                    binom *= (top - t as f64) / (bot - t as f64);
                }
                let mut xi_fact = 1.0;
                for t in 1..=i {
                    xi_fact *= x / t as f64;
                }
                sum += if i % 2 == 0 { 1.0 } else { -1.0 } * binom * xi_fact;
            }
            sum
        }
        assert_eq!(laguerre_assoc(7, 0, 3.4), 1.0);
        assert_relative_eq!(laguerre_assoc(0, 1, 0.3), 0.7, max_relative = 1e-15);
        assert_relative_eq!(laguerre_assoc(1, 2, 2.0), -1.0, max_relative = 1e-13);
        // The explicit alternating sum loses digits to cancellation at
        // larger n, so the comparison tolerance is looser than the
        // recurrence itself warrants.
        for &(j, n, x) in &[(1u32, 2u32, 2.0f64), (3, 5, 1.7), (0, 8, 0.9), (2, 12, 4.2)] {
            assert_relative_eq!(
                laguerre_assoc(j, n, x),
                explicit(j, n, x),
                max_relative = 1e-9,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn closed_form_special_points() {
        let (length, lam) = (0.067, 1064e-9);
        let omega0 = std::f64::consts::PI * C_LIGHT / (2.0 * length);
        assert_relative_eq!(omega_c_closed(0.123e-9, 0.0, length, lam), omega0);
        assert_relative_eq!(
            omega_c_closed(0.0, 0.8, length, lam),
            C_LIGHT / length * 0.8f64.acos()
        );
        assert_relative_eq!(
            omega_c_closed(lam / 8.0, 0.8, length, lam),
            omega0,
            max_relative = 1e-12
        );
        // Period lambda/2 in the displacement.
        assert_relative_eq!(
            omega_c_closed(0.2e-9, 0.8, length, lam),
            omega_c_closed(0.2e-9 + lam / 2.0, 0.8, length, lam),
            max_relative = 1e-9
        );
    }

    #[test]
    fn series_matches_closed_form() {
        let (length, lam) = (0.067, 1064e-9);
        let omega0 = std::f64::consts::PI * C_LIGHT / (2.0 * length);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &r in &[0.1, 0.5, 0.9, 0.999] {
            let exp = expand(r, 0.0, 1e-12).unwrap();
            let mut worst = 0.0f64;
            for _ in 0..200 {
                let x = rng.random_range(-lam..lam);
                let d = (omega_c_series(&exp, x, length, lam)
                    - omega_c_closed(x, r, length, lam))
                .abs()
                    / omega0;
                worst = worst.max(d);
            }
            assert!(worst < 1e-10, "r={r}: series/closed mismatch {worst:e}");
        }
    }

    #[test]
    fn narrow_membrane_band_profile() {
        // r = 0.99, eta0 = 8e-5 working point.
        let exp = expand(0.99, 8e-5, 1e-12).unwrap();
        assert_eq!(exp.m_max, 2825);
        assert_relative_eq!(exp.epsilon, 2.1155092768032375, max_relative = 1e-12);
        assert_relative_eq!(exp.sigma, -2.0169662426901927e-7, max_relative = 1e-11);
        for (nb, expect) in [
            (0u32, 2.1155092768032375),
            (1, 2.1155090751066141),
            (5, 2.1155082683218196),
            (10, 2.1155072598446636),
            (50, 2.1154991921806827),
            (100, 2.1154891079842160),
        ] {
            assert_relative_eq!(f_j(&exp, 1, nb), expect, max_relative = 1e-12);
        }
        // Monotone decreasing profile, and the linear model tracks it.
        let mut prev = f64::INFINITY;
        for nb in 0..=10 {
            let f = f_j(&exp, 1, nb);
            assert!(f < prev);
            let linear = exp.epsilon + exp.sigma * nb as f64;
            assert_relative_eq!(f, linear, max_relative = 1e-9);
            prev = f;
        }
    }

    #[test]
    fn tiny_ldp_profile_is_flat() {
        // r = 0.9, eta0 = 1e-9: sigma is ~1e-18, f is epsilon to all digits.
        let exp = expand(0.9, 1e-9, 1e-12).unwrap();
        assert_eq!(exp.m_max, 275);
        assert_relative_eq!(exp.epsilon, 1.3066584060382067, max_relative = 1e-12);
        assert_relative_eq!(exp.sigma, -2.8800021649961750e-18, max_relative = 1e-10);
        assert_relative_eq!(f_j(&exp, 1, 10), exp.epsilon, max_relative = 1e-12);
        assert_relative_eq!(f_j(&exp, 1, 100), exp.epsilon, max_relative = 1e-12);
    }

    #[test]
    fn epsilon_at_zero_ldp_matches_elliptic_integral() {
        // eps(eta0 = 0) = (2r/pi)·K(r), K by arithmetic-geometric mean.
        fn agm_k(k: f64) -> f64 {
            let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
            for _ in 0..60 {
                let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
                a = an;
                b = bn;
                if (a - b).abs() < 1e-17 * a {
                    break;
                }
            }
            std::f64::consts::PI / (2.0 * a)
        }
        for &r in &[0.3, 0.5, 0.9, 0.98, 0.999] {
            let exp = expand(r, 0.0, 1e-12).unwrap();
            let oracle = 2.0 * r / std::f64::consts::PI * agm_k(r);
            assert_relative_eq!(exp.epsilon, oracle, max_relative = 1e-11);
        }
    }

    #[test]
    fn f1_at_zero_phonons_equals_epsilon() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..25 {
            let r = rng.random_range(0.01..0.995);
            let eta = 10f64.powf(rng.random_range(-9.0..-3.0));
            let exp = expand(r, eta, 1e-12).unwrap();
            let f10 = f_j(&exp, 1, 0);
            assert!(
                (f10 - exp.epsilon).abs() <= 1e-12 * exp.epsilon,
                "r={r} eta={eta}: f_1(0)={f10:e} eps={:e}",
                exp.epsilon
            );
        }
    }

    #[test]
    fn epsilon_decreases_with_ldp() {
        let mut prev = f64::INFINITY;
        for eta in [0.0, 1e-4, 1e-3, 1e-2, 0.1] {
            let exp = expand(0.9, eta, 1e-12).unwrap();
            assert!(exp.epsilon < prev || eta == 0.0);
            assert!(exp.sigma <= 0.0);
            prev = exp.epsilon;
        }
    }

    #[test]
    fn truncation_soundness_plus_100_orders() {
        // Adding 100 more series orders moves eps and sigma by < 10·tol.
        let tol = 1e-12;
        for &r in &[0.5, 0.9, 0.99, 0.999] {
            let exp = expand(r, 1e-6, tol).unwrap();
            let deeper = build_weights_to_order(r, tol, exp.m_max + 100);
            let (e2, s2) = moments(&deeper, 1e-6);
            assert!(
                (e2 - exp.epsilon).abs() < 10.0 * tol * exp.epsilon,
                "r={r}: eps drift {:e}",
                (e2 - exp.epsilon).abs() / exp.epsilon
            );
            assert!(
                (s2 - exp.sigma).abs() < 10.0 * tol * exp.sigma.abs(),
                "r={r}: sigma drift {:e}",
                (s2 - exp.sigma).abs() / exp.sigma.abs()
            );
        }
    }

    #[test]
    fn zero_reflectivity_expansion_is_empty() {
        let exp = expand(0.0, 1e-5, 1e-12).unwrap();
        assert_eq!(exp.epsilon, 0.0);
        assert_eq!(exp.sigma, 0.0);
        assert_eq!(f_j(&exp, 1, 3), 0.0);
        assert_eq!(f_j(&exp, 4, 0), 0.0);
    }

    #[test]
    fn profile_sweep_matches_pointwise_evaluation() {
        let exp = expand(0.9, 1e-3, 1e-12).unwrap();
        for j in [1u32, 2] {
            let samples = [0u32, 1, 2, 7, 50, 311, 500];
            let swept = f_profile(&exp, j, &samples);
            for (&n, &got) in samples.iter().zip(swept.iter()) {
                assert_relative_eq!(got, f_j(&exp, j, n), max_relative = 1e-12);
            }
        }
        assert!(f_profile(&exp, 1, &[]).is_empty());
        // The large-ladder path stays finite and smooth where the pointwise
        // route would be too slow to check directly.
        let big = f_profile(&exp, 1, &[0, 100_000, 200_000]);
        assert!(big.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn sigma_bound_invariant() {
        // |sigma| <= (eta0^2/2)·sum w·mu^3 over included terms.
        for &(r, eta) in &[(0.5, 1e-3), (0.9, 1e-4), (0.99, 8e-5)] {
            let exp = expand(r, eta, 1e-12).unwrap();
            let bound: f64 = exp
                .weights
                .iter()
                .enumerate()
                .map(|(i, &w)| {
                    let mu = 2.0 * i as f64 + 1.0;
                    w * mu * mu * mu
                })
                .sum::<f64>()
                * 0.5
                * eta
                * eta;
            assert!(exp.sigma.abs() <= bound * (1.0 + 1e-12));
        }
    }
}
