//! Frequency response of the driven membrane: mechanical susceptibility,
//! the auxiliary cavity kernel it contains, and the effective
//! frequency/damping spectra read off from it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::steady_state::LinearizedParams;

/// One frequency sample of the mechanical response.
#[derive(Debug, Clone, Copy)]
pub struct ResponsePoint {
    /// Analysis frequency ω, rad/s.
    pub omega: f64,
    /// Susceptibility χ(ω), units of s.
    pub chi: Complex64,
    /// Auxiliary cavity kernel I(ω).
    pub i_val: Complex64,
    /// Effective mechanical frequency squared, (rad/s)².
    pub omega_eff_sq: f64,
    /// Effective damping rate, 1/s.
    pub gamma_eff: f64,
}

/// Polynomial coefficients of the effective-response numerators.
///
/// `delta_prime_sq` is the shifted detuning square Δ′² = Δ² − ΔG_I²/Ω₁ that
/// replaces Δ² inside the cavity Lorentzians once the membrane back-action
/// is folded in. μ₁, μ₂, μ₃ are transcribed literally from the reference
/// expressions (μ₂'s sign structure included; see the consistency notes).
#[derive(Debug, Clone, Copy)]
pub struct MuCoefficients {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub delta_prime_sq: f64,
}

pub fn delta_prime_sq(lp: &LinearizedParams) -> f64 {
    lp.delta * lp.delta - lp.delta * lp.g_i * lp.g_i / lp.omega1
}

/// The paired cavity Lorentzian [κ² + (ω−Δ′)²][κ² + (ω+Δ′)²]. When
/// Δ′² < 0 (large G_I²/Ω₁) the square root would be imaginary, so the
/// algebraically identical expansion (κ² + Δ′² − ω²)² + 4κ²ω² — real for
/// any real Δ′² — is used instead.
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

/// Cavity denominator (κ − iω)² + Δ′² at (possibly complex) frequency.
fn cavity_denominator(omega: Complex64, lp: &LinearizedParams, dp2: f64) -> Complex64 {
    let z = Complex64::new(lp.kappa, 0.0) - Complex64::i() * omega;
    z * z + dp2
}

/// Numerator of Ω₁·I(ω)·D(ω) — with D divided back out this is the kernel,
/// and Ω₁χ⁻¹(ω)·D(ω) is a quartic polynomial in ω whose roots are the poles
/// of χ. Kept over complex ω so tests can place it on the drift spectrum.
fn coupling_numerator(omega: Complex64, lp: &LinearizedParams) -> Complex64 {
    let i = Complex64::i();
    let g1 = Complex64::new(lp.gamma1, 0.0) - i * omega;
    let g2 = Complex64::new(lp.gamma2, 0.0) - i * omega;
    lp.delta * (lp.omega1 * lp.g_r + lp.g_i * g1) * (lp.omega1 * lp.g_r - lp.g_i * g2)
        / lp.omega1
}

/// Ω₁χ⁻¹(ω)·D(ω), the quartic whose roots are the χ poles. Equal to the
/// drift characteristic polynomial evaluated at s = −iω, which is how
/// cross-checks place the response poles on the drift spectrum.
pub fn inv_chi_quartic(omega: Complex64, lp: &LinearizedParams) -> Complex64 {
    let i = Complex64::i();
    let g1 = Complex64::new(lp.gamma1, 0.0) - i * omega;
    let g2 = Complex64::new(lp.gamma2, 0.0) - i * omega;
    let mech = lp.omega1 * lp.omega2 + g1 * g2;
    mech * cavity_denominator(omega, lp, delta_prime_sq(lp)) - coupling_numerator(omega, lp)
}

/// Auxiliary cavity kernel
/// I(ω) = Δ[G_R + G_I(Γ₁−iω)/Ω₁][G_R − G_I(Γ₂−iω)/Ω₁] / [(κ−iω)² + Δ′²].
pub fn i_of_omega(omega: f64, lp: &LinearizedParams) -> Result<Complex64> {
    let dp2 = delta_prime_sq(lp);
    let wc = Complex64::new(omega, 0.0);
    let denom = cavity_denominator(wc, lp, dp2);
    if denom.norm() < 1e-12 * (lp.kappa * lp.kappa + lp.delta * lp.delta) {
        return Err(Error::NearPole { omega });
    }
    let g1 = Complex64::new(lp.gamma1, -omega);
    let g2 = Complex64::new(lp.gamma2, -omega);
    let f1 = Complex64::new(lp.g_r, 0.0) + lp.g_i * g1 / lp.omega1;
    let f2 = Complex64::new(lp.g_r, 0.0) - lp.g_i * g2 / lp.omega1;
    Ok(lp.delta * f1 * f2 / denom)
}

/// Mechanical susceptibility χ(ω) = Ω₁ / [Ω₁Ω₂ + (Γ₁−iω)(Γ₂−iω) − Ω₁I(ω)].
///
/// The damping product is (Γ₁−iω)(Γ₂−iω): both factors retarded, which is
/// what places the χ poles exactly on the drift spectrum (ω = iλ). The
/// reference prints the second factor advanced; see the consistency notes.
pub fn susceptibility(omega: f64, lp: &LinearizedParams) -> Result<Complex64> {
    let ival = i_of_omega(omega, lp)?;
    let g1 = Complex64::new(lp.gamma1, -omega);
    let g2 = Complex64::new(lp.gamma2, -omega);
    let inv = (lp.omega1 * lp.omega2 + g1 * g2 - lp.omega1 * ival) / lp.omega1;
    let chi = inv.inv();
    if !chi.is_finite() {
        return Err(Error::NearPole { omega });
    }
    Ok(chi)
}

/// The three numerator coefficients, transcribed literally.
pub fn mu_coefficients(lp: &LinearizedParams) -> MuCoefficients {
    let dp2 = delta_prime_sq(lp);
    let (k, gr, gi, o1) = (lp.kappa, lp.g_r, lp.g_i, lp.omega1);
    let (g1, g2) = (lp.gamma1, lp.gamma2);
    let k2 = k * k;
    let mu1 = (k2 + dp2) * (g1 * gi + o1 * gr) * (o1 * gr - g2 * gi);
    let mu2 = (k2 + g1 * g2 - 2.0 * k * (g1 + g2) + dp2) * gi * gi
        + (g2 - g1) * o1 * gi * gr
        - o1 * o1 * gr * gr;
    let mu3 = lp.gamma * gi * gi * (k2 + dp2)
        + k * (o1 * o1 * gr * gr + o1 * gi * gr * (g1 - g2) - gi * gi * g1 * g2);
    MuCoefficients {
        mu1,
        mu2,
        mu3,
        delta_prime_sq: dp2,
    }
}

/// Effective mechanical frequency squared,
/// ω_eff²(ω) = Γ₁Γ₂ + Ω₁Ω₂ − Δ[μ₁ + μ₂ω² − G_I²ω⁴] / (Ω₁·L(ω)).
pub fn effective_frequency_sq(omega: f64, lp: &LinearizedParams) -> f64 {
    let mu = mu_coefficients(lp);
    let w2 = omega * omega;
    let num = mu.mu1 + mu.mu2 * w2 - lp.g_i * lp.g_i * w2 * w2;
    lp.gamma1 * lp.gamma2 + lp.omega1 * lp.omega2
        - lp.delta * num / (lp.omega1 * lorentzian_pair(omega, lp.kappa, mu.delta_prime_sq))
}

/// Effective damping rate,
/// γ_eff(ω) = 2γ + 2Δ[μ₃ − (κ+γ)G_I²ω²] / (Ω₁·L(ω)).
pub fn effective_damping(omega: f64, lp: &LinearizedParams) -> f64 {
    let mu = mu_coefficients(lp);
    let w2 = omega * omega;
    let num = mu.mu3 - (lp.kappa + lp.gamma) * lp.g_i * lp.g_i * w2;
    2.0 * lp.gamma
        + 2.0 * lp.delta * num / (lp.omega1 * lorentzian_pair(omega, lp.kappa, mu.delta_prime_sq))
}

/// Full response sample at one frequency.
pub fn response_point(omega: f64, lp: &LinearizedParams) -> Result<ResponsePoint> {
    Ok(ResponsePoint {
        omega,
        chi: susceptibility(omega, lp)?,
        i_val: i_of_omega(omega, lp)?,
        omega_eff_sq: effective_frequency_sq(omega, lp),
        gamma_eff: effective_damping(omega, lp),
    })
}

/// Response sampled on a uniform grid [0, omega_max].
pub fn response_grid(
    lp: &LinearizedParams,
    omega_max: f64,
    points: usize,
) -> Result<Vec<ResponsePoint>> {
    let n = points.max(2);
    (0..n)
        .map(|k| response_point(omega_max * k as f64 / (n - 1) as f64, lp))
        .collect()
}

/// Default grid: 2001 points over [0, 2ω_m].
pub fn response_grid_default(lp: &LinearizedParams) -> Result<Vec<ResponsePoint>> {
    response_grid(lp, 2.0 * lp.omega_m_bare, 2001)
}
