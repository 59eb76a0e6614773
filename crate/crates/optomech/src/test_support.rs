//! Shared fixtures for the unit tests: the two working points most of the
//! numeric anchors were frozen at.

use crate::coupling::epsilon_sigma;
use crate::params::{derive, DerivedParams, SystemConfig};

pub(crate) const TAU: f64 = std::f64::consts::TAU;

/// The 50 pg membrane cooling study: r_c = 0.999, κ = 0.047 ω_m, 50 µW.
pub(crate) fn cooling_config() -> SystemConfig {
    SystemConfig {
        cavity_length: 0.067,
        wavelength: 1064e-9,
        motional_mass: 5e-11,
        mech_freq: TAU * 1e5,
        quality_factor: Some(1.2e7),
        mech_damping: None,
        cavity_decay: None,
        kappa_over_omega_m: Some(0.047),
        reflectivity: 0.999,
        input_power: 50e-6,
        bath_temperature: 0.4,
        cavity_thermal: 0.0,
        bare_detuning: 0.0,
        ldp_override: None,
        ldp_scale: 1.0,
    }
}

/// The 0.5 pg response study: prescribed η₀ = 6.8e-7 (times a scaling),
/// κ = 0.051 ω_m, 61 µW.
pub(crate) fn response_study_config(ldp_scale: f64) -> SystemConfig {
    SystemConfig {
        cavity_length: 0.07,
        wavelength: 1064e-9,
        motional_mass: 5e-13,
        mech_freq: TAU * 1e5,
        quality_factor: Some(1.2e7),
        mech_damping: None,
        cavity_decay: None,
        kappa_over_omega_m: Some(0.051),
        reflectivity: 0.999,
        input_power: 61e-6,
        bath_temperature: 0.4,
        cavity_thermal: 0.0,
        bare_detuning: 0.0,
        ldp_override: Some(6.8e-7),
        ldp_scale,
    }
}

/// Derived parameters plus the coupling moments for a config.
pub(crate) fn setup(config: &SystemConfig) -> (DerivedParams, f64, f64) {
    let d = derive(config).unwrap();
    let (eps, sig) = epsilon_sigma(config.reflectivity, d.eta0, 1e-12).unwrap();
    (d, eps, sig)
}
