//! Built-in parameter sets for the published figure tables, transcribed from
//! the figure captions, plus the two baseline configurations they share.

use std::f64::consts::TAU;

use optomech::params::SystemConfig;

use crate::runner::{SweepAxis, SweepSpec};

/// The cooling study baseline: 50 pg membrane, ω_m/2π = 1e5 Hz, r_c = 0.999,
/// Q = 1.2e7, L = 6.7 cm, κ = 0.047 ω_m, λ = 1064 nm, P = 50 μW, T = 0.4 K.
pub fn cooling_base() -> SystemConfig {
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

/// The response study baseline: 0.5 pg membrane, L = 7 cm, P = 61 μW,
/// κ = 0.051 ω_m, Q = 1.2e7, η₀ = 6.8e-7 (quoted directly, so the
/// mass/frequency formula is bypassed). The caption omits wavelength and
/// reflectivity; the cooling-study values (1064 nm, 0.999) fill the gaps.
pub fn response_base() -> SystemConfig {
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
        ldp_scale: 1.0,
    }
}

/// What a figure preset tabulates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FigureKind {
    /// Coupling profile f(n_b) against phonon number.
    CouplingProfile { r_c: f64, eta_eff: f64, n_max: u32, points: usize },
    /// Effective frequency and damping against probe frequency, at a fixed
    /// effective detuning (in units of ω_m), ω grid up to the given multiple
    /// of ω_m.
    Response { delta_over_omega_m: f64, omega_max_over_omega_m: f64, points: usize },
    /// Full cooling pipeline against effective detuning.
    Cooling { sweep: SweepSpec },
}

/// One plotted curve: a config modifier on top of the preset base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Series {
    pub label: &'static str,
    pub ldp_scale: Option<f64>,
    pub reflectivity: Option<f64>,
}

impl Series {
    pub fn plain(label: &'static str) -> Self {
        Series { label, ldp_scale: None, reflectivity: None }
    }
    pub fn ldp(label: &'static str, scale: f64) -> Self {
        Series { label, ldp_scale: Some(scale), reflectivity: None }
    }
    pub fn refl(label: &'static str, r_c: f64) -> Self {
        Series { label, ldp_scale: None, reflectivity: Some(r_c) }
    }
    /// The base configuration with this series' modifier applied.
    pub fn apply(&self, base: &SystemConfig) -> SystemConfig {
        let mut cfg = base.clone();
        if let Some(s) = self.ldp_scale {
            cfg.ldp_scale = s;
        }
        if let Some(r) = self.reflectivity {
            cfg.reflectivity = r;
        }
        cfg
    }
}

#[derive(Debug, Clone)]
pub struct FigurePreset {
    pub name: &'static str,
    pub config: SystemConfig,
    pub kind: FigureKind,
    pub series: Vec<Series>,
    pub series_labels: &'static str,
}

fn delta_sweep() -> SweepSpec {
    SweepSpec {
        axis: SweepAxis::Delta,
        start: 0.5,
        stop: 3.0,
        points: 101,
        log_scale: false,
    }
}

pub fn all() -> Vec<FigurePreset> {
    vec![
        FigurePreset {
            name: "fig2a",
            config: cooling_base(),
            kind: FigureKind::CouplingProfile {
                r_c: 0.99,
                eta_eff: 8.0e-5,
                n_max: 200_000,
                points: 401,
            },
            series: vec![Series::plain("r_c=0.99, 8*eta0")],
            series_labels: "single curve: r_c = 0.99, LDP = 8 x 1e-5",
        },
        FigurePreset {
            name: "fig2b",
            config: cooling_base(),
            kind: FigureKind::CouplingProfile {
                r_c: 0.9,
                eta_eff: 1.0e-9,
                n_max: 200_000,
                points: 401,
            },
            series: vec![Series::plain("r_c=0.9, 1e-4*eta0")],
            series_labels: "single curve: r_c = 0.9, LDP = 1e-4 x 1e-5",
        },
        FigurePreset {
            name: "fig3a",
            config: response_base(),
            kind: FigureKind::Response {
                delta_over_omega_m: 1.0,
                omega_max_over_omega_m: 2.0,
                points: 501,
            },
            series: vec![
                Series::ldp("0.65*eta0", 0.65),
                Series::ldp("0.7*eta0", 0.70),
                Series::ldp("eta0", 1.0),
            ],
            series_labels: "effective frequency panel; LDP scalings 0.65 (red), 0.7 (green), 1.0 (blue)",
        },
        FigurePreset {
            name: "fig3b",
            config: response_base(),
            kind: FigureKind::Response {
                delta_over_omega_m: 1.0,
                omega_max_over_omega_m: 2.0,
                points: 501,
            },
            series: vec![
                Series::ldp("0.65*eta0", 0.65),
                Series::ldp("0.7*eta0", 0.70),
                Series::ldp("eta0", 1.0),
            ],
            series_labels: "effective damping panel; LDP scalings 0.65 (red), 0.7 (green), 1.0 (blue)",
        },
        FigurePreset {
            name: "fig4",
            config: cooling_base(),
            kind: FigureKind::Cooling { sweep: delta_sweep() },
            series: vec![
                Series::ldp("0.85*eta0", 0.85),
                Series::ldp("0.9*eta0", 0.90),
                Series::ldp("eta0", 1.0),
            ],
            series_labels: "position (red) and momentum (blue) variances; panels (a) 0.85, (b) 0.9, (c) 1.0 LDP scaling",
        },
        FigurePreset {
            name: "fig5a",
            config: cooling_base(),
            kind: FigureKind::Cooling { sweep: delta_sweep() },
            series: vec![
                Series::ldp("0.85*eta0", 0.85),
                Series::ldp("0.9*eta0", 0.90),
                Series::ldp("eta0", 1.0),
            ],
            series_labels: "phonon number; LDP scalings 0.85 (red), 0.9 (blue), 1.0 (green)",
        },
        FigurePreset {
            name: "fig5b",
            config: cooling_base(),
            kind: FigureKind::Cooling { sweep: delta_sweep() },
            series: vec![
                Series::refl("r_c=0.98", 0.98),
                Series::refl("r_c=0.99", 0.99),
                Series::refl("r_c=0.9999", 0.9999),
            ],
            series_labels: "phonon number; reflectivities 0.98 (red), 0.99 (blue), 0.9999 (green)",
        },
        FigurePreset {
            name: "fig6",
            config: cooling_base(),
            kind: FigureKind::Cooling { sweep: delta_sweep() },
            series: vec![
                Series::ldp("0.85*eta0", 0.85),
                Series::ldp("0.9*eta0", 0.90),
                Series::ldp("eta0", 1.0),
            ],
            series_labels: "effective temperature; LDP scalings 0.85 (red), 0.9 (blue), 1.0 (green)",
        },
    ]
}

pub fn find(name: &str) -> Option<FigurePreset> {
    all().into_iter().find(|p| p.name == name)
}
