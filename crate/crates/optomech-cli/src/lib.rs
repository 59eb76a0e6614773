//! Command-line front end for the optomech library: figure presets, sweep
//! runners, CSV emission, and the self-validation battery. The binary in
//! `main.rs` is a thin clap dispatcher over these modules.

pub mod output;
pub mod presets;
pub mod runner;
pub mod validate;
