//! Resonance-fluorescence and squeezing spectra of a coherently driven
//! two-level atom whose dipole transition sits near the edge of a photonic
//! bandgap.
//!
//! The reservoir is an anisotropic bandedge with density of states
//! `D(ω) = A^{-3/2} √(ω − ω_c) Θ(ω − ω_c)`, which gives the atom a
//! structured (non-Markovian) memory kernel with a closed frequency-domain
//! form.  Atomic fluctuations around the driven steady state obey linear
//! equations with frequency-dependent damping and colored quantum noise;
//! inverting the 3×3 response per frequency yields the incoherent intensity
//! spectrum and the quadrature (squeezing) spectra.  A flat Markovian
//! reservoir is kept as a limit so every result can be checked against the
//! textbook Mollow/free-space expressions.
//!
//! Conventions used throughout:
//!
//! * all frequencies are in units of the coupling scale β (β ≡ 1 internally),
//! * ω is measured from the drive frequency (= atomic frequency; resonant
//!   drive), so an emitted photon at detector frequency ω_d appears at
//!   ω = ω_d − ω_a and the bandgap occupies ω < ω_c − ω_a,
//! * Fourier transform `x̃(ω) = ∫ dt e^{+iωt} x(t)`, hence d/dt → −iω.
//!
//! Runnable walkthroughs live in `examples/` (one per capability):
//!
//! ```text
//! cargo run --release --example kernel_profile      # memory kernel across the edge
//! cargo run --release --example mollow_triplet      # Markovian intensity spectrum
//! cargo run --release --example bandgap_spectrum    # sideband asymmetry near the edge
//! cargo run --release --example squeezing_threshold # free-space squeezing window
//! cargo run --release --example bandgap_squeezing   # in-phase squeezing near the edge
//! cargo run --release --example oracle_crosscheck   # independent numerical oracles
//! ```
//!
//! The same capabilities are scriptable through the thin `pbg-spectra` binary
//! (`kernel | steady | spectrum | quadrature | sweep | validate`).

pub use num_complex::Complex64 as C64;

pub mod bloch;
pub mod cli;
pub mod config;
pub mod kernels;
pub mod oracles;
pub mod output;
pub mod params;
pub mod spectra;

mod quad;
mod timekernel;

pub use bloch::{
    fluctuation_spectra, noise_density, response_matrix, steady_state, CMat3, CVec3,
    NoiseDensityMatrix, ResponseMatrix, SteadyState,
};
pub use kernels::{
    compute_beta, dos_anisotropic, kernel_g, kernel_gc, kernel_markovian, BranchRule, KernelPair,
};
pub use oracles::{
    kernel_numeric_oracle, markovian_reference, memory_bandwidth_ratio, recommended_max_dt,
    timedomain_means, IntegrationCtrl, MarkovianReference, Trajectory,
};
pub use params::{CouplingParams, FrequencyGrid, ModelParams, ReservoirMode};
pub use spectra::{
    detect_squeezing, fwhm, intensity_spectrum, peak_analysis, quadrature_at,
    quadrature_spectrum, Peak, SpectrumTable, SqueezingInterval,
};

/// Crate version stamped into every output file for provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors produced by parameter validation, the linear solves, and the
/// numerical oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: String, reason: String },

    /// The DC dissipation `Re[g̃(0) + g̃c(0)]` vanished: the atomic line sees
    /// no propagating modes and the driven steady state is not unique.
    #[error(
        "singular steady state: Re[g(0)+gc(0)] = {dissipation:.3e} <= {tol:.3e} \
         (transition decoupled from the propagating modes)"
    )]
    SingularSteadyState { dissipation: f64, tol: f64 },

    #[error("singular response matrix at omega = {omega}: |det M| = {det:.3e} < {tol:.3e}")]
    SingularResponse { omega: f64, det: f64, tol: f64 },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error(
        "time step too large: dt = {dt} but dt <= {max_dt} is needed to resolve \
         the fastest dynamical timescale"
    )]
    StepSizeTooLarge { dt: f64, max_dt: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
