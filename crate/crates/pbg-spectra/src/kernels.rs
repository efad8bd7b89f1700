//! Reservoir memory kernels in the frequency domain.
//!
//! For the anisotropic bandedge the two kernels have closed forms
//!
//! ```text
//! g̃(ω)  = −i β^{3/2} / (√ω_c + √(ω_c − ω_a − ω))
//! g̃c(ω) = conj(g̃(−ω)) = +i β^{3/2} / (√ω_c + conj √(ω_c − ω_a + ω))
//! ```
//!
//! with the square root of a negative radicand continued from below the real
//! axis, `√(x < 0) := −i √|x|`.  That branch is the boundary value of the
//! causal (upper-half-plane analytic) kernel and is what keeps the damping
//! passive: `Re g̃(ω) = β^{3/2} √(ω + ω_a − ω_c) / (ω + ω_a) ≥ 0` above the
//! edge and exactly zero inside the gap, where the kernel is purely reactive.
//! The mirrored kernel g̃c necessarily uses the conjugate continuation — that
//! is forced by g̃c(ω) = conj(g̃(−ω)), which the closed forms satisfy exactly.
//!
//! `|g̃|` peaks at the edge and falls to half its maximum over a full width
//! of 4ω_c when the atom sits exactly at the edge — the memory bandwidth
//! grows with ω_c, which is what justifies treating deep-band atoms
//! Markovianly and near-edge atoms not.

use crate::params::{CouplingParams, ModelParams, ReservoirMode};
use crate::{Result, C64};

/// Branch convention used for the square roots in the closed-form kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchRule {
    /// `√(x < 0) := −i √|x|` (continuation from below the cut).
    ContinuationFromBelow,
}

/// √x continued from below the branch cut: √x for x ≥ 0, −i√|x| for x < 0.
#[inline]
pub(crate) fn sqrt_from_below(x: f64) -> C64 {
    if x >= 0.0 {
        C64::new(x.sqrt(), 0.0)
    } else {
        C64::new(0.0, -(-x).sqrt())
    }
}

/// Anisotropic bandedge density of states `D(ω) = A^{-3/2} √(ω−ω_c) Θ(ω−ω_c)`.
pub fn dos_anisotropic(omega: f64, omega_c: f64, curvature: f64) -> f64 {
    if omega <= omega_c {
        0.0
    } else {
        (omega - omega_c).sqrt() / curvature.powf(1.5)
    }
}

/// Coupling scale from the microscopic constants:
/// β = (ω_a² d² η / (6 ħ ε₀ π A^{3/2}))^{2/3}.
pub fn compute_beta(cp: &CouplingParams) -> Result<f64> {
    cp.validate()?;
    let beta_32 = cp.omega_a * cp.omega_a * cp.dipole * cp.dipole * cp.eta
        / (6.0 * cp.hbar * cp.epsilon0 * std::f64::consts::PI * cp.curvature.powf(1.5));
    Ok(beta_32.powf(2.0 / 3.0))
}

/// Memory kernel g̃(ω) damping the σ₋ equation (units of β; β ≡ 1).
///
/// In Markovian mode this degenerates to the flat kernel Γ/2.
pub fn kernel_g(omega: f64, p: &ModelParams) -> C64 {
    match p.mode {
        ReservoirMode::Markovian { gamma } => kernel_markovian(gamma),
        ReservoirMode::Bandgap => {
            let radicand = p.omega_c - p.omega_a - omega;
            -C64::i() / (C64::new(p.omega_c.sqrt(), 0.0) + sqrt_from_below(radicand))
        }
    }
}

/// Mirrored kernel g̃c(ω) damping the σ₊ equation; equals `conj(g̃(−ω))`.
pub fn kernel_gc(omega: f64, p: &ModelParams) -> C64 {
    match p.mode {
        ReservoirMode::Markovian { gamma } => kernel_markovian(gamma),
        ReservoirMode::Bandgap => {
            let radicand = p.omega_c - p.omega_a + omega;
            C64::i() / (C64::new(p.omega_c.sqrt(), 0.0) + sqrt_from_below(radicand).conj())
        }
    }
}

/// Flat free-space kernel Γ/2 (frequency independent).
pub fn kernel_markovian(gamma: f64) -> C64 {
    C64::new(0.5 * gamma, 0.0)
}

/// Two-sided noise strength K̃(ω) = 2 Re g̃(ω); the common factor in every
/// nonvanishing reservoir-noise correlation.  Zero inside the gap.
pub fn noise_strength(omega: f64, p: &ModelParams) -> f64 {
    2.0 * kernel_g(omega, p).re
}

/// Both kernels tabulated on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPair {
    pub omega: Vec<f64>,
    pub g: Vec<C64>,
    pub gc: Vec<C64>,
    pub branch_rule: BranchRule,
}

impl KernelPair {
    pub fn evaluate(p: &ModelParams, grid: &crate::params::FrequencyGrid) -> KernelPair {
        let omega = grid.values();
        let g = omega.iter().map(|&w| kernel_g(w, p)).collect();
        let gc = omega.iter().map(|&w| kernel_gc(w, p)).collect();
        KernelPair {
            omega,
            g,
            gc,
            branch_rule: BranchRule::ContinuationFromBelow,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use proptest::prelude::*;

    fn bg(omega_c: f64, omega_a: f64) -> ModelParams {
        ModelParams::bandgap(omega_c, omega_a, 0.25).unwrap()
    }

    #[test]
    fn dos_vanishes_in_gap_and_matches_sqrt_above() {
        assert_eq!(dos_anisotropic(99.0, 100.0, 1.0), 0.0);
        assert_eq!(dos_anisotropic(100.0, 100.0, 1.0), 0.0);
        assert!((dos_anisotropic(104.0, 100.0, 1.0) - 2.0).abs() < 1e-15);
        // curvature enters as A^{-3/2}
        assert!((dos_anisotropic(104.0, 100.0, 4.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn beta_from_unit_constants() {
        let cp = CouplingParams {
            omega_a: 1.0,
            dipole: 1.0,
            eta: 1.0,
            curvature: 1.0,
            hbar: 1.0,
            epsilon0: 1.0,
        };
        let expect = (1.0 / (6.0 * std::f64::consts::PI)).powf(2.0 / 3.0);
        assert!((compute_beta(&cp).unwrap() - expect).abs() < 1e-15);

        // doubling the dipole quadruples β^{3/2}
        let cp2 = CouplingParams { dipole: 2.0, ..cp };
        let ratio = compute_beta(&cp2).unwrap() / compute_beta(&cp).unwrap();
        assert!((ratio - 4.0f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn kernel_at_edge_atom() {
        // atom exactly at the edge: g̃(0) = −i/√ω_c
        let p = bg(100.0, 100.0);
        let g0 = kernel_g(0.0, &p);
        assert!((g0 - C64::new(0.0, -0.1)).norm() < 1e-15);

        // deep in the gap: purely imaginary, radicand positive
        let g = kernel_g(-75.0, &p);
        let expect = -C64::i() / C64::new(10.0 + 75.0f64.sqrt(), 0.0);
        assert!((g - expect).norm() < 1e-15);
        assert_eq!(g.re, 0.0);
    }

    #[test]
    fn kernel_above_edge_value() {
        // ω + ω_a − ω_c = 300: g̃ = (√300 − 10i)/400
        let p = bg(100.0, 100.0);
        let g = kernel_g(300.0, &p);
        let expect = C64::new(300.0f64.sqrt() / 400.0, -10.0 / 400.0);
        assert!((g - expect).norm() < 1e-15);
        assert!((g.re - 0.043301270189221936).abs() < 1e-15);
        assert!((g.im + 0.025).abs() < 1e-15);
    }

    #[test]
    fn mirrored_kernel_values() {
        let p = bg(100.0, 100.0);
        let gc = kernel_gc(-300.0, &p);
        let expect = kernel_g(300.0, &p).conj();
        assert!((gc - expect).norm() == 0.0);
        assert!((gc - C64::new(0.043301270189221936, 0.025)).norm() < 1e-15);
    }

    #[test]
    fn markovian_kernel_is_flat() {
        assert_eq!(kernel_markovian(1.0), C64::new(0.5, 0.0));
        let p = ModelParams::markovian(2.0, 0.1).unwrap();
        for w in [-10.0, 0.0, 3.7] {
            assert_eq!(kernel_g(w, &p), C64::new(1.0, 0.0));
            assert_eq!(kernel_gc(w, &p), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn fwhm_of_kernel_magnitude_is_four_omega_c() {
        // with ω_a = ω_c the analytic half-max points are ω = −ω_c and 3ω_c
        for omega_c in [1.0, 10.0, 100.0] {
            let p = bg(omega_c, omega_c);
            let peak = kernel_g(0.0, &p).norm();
            let lo = kernel_g(-omega_c, &p).norm();
            let hi = kernel_g(3.0 * omega_c, &p).norm();
            assert!((lo - 0.5 * peak).abs() < 1e-12 * peak);
            assert!((hi - 0.5 * peak).abs() < 1e-12 * peak);
        }
    }

    proptest! {
        // passivity: Re g̃ ≥ 0 everywhere, exactly 0 inside the gap
        #[test]
        fn passivity_and_gap_nulling(
            omega_c in 1e-3f64..1e3,
            offset in 0.0f64..50.0,
            omega in -2e3f64..2e3,
        ) {
            let p = bg(omega_c, omega_c + offset);
            let g = kernel_g(omega, &p);
            let gc = kernel_gc(omega, &p);
            prop_assert!(g.re >= 0.0);
            prop_assert!(gc.re >= 0.0);
            if omega < omega_c - p.omega_a {
                prop_assert_eq!(g.re, 0.0);
            }
            if -omega < omega_c - p.omega_a {
                prop_assert_eq!(gc.re, 0.0);
            }
        }

        // g̃c(ω) = conj(g̃(−ω)) to machine precision
        #[test]
        fn conjugate_mirror(
            omega_c in 1e-3f64..1e3,
            offset in 0.0f64..50.0,
            omega in -2e3f64..2e3,
        ) {
            let p = bg(omega_c, omega_c + offset);
            let diff = (kernel_gc(omega, &p) - kernel_g(-omega, &p).conj()).norm();
            prop_assert!(diff <= 1e-14 * kernel_gc(omega, &p).norm().max(1e-300));
        }

        // density-of-states consistency: above the edge the dissipative part
        // satisfies Re g̃(ω) = √(ω + ω_a − ω_c)/(ω + ω_a)
        #[test]
        fn dissipation_matches_dos(
            omega_c in 1e-3f64..1e3,
            offset in 0.0f64..50.0,
            above in 1e-6f64..1e3,
        ) {
            let p = bg(omega_c, omega_c + offset);
            let omega = omega_c - p.omega_a + above; // ω + ω_a = ω_c + above
            let g = kernel_g(omega, &p);
            let expect = above.sqrt() / (omega_c + above);
            prop_assert!((g.re - expect).abs() <= 1e-10 * expect.max(1e-300));
        }
    }
}
