//! Model parameters and frequency grids.
//!
//! Every frequency-like quantity (ω_a, ω_c, Ω, grid points, …) is expressed
//! in units of the coupling scale β, so β itself never enters the numerics;
//! it is carried along for bookkeeping and unit conversion at the I/O layer.

use crate::{Error, Result};

/// Reservoir seen by the dipole transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReservoirMode {
    /// Anisotropic photonic bandedge at `omega_c`: density of states
    /// `D(ω) = A^{-3/2} √(ω − ω_c) Θ(ω − ω_c)`, no modes below the edge.
    Bandgap,
    /// Flat free-space reservoir giving ordinary exponential decay at rate
    /// `gamma`; used as the Markovian reference limit.
    Markovian { gamma: f64 },
}

/// Physical configuration of the driven atom + reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Atomic transition frequency (absolute scale, units of β).
    pub omega_a: f64,
    /// Bandedge frequency (absolute scale, units of β).
    pub omega_c: f64,
    /// Coupling frequency scale.  All stored frequencies are multiples of it,
    /// so the numerics run with β ≡ 1; the value is kept for output headers.
    pub beta: f64,
    /// Rabi frequency Ω of the classical drive.
    pub rabi: f64,
    /// Drive detuning from the atomic line.  The linearized equations are
    /// derived at exact resonance, so this must be zero.
    pub detuning: f64,
    pub mode: ReservoirMode,
}

impl ModelParams {
    /// Bandgap-mode parameters with the atom at or above the edge.
    pub fn bandgap(omega_c: f64, omega_a: f64, rabi: f64) -> Result<Self> {
        let p = ModelParams {
            omega_a,
            omega_c,
            beta: 1.0,
            rabi,
            detuning: 0.0,
            mode: ReservoirMode::Bandgap,
        };
        p.validate()?;
        Ok(p)
    }

    /// Flat-reservoir parameters (free-space limit).
    pub fn markovian(gamma: f64, rabi: f64) -> Result<Self> {
        let p = ModelParams {
            omega_a: 0.0,
            omega_c: 0.0,
            beta: 1.0,
            rabi,
            detuning: 0.0,
            mode: ReservoirMode::Markovian { gamma },
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid("beta", "must be positive and finite"));
        }
        if !(self.rabi >= 0.0) || !self.rabi.is_finite() {
            return Err(Error::invalid("rabi", "must be >= 0 and finite"));
        }
        if self.detuning != 0.0 {
            return Err(Error::invalid(
                "detuning",
                "the linearized model is built at exact resonance; set detuning = 0",
            ));
        }
        match self.mode {
            ReservoirMode::Bandgap => {
                if !(self.omega_c > 0.0) || !self.omega_c.is_finite() {
                    return Err(Error::invalid("omega_c", "must be positive and finite"));
                }
                if !self.omega_a.is_finite() || self.omega_a < self.omega_c {
                    return Err(Error::invalid(
                        "omega_a",
                        "must satisfy omega_a >= omega_c (atom at or above the bandedge)",
                    ));
                }
            }
            ReservoirMode::Markovian { gamma } => {
                if !(gamma > 0.0) || !gamma.is_finite() {
                    return Err(Error::invalid("gamma", "must be positive and finite"));
                }
            }
        }
        Ok(())
    }

    /// Detuning of the atomic line above the bandedge, ω_a − ω_c.
    /// Zero in Markovian mode (no edge).
    pub fn edge_offset(&self) -> f64 {
        match self.mode {
            ReservoirMode::Bandgap => self.omega_a - self.omega_c,
            ReservoirMode::Markovian { .. } => 0.0,
        }
    }
}

/// Microscopic constants from which the coupling scale is assembled:
/// β^{3/2} = ω_a² d² η / (6 ħ ε₀ π A^{3/2}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    /// Atomic transition frequency ω_a.
    pub omega_a: f64,
    /// Dipole matrix element d.
    pub dipole: f64,
    /// Angular/orientation prefactor η from the sum over field polarizations.
    pub eta: f64,
    /// Bandedge curvature A of the dispersion ω_k = ω_c + A|k − k₀|².
    pub curvature: f64,
    pub hbar: f64,
    pub epsilon0: f64,
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_a", self.omega_a),
            ("dipole", self.dipole),
            ("eta", self.eta),
            ("curvature", self.curvature),
            ("hbar", self.hbar),
            ("epsilon0", self.epsilon0),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, "must be positive and finite"));
            }
        }
        Ok(())
    }
}

/// Uniform, inclusive frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
}

impl FrequencyGrid {
    pub fn new(omega_min: f64, omega_max: f64, n_points: usize) -> Result<Self> {
        if !omega_min.is_finite() || !omega_max.is_finite() || !(omega_min < omega_max) {
            return Err(Error::invalid(
                "omega_min/omega_max",
                "need finite omega_min < omega_max",
            ));
        }
        if n_points < 2 {
            return Err(Error::invalid("n_points", "need at least 2 grid points"));
        }
        Ok(FrequencyGrid {
            omega_min,
            omega_max,
            n_points,
        })
    }

    /// Grid symmetric about ω = 0.
    pub fn symmetric(half_width: f64, n_points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n_points)
    }

    pub fn step(&self) -> f64 {
        (self.omega_max - self.omega_min) / (self.n_points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n_points)
            .map(|i| self.omega_min + h * i as f64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_uniform_and_inclusive() {
        let g = FrequencyGrid::new(-1.0, 1.0, 5).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], -1.0);
        assert_eq!(v[4], 1.0);
        assert!((v[1] - (-0.5)).abs() < 1e-15);
        assert!((g.step() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn grid_rejects_degenerate_ranges() {
        assert!(FrequencyGrid::new(1.0, 1.0, 10).is_err());
        assert!(FrequencyGrid::new(2.0, 1.0, 10).is_err());
        assert!(FrequencyGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn bandgap_params_require_atom_at_or_above_edge() {
        assert!(ModelParams::bandgap(100.0, 100.0, 0.25).is_ok());
        assert!(ModelParams::bandgap(100.0, 99.9, 0.25).is_err());
        assert!(ModelParams::bandgap(-1.0, 1.0, 0.25).is_err());
    }

    #[test]
    fn detuning_must_vanish() {
        let mut p = ModelParams::bandgap(100.0, 100.5, 0.25).unwrap();
        p.detuning = 0.1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn markovian_params_require_positive_gamma() {
        assert!(ModelParams::markovian(1.0, 0.5).is_ok());
        assert!(ModelParams::markovian(0.0, 0.5).is_err());
        assert!(ModelParams::markovian(1.0, -0.5).is_err());
    }
}
