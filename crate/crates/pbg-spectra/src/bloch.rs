//! Steady state and linearized fluctuation dynamics of the driven atom.
//!
//! The optical Bloch vector ⟨(σ₋, σ₊, σ_z)⟩ relaxes under the memory kernels
//! toward a steady state fixed by the balance of drive and dissipation.
//! Writing σ_a = ⟨σ_a⟩ + δσ_a, the fluctuations obey a linear system whose
//! frequency-domain response matrix is
//!
//! ```text
//!          ⎛ −iω + g̃(ω)        0            −iΩ/2 ⎞
//! M(ω)  =  ⎜     0         −iω + g̃c(ω)      +iΩ/2 ⎟
//!          ⎝   −iΩ            +iΩ       −iω + g̃ + g̃c ⎠
//! ```
//!
//! and the stationary fluctuation spectra follow from the regression-like
//! formula C(ω) = M⁻¹(ω) · N(ω) · M⁻¹(−ω)ᵀ, where N collects the reservoir
//! noise densities.  Every entry of N carries the common factor
//! K̃(ω) = 2 Re g̃(ω), so all incoherent spectra vanish identically inside
//! the gap — the reservoir has no modes there to emit into.

use crate::kernels::{kernel_g, kernel_gc};
use crate::params::ModelParams;
use crate::{Error, Result, C64};

/// Relative determinant floor below which the response is declared singular.
pub const SINGULAR_DET_REL_TOL: f64 = 1e-14;

/// Absolute floor on the total dissipation 2 Re g̃(0) below which no steady
/// state exists (the atom at/inside the gap edge never decays).
pub const SINGULAR_DISSIPATION_TOL: f64 = 1e-10;

/// Complex 3-vector in the (σ₋, σ₊, σ_z) basis.
pub type CVec3 = [C64; 3];

/// Dense complex 3×3 matrix with just enough linear algebra for this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat3(pub [[C64; 3]; 3]);

/// Frequency-domain response matrix M(ω).
pub type ResponseMatrix = CMat3;

/// Two-sided reservoir noise density matrix N(ω).
pub type NoiseDensityMatrix = CMat3;

impl CMat3 {
    pub fn zero() -> CMat3 {
        CMat3([[C64::new(0.0, 0.0); 3]; 3])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry magnitude; sets the scale for the singularity test.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Cofactor inverse; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<CMat3> {
        let m = &self.0;
        let det = self.det();
        if det == C64::new(0.0, 0.0) {
            return None;
        }
        let c = |r1: usize, c1: usize, r2: usize, c2: usize| m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
        // adjugate = transposed cofactor matrix
        let adj = [
            [c(1, 1, 2, 2), -c(0, 1, 2, 2), c(0, 1, 1, 2)],
            [-c(1, 0, 2, 2), c(0, 0, 2, 2), -c(0, 0, 1, 2)],
            [c(1, 0, 2, 1), -c(0, 0, 2, 1), c(0, 0, 1, 1)],
        ];
        let mut out = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = adj[i][j] / det;
            }
        }
        Some(out)
    }

    pub fn mul(&self, rhs: &CMat3) -> CMat3 {
        let mut out = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..3 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &CVec3) -> CVec3 {
        let mut out = [C64::new(0.0, 0.0); 3];
        for i in 0..3 {
            for k in 0..3 {
                out[i] += self.0[i][k] * v[k];
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat3 {
        let mut out = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }
}

/// Stationary Bloch vector of the driven atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub s_minus: C64,
    pub s_plus: C64,
    pub s_z: C64,
}

impl SteadyState {
    /// Excited-state population (1 + ⟨σ_z⟩)/2.
    pub fn excited_population(&self) -> f64 {
        0.5 * (1.0 + self.s_z.re)
    }

    /// Weight of the coherent (elastically scattered) line, |⟨σ₋⟩|².
    pub fn coherent_weight(&self) -> f64 {
        self.s_minus.norm_sqr()
    }
}

/// Solve the stationary Bloch equations at exact resonance.
///
/// With g₀ = g̃(0) and g̃c(0) = conj(g₀):
///
/// ```text
/// s_z = −2 g₀ g₀* / (2 g₀ g₀* + Ω²),   s₋ = (iΩ/2) s_z / g₀,   s₊ = s₋*.
/// ```
///
/// Fails with [`Error::SingularSteadyState`] when the dissipation
/// 2 Re g̃(0) is below [`SINGULAR_DISSIPATION_TOL`]: an atom whose lab
/// frequency sits inside (or exactly at) the gap edge keeps oscillating
/// forever and has no unique stationary point.
pub fn steady_state(p: &ModelParams) -> Result<SteadyState> {
    p.validate()?;
    let g0 = kernel_g(0.0, p);
    let gc0 = kernel_gc(0.0, p);
    let dissipation = (g0 + gc0).re;
    if dissipation <= SINGULAR_DISSIPATION_TOL {
        return Err(Error::SingularSteadyState {
            dissipation,
            tol: SINGULAR_DISSIPATION_TOL,
        });
    }
    let omega_r = p.rabi;
    let two_g_gc = 2.0 * g0 * gc0;
    let s_z = -two_g_gc / (two_g_gc + C64::new(omega_r * omega_r, 0.0));
    let s_minus = C64::new(0.0, 0.5 * omega_r) * s_z / g0;
    let s_plus = s_minus.conj();
    Ok(SteadyState { s_minus, s_plus, s_z })
}

/// Response matrix M(ω) = −iω I − L of the linearized fluctuation system.
pub fn response_matrix(omega: f64, p: &ModelParams) -> ResponseMatrix {
    let g = kernel_g(omega, p);
    let gc = kernel_gc(omega, p);
    let miw = C64::new(0.0, -omega);
    let z = C64::new(0.0, 0.0);
    let half_rabi = C64::new(0.0, 0.5 * p.rabi);
    let rabi = C64::new(0.0, p.rabi);
    CMat3([
        [miw + g, z, -half_rabi],
        [z, miw + gc, half_rabi],
        [-rabi, rabi, miw + g + gc],
    ])
}

/// Two-sided noise density matrix N(ω) in the (σ₋, σ₊, σ_z) basis.
///
/// The only nonvanishing entries follow from normal ordering of the
/// reservoir forces against the Pauli algebra,
///
/// ```text
/// N₋₊ = K̃,   N₋z = 2 s₋ K̃,   Nz₊ = 2 s₊ K̃,   Nzz = 2 (1 + s_z) K̃,
/// ```
///
/// with K̃(ω) = 2 Re g̃(ω).  Every entry inherits the gap nulling of K̃.
pub fn noise_density(omega: f64, p: &ModelParams, ss: &SteadyState) -> NoiseDensityMatrix {
    let k = 2.0 * kernel_g(omega, p).re;
    let mut n = CMat3::zero();
    n.0[0][1] = C64::new(k, 0.0);
    n.0[0][2] = 2.0 * ss.s_minus * k;
    n.0[2][1] = 2.0 * ss.s_plus * k;
    n.0[2][2] = 2.0 * (C64::new(1.0, 0.0) + ss.s_z) * k;
    n
}

/// Full 3×3 fluctuation spectrum matrix C(ω) = M⁻¹(ω) N(ω) M⁻¹(−ω)ᵀ.
///
/// Entry C[1][0] = C₊₋(ω) is the incoherent intensity spectrum; the four
/// corner entries feed the quadrature spectra.  Fails with
/// [`Error::SingularResponse`] when |det M| falls below
/// `SINGULAR_DET_REL_TOL · max|M|³` at either ±ω.
pub fn fluctuation_spectra(omega: f64, p: &ModelParams, ss: &SteadyState) -> Result<CMat3> {
    let m_pos = response_matrix(omega, p);
    let m_neg = response_matrix(-omega, p);
    let inv_pos = invert_response(omega, &m_pos)?;
    let inv_neg = invert_response(-omega, &m_neg)?;
    let n = noise_density(omega, p, ss);
    Ok(inv_pos.mul(&n).mul(&inv_neg.transpose()))
}

fn invert_response(omega: f64, m: &CMat3) -> Result<CMat3> {
    let scale = m.max_abs();
    let det = m.det();
    let floor = SINGULAR_DET_REL_TOL * scale * scale * scale;
    if det.norm() < floor {
        return Err(Error::SingularResponse {
            omega,
            det: det.norm(),
            tol: floor,
        });
    }
    Ok(m.inverse().expect("determinant above floor"))
}
