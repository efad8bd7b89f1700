//! Observable spectra: incoherent intensity, quadrature noise, and the
//! analysis helpers (peaks, widths, squeezing intervals) used on top.
//!
//! The incoherent intensity spectrum is the C₊₋ entry of the fluctuation
//! matrix; the elastically scattered line carries weight |⟨σ₋⟩|² at ω = 0
//! and is reported separately rather than as a delta spike on the grid.
//!
//! The homodyne quadrature spectrum at local-oscillator phase θ combines the
//! four σ± corner entries at ±ω,
//!
//! ```text
//! S_θ(ω) = ¼ Re[ C₋₋(ω) e^{−2iθ} + C₊₋(ω) + C₊₋(−ω) + C₊₊(−ω) e^{2iθ} ],
//! ```
//!
//! normalized so the vacuum contributes +¼ per quadrature: any S_θ < 0 is
//! squeezing below the shot-noise floor, bounded below by −¼.  The two
//! canonical phases split the Mollow physics cleanly — θ = 0 probes the
//! in-phase (σ_x-like) component that feeds the central peak, θ = π/2 the
//! out-of-phase component that feeds the Rabi sidebands.

use crate::bloch::{fluctuation_spectra, SteadyState};
use crate::params::{FrequencyGrid, ModelParams};
use crate::{Error, Result};

/// Tolerance (relative to the spectrum scale) for the imaginary-part leak
/// allowed when taking the real part of a formally real spectrum.
pub const REALITY_REL_TOL: f64 = 1e-10;

/// Tabulated spectra over a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub omega: Vec<f64>,
    /// Incoherent intensity spectrum C₊₋(ω).
    pub intensity: Vec<f64>,
    /// Weight |⟨σ₋⟩|² of the coherent line at ω = 0 (not on the grid).
    pub coherent_weight: f64,
    /// Local-oscillator phases, one per quadrature column.
    pub thetas: Vec<f64>,
    /// Quadrature spectra, `quadratures[k][i]` = S_{θ_k}(ω_i).
    pub quadratures: Vec<Vec<f64>>,
}

/// A detected frequency interval over which a quadrature dips below zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SqueezingInterval {
    pub omega_start: f64,
    pub omega_end: f64,
    pub min_value: f64,
}

/// A local spectral maximum, refined by parabolic interpolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub omega: f64,
    pub height: f64,
}

/// Incoherent intensity spectrum on a grid, plus the coherent weight.
pub fn intensity_spectrum(
    p: &ModelParams,
    ss: &SteadyState,
    grid: &FrequencyGrid,
) -> Result<SpectrumTable> {
    let omega = grid.values();
    let mut intensity = Vec::with_capacity(omega.len());
    for &w in &omega {
        intensity.push(intensity_at(w, p, ss)?);
    }
    Ok(SpectrumTable {
        omega,
        intensity,
        coherent_weight: ss.coherent_weight(),
        thetas: Vec::new(),
        quadratures: Vec::new(),
    })
}

fn intensity_at(omega: f64, p: &ModelParams, ss: &SteadyState) -> Result<f64> {
    let c = fluctuation_spectra(omega, p, ss)?;
    let s = c.0[1][0];
    let scale = c.max_abs().max(1e-300);
    if s.im.abs() > REALITY_REL_TOL * scale {
        return Err(Error::NonConvergence(format!(
            "intensity spectrum not real at omega={omega}: Im={}",
            s.im
        )));
    }
    Ok(s.re)
}

/// Quadrature spectra S_θ(ω) for each phase in `thetas`, with the intensity
/// column filled in alongside.
pub fn quadrature_spectrum(
    p: &ModelParams,
    ss: &SteadyState,
    grid: &FrequencyGrid,
    thetas: &[f64],
) -> Result<SpectrumTable> {
    let omega = grid.values();
    let mut intensity = Vec::with_capacity(omega.len());
    let mut quadratures = vec![Vec::with_capacity(omega.len()); thetas.len()];
    for &w in &omega {
        let c_pos = fluctuation_spectra(w, p, ss)?;
        let c_neg = fluctuation_spectra(-w, p, ss)?;
        let s = c_pos.0[1][0];
        let scale = c_pos.max_abs().max(1e-300);
        if s.im.abs() > REALITY_REL_TOL * scale {
            return Err(Error::NonConvergence(format!(
                "intensity spectrum not real at omega={w}: Im={}",
                s.im
            )));
        }
        intensity.push(s.re);
        for (k, &theta) in thetas.iter().enumerate() {
            quadratures[k].push(quadrature_from_entries(&c_pos, &c_neg, theta));
        }
    }
    Ok(SpectrumTable {
        omega,
        intensity,
        coherent_weight: ss.coherent_weight(),
        thetas: thetas.to_vec(),
        quadratures,
    })
}

fn quadrature_from_entries(
    c_pos: &crate::bloch::CMat3,
    c_neg: &crate::bloch::CMat3,
    theta: f64,
) -> f64 {
    let phase = crate::C64::from_polar(1.0, -2.0 * theta);
    let combo = c_pos.0[0][0] * phase
        + c_pos.0[1][0]
        + c_neg.0[1][0]
        + c_neg.0[1][1] * phase.conj();
    0.25 * combo.re
}

/// Single-frequency quadrature value S_θ(ω).
pub fn quadrature_at(omega: f64, theta: f64, p: &ModelParams, ss: &SteadyState) -> Result<f64> {
    let c_pos = fluctuation_spectra(omega, p, ss)?;
    let c_neg = fluctuation_spectra(-omega, p, ss)?;
    Ok(quadrature_from_entries(&c_pos, &c_neg, theta))
}

/// Find the maximal intervals where `values` dips below zero (beyond a small
/// tolerance proportional to the data scale), with linearly interpolated
/// zero-crossing endpoints.
pub fn detect_squeezing(omega: &[f64], values: &[f64]) -> Vec<SqueezingInterval> {
    assert_eq!(omega.len(), values.len());
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tol = 1e-12 * scale;
    let mut out = Vec::new();
    let mut i = 0;
    while i < values.len() {
        if values[i] < -tol {
            // entering a squeezing window; interpolate the left crossing
            let start = if i == 0 {
                omega[0]
            } else {
                cross(omega[i - 1], values[i - 1], omega[i], values[i])
            };
            let mut min_value = values[i];
            let mut j = i;
            while j + 1 < values.len() && values[j + 1] < -tol {
                j += 1;
                min_value = min_value.min(values[j]);
            }
            let end = if j + 1 == values.len() {
                omega[j]
            } else {
                cross(omega[j], values[j], omega[j + 1], values[j + 1])
            };
            out.push(SqueezingInterval {
                omega_start: start,
                omega_end: end,
                min_value,
            });
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

fn cross(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    if (y1 - y0).abs() < 1e-300 {
        0.5 * (x0 + x1)
    } else {
        x0 - y0 * (x1 - x0) / (y1 - y0)
    }
}

/// Interior local maxima of a sampled spectrum, each refined by fitting a
/// parabola through the three points around the sample maximum.
pub fn peak_analysis(omega: &[f64], values: &[f64]) -> Vec<Peak> {
    assert_eq!(omega.len(), values.len());
    let mut peaks = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        if values[i] > values[i - 1] && values[i] >= values[i + 1] {
            let (ym, y0, yp) = (values[i - 1], values[i], values[i + 1]);
            let denom = ym - 2.0 * y0 + yp;
            let (delta, height) = if denom.abs() < 1e-300 {
                (0.0, y0)
            } else {
                let d = 0.5 * (ym - yp) / denom;
                (d, y0 - 0.25 * (ym - yp) * d)
            };
            let h = omega[i + 1] - omega[i];
            peaks.push(Peak {
                omega: omega[i] + delta * h,
                height,
            });
        }
    }
    peaks
}

/// Full width at half maximum of the dominant peak, with linearly
/// interpolated half-height crossings on both flanks.
///
/// Returns `None` if either flank never falls below half maximum inside the
/// sampled window.
pub fn fwhm(omega: &[f64], values: &[f64]) -> Option<f64> {
    assert_eq!(omega.len(), values.len());
    if omega.len() < 3 {
        return None;
    }
    let (i_max, &v_max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())?;
    let half = 0.5 * v_max;
    // walk left from the peak to the first sample below half max
    let mut left = None;
    for i in (0..i_max).rev() {
        if values[i] < half {
            left = Some(cross_level(omega[i], values[i], omega[i + 1], values[i + 1], half));
            break;
        }
    }
    let mut right = None;
    for i in i_max + 1..values.len() {
        if values[i] < half {
            right = Some(cross_level(omega[i - 1], values[i - 1], omega[i], values[i], half));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some(r - l),
        _ => None,
    }
}

fn cross_level(x0: f64, y0: f64, x1: f64, y1: f64, level: f64) -> f64 {
    if (y1 - y0).abs() < 1e-300 {
        0.5 * (x0 + x1)
    } else {
        x0 + (level - y0) * (x1 - x0) / (y1 - y0)
    }
}
