//! Fluorescence near a photonic bandedge: sideband suppression/enhancement.
//!
//! The atom is driven at resonance (Ω = 0.25β) with its line a small offset
//! Δ = ω_a − ω_c above the edge of an anisotropic bandgap (ω_c = 100β).
//! Detector frequencies below the edge see no propagating modes, so the
//! spectrum vanishes identically for ω < ω_c − ω_a = −Δ.  As the line moves
//! toward the edge the lower Rabi sideband loses its mode supply: its height
//! relative to the upper sideband falls monotonically until it disappears
//! into the sharp edge remnant, while the upper sideband keeps growing.
//!
//! Writes `bandgap_spectrum_offset_0.5.csv` for the Δ = 0.5β case.

use pbg_spectra::spectra::{intensity_spectrum, peak_analysis};
use pbg_spectra::{steady_state, FrequencyGrid, ModelParams};

fn main() -> pbg_spectra::Result<()> {
    let omega_c = 100.0;
    let rabi = 0.25;
    let grid = FrequencyGrid::new(-2.0, 2.0, 2001)?;

    println!("edge offset sweep (omega_c = {omega_c} beta, rabi = {rabi} beta):");
    println!("  delta   lower peak (omega, height)   upper peak (omega, height)   lower/upper");
    for &delta in &[2.0, 1.5, 1.0, 0.75, 0.5, 0.35, 0.25] {
        let p = ModelParams::bandgap(omega_c, omega_c + delta, rabi)?;
        let ss = steady_state(&p)?;
        let t = intensity_spectrum(&p, &ss, &grid)?;
        let peaks = peak_analysis(&t.omega, &t.intensity);
        let lower = peaks.iter().filter(|pk| pk.omega < -0.1).max_by(|a, b| a.height.total_cmp(&b.height));
        let upper = peaks.iter().filter(|pk| pk.omega > 0.1).max_by(|a, b| a.height.total_cmp(&b.height));
        match (lower, upper) {
            (Some(l), Some(u)) => println!(
                "  {delta:5.2}   ({:+.4}, {:9.4})            ({:+.4}, {:9.4})            {:.4}",
                l.omega, l.height, u.omega, u.height, l.height / u.height
            ),
            (None, Some(u)) => println!("  {delta:5.2}   (suppressed)                 ({:+.4}, {:9.4})", u.omega, u.height),
            _ => unreachable!("upper sideband always survives"),
        }
    }

    // the Δ = 0.5 case in full, with the exact gap nulling below −Δ
    let delta = 0.5;
    let p = ModelParams::bandgap(omega_c, omega_c + delta, rabi)?;
    let ss = steady_state(&p)?;
    let t = intensity_spectrum(&p, &ss, &grid)?;
    let in_gap_max = t
        .omega
        .iter()
        .zip(&t.intensity)
        .filter(|(w, _)| **w < -delta)
        .map(|(_, v)| v.abs())
        .fold(0.0f64, f64::max);
    println!("\ndelta = {delta}: max intensity below the edge = {in_gap_max:.3e} (gap is dark)");

    let echo = vec![
        ("edge_offset".to_string(), format!("{delta}")),
        ("omega_c".to_string(), format!("{omega_c}")),
        ("rabi".to_string(), format!("{rabi}")),
    ];
    let path = std::path::Path::new("bandgap_spectrum_offset_0.5.csv");
    pbg_spectra::output::write_spectrum_csv(path, &t, &echo)?;
    println!("wrote {}", path.display());
    Ok(())
}
