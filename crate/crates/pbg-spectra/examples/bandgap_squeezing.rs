//! In-phase squeezing near the bandedge — the colored-reservoir surprise.
//!
//! In free space at Ω = 0.25Γ the in-phase quadrature S_0 is positive
//! everywhere; squeezing lives out of phase and only at line center.  Near
//! a bandedge the roles change: with ω_c = 100β, Δ = ω_a − ω_c = 0.5β and
//! the same drive, S_0 develops negative windows at *both* Rabi sidebands,
//! and their depth (≈ −0.65) even passes the flat-vacuum bound of −1/4 —
//! legitimately, because the vacuum level itself is weighted by the edge
//! density of states and no longer flat.  The intensity spectrum vanishes
//! identically inside the gap; the quadrature spectra keep a small tail
//! there because S_θ(ω) pairs the ±ω sidebands of the local oscillator and
//! the +ω partner still sees propagating modes.
//!
//! Writes `bandgap_squeezing.csv` with S_0 and S_{π/2} on the plotted grid.

use pbg_spectra::spectra::{detect_squeezing, intensity_spectrum, peak_analysis, quadrature_spectrum};
use pbg_spectra::{steady_state, FrequencyGrid, ModelParams};

fn main() -> pbg_spectra::Result<()> {
    let (omega_c, delta, rabi) = (100.0, 0.5, 0.25);
    let p = ModelParams::bandgap(omega_c, omega_c + delta, rabi)?;
    let ss = steady_state(&p)?;
    let grid = FrequencyGrid::new(-2.0, 2.0, 2001)?;

    let it = intensity_spectrum(&p, &ss, &grid)?;
    let peaks = peak_analysis(&it.omega, &it.intensity);
    print!("intensity peaks:");
    for pk in &peaks {
        print!("  ({:+.4}, {:.2})", pk.omega, pk.height);
    }
    println!();

    let thetas = [0.0, std::f64::consts::FRAC_PI_2];
    let q = quadrature_spectrum(&p, &ss, &grid, &thetas)?;
    for (k, name) in [(0usize, "S_0"), (1, "S_pi/2")] {
        let windows = detect_squeezing(&q.omega, &q.quadratures[k]);
        let min = q.quadratures[k].iter().cloned().fold(f64::INFINITY, f64::min);
        print!("{name:7} min = {min:+.4e}, squeezing windows:");
        if windows.is_empty() {
            print!("  none");
        }
        for w in &windows {
            print!("  [{:+.4}, {:+.4}]", w.omega_start, w.omega_end);
        }
        println!();
    }
    println!("\nboth S_0 windows straddle the Rabi sidebands at ±0.269; the");
    println!("spectral weight that free space keeps out of phase has moved in");
    println!("phase.  (The two windows are mirror images: at exact resonance");
    println!("the quadrature spectrum is an even function of omega, because");
    println!("its anomalous terms pair +omega with -omega.)");

    let echo = vec![
        ("edge_offset".to_string(), format!("{delta}")),
        ("omega_c".to_string(), format!("{omega_c}")),
        ("rabi".to_string(), format!("{rabi}")),
    ];
    let path = std::path::Path::new("bandgap_squeezing.csv");
    pbg_spectra::output::write_spectrum_csv(path, &q, &echo)?;
    println!("wrote {}", path.display());
    Ok(())
}
