//! Deterministic file emission: CSV tables, JSON reports, SVG line plots.
//!
//! Identical inputs must produce byte-identical files, so every float is
//! printed through one fixed formatter (scientific, 17 significant digits),
//! line endings are always `\n`, and key-value metadata is emitted in
//! sorted order.  Each CSV starts with a `#` comment carrying the crate
//! version, the unit convention, and the full effective configuration.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::kernels::KernelPair;
use crate::spectra::{SpectrumTable, SqueezingInterval};
use crate::Result;

/// Fixed float formatting: scientific with 17 significant digits, enough to
/// round-trip any f64 and stable across runs.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// The `#` comment line carried by every CSV: version, unit statement, and
/// the sorted effective configuration.
pub fn comment_line(echo: &[(String, String)]) -> String {
    let mut line = format!(
        "# pbg-spectra v{} | frequencies and rates in units of beta; omega is detector offset from the drive",
        crate::VERSION
    );
    for (k, v) in echo {
        let _ = write!(line, " | {k}={v}");
    }
    line
}

/// Kernel profile table: ω, Re g̃, Im g̃, |g̃|, arg g̃.
pub fn write_kernel_csv(path: &Path, pair: &KernelPair, echo: &[(String, String)]) -> Result<()> {
    let mut text = String::new();
    text.push_str(&comment_line(echo));
    text.push('\n');
    text.push_str("omega,re_g,im_g,abs_g,arg_g,re_gc,im_gc\n");
    for (i, &w) in pair.omega.iter().enumerate() {
        let g = pair.g[i];
        let gc = pair.gc[i];
        let row = [
            format_float(w),
            format_float(g.re),
            format_float(g.im),
            format_float(g.norm()),
            format_float(g.arg()),
            format_float(gc.re),
            format_float(gc.im),
        ];
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Spectrum table: ω, incoherent intensity, one column per quadrature angle.
/// The coherent (elastic) weight rides in the comment metadata.
pub fn write_spectrum_csv(
    path: &Path,
    table: &SpectrumTable,
    echo: &[(String, String)],
) -> Result<()> {
    let mut text = String::new();
    let mut meta = echo.to_vec();
    meta.push((
        "coherent_weight".to_string(),
        format_float(table.coherent_weight),
    ));
    for (k, &theta) in table.thetas.iter().enumerate() {
        meta.push((format!("theta_{k}"), format_float(theta)));
    }
    meta.sort();
    text.push_str(&comment_line(&meta));
    text.push('\n');
    text.push_str("omega,intensity");
    for k in 0..table.thetas.len() {
        let _ = write!(text, ",s_theta_{k}");
    }
    text.push('\n');
    for (i, &w) in table.omega.iter().enumerate() {
        text.push_str(&format_float(w));
        text.push(',');
        text.push_str(&format_float(table.intensity[i]));
        for q in &table.quadratures {
            text.push(',');
            text.push_str(&format_float(q[i]));
        }
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Serialize any report as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::Error::NonConvergence(format!("json serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Sidecar record of squeezing windows for one quadrature angle.
#[derive(Debug, Clone, Serialize)]
pub struct SqueezingRecord {
    pub theta: f64,
    pub intervals: Vec<SqueezingInterval>,
}

/// A single named series for the SVG plotter.
pub struct Series<'a> {
    pub label: &'a str,
    pub values: &'a [f64],
}

const PALETTE: [&str; 5] = ["#1f6fb4", "#c23b22", "#2e8b57", "#8253a8", "#b8860b"];

/// Minimal SVG 1.1 polyline plot: axes, zero line, legend, one polyline per
/// series.  Purely for visual regression; no external tooling involved.
pub fn write_svg(path: &Path, title: &str, x: &[f64], series: &[Series<'_>]) -> Result<()> {
    assert!(!x.is_empty());
    let (w, h) = (900.0, 540.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 45.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);

    let x_min = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &v in s.values {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    if y_min == y_max {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
    let sx = move |v: f64| ml + (v - x_min) / (x_max - x_min) * pw;
    let sy = move |v: f64| mt + (y_max - v) / (y_max - y_min) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" font-family=\"monospace\" font-size=\"13\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\">{}</text>",
        ml + pw / 2.0,
        title
    );
    // frame
    let _ = writeln!(
        s,
        "<rect x=\"{ml:.1}\" y=\"{mt:.1}\" width=\"{pw:.1}\" height=\"{ph:.1}\" fill=\"none\" stroke=\"black\"/>"
    );
    // zero line when visible
    if y_min < 0.0 && y_max > 0.0 {
        let y0 = sy(0.0);
        let _ = writeln!(
            s,
            "<line x1=\"{ml:.1}\" y1=\"{y0:.1}\" x2=\"{:.1}\" y2=\"{y0:.1}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>",
            ml + pw
        );
    }
    // ticks
    for k in 0..=4 {
        let fx = x_min + (x_max - x_min) * k as f64 / 4.0;
        let px = sx(fx);
        let _ = writeln!(
            s,
            "<line x1=\"{px:.1}\" y1=\"{:.1}\" x2=\"{px:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            mt + ph,
            mt + ph + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{px:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{fx:.3}</text>",
            mt + ph + 20.0
        );
        let fy = y_min + (y_max - y_min) * k as f64 / 4.0;
        let py = sy(fy);
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{py:.1}\" x2=\"{ml:.1}\" y2=\"{py:.1}\" stroke=\"black\"/>",
            ml - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{fy:.3}</text>",
            ml - 9.0,
            py + 4.0
        );
    }
    // series
    for (idx, ser) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut pts = String::new();
        for (i, &v) in ser.values.iter().enumerate() {
            let _ = write!(pts, "{:.2},{:.2} ", sx(x[i]), sy(v));
        }
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            pts.trim_end()
        );
        let ly = mt + 16.0 + 18.0 * idx as f64;
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            ml + 10.0,
            ml + 34.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>",
            ml + 40.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{FrequencyGrid, ModelParams};

    fn tmpdir() -> std::path::PathBuf {
        let d = std::env::temp_dir().join("pbg_output_test");
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn float_format_is_17_significant_digits() {
        assert_eq!(format_float(-0.25), "-2.5000000000000000e-1");
        assert_eq!(format_float(100.0), "1.0000000000000000e2");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
        // round-trips exactly
        let x = 0.1234567890123456789;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn kernel_csv_is_deterministic_and_headed() {
        let p = ModelParams::bandgap(100.0, 100.0, 0.25).unwrap();
        let grid = FrequencyGrid::new(-10.0, 10.0, 5).unwrap();
        let pair = KernelPair::evaluate(&p, &grid);
        let echo = vec![("mode".to_string(), "bandgap".to_string())];
        let d = tmpdir();
        let p1 = d.join("k1.csv");
        let p2 = d.join("k2.csv");
        write_kernel_csv(&p1, &pair, &echo).unwrap();
        write_kernel_csv(&p2, &pair, &echo).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        let text = String::from_utf8(b1).unwrap();
        let mut lines = text.lines();
        let comment = lines.next().unwrap();
        assert!(comment.starts_with("# pbg-spectra v"));
        assert!(comment.contains("units of beta"));
        assert!(comment.contains("mode=bandgap"));
        assert_eq!(
            lines.next().unwrap(),
            "omega,re_g,im_g,abs_g,arg_g,re_gc,im_gc"
        );
        assert_eq!(lines.count(), 5);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn svg_contains_polyline_per_series() {
        let d = tmpdir();
        let path = d.join("plot.svg");
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let a: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let b: Vec<f64> = x.iter().map(|v| v.cos()).collect();
        write_svg(
            &path,
            "test",
            &x,
            &[
                Series { label: "sin", values: &a },
                Series { label: "cos", values: &b },
            ],
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches("<polyline").count(), 2);
        assert!(text.contains("</svg>"));
    }
}
