//! Closed-form time-domain memory kernel and its first two antiderivative
//! moments, used by the history-integration oracle.
//!
//! The bandedge kernel has the exact form (β ≡ 1, Δ = ω_a − ω_c)
//!
//! ```text
//! G(τ) = e^{iΔτ}/√(iπτ) − √ω_c · e^{iω_a τ} · erfc(√(iω_c τ)),
//! ```
//!
//! with principal square roots.  The τ^{−1/2} divergence at the origin is
//! integrable, and both moments needed for product integration,
//!
//! ```text
//! H(T) = ∫₀ᵀ G(τ) dτ,    J(T) = ∫₀ᵀ τ G(τ) dτ,
//! ```
//!
//! also close in terms of complex error functions:
//!
//! ```text
//! H = P₁ (1 − ω_c/ω_a) − √ω_c (E − 1)/(iω_a)
//! J = A  (1 − ω_c/ω_a) − √ω_c E (T/(iω_a) + 1/ω_a²)
//!       + √ω_c/ω_a² − i ω_c P₁/ω_a²
//! ```
//!
//! where E = e^{iω_aT} erfc(√(iω_cT)), P₁ = ∫₀ᵀ e^{iΔτ}/√(iπτ) dτ and
//! A = ∫₀ᵀ τ e^{iΔτ}/√(iπτ) dτ.  P₁ and A use erf(√T √(−iΔ)) closed forms
//! away from Δ = 0 and a power series for |Δ|T < 1/2 where the closed forms
//! hit 0/0 cancellation.  The mirrored kernel is G_c(τ) = conj(G(τ)).

use errorfunctions::ComplexErrorFunctions;

use crate::C64;

/// Precomputed constants for one (ω_a, ω_c) pair.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TimeKernel {
    pub omega_a: f64,
    pub omega_c: f64,
    /// Detuning of the atom above the edge, Δ = ω_a − ω_c ≥ 0.
    pub delta: f64,
}

const SERIES_SWITCH: f64 = 0.5;

impl TimeKernel {
    pub fn new(omega_a: f64, omega_c: f64) -> TimeKernel {
        TimeKernel {
            omega_a,
            omega_c,
            delta: omega_a - omega_c,
        }
    }

    /// E(T) = e^{iω_aT} erfc(√(iω_cT)).
    fn big_e(&self, t: f64) -> C64 {
        let root = C64::new(0.0, self.omega_c * t).sqrt();
        C64::from_polar(1.0, self.omega_a * t) * root.erfc()
    }

    /// G(τ) for τ > 0.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn g(&self, tau: f64) -> C64 {
        debug_assert!(tau > 0.0);
        let free = C64::from_polar(1.0, self.delta * tau)
            / C64::new(0.0, std::f64::consts::PI * tau).sqrt();
        free - self.omega_c.sqrt() * self.big_e(tau)
    }

    /// Mirrored kernel G_c(τ) = conj(G(τ)).
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn gc(&self, tau: f64) -> C64 {
        self.g(tau).conj()
    }

    /// P₁(T) = ∫₀ᵀ e^{iΔτ}/√(iπτ) dτ.
    fn p1(&self, t: f64) -> C64 {
        let inv_sqrt_ipi = 1.0 / C64::new(0.0, std::f64::consts::PI).sqrt();
        if (self.delta * t).abs() < SERIES_SWITCH {
            // Σ_k (iΔT)^k/k! · √T/(k + ½)
            let x = C64::new(0.0, self.delta * t);
            let mut term = C64::new(1.0, 0.0);
            let mut sum = term / 0.5;
            for k in 1..40 {
                term *= x / k as f64;
                let add = term / (k as f64 + 0.5);
                sum += add;
                if add.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            inv_sqrt_ipi * t.sqrt() * sum
        } else {
            // (1/√(iπ)) √π erf(√T c)/c, c = √(−iΔ)
            let c = C64::new(0.0, -self.delta).sqrt();
            inv_sqrt_ipi * std::f64::consts::PI.sqrt() * (t.sqrt() * c).erf() / c
        }
    }

    /// A(T) = ∫₀ᵀ τ e^{iΔτ}/√(iπτ) dτ.
    fn a_int(&self, t: f64) -> C64 {
        let inv_sqrt_ipi = 1.0 / C64::new(0.0, std::f64::consts::PI).sqrt();
        if (self.delta * t).abs() < SERIES_SWITCH {
            let x = C64::new(0.0, self.delta * t);
            let mut term = C64::new(1.0, 0.0);
            let mut sum = term / 1.5;
            for k in 1..40 {
                term *= x / k as f64;
                let add = term / (k as f64 + 1.5);
                sum += add;
                if add.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            inv_sqrt_ipi * t * t.sqrt() * sum
        } else {
            let c = C64::new(0.0, -self.delta).sqrt();
            let i_delta = C64::new(0.0, self.delta);
            let term1 = t.sqrt() * C64::from_polar(1.0, self.delta * t) / i_delta;
            let term2 = std::f64::consts::PI.sqrt() / (2.0 * i_delta) * (t.sqrt() * c).erf() / c;
            inv_sqrt_ipi * (term1 - term2)
        }
    }

    /// Zeroth moment H(T) = ∫₀ᵀ G(τ) dτ; H(0) = 0, H(∞) = g̃(0).
    pub fn h_int(&self, t: f64) -> C64 {
        if t == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let i_omega_a = C64::new(0.0, self.omega_a);
        self.p1(t) * (1.0 - self.omega_c / self.omega_a)
            - self.omega_c.sqrt() * (self.big_e(t) - 1.0) / i_omega_a
    }

    /// First moment J(T) = ∫₀ᵀ τ G(τ) dτ.
    pub fn j_int(&self, t: f64) -> C64 {
        if t == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let wa = self.omega_a;
        let i_omega_a = C64::new(0.0, wa);
        let sqrt_wc = self.omega_c.sqrt();
        self.a_int(t) * (1.0 - self.omega_c / wa)
            - sqrt_wc * self.big_e(t) * (C64::new(t, 0.0) / i_omega_a + 1.0 / (wa * wa))
            + C64::new(sqrt_wc / (wa * wa), 0.0)
            - C64::new(0.0, self.omega_c / (wa * wa)) * self.p1(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-30)
    }

    // reference values computed with 30-digit arbitrary-precision arithmetic
    #[test]
    fn complex_erfc_on_diagonal_ray() {
        // the kernel only ever evaluates erfc along arg z = π/4
        let cases = [
            (0.01, 0.99202088843843011, -0.0079785796385297303),
            (0.1, 0.91994638218003184, -0.079521698578871113),
            (0.5, 0.57044683574983239, -0.36335902658984159),
            (1.0, 0.030735788055784070, -0.47414763664099425),
            (2.0, -0.010311712025489492, 0.27392575946353990),
            (5.0, 0.090903059625374103, -0.066662844328953782),
            (10.0, 0.054669496283822993, -0.013926504428655615),
            (50.0, 0.011249968107723374, -0.00087301007094468853),
        ];
        for (r, re, im) in cases {
            let z = C64::from_polar(r, std::f64::consts::FRAC_PI_4);
            // rounding z to f64 perturbs the phase of e^{-z²} by ~|z|²·eps,
            // which dominates the deviation at large radii
            let tol = 1e-13 + r * r * 8e-16;
            assert!(close(z.erfc(), C64::new(re, im), tol), "erfc at r={r}");
        }
    }

    #[test]
    fn complex_erf_on_antidiagonal_ray() {
        // P₁'s closed form evaluates erf along arg z = −π/4
        let cases = [
            (0.01, 0.0079791115615698856, -0.0079785796385297303),
            (0.3, 0.24634836240518793, -0.23199474756726399),
            (1.0, 0.96926421194421593, -0.47414763664099425),
            (3.0, 1.1780175780881445, 0.056409615960234748),
            (20.0, 0.99353910452753770, 0.027459521636957929),
        ];
        for (r, re, im) in cases {
            let z = C64::from_polar(r, -std::f64::consts::FRAC_PI_4);
            assert!(close(z.erf(), C64::new(re, im), 1e-13), "erf at r={r}");
        }
    }

    #[test]
    fn kernel_values_near_edge_atom() {
        let k = TimeKernel::new(100.5, 100.0);
        let cases = [
            (0.05, -0.11236653740586927, -0.20542344995299180),
            (0.3, -0.0094629629157539364, -0.014265233447158519),
            (1.0, -0.00075334384022228759, -0.0027177287858983546),
            (5.0, 0.00024959660409603233, 3.6907663885545007e-5),
        ];
        for (tau, re, im) in cases {
            // the free-space and edge terms are each ~200x larger than their
            // difference around tau ~ 1, so rounding is amplified accordingly
            assert!(close(k.g(tau), C64::new(re, im), 2e-11), "G at tau={tau}");
            assert!((k.gc(tau) - k.g(tau).conj()).norm() == 0.0);
        }
    }

    #[test]
    fn kernel_values_low_edge() {
        let k = TimeKernel::new(2.0, 1.0);
        let cases = [
            (0.1, 0.60801000257185605, -1.0374403308522609),
            (1.0, 0.13289716261515319, -0.10511409247332416),
            (10.0, 0.00058553869315359743, 0.0086957007146027929),
        ];
        for (tau, re, im) in cases {
            assert!(close(k.g(tau), C64::new(re, im), 1e-12), "G at tau={tau}");
        }
    }

    #[test]
    fn moments_match_reference_values() {
        let k = TimeKernel::new(100.5, 100.0);
        let cases = [
            // (T, H_re, H_im, J_re, J_im)
            (0.05, 0.016154116238828065, -0.081073887343444781,
             -0.00017566730221968668, -0.00067832377446966200),
            (1.0, 0.0060748247941654672, -0.097329848646861012,
             -0.0022801882499832245, -0.0044534107575871574),
            (20.0, 0.0070937323433146084, -0.099523758935704079,
             0.0022028854715176699, -0.0072860396548559943),
        ];
        for (t, hr, hi, jr, ji) in cases {
            assert!(close(k.h_int(t), C64::new(hr, hi), 1e-11), "H at T={t}");
            assert!(close(k.j_int(t), C64::new(jr, ji), 1e-11), "J at T={t}");
        }

        let k = TimeKernel::new(2.0, 1.0);
        let cases = [
            (0.2, 0.22141801862140568, -0.31532488173899374,
             0.011408569533908932, -0.019118704268063309),
            (2.0, 0.47619925378774316, -0.56396943074368073,
             0.24451949742395849, -0.16753879885793175),
            (40.0, 0.49993850365890718, -0.50111078828040619,
             0.24864608814619543, -0.044534190850153670),
        ];
        for (t, hr, hi, jr, ji) in cases {
            assert!(close(k.h_int(t), C64::new(hr, hi), 1e-11), "H at T={t}");
            assert!(close(k.j_int(t), C64::new(jr, ji), 1e-11), "J at T={t}");
        }
    }

    #[test]
    fn moments_are_antiderivatives_of_kernel() {
        // H(b) − H(a) and J(b) − J(a) must equal direct quadrature of G and
        // τG over [a, b] away from the origin
        for (wa, wc) in [(100.5, 100.0), (2.0, 1.0), (7.0, 7.0)] {
            let k = TimeKernel::new(wa, wc);
            let (a, b) = (0.3, 2.1);
            let dh = quad::integrate(|t| k.g(t), a, b, 1e-12, 4000).unwrap();
            let dj = quad::integrate(|t| t * k.g(t), a, b, 1e-12, 4000).unwrap();
            assert!(close(k.h_int(b) - k.h_int(a), dh, 1e-9), "H mismatch {wa},{wc}");
            assert!(close(k.j_int(b) - k.j_int(a), dj, 1e-9), "J mismatch {wa},{wc}");
        }
    }

    #[test]
    fn series_and_closed_form_agree_at_switchover() {
        // evaluate P₁ and A just below and above |Δ|T = ½ via h/j wrappers;
        // continuity across the switch bounds the series truncation error
        let k = TimeKernel::new(3.0, 1.0); // Δ = 2
        let t_lo = 0.5 / k.delta * (1.0 - 1e-9);
        let t_hi = 0.5 / k.delta * (1.0 + 1e-9);
        assert!(close(k.h_int(t_lo), k.h_int(t_hi), 1e-7));
        assert!(close(k.j_int(t_lo), k.j_int(t_hi), 1e-7));
    }

    #[test]
    fn zeroth_moment_tends_to_static_kernel() {
        // H(∞) = g̃(0); the tail decays like T^{−1/2} so compare the
        // Cesàro-free value at a finite time against the known limits
        let k = TimeKernel::new(2.0, 1.0);
        let g0 = C64::new(0.5, -0.5);
        assert!((k.h_int(40.0) - g0).norm() < 2e-3);
        let k = TimeKernel::new(100.5, 100.0);
        let g0 = C64::new(0.0070358883700153983, -0.099502487562189055);
        assert!((k.h_int(20.0) - g0).norm() < 1e-4);
    }
}
