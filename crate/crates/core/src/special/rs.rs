//! Riemann–Siegel evaluation of Z(t): main sum plus the correction terms
//! C₀…C₄ in powers of (t/2π)^{−1/2}.

use super::gamma::theta_asymptotic;
use super::rs_tables::{RS_CHEB, RS_CHEB_DEGREE};
use std::f64::consts::PI;

fn chebyshev(coeffs: &[f64], z: f64) -> f64 {
    // Clenshaw recurrence
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs[1..].iter().rev() {
        let b0 = 2.0 * z * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    z * b1 - b2 + coeffs[0]
}

/// Riemann–Siegel correction coefficient Cₖ(p), `p ∈ [0, 1)`.
pub fn rs_coefficient(k: usize, p: f64) -> f64 {
    debug_assert!(RS_CHEB[k].len() == RS_CHEB_DEGREE + 1);
    chebyshev(&RS_CHEB[k], 2.0 * p - 1.0)
}

/// Z(t) by the Riemann–Siegel formula with corrections C₀…C₄.
/// Truncation error behaves like 0.05·t^{−11/4}.
pub fn hardy_z_rs(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let th = theta_asymptotic(t);
    let mut acc = crate::sum::NeumaierSum::new();
    for k in 1..=n {
        let kf = k as f64;
        acc.add(kf.sqrt().recip() * (th - t * kf.ln()).cos());
    }
    let w = a.recip();
    let mut corr = 0.0;
    let mut wp = 1.0;
    for k in 0..5 {
        corr += rs_coefficient(k, p) * wp;
        wp *= w;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * acc.value() + sign * w.sqrt() * corr
}

/// A priori bound on the truncation error of [`hardy_z_rs`].
pub fn rs_error_bound(t: f64) -> f64 {
    0.05 * t.powf(-2.75)
}
