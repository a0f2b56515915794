//! Euler–Maclaurin evaluation of ζ(s) with a tracked error estimate.

use crate::sum::{ComplexSum, NeumaierSum};
use num_complex::Complex64;
use std::f64::consts::PI;

/// B₂ₖ for k = 1..=16.
const BERNOULLI_2K: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
];

/// The last tabulated ratio only feeds the truncation estimate.
pub(crate) const MAX_EM_TERMS: usize = BERNOULLI_2K.len() - 1;

/// B₂ₖ/(2k)! for k = 1..=16.
pub(crate) fn bernoulli_over_factorial() -> [f64; 16] {
    let mut out = [0.0; 16];
    let mut fact = 1.0f64;
    for k in 1..=16 {
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        out[k - 1] = BERNOULLI_2K[k - 1] / fact;
    }
    out
}

/// Number of directly summed terms for a given `s`.
pub(crate) fn em_cutoff(s: Complex64) -> usize {
    (1.25 * s.norm() / PI).ceil() as usize + 12
}

/// ζ(s) by Euler–Maclaurin with at most `max_terms` Bernoulli corrections.
/// Returns the value and an absolute error estimate (truncation + rounding).
/// The caller guarantees `s ≠ 1`.
pub(crate) fn zeta_em(s: Complex64, max_terms: usize) -> (Complex64, f64) {
    let n_cut = em_cutoff(s);
    let sigma = s.re;
    let t = s.im;

    let mut head = ComplexSum::new();
    let mut mag = NeumaierSum::new();
    let mut mag2 = NeumaierSum::new();
    for n in 1..n_cut {
        let ln_n = (n as f64).ln();
        let r = (-sigma * ln_n).exp();
        let (sin, cos) = (t * ln_n).sin_cos();
        head.add(Complex64::new(r * cos, -r * sin));
        mag.add(r);
        mag2.add(r * r);
    }

    let nf = n_cut as f64;
    let ln_nf = nf.ln();
    let n_pow_minus_s = (-s * ln_nf).exp();
    let mut tail = ComplexSum::new();
    tail.add(n_pow_minus_s * nf / (s - 1.0));
    tail.add(n_pow_minus_s * 0.5);

    let coeffs = bernoulli_over_factorial();
    let max_terms = max_terms.clamp(1, MAX_EM_TERMS);
    // term_k = b_k · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut npow = n_pow_minus_s / nf;
    let mut trunc_err = f64::INFINITY;
    let mut prev_mag = f64::INFINITY;
    for k in 1..=max_terms {
        let term = rising * npow * coeffs[k - 1];
        let m = term.norm();
        if m > prev_mag {
            // asymptotic series has started to diverge; the previous term bounds the error
            trunc_err = prev_mag;
            break;
        }
        tail.add(term);
        prev_mag = m;
        let kf = k as f64;
        rising *= (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf);
        npow /= nf * nf;
        if k == max_terms || m < 1e-18 {
            let next = (rising * npow * coeffs[k]).norm();
            let factor = (s + 2.0 * kf + 1.0).norm() / (sigma + 2.0 * kf + 1.0).max(1.0);
            trunc_err = next * factor;
            break;
        }
    }

    let value = head.value() + tail.value();
    let eps = f64::EPSILON;
    // phases t·ln n carry ~eps·t·ln n absolute error each and add incoherently
    let round_err =
        eps * ((t.abs() * ln_nf + 1.0) * mag2.value().sqrt() + mag.value() + value.norm());
    (value, trunc_err + round_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_ratios_match_even_zeta_values() {
        let b = bernoulli_over_factorial();
        for k in 1..=16usize {
            let zeta_2k: f64 = if k == 1 {
                PI * PI / 6.0
            } else {
                let p = 2 * k as i32;
                let n = 2000.0f64;
                let head: f64 = (1..2000).map(|m| (m as f64).powi(-p)).sum();
                head + n.powi(1 - p) / (p - 1) as f64 + 0.5 * n.powi(-p)
            };
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let expected = sign * 2.0 * zeta_2k / (2.0 * PI).powi(2 * k as i32);
            assert!(((b[k - 1] - expected) / expected).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn classical_values() {
        let (z2, e2) = zeta_em(Complex64::new(2.0, 0.0), 15);
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14 && z2.im == 0.0);
        assert!(e2 < 1e-12);
        let (z0, _) = zeta_em(Complex64::new(0.0, 0.0), 15);
        assert!((z0.re + 0.5).abs() < 1e-14);
        let (zm1, _) = zeta_em(Complex64::new(-1.0, 0.0), 15);
        assert!((zm1.re + 1.0 / 12.0).abs() < 1e-14);
        let (z4, _) = zeta_em(Complex64::new(4.0, 0.0), 15);
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn reported_error_is_small_on_the_critical_line() {
        for &t in &[20.0, 1000.0, 1e4] {
            let (_, err) = zeta_em(Complex64::new(0.5, t), 15);
            assert!(err < 1e-10, "t = {t}: err = {err:e}");
        }
    }
}
