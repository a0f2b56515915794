//! Complex log-gamma and digamma via the Stirling series (Bernoulli terms
//! through B₁₂) with upward argument shifting, plus the Riemann–Siegel theta
//! function built on top of them.

use num_complex::Complex64;
use std::f64::consts::PI;

/// B₂, B₄, …, B₁₂.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// Shift target: the truncated series is accurate to ~1e-16 once |z| ≥ 10.
const SHIFT_RADIUS: f64 = 10.0;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;

fn shift_count(z: Complex64) -> usize {
    let mut n = 0usize;
    while (z + n as f64).norm() < SHIFT_RADIUS {
        n += 1;
    }
    n
}

fn stirling_ln_gamma(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + LN_2PI_HALF;
    let z2inv = (z * z).inv();
    let mut zpow = z.inv();
    for (k, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * (k + 1);
        acc += zpow * (b / (m * (m - 1)) as f64);
        zpow *= z2inv;
    }
    acc
}

/// `ln sin(πz)` without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz}/(-2i) · (1 - e^{2iπz})
        let i = Complex64::i();
        -i * PI * z - (Complex64::new(0.0, -2.0)).ln() + (1.0 - (i * 2.0 * PI * z).exp()).ln()
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

/// Complex `ln Γ(z)`.
///
/// For `Re z > 0` the result is the branch that is continuous in `z` (the one
/// whose imaginary part grows like `Im z · ln|z|`). For `Re z ≤ 0` the reflection
/// formula is used and only `exp(ln_gamma(z))` is meaningful.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 {
        return PI.ln() - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    let n = shift_count(z);
    let mut acc = stirling_ln_gamma(z + n as f64);
    for k in 0..n {
        acc -= (z + k as f64).ln();
    }
    acc
}

/// Complex digamma `ψ(z) = Γ'(z)/Γ(z)` for `Re z > 0`.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 {
        // ψ(1 - z) - ψ(z) = π cot(πz)
        let cot = (z * PI).cos() / (z * PI).sin();
        return digamma(1.0 - z) - cot * PI;
    }
    let n = shift_count(z);
    let w = z + n as f64;
    let mut acc = w.ln() - 0.5 * w.inv();
    let w2inv = (w * w).inv();
    let mut wpow = w2inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let m = (2 * (k + 1)) as f64;
        acc -= wpow * (b / m);
        wpow *= w2inv;
    }
    for k in 0..n {
        acc -= (z + k as f64).inv();
    }
    acc
}

/// `θ(t) = Im ln Γ(¼ + ½it) − ½ t ln π` via the shifted Stirling series.
/// Valid for every `t ≥ 0`; callers enforce their own domain.
pub fn theta_raw(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// Asymptotic expansion `θ(t) ≈ (t/2)ln(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + …`.
pub fn theta_asymptotic(t: f64) -> f64 {
    let tinv = t.recip();
    let t2 = tinv * tinv;
    let corr = tinv
        * (1.0 / 48.0
            + t2 * (7.0 / 5760.0 + t2 * (31.0 / 80640.0 + t2 * (127.0 / 430080.0))));
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr
}

/// `θ'(t) = ½ Re ψ(¼ + ½it) − ½ ln π`.
pub fn theta_prime(t: f64) -> f64 {
    0.5 * digamma(Complex64::new(0.25, 0.5 * t)).re - 0.5 * PI.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..20 {
            let v = ln_gamma(Complex64::new(n as f64, 0.0));
            assert!(close(v.re, fact.ln(), 1e-13 * (1.0 + fact.ln())), "n = {n}");
            assert!(v.im.abs() < 1e-15);
            fact *= n as f64;
        }
    }

    #[test]
    fn ln_gamma_half_and_reflection() {
        let v = ln_gamma(Complex64::new(0.5, 0.0));
        assert!(close(v.re, 0.5 * PI.ln(), 1e-14));
        // Γ(-1/2) = -2√π
        let g = ln_gamma(Complex64::new(-0.5, 0.0)).exp();
        assert!(close(g.re, -2.0 * PI.sqrt(), 1e-13) && g.im.abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_recurrence_off_axis() {
        for &(x, y) in &[(0.25, 3.0), (0.7, -12.0), (2.5, 40.0), (0.25, 5000.0)] {
            let z = Complex64::new(x, y);
            let lhs = ln_gamma(z + 1.0);
            let rhs = ln_gamma(z) + z.ln();
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()), "z = {z}");
        }
    }

    #[test]
    fn abs_gamma_on_quarter_line_matches_closed_form() {
        // |Γ(½ + iy)|² = π / cosh(πy)
        for &y in &[0.3, 2.0, 7.5] {
            let v = ln_gamma(Complex64::new(0.5, y)).re;
            let expected = 0.5 * (PI / (PI * y).cosh()).ln();
            assert!(close(v, expected, 1e-13));
        }
    }

    #[test]
    fn digamma_values() {
        // ψ(1) = -C₀
        let v = digamma(Complex64::new(1.0, 0.0));
        assert!(close(v.re, -0.577_215_664_901_532_9, 1e-14));
        // ψ(z+1) = ψ(z) + 1/z
        let z = Complex64::new(0.25, 17.0);
        assert!((digamma(z + 1.0) - digamma(z) - z.inv()).norm() < 1e-14);
    }

    #[test]
    fn theta_two_paths_agree() {
        for &t in &[50.0, 100.0, 1000.0, 1e4, 1e5] {
            let a = theta_raw(t);
            let b = theta_asymptotic(t);
            assert!(close(a, b, 1e-9f64.max(4e-16 * a.abs())), "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn theta_prime_matches_difference_quotient() {
        for &t in &[20.0, 300.0, 5000.0] {
            let h = 1e-3;
            let fd = (theta_raw(t + h) - theta_raw(t - h)) / (2.0 * h);
            assert!(close(theta_prime(t), fd, 1e-7));
        }
    }
}
