//! Evaluation of θ(t), χ(s), ζ(s), Hardy's Z(t), ζ'(½+it) and J(t).
//!
//! Two evaluation paths exist for the critical line: Euler–Maclaurin
//! (`zeta_em`, reference, cost O(t)) and Riemann–Siegel (`hardy_z_rs`, cost
//! O(√t)). The dispatching evaluators (`hardy_z`, `zeta_half`) use
//! Riemann–Siegel from `rs_min_t` upward, where its truncation error is below
//! the configured target, and Euler–Maclaurin underneath.

pub(crate) mod em;
mod gamma;
mod rs;
mod rs_tables;

pub use gamma::{digamma, ln_gamma, theta_asymptotic, theta_prime, theta_raw};
pub use rs::{hardy_z_rs, rs_coefficient, rs_error_bound};

use crate::error::{LabError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub target_abs_err: f64,
    /// Upper limit on Euler–Maclaurin Bernoulli correction terms (≤ 15).
    pub em_terms: usize,
    /// Base step of the Richardson-extrapolated central differences.
    pub fd_step: f64,
    /// Largest height accepted by any evaluator.
    pub max_t: f64,
    /// Heights at or above this use the Riemann–Siegel path.
    pub rs_min_t: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_abs_err: 1e-10,
            em_terms: 15,
            fd_step: 0.03,
            max_t: 1e6,
            rs_min_t: 1000.0,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_err > 0.0) {
            return Err(LabError::Domain("target_abs_err must be positive".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(LabError::Domain("fd_step must be positive".into()));
        }
        if !(self.max_t >= 1e5 && self.max_t <= 1e6) {
            return Err(LabError::Domain("max_t must lie in [1e5, 1e6]".into()));
        }
        if self.em_terms == 0 {
            return Err(LabError::Domain("em_terms must be at least 1".into()));
        }
        Ok(())
    }
}

/// A height `t` with the critical-line quantities evaluated there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalPoint {
    pub t: f64,
    pub z: f64,
    pub theta: f64,
    pub zeta_half: Complex64,
    pub zeta_prime_half: Complex64,
    pub est_abs_err: f64,
}

/// Derivative estimate from Richardson-extrapolated central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<V> {
    pub value: V,
    pub est_err: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Evaluator {
    cfg: EvalConfig,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { cfg })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    fn check_height(&self, t: f64) -> Result<()> {
        if !t.is_finite() || t.abs() > self.cfg.max_t {
            return Err(LabError::OutOfRange { t, max: self.cfg.max_t });
        }
        Ok(())
    }

    /// Riemann–Siegel theta function for `t > 1`.
    pub fn theta(&self, t: f64) -> Result<f64> {
        if !(t > 1.0) {
            return Err(LabError::Domain(format!("theta requires t > 1, got {t}")));
        }
        self.check_height(t)?;
        Ok(theta_raw(t))
    }

    /// ζ(s) by Euler–Maclaurin, with its absolute error estimate.
    pub fn zeta_em_with_err(&self, s: Complex64) -> Result<(Complex64, f64)> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(LabError::Pole);
        }
        self.check_height(s.im)?;
        Ok(em::zeta_em(s, self.cfg.em_terms))
    }

    pub fn zeta_em(&self, s: Complex64) -> Result<Complex64> {
        self.zeta_em_with_err(s).map(|(v, _)| v)
    }

    /// χ(s) = π^{s−½} Γ((1−s)/2) / Γ(s/2), the factor in ζ(s) = χ(s)ζ(1−s).
    pub fn chi(&self, s: Complex64) -> Result<Complex64> {
        self.check_height(s.im)?;
        let is_nonpos_int = |w: Complex64| w.im == 0.0 && w.re <= 0.0 && w.re.fract() == 0.0;
        if is_nonpos_int((1.0 - s) * 0.5) {
            return Err(LabError::Domain(format!("chi has a pole at s = {s}")));
        }
        if is_nonpos_int(s * 0.5) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let log = (s - 0.5) * PI.ln() + ln_gamma((1.0 - s) * 0.5) - ln_gamma(s * 0.5);
        Ok(log.exp())
    }

    /// Z(t) through the fast dispatcher; no preconditions beyond `t ≥ 0`.
    pub(crate) fn z_unchecked(&self, t: f64) -> f64 {
        if t >= self.cfg.rs_min_t {
            hardy_z_rs(t)
        } else {
            self.z_reference_parts(t).0
        }
    }

    /// ζ(½+it) through the fast dispatcher.
    pub(crate) fn zeta_half_unchecked(&self, t: f64) -> Complex64 {
        if t >= self.cfg.rs_min_t {
            Complex64::from_polar(hardy_z_rs(t), -theta_asymptotic(t))
        } else {
            em::zeta_em(Complex64::new(0.5, t), self.cfg.em_terms).0
        }
    }

    /// Returns (Re, Im) of e^{iθ(t)}ζ(½+it) computed by Euler–Maclaurin, and its error estimate.
    fn z_reference_parts(&self, t: f64) -> (f64, f64, f64) {
        let (zeta, err) = em::zeta_em(Complex64::new(0.5, t), self.cfg.em_terms);
        let rot = Complex64::from_polar(1.0, theta_raw(t));
        let z = rot * zeta;
        (z.re, z.im, err)
    }

    /// Z(t) = χ^{−½}(½+it)ζ(½+it) by the reference path. The imaginary residue
    /// of the rotation is asserted to be negligible before being discarded.
    pub fn hardy_z_reference(&self, t: f64) -> Result<f64> {
        if !(t >= 1.0) {
            return Err(LabError::Domain(format!("hardy_z requires t >= 1, got {t}")));
        }
        self.check_height(t)?;
        let (re, im, err) = self.z_reference_parts(t);
        let limit = 100.0 * self.cfg.target_abs_err.max(err);
        if im.abs() > limit {
            return Err(LabError::Consistency(format!(
                "imaginary residue {im:e} of chi^(-1/2) zeta at t = {t} exceeds {limit:e}"
            )));
        }
        Ok(re)
    }

    /// Hardy's Z(t), `t ≥ 1`.
    pub fn hardy_z(&self, t: f64) -> Result<f64> {
        if t >= self.cfg.rs_min_t {
            self.check_height(t)?;
            Ok(hardy_z_rs(t))
        } else {
            self.hardy_z_reference(t)
        }
    }

    /// Absolute error estimate of the dispatcher at `t`.
    pub fn z_error_estimate(&self, t: f64) -> f64 {
        if t >= self.cfg.rs_min_t {
            let n = (t / (2.0 * PI)).sqrt();
            let phase = theta_asymptotic(t).abs() + t * n.ln();
            rs_error_bound(t) + 2.0 * f64::EPSILON * phase * (0.58 + n.ln()).sqrt()
        } else {
            em::zeta_em(Complex64::new(0.5, t), self.cfg.em_terms).1
        }
    }

    /// ζ(½+it) by the dispatcher.
    pub fn zeta_half(&self, t: f64) -> Result<Complex64> {
        if !(t >= 0.0) {
            return Err(LabError::Domain(format!("zeta_half requires t >= 0, got {t}")));
        }
        self.check_height(t)?;
        Ok(self.zeta_half_unchecked(t))
    }

    /// ζ'(½+it) from Richardson-extrapolated central differences of ζ(½+iτ) in τ.
    pub fn zeta_prime_half(&self, t: f64) -> Result<Derivative<Complex64>> {
        if !(t >= 1.0) {
            return Err(LabError::Domain(format!("zeta_prime_half requires t >= 1, got {t}")));
        }
        self.check_height(t + self.cfg.fd_step)?;
        // d/dτ ζ(½+iτ) = iζ'(½+iτ)
        let d = richardson(|tau| self.zeta_half_unchecked(tau), t, self.cfg.fd_step);
        let d = Derivative { value: d.value * Complex64::new(0.0, -1.0), est_err: d.est_err };
        self.accept_derivative(t, d)
    }

    /// ζ'(σ+it) at a general abscissa, from vertical differences of the
    /// Euler–Maclaurin evaluator.
    pub fn zeta_prime(&self, s: Complex64) -> Result<Derivative<Complex64>> {
        self.check_height(s.im + self.cfg.fd_step)?;
        let terms = self.cfg.em_terms;
        let d = richardson(|tau| em::zeta_em(Complex64::new(s.re, tau), terms).0, s.im, self.cfg.fd_step);
        let d = Derivative { value: d.value * Complex64::new(0.0, -1.0), est_err: d.est_err };
        self.accept_derivative(s.im, d)
    }

    /// Z'(t) from Richardson-extrapolated central differences of the dispatcher.
    pub fn hardy_z_prime(&self, t: f64) -> Result<Derivative<f64>> {
        if !(t >= 1.0) {
            return Err(LabError::Domain(format!("hardy_z_prime requires t >= 1, got {t}")));
        }
        self.check_height(t + self.cfg.fd_step)?;
        let d = richardson(|tau| Complex64::new(self.z_unchecked(tau), 0.0), t, self.cfg.fd_step);
        let d = self.accept_derivative(t, d)?;
        Ok(Derivative { value: d.value.re, est_err: d.est_err })
    }

    pub(crate) fn z_prime_unchecked(&self, t: f64) -> f64 {
        richardson(|tau| Complex64::new(self.z_unchecked(tau), 0.0), t, self.cfg.fd_step)
            .value
            .re
    }

    pub(crate) fn zeta_prime_half_unchecked(&self, t: f64) -> Complex64 {
        let d = richardson(|tau| self.zeta_half_unchecked(tau), t, self.cfg.fd_step);
        d.value * Complex64::new(0.0, -1.0)
    }

    fn accept_derivative<V: Copy + Into<Complex64>>(
        &self,
        t: f64,
        d: Derivative<V>,
    ) -> Result<Derivative<V>> {
        let scale = 1.0 + d.value.into().norm();
        if !(d.est_err <= 1e-6 * scale) {
            return Err(LabError::Precision(format!(
                "finite-difference extrapolation did not converge at t = {t} (error estimate {:e})",
                d.est_err
            )));
        }
        Ok(d)
    }

    /// J(t) = ½Γ'/Γ(¼+½it) + ζ'/ζ(½+it) − ½ln π. On the critical line J is
    /// purely imaginary, so `Re J(t)` measures how well the evaluators respect
    /// the functional equation. `known_zeros` supplies ordinates for the pole guard.
    pub fn j_of_t(&self, t: f64, known_zeros: &[f64]) -> Result<Complex64> {
        if !(t >= 1.0) {
            return Err(LabError::Domain(format!("j_of_t requires t >= 1, got {t}")));
        }
        if let Some(&gamma) = nearest(known_zeros, t) {
            let distance = (gamma - t).abs();
            if distance < 0.05 {
                return Err(LabError::Proximity { t, gamma, distance });
            }
        }
        let zeta = self.zeta_half(t)?;
        let zp = self.zeta_prime_half(t)?;
        let psi = digamma(Complex64::new(0.25, 0.5 * t));
        Ok(psi * 0.5 + zp.value / zeta - 0.5 * PI.ln())
    }

    /// Bundles Z, θ, ζ(½+it) and ζ'(½+it). ζ(½+it) comes from the reference
    /// evaluator and Z from the dispatcher, so the pair cross-checks both paths.
    pub fn eval_point(&self, t: f64) -> Result<EvalPoint> {
        let theta = self.theta(t)?;
        let z = self.hardy_z(t)?;
        let (zeta_half, em_err) = self.zeta_em_with_err(Complex64::new(0.5, t))?;
        let zp = self.zeta_prime_half(t)?;
        Ok(EvalPoint {
            t,
            z,
            theta,
            zeta_half,
            zeta_prime_half: zp.value,
            est_abs_err: em_err.max(self.z_error_estimate(t)),
        })
    }
}

fn nearest(sorted: &[f64], t: f64) -> Option<&f64> {
    let idx = sorted.partition_point(|&g| g < t);
    let below = idx.checked_sub(1).and_then(|i| sorted.get(i));
    let above = sorted.get(idx);
    match (below, above) {
        (Some(b), Some(a)) => Some(if t - b <= a - t { b } else { a }),
        (b, a) => b.or(a),
    }
}

/// Central differences at h, h/2, h/4 combined by two Richardson steps
/// (sixth order). The error estimate is the distance to the fourth-order value.
pub(crate) fn richardson<F>(f: F, t: f64, h: f64) -> Derivative<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let d = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    let (d1, d2, d3) = (d(h), d(h / 2.0), d(h / 4.0));
    let r1a = (d2 * 4.0 - d1) / 3.0;
    let r1b = (d3 * 4.0 - d2) / 3.0;
    let r2 = (r1b * 16.0 - r1a) / 15.0;
    Derivative { value: r2, est_err: (r2 - r1b).norm() }
}

/// Fourth-order (single Richardson step) derivative, exposed for convergence checks.
pub fn richardson_fourth_order<F>(f: F, t: f64, h: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let d = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    (d(h / 2.0) * 4.0 - d(h)) / 3.0
}
