//! Adaptive Gauss–Kronrod quadrature over panelled intervals.
//!
//! Oscillatory integrands are integrated panel by panel: the caller supplies
//! forced breakpoints (zero ordinates, where `S(t)` jumps) and every gap is
//! cut into equal panels no longer than `panel_max`. Each panel is then
//! integrated adaptively with the 7/15-point Gauss–Kronrod pair. Panels are
//! independent, so they run through [`Exec`], and the results are summed in
//! panel order with compensated summation.

use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::sum::NeumaierSum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Longest panel handed to the adaptive kernel.
    pub panel_max: f64,
    pub rel_tol: f64,
    /// Absolute tolerance for the whole integral, shared among panels by length.
    pub abs_tol: f64,
    /// Integrand evaluations allowed per call before a budget error.
    pub max_evals: usize,
    /// Absolute accuracy of a single integrand value; panels whose error
    /// estimate falls below `noise · length` are accepted as converged.
    pub noise: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { panel_max: 0.25, rel_tol: 1e-10, abs_tol: 1e-8, max_evals: 100_000_000, noise: 1e-10 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.panel_max > 0.0) || !(self.rel_tol >= 0.0) || !(self.abs_tol > 0.0) || !(self.noise >= 0.0) {
            return Err(LabError::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_evals < 15 {
            return Err(LabError::Domain("max_evals must allow at least one panel".into()));
        }
        Ok(())
    }

    /// Panels must stay below half the mean zero spacing `π/θ'(t)` at the top of the range.
    pub fn check_panel_max(&self, t1: f64) -> Result<()> {
        let theta_p = crate::special::theta_prime(t1);
        if theta_p > 0.0 && self.panel_max > 0.5 * std::f64::consts::PI / theta_p {
            return Err(LabError::Domain(format!(
                "panel_max {} exceeds half the mean zero spacing at t = {t1}",
                self.panel_max
            )));
        }
        Ok(())
    }
}

/// Scalar or complex integrand values.
pub trait QuadValue:
    Copy + Send + Sync + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult<V> {
    pub value: V,
    pub est_err: f64,
    pub evals: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod estimate with the QUADPACK error heuristic.
pub fn gk15<V: QuadValue>(f: &impl Fn(f64) -> V, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.magnitude() * WGK[7];
    let mut fv = [(V::default(), V::default()); 7];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kron = kron + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
        *slot = (f1, f2);
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[7] * (fc - mean).magnitude();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        resasc += WGK[j] * ((*f1 - mean).magnitude() + (*f2 - mean).magnitude());
    }
    let habs = h.abs();
    resabs *= habs;
    resasc *= habs;
    let mut err = ((kron - gauss) * h).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (kron * h, err)
}

/// Adaptive bisection on `[a, b]` until the summed error estimate meets
/// `max(abs_tol, rel_tol·|I|, noise·(b−a))`.
pub fn adaptive<V: QuadValue>(
    f: &impl Fn(f64) -> V,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    noise: f64,
    max_evals: usize,
) -> Result<QuadResult<V>> {
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut evals = 15;
    loop {
        let total: V = parts.iter().fold(V::default(), |acc, p| acc + p.2);
        let err: f64 = parts.iter().map(|p| p.3).sum();
        let tol = abs_tol.max(rel_tol * total.magnitude()).max(noise * (b - a).abs());
        if err <= tol {
            return Ok(QuadResult { value: total, est_err: err, evals });
        }
        let (idx, worst) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, p)| (i, *p))
            .expect("at least one part");
        let (pa, pb, _, _) = worst;
        let mid = 0.5 * (pa + pb);
        if evals + 30 > max_evals || !(mid > pa && mid < pb) || (pb - pa).abs() < 1e-13 * (1.0 + pa.abs()) {
            if evals + 30 > max_evals {
                return Err(LabError::Budget { max_evals, partial: total.magnitude() });
            }
            // Interval cannot be split further; report what we have.
            return Ok(QuadResult { value: total, est_err: err, evals });
        }
        let (v1, e1) = gk15(f, pa, mid);
        let (v2, e2) = gk15(f, mid, pb);
        evals += 30;
        parts[idx] = (pa, mid, v1, e1);
        parts.push((mid, pb, v2, e2));
    }
}

/// Sorted breakpoints covering `[a, b]`: the forced points inside `(a, b)`,
/// with every gap cut into equal pieces no longer than `panel_max`.
pub fn panel_breaks(a: f64, b: f64, panel_max: f64, forced: &[f64]) -> Vec<f64> {
    let mut knots = vec![a];
    knots.extend(forced.iter().copied().filter(|&x| x > a && x < b));
    knots.push(b);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let mut out = vec![a];
    for w in knots.windows(2) {
        let n = ((w[1] - w[0]) / panel_max).ceil().max(1.0) as usize;
        let step = (w[1] - w[0]) / n as f64;
        for k in 1..n {
            out.push(w[0] + step * k as f64);
        }
        out.push(w[1]);
    }
    out
}

/// Integrates `f` over each consecutive pair of `breaks`, returning one
/// result per panel in order. Panel tolerances are the global absolute
/// tolerance shared in proportion to panel length.
pub fn integrate_panels<V, F>(f: F, breaks: &[f64], cfg: &QuadConfig, exec: Exec) -> Result<Vec<QuadResult<V>>>
where
    V: QuadValue,
    F: Fn(f64) -> V + Sync + Send,
{
    if breaks.len() < 2 {
        return Ok(Vec::new());
    }
    let span = (breaks[breaks.len() - 1] - breaks[0]).abs().max(f64::MIN_POSITIVE);
    let panels: Vec<(f64, f64)> = breaks.windows(2).map(|w| (w[0], w[1])).collect();
    let per_panel = (cfg.max_evals / panels.len()).max(15 * 64);
    let results = exec.map(&panels, |&(a, b)| {
        let tol = cfg.abs_tol * (b - a).abs() / span;
        adaptive(&f, a, b, tol, cfg.rel_tol, cfg.noise, per_panel)
    });
    let mut out = Vec::with_capacity(results.len());
    let mut partial = NeumaierSum::new();
    let mut evals = 0usize;
    for r in results {
        match r {
            Ok(r) => {
                partial.add(r.value.magnitude());
                evals += r.evals;
                out.push(r);
            }
            Err(LabError::Budget { .. }) => {
                return Err(LabError::Budget { max_evals: cfg.max_evals, partial: partial.value() })
            }
            Err(e) => return Err(e),
        }
    }
    if evals > cfg.max_evals {
        return Err(LabError::Budget { max_evals: cfg.max_evals, partial: partial.value() });
    }
    Ok(out)
}

/// Sum of panel results in order, with the error estimates added.
pub fn total(results: &[QuadResult<f64>]) -> QuadResult<f64> {
    let mut value = NeumaierSum::new();
    let mut err = 0.0;
    let mut evals = 0;
    for r in results {
        value.add(r.value);
        err += r.est_err;
        evals += r.evals;
    }
    QuadResult { value: value.value(), est_err: err, evals }
}

/// Integral of `f` over `[a, b]` with panels no longer than `cfg.panel_max`
/// and breaks at `forced`.
pub fn integrate<F>(f: F, a: f64, b: f64, forced: &[f64], cfg: &QuadConfig, exec: Exec) -> Result<QuadResult<f64>>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let breaks = panel_breaks(a, b, cfg.panel_max, forced);
    Ok(total(&integrate_panels(f, &breaks, cfg, exec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        let (v, _) = gk15(&|x: f64| x.powi(20) - 3.0 * x.powi(7), -1.0, 2.0);
        let exact = (2f64.powi(21) + 1.0) / 21.0 - 3.0 * (2f64.powi(8) - 1.0) / 8.0;
        assert!((v - exact).abs() < 1e-11 * exact.abs());
    }

    #[test]
    fn adaptive_handles_an_endpoint_singularity() {
        let r = adaptive(&|x: f64| x.sqrt().ln(), 0.0, 1.0, 1e-10, 0.0, 0.0, 100_000).unwrap();
        assert!((r.value + 0.5).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn oscillatory_panels() {
        let cfg = QuadConfig::default();
        let r = integrate(|t: f64| (t * t.ln()).cos(), 20.0, 200.0, &[], &cfg, Exec::Parallel).unwrap();
        let seq = integrate(|t: f64| (t * t.ln()).cos(), 20.0, 200.0, &[], &cfg, Exec::Sequential).unwrap();
        assert_eq!(r.value.to_bits(), seq.value.to_bits());
        // Independent check: fine composite Simpson rule.
        let n = 2_000_000;
        let h = 180.0 / n as f64;
        let f = |t: f64| (t * t.ln()).cos();
        let mut s = f(20.0) + f(200.0);
        for k in 1..n {
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(20.0 + k as f64 * h);
        }
        let simpson = s * h / 3.0;
        assert!((r.value - simpson).abs() < 1e-8, "{} vs {}", r.value, simpson);
    }

    #[test]
    fn jump_at_forced_break() {
        let cfg = QuadConfig::default();
        let step = |t: f64| if t < 1.3 { 0.0 } else { 1.0 };
        let r = integrate(step, 0.0, 2.0, &[1.3], &cfg, Exec::Sequential).unwrap();
        assert!((r.value - 0.7).abs() < 1e-13);
    }

    #[test]
    fn breaks_respect_panel_max_and_forced_points() {
        let b = panel_breaks(0.0, 1.0, 0.3, &[0.5, 2.0]);
        assert!(b.contains(&0.5));
        assert!(b.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 0.3 + 1e-15));
        assert_eq!(*b.last().unwrap(), 1.0);
    }

    #[test]
    fn budget_error_reports_partial() {
        let cfg = QuadConfig { max_evals: 15, noise: 0.0, abs_tol: 1e-300, rel_tol: 0.0, ..Default::default() };
        let r = adaptive(&|x: f64| (1.0 / x).sin(), 1e-6, 1.0, cfg.abs_tol, 0.0, 0.0, 45);
        assert!(matches!(r, Err(LabError::Budget { .. })));
    }

    #[test]
    fn complex_integrand() {
        let r = adaptive(&|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-12, 0.0, 0.0, 10_000)
            .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }
}
