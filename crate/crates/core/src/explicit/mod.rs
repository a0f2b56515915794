//! Smoothed explicit formulas for `−ζ'/ζ(σ+it)` and `log ζ(½+it)`, the
//! zero-window averages that control them, the prime-corrected process
//! `R(t)` and the arithmetic tables behind the prime sums.
//!
//! Every zero `ρ̄` (complex or trivial) contributes
//! `ũ(1+(ρ̄−s)log X)/(ρ̄−s)` to `−ζ'/ζ(s)`, and the pole contributes the same
//! expression at `ρ̄ = 1` with the opposite sign; `log ζ(½+it)` integrates
//! these in σ from ½ to ∞. Complex zeros are taken from a [`ZeroCache`]
//! inside the window `|γ − t| ≤ W`, `W = window_c / log X`; the zeros outside
//! it are not summed but bounded by `|ũ(s)| ≤ max|u'''|·e^{max(Re s,0)+12}(1+|s|)^{−3}`.

mod arith;
mod bump;

pub use arith::ArithTables;
pub use bump::{QuadRule, SmoothTestFunction};

use crate::config::ExplicitConfig;
use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::quad::{self, QuadConfig};
use crate::special::Evaluator;
use crate::sum::{ComplexSum, NeumaierSum};
use crate::zeros::{s_of_t, ZeroCache};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Smallest admissible distance from `t` to a zero ordinate.
pub const POLE_GUARD: f64 = 0.05;

/// The terms of one explicit-formula evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplicitTerms {
    pub sigma: f64,
    pub t: f64,
    #[serde(rename = "X")]
    pub x: f64,
    /// Half-width of the zero window.
    pub window: f64,
    pub value: Complex64,
    pub primes: Complex64,
    pub zeros: Complex64,
    pub trivial: Complex64,
    pub pole: Complex64,
    pub zeros_used: usize,
    /// Bound on the zeros left outside the window.
    pub tail_bound: f64,
    /// Summed quadrature error estimates of the σ-integrals.
    pub quad_err: f64,
}

#[derive(Debug, Clone)]
pub struct ExplicitFormula {
    pub ev: Evaluator,
    pub f: SmoothTestFunction,
    pub cfg: ExplicitConfig,
    pub exec: Exec,
}

impl ExplicitFormula {
    pub fn new(ev: Evaluator, cfg: ExplicitConfig, exec: Exec) -> Self {
        Self { ev, f: SmoothTestFunction::new(), cfg, exec }
    }

    pub fn window(&self, x: f64) -> f64 {
        self.cfg.window_c / x.ln()
    }

    fn check(&self, t: f64, x: f64, cache: &ZeroCache) -> Result<f64> {
        if !(t >= crate::DEFAULT_T0) {
            return Err(LabError::Domain(format!("explicit formula requires t >= {}, got {t}", crate::DEFAULT_T0)));
        }
        if !(2.0..=t * t).contains(&x) {
            return Err(LabError::Domain(format!("X = {x} outside [2, t^2] at t = {t}")));
        }
        let w = self.window(x);
        cache.covers((t - w).max(0.0), t + w)?;
        if let Some((gamma, distance)) = cache.nearest(t) {
            if distance < POLE_GUARD {
                return Err(LabError::Proximity { t, gamma, distance });
            }
        }
        Ok(w)
    }

    /// Ordinates (with sign) of the complex zeros inside the window.
    fn window_ordinates(cache: &ZeroCache, t: f64, w: f64) -> Vec<f64> {
        let mut out: Vec<f64> = cache.gammas_in(0.0, w - t).iter().rev().map(|g| -g).collect();
        out.extend_from_slice(cache.gammas_in(t - w, t + w));
        out
    }

    /// `Σ_{2≤n<X} Λ(n)·weight(n)·n^{−σ−it}·v(n^{1/log X})`, with `weight = 1/log n`
    /// for the logarithm and 1 for the logarithmic derivative.
    fn prime_sum(&self, sigma: f64, t: f64, x: f64, log_weight: bool) -> Result<Complex64> {
        let lx = x.ln();
        let n_top = x.ceil() as usize;
        if n_top <= 2 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let tables = ArithTables::build(n_top)?;
        let mut acc = ComplexSum::new();
        for n in 2..n_top {
            let lambda = tables.von_mangoldt(n);
            if lambda == 0.0 {
                continue;
            }
            let ln = (n as f64).ln();
            let v = self.f.v((ln / lx).exp());
            if v == 0.0 {
                continue;
            }
            let w = if log_weight { lambda / ln } else { lambda };
            acc.add(Complex64::from_polar(w * v * (-sigma * ln).exp(), -t * ln));
        }
        Ok(acc.value())
    }

    /// `ũ(1+(β−s)L)/(β−s)` at `s = σ+it`.
    fn zero_term(&self, beta: Complex64, s: Complex64, lx: f64) -> Complex64 {
        let w = beta - s;
        self.f.mellin(w.scale(lx) + 1.0) / w
    }

    /// `∫_{½}^{∞} ũ(1+(β−σ−it)L)/(β−σ−it) dσ`, with `(value, est_err)`.
    ///
    /// The integrand decays like `exp(−2√(σL/1.7))`, so the range is cut
    /// into geometrically growing panels until `ũ` on the real axis drops
    /// below 1e-17.
    fn sigma_integral(&self, beta: Complex64, t: f64, lx: f64) -> Result<(Complex64, f64)> {
        let w0 = beta - Complex64::new(0.5, t);
        let g = |u: f64| self.zero_term(beta, Complex64::new(0.5 + u, t), lx);
        let mut h = 0.5 * w0.norm().min(1.0 / lx).min(0.5);
        let mut a = 0.0;
        let mut acc = ComplexSum::new();
        let mut err = 0.0;
        loop {
            let b = a + h;
            let r = quad::adaptive(&g, a, b, 1e-14, 1e-12, 0.0, 200_000)?;
            acc.add(r.value);
            err += r.est_err;
            let decay = self.f.mellin(Complex64::new(1.0 + (w0.re - b) * lx, 0.0)).re;
            if decay < 1e-17 {
                break;
            }
            a = b;
            h *= 2.0;
            if a > 1e6 {
                return Err(LabError::Precision(format!("σ-integral for ρ = {beta} did not decay")));
            }
        }
        Ok((acc.value(), err))
    }

    fn zero_tail_term(&self, sigma: Option<f64>, a: f64, lx: f64) -> f64 {
        let m3 = self.f.umax_derivs[3];
        match sigma {
            // |s| ≥ (|a|L + σ'L − 1)/2 along the σ-ray, so the integral of
            // (1+|s|)^{-3} is at most 1/(L·A²) with A = (1+|a|L)/2.
            None => {
                let big_a = 0.5 * (1.0 + a.abs() * lx);
                m3 * 13f64.exp() / (a.abs() * lx * big_a * big_a)
            }
            Some(sig) => {
                let s = Complex64::new(1.0 + (0.5 - sig) * lx, a * lx);
                let dist = Complex64::new(0.5 - sig, a).norm();
                self.f.mellin_bound(s, 3) / dist
            }
        }
    }

    /// Bound on the zeros outside `|γ − t| ≤ w`: cached ones one by one,
    /// uncached ones through the density `(1/2π)log(γ/2π)`.
    fn window_tail(&self, cache: &ZeroCache, sigma: Option<f64>, t: f64, w: f64, lx: f64) -> Result<f64> {
        let mut acc = NeumaierSum::new();
        for &g in cache.gammas() {
            for a in [g - t, -g - t] {
                if a.abs() > w {
                    acc.add(self.zero_tail_term(sigma, a, lx));
                }
            }
        }
        let density = |g: f64| ((g / (2.0 * PI)).ln() / (2.0 * PI)).max(0.0) + 1.0 / g;
        let top = cache.t_max_scanned().max(t + w);
        // γ = top/x for x ∈ (0, 1], on both sides of the real axis.
        let beyond = |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            let g = top / x;
            let jac = top / (x * x);
            jac * density(g) * (self.zero_tail_term(sigma, g - t, lx) + self.zero_tail_term(sigma, -g - t, lx))
        };
        acc.add(quad::adaptive(&beyond, 0.0, 1.0, 1e-10, 1e-6, 0.0, 1_000_000)?.value);
        let bottom = cache.t_min_scanned();
        if bottom > 14.0 {
            let below = |g: f64| {
                let a = g - t;
                let inner = if a.abs() > w { self.zero_tail_term(sigma, a, lx) } else { 0.0 };
                density(g) * (inner + self.zero_tail_term(sigma, -g - t, lx))
            };
            acc.add(quad::adaptive(&below, 14.0, bottom, 1e-10, 1e-6, 0.0, 1_000_000)?.value);
        }
        Ok(acc.value())
    }

    /// Smoothed explicit formula for `log ζ(½+it)`.
    pub fn log_zeta(&self, t: f64, x: f64, cache: &ZeroCache) -> Result<ExplicitTerms> {
        let w = self.check(t, x, cache)?;
        self.log_zeta_window(t, x, w, cache)
    }

    /// [`Self::log_zeta`] with an explicit window half-width.
    pub fn log_zeta_window(&self, t: f64, x: f64, w: f64, cache: &ZeroCache) -> Result<ExplicitTerms> {
        self.check(t, x, cache)?;
        cache.covers((t - w).max(0.0), t + w)?;
        let lx = x.ln();
        let ords = Self::window_ordinates(cache, t, w);
        let k = self.cfg.trivial_zeros;
        let mut betas: Vec<Complex64> = ords.iter().map(|&g| Complex64::new(0.5, g)).collect();
        betas.extend((1..=k).map(|j| Complex64::new(-2.0 * j as f64, 0.0)));
        betas.push(Complex64::new(1.0, 0.0));
        let parts = self.exec.map(&betas, |&b| self.sigma_integral(b, t, lx));
        let mut sums = [ComplexSum::new(), ComplexSum::new(), ComplexSum::new()];
        let mut quad_err = 0.0;
        for (i, p) in parts.into_iter().enumerate() {
            let (v, e) = p?;
            quad_err += e;
            let slot = if i < ords.len() { 0 } else if i < ords.len() + k { 1 } else { 2 };
            sums[slot].add(v);
        }
        let primes = self.prime_sum(0.5, t, x, true)?;
        let zeros = sums[0].value();
        let trivial = sums[1].value();
        let pole = -sums[2].value();
        Ok(ExplicitTerms {
            sigma: 0.5,
            t,
            x,
            window: w,
            value: primes + zeros + trivial + pole,
            primes,
            zeros,
            trivial,
            pole,
            zeros_used: ords.len(),
            tail_bound: self.window_tail(cache, None, t, w, lx)?,
            quad_err,
        })
    }

    /// Smoothed explicit formula for `−ζ'/ζ(σ+it)`, `½ ≤ σ ≤ 2`.
    pub fn logderiv(&self, sigma: f64, t: f64, x: f64, cache: &ZeroCache) -> Result<ExplicitTerms> {
        let w = self.check(t, x, cache)?;
        self.logderiv_window(sigma, t, x, w, cache)
    }

    pub fn logderiv_window(&self, sigma: f64, t: f64, x: f64, w: f64, cache: &ZeroCache) -> Result<ExplicitTerms> {
        if !(0.5..=2.0).contains(&sigma) {
            return Err(LabError::Domain(format!("sigma must lie in [1/2, 2], got {sigma}")));
        }
        self.check(t, x, cache)?;
        cache.covers((t - w).max(0.0), t + w)?;
        let lx = x.ln();
        let s = Complex64::new(sigma, t);
        let ords = Self::window_ordinates(cache, t, w);
        let zeros: Complex64 = ords.iter().map(|&g| self.zero_term(Complex64::new(0.5, g), s, lx)).sum();
        let trivial_list: Vec<f64> = (1..=self.cfg.trivial_zeros).map(|j| -2.0 * j as f64).collect();
        let trivial = self
            .exec
            .map(&trivial_list, |&b| self.zero_term(Complex64::new(b, 0.0), s, lx))
            .into_iter()
            .fold(ComplexSum::new(), |mut acc, z| {
                acc.add(z);
                acc
            })
            .value();
        let pole = -self.zero_term(Complex64::new(1.0, 0.0), s, lx);
        let primes = self.prime_sum(sigma, t, x, false)?;
        Ok(ExplicitTerms {
            sigma,
            t,
            x,
            window: w,
            value: primes + zeros + trivial + pole,
            primes,
            zeros,
            trivial,
            pole,
            zeros_used: ords.len(),
            tail_bound: self.window_tail(cache, Some(sigma), t, w, lx)?,
            quad_err: 0.0,
        })
    }
}

/// `log ζ(½+it) = log|ζ| + iπS(t)`, with S from argument continuation.
pub fn log_zeta_direct(ev: &Evaluator, t: f64, known_zeros: &[f64]) -> Result<Complex64> {
    let z = ev.zeta_em(Complex64::new(0.5, t))?;
    Ok(Complex64::new(z.norm().ln(), PI * s_of_t(ev, t, known_zeros)?))
}

/// `−ζ'/ζ(s)` from the Euler–Maclaurin evaluator.
pub fn logderiv_direct(ev: &Evaluator, s: Complex64) -> Result<Complex64> {
    Ok(-ev.zeta_prime(s)?.value / ev.zeta_em(s)?)
}

/// Zero-window averages over `[T, 2T]`, each divided by `log T / log X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowAverages {
    /// Mean of `1 + Σ_{|γ−t|≤1/L} log(1 + 1/(|γ−t|L))`.
    pub log_window: f64,
    /// Mean of `Σ_γ (1 + |γ−t|L)^{−3}`.
    pub kernel: f64,
    pub zeros_in_range: usize,
}

/// Both averages in closed form: each zero contributes the integral of its
/// profile over the offsets `t − γ` with `t ∈ [T, 2T]`.
pub fn window_averages(t: f64, x: f64, cache: &ZeroCache) -> Result<WindowAverages> {
    if !(t > 1.0) || !(x >= 2.0) {
        return Err(LabError::Domain(format!("window averages need T > 1 and X >= 2, got T = {t}, X = {x}")));
    }
    cache.covers((t - 1.0).max(0.0), 2.0 * t + 1.0)?;
    let l = x.ln();
    let r = 1.0 / l;
    // Odd antiderivatives of the two profiles in the offset d.
    let f_log = |d: f64| {
        let u = d.abs().min(r);
        let v = if u == 0.0 { 0.0 } else { u * (1.0 + 1.0 / (u * l)).ln() + (1.0 + u * l).ln() / l };
        v.copysign(d)
    };
    let f_ker = |d: f64| ((1.0 - (1.0 + d.abs() * l).powi(-2)) / (2.0 * l)).copysign(d);
    let mut log_sum = NeumaierSum::new();
    let mut ker_sum = NeumaierSum::new();
    let mut inside = 0;
    for &g in cache.gammas() {
        for gg in [g, -g] {
            let (lo, hi) = (t - gg, 2.0 * t - gg);
            log_sum.add(f_log(hi) - f_log(lo));
            ker_sum.add(f_ker(hi) - f_ker(lo));
        }
        if g >= t && g <= 2.0 * t {
            inside += 1;
        }
    }
    let norm = t.ln() / l;
    Ok(WindowAverages {
        log_window: (1.0 + log_sum.value() / t) / norm,
        kernel: ker_sum.value() / t / norm,
        zeros_in_range: inside,
    })
}

/// Primes `p ≤ n` by a simple sieve.
pub fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i);
            for m in (i * i..=n).step_by(i) {
                composite[m] = true;
            }
        }
    }
    out
}

/// `(1/π)Σ_{p≤P} p^{−½} sin(t log p)`.
pub fn prime_sine_sum(t: f64, primes: &[usize]) -> f64 {
    primes.iter().map(|&p| (p as f64).powf(-0.5) * (t * (p as f64).ln()).sin()).collect::<NeumaierSum>().value()
        / PI
}

/// Default prime cutoff `max(3, T^e)`.
pub fn default_prime_cutoff(t: f64, exponent: f64) -> f64 {
    t.powf(exponent).max(3.0)
}

/// `R(t) = S(t) + (1/π)Σ_{p≤P} p^{−½} sin(t log p)` with S by argument continuation.
pub fn r_of_t(ev: &Evaluator, t: f64, p: f64, known_zeros: &[f64]) -> Result<f64> {
    if !(t >= crate::DEFAULT_T0) {
        return Err(LabError::Domain(format!("R(t) requires t >= {}, got {t}", crate::DEFAULT_T0)));
    }
    if !(p >= 2.0) {
        return Err(LabError::Domain(format!("prime cutoff must be at least 2, got {p}")));
    }
    Ok(s_of_t(ev, t, known_zeros)? + prime_sine_sum(t, &primes_up_to(p as usize)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RMoment {
    #[serde(rename = "T")]
    pub t: f64,
    pub k: u32,
    #[serde(rename = "P")]
    pub p: f64,
    pub value: f64,
    pub est_err: f64,
    /// `(value/T)^{1/2k}/k`.
    pub c_emp: f64,
}

/// `∫_T^{2T} R(t)^{2k} dt`, with S counted from the cache.
pub fn r_moment(t: f64, k: u32, p: f64, cache: &ZeroCache, quad_cfg: &QuadConfig, exec: Exec) -> Result<RMoment> {
    if !(1..=4).contains(&k) {
        return Err(LabError::Domain(format!("k must lie in 1..=4, got {k}")));
    }
    if !(p >= 2.0) {
        return Err(LabError::Domain(format!("prime cutoff must be at least 2, got {p}")));
    }
    if !(t >= crate::DEFAULT_T0) {
        return Err(LabError::Domain(format!("r_moment requires T >= {}, got {t}", crate::DEFAULT_T0)));
    }
    cache.covers(t, 2.0 * t)?;
    let primes = primes_up_to(p as usize);
    let f = |x: f64| (cache.s_count(x) + prime_sine_sum(x, &primes)).powi(2 * k as i32);
    let r = quad::integrate(f, t, 2.0 * t, cache.gammas_in(t, 2.0 * t), quad_cfg, exec)?;
    let value = r.value.max(0.0);
    Ok(RMoment { t, k, p, value, est_err: r.est_err, c_emp: (value / t).powf(0.5 / k as f64) / k as f64 })
}
