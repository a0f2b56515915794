//! Moment integrals over `[T₀, T]` built from Z, Z', ζ' and S, with their
//! main terms.
//!
//! All integrals go through the panel quadrature of [`crate::quad`]. Grid
//! runs integrate once up to the largest `T`, with a panel break at every
//! requested `T`, and report prefix sums, so a four-point grid costs the same
//! as its largest member. Integrands involving `S(t)` use the count route
//! `S = N − θ/π − 1` with `N` from the zero cache, and panels break at every
//! cached ordinate in range.

use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::quad::{integrate_panels, panel_breaks, QuadConfig};
use crate::special::Evaluator;
use crate::sum::NeumaierSum;
use crate::zeros::ZeroCache;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MomentKind {
    Abs2,
    ZprimeZbar,
    ZzprimeS,
    Abs2S,
    Abs2S2,
}

impl MomentKind {
    pub fn name(self) -> &'static str {
        match self {
            MomentKind::Abs2 => "ABS2",
            MomentKind::ZprimeZbar => "ZPRIME_ZBAR",
            MomentKind::ZzprimeS => "ZZPRIME_S",
            MomentKind::Abs2S => "ABS2_S",
            MomentKind::Abs2S2 => "ABS2_S2",
        }
    }
}

impl std::str::FromStr for MomentKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abs2" => Ok(MomentKind::Abs2),
            "zprime_zbar" => Ok(MomentKind::ZprimeZbar),
            "zzprime_s" => Ok(MomentKind::ZzprimeS),
            "abs2_s" => Ok(MomentKind::Abs2S),
            "abs2_s2" => Ok(MomentKind::Abs2S2),
            _ => Err(LabError::Domain(format!("unknown moment kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentResult {
    pub kind: MomentKind,
    pub t0: f64,
    pub t1: f64,
    pub value: f64,
    pub main_term: f64,
    /// `value − main_term`.
    pub remainder: f64,
    pub est_quad_err: f64,
}

impl MomentResult {
    fn new(kind: MomentKind, t0: f64, t1: f64, value: f64, est_quad_err: f64, main_term: f64) -> Self {
        Self { kind, t0, t1, value, main_term, remainder: value - main_term, est_quad_err }
    }

    pub const CSV_HEADER: &'static str = "kind,t0,t1,value,main_term,remainder,est_quad_err";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:e},{:e},{:e},{:e}",
            self.kind.name(),
            self.t0,
            self.t1,
            self.value,
            self.main_term,
            self.remainder,
            self.est_quad_err
        )
    }
}

/// Euler's constant from the Euler–Maclaurin expansion of `H_n − log n`
/// at `n = 20`, computed once.
pub fn euler_gamma() -> f64 {
    static C0: OnceLock<f64> = OnceLock::new();
    *C0.get_or_init(|| {
        let n = 20.0f64;
        let harmonic: f64 = (1..=20).rev().map(|k| 1.0 / k as f64).sum();
        // H_n − log n − 1/(2n) + Σ B_{2k}/(2k n^{2k})
        let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];
        let mut corr = NeumaierSum::new();
        for (k, bk) in b.iter().enumerate() {
            let two_k = 2.0 * (k + 1) as f64;
            corr.add(bk / (two_k * n.powf(two_k)));
        }
        harmonic - n.ln() - 0.5 / n + corr.value()
    })
}

/// `T log(T/2π) + (2C₀−1)T`.
pub fn abs2_main(t: f64) -> f64 {
    t * (t / (2.0 * PI)).ln() + (2.0 * euler_gamma() - 1.0) * t
}

/// `−(T/2)log²(T/2π) + (1−C₀)T log(T/2π) + (C₀−1)T`.
pub fn zprime_zbar_main(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    let c0 = euler_gamma();
    -0.5 * t * l * l + (1.0 - c0) * t * l + (c0 - 1.0) * t
}

/// The same expression with the middle term lacking its factor `T`, as it
/// appears in the printed statement of the theorem.
pub fn zprime_zbar_main_printed(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    let c0 = euler_gamma();
    -0.5 * t * l * l + (1.0 - c0) * l + (c0 - 1.0) * t
}

/// `(T/4π)log²(T/2π) + ((C₀−1)/2π)T log(T/2π) + ((1−C₀)/2π)T`.
pub fn zzprime_s_main(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    let c0 = euler_gamma();
    t / (4.0 * PI) * l * l + (c0 - 1.0) / (2.0 * PI) * t * l + (1.0 - c0) / (2.0 * PI) * t
}

/// `T log T (log log T)^power`, the scale of the S-weighted second moments.
pub fn abs2_s_scale(t: f64, power: i32) -> f64 {
    t * t.ln() * t.ln().ln().powi(power)
}

/// Number of dispatcher points compared with the reference evaluator before
/// a run that uses the Riemann–Siegel path.
const FAST_PATH_CHECKS: usize = 64;

/// Moment integrals with a fixed evaluator, quadrature configuration and lower limit.
#[derive(Debug, Clone, Copy)]
pub struct Moments {
    pub ev: Evaluator,
    pub quad: QuadConfig,
    pub exec: Exec,
    pub t0: f64,
}

impl Moments {
    pub fn new(ev: Evaluator, quad: QuadConfig, exec: Exec, t0: f64) -> Self {
        Self { ev, quad, exec, t0 }
    }

    /// Integrals of `f` from `a` to each of `ts` (ascending), with panel breaks at `forced`.
    /// Returns (value, error estimate) per entry.
    pub fn cumulative<F>(&self, f: F, a: f64, ts: &[f64], forced: &[f64]) -> Result<Vec<(f64, f64)>>
    where
        F: Fn(f64) -> f64 + Sync + Send,
    {
        if ts.windows(2).any(|w| w[1] < w[0]) || ts.first().is_some_and(|&t| t < a) {
            return Err(LabError::Domain("grid must be ascending and above the lower limit".into()));
        }
        let Some(&top) = ts.last() else { return Ok(Vec::new()) };
        if top == a {
            return Ok(vec![(0.0, 0.0); ts.len()]);
        }
        self.validate_fast_path(a, top)?;
        let mut knots: Vec<f64> = forced.to_vec();
        knots.extend_from_slice(ts);
        let breaks = panel_breaks(a, top, self.quad.panel_max, &knots);
        let panels = integrate_panels(f, &breaks, &self.quad, self.exec)?;
        let mut out = Vec::with_capacity(ts.len());
        let mut acc = NeumaierSum::new();
        let mut err = 0.0;
        let mut next = 0;
        for (i, p) in panels.iter().enumerate() {
            while next < ts.len() && ts[next] <= breaks[i] {
                out.push((acc.value(), err));
                next += 1;
            }
            acc.add(p.value);
            err += p.est_err;
        }
        while out.len() < ts.len() {
            out.push((acc.value(), err));
        }
        Ok(out)
    }

    /// Compares the dispatcher with the reference evaluator on the first
    /// grid points of `[a, b]` that fall in the Riemann–Siegel range.
    fn validate_fast_path(&self, a: f64, b: f64) -> Result<()> {
        let lo = a.max(self.ev.config().rs_min_t);
        if b <= lo {
            return Ok(());
        }
        let step = self.quad.panel_max.min((b - lo) / FAST_PATH_CHECKS as f64);
        let pts: Vec<f64> = (0..FAST_PATH_CHECKS).map(|k| lo + step * (k as f64 + 0.5)).collect();
        let bad = self.exec.map(&pts, |&t| {
            let fast = self.ev.hardy_z(t).ok()?;
            let reference = self.ev.hardy_z_reference(t).ok()?;
            ((fast - reference).abs() > 1e-8).then_some(t)
        });
        match bad.into_iter().flatten().next() {
            Some(t) => Err(LabError::Consistency(format!("fast Z path disagrees with the reference at t = {t}"))),
            None => Ok(()),
        }
    }

    fn check_range(&self, t: f64, lo: f64) -> Result<()> {
        if !(t >= lo && t <= 1e4) {
            return Err(LabError::Domain(format!("T = {t} outside [{lo}, 1e4]")));
        }
        self.quad.check_panel_max(t)
    }

    /// `∫₀^T |ζ(½+it)|² dt` for each `T` in `ts`: the head `[0, T₀]` by the
    /// reference evaluator, the rest with Z² from the dispatcher.
    pub fn abs2_grid(&self, ts: &[f64]) -> Result<Vec<MomentResult>> {
        for &t in ts {
            self.check_range(t, 30.0)?;
        }
        let head = self.abs2_head()?;
        let ev = self.ev;
        let body = self.cumulative(|t| ev.z_unchecked(t).powi(2), self.t0, ts, &[])?;
        Ok(ts
            .iter()
            .zip(body)
            .map(|(&t, (v, e))| MomentResult::new(MomentKind::Abs2, 0.0, t, head.0 + v, head.1 + e, abs2_main(t)))
            .collect())
    }

    pub fn moment_abs2(&self, t: f64) -> Result<MomentResult> {
        Ok(self.abs2_grid(&[t])?[0])
    }

    fn abs2_head(&self) -> Result<(f64, f64)> {
        let terms = self.ev.config().em_terms;
        let f = |t: f64| crate::special::em::zeta_em(Complex64::new(0.5, t), terms).0.norm_sqr();
        let breaks = panel_breaks(0.0, self.t0, self.quad.panel_max, &[]);
        let panels = integrate_panels(f, &breaks, &self.quad, self.exec)?;
        let q = crate::quad::total(&panels);
        Ok((q.value, q.est_err))
    }

    /// `∫_{a}^{b} |ζ(½+it)|² dt` for `T₀ ≤ a ≤ b`, used for additivity checks.
    pub fn abs2_between(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        let ev = self.ev;
        Ok(self.cumulative(|t| ev.z_unchecked(t).powi(2), a, &[b], &[])?[0])
    }

    /// `Re ∫_{T₀}^T ζ'(½+it)ζ(½−it) dt` with ζ' from finite differences.
    pub fn zprime_zbar_grid(&self, ts: &[f64]) -> Result<Vec<MomentResult>> {
        for &t in ts {
            self.check_range(t, self.t0)?;
        }
        let ev = self.ev;
        let f = |t: f64| (ev.zeta_prime_half_unchecked(t) * ev.zeta_half_unchecked(t).conj()).re;
        let vals = self.cumulative(f, self.t0, ts, &[])?;
        Ok(ts
            .iter()
            .zip(vals)
            .map(|(&t, (v, e))| MomentResult::new(MomentKind::ZprimeZbar, self.t0, t, v, e, zprime_zbar_main(t)))
            .collect())
    }

    pub fn moment_zprime_zbar(&self, t: f64) -> Result<MomentResult> {
        Ok(self.zprime_zbar_grid(&[t])?[0])
    }

    /// `∫_{T₀}^T Z Z' S dt`.
    pub fn zzprime_s_grid(&self, ts: &[f64], cache: &ZeroCache) -> Result<Vec<MomentResult>> {
        for &t in ts {
            self.check_range(t, self.t0)?;
        }
        let top = ts.last().copied().unwrap_or(self.t0);
        cache.covers(self.t0, top)?;
        let ev = self.ev;
        let f = |t: f64| ev.z_unchecked(t) * ev.z_prime_unchecked(t) * cache.s_count(t);
        let vals = self.cumulative(f, self.t0, ts, cache.gammas_in(self.t0, top))?;
        Ok(ts
            .iter()
            .zip(vals)
            .map(|(&t, (v, e))| MomentResult::new(MomentKind::ZzprimeS, self.t0, t, v, e, zzprime_s_main(t)))
            .collect())
    }

    pub fn moment_zzprime_s(&self, t: f64, cache: &ZeroCache) -> Result<MomentResult> {
        Ok(self.zzprime_s_grid(&[t], cache)?[0])
    }

    /// `∫₀^T |ζ(½+it)|² S(t)^power dt`, `power ∈ {1, 2}`; the main term is 0.
    pub fn abs2_s_grid(&self, ts: &[f64], power: i32, cache: &ZeroCache) -> Result<Vec<MomentResult>> {
        let kind = match power {
            1 => MomentKind::Abs2S,
            2 => MomentKind::Abs2S2,
            _ => return Err(LabError::Domain(format!("power must be 1 or 2, got {power}"))),
        };
        for &t in ts {
            self.check_range(t, self.t0)?;
        }
        let top = ts.last().copied().unwrap_or(self.t0);
        cache.covers(0.0, top)?;
        let ev = self.ev;
        let terms = ev.config().em_terms;
        let t0 = self.t0;
        let f = |t: f64| {
            let abs2 = if t < t0 {
                crate::special::em::zeta_em(Complex64::new(0.5, t), terms).0.norm_sqr()
            } else {
                ev.z_unchecked(t).powi(2)
            };
            abs2 * cache.s_count(t).powi(power)
        };
        let vals = self.cumulative(f, 0.0, ts, cache.gammas_in(0.0, top))?;
        Ok(ts
            .iter()
            .zip(vals)
            .map(|(&t, (v, e))| MomentResult::new(kind, 0.0, t, v, e, 0.0))
            .collect())
    }

    pub fn moment_abs2_s(&self, t: f64, power: i32, cache: &ZeroCache) -> Result<MomentResult> {
        Ok(self.abs2_s_grid(&[t], power, cache)?[0])
    }

    /// `Re∫_{T₀}^T ζ'ζ̄ dt + ½∫_{T₀}^T Z² log(t/2π) dt` for each `T`; O(1) by the functional equation.
    pub fn identity_31_grid(&self, ts: &[f64]) -> Result<Vec<f64>> {
        for &t in ts {
            self.check_range(t, self.t0.min(30.0))?;
        }
        let ev = self.ev;
        let a = self.zprime_zbar_grid(ts)?;
        let b = self.cumulative(|t| 0.5 * ev.z_unchecked(t).powi(2) * (t / (2.0 * PI)).ln(), self.t0, ts, &[])?;
        Ok(a.iter().zip(b).map(|(x, (y, _))| x.value + y).collect())
    }

    pub fn identity_31_residual(&self, t: f64) -> Result<f64> {
        if !(t >= 30.0 || t == self.t0) {
            return Err(LabError::Domain(format!("T = {t} outside [30, 1e4]")));
        }
        Ok(self.identity_31_grid(&[t])?[0])
    }

    /// `½(Z²(T)S(T) − Z²(T₀)S(T₀))`, the boundary term linking the ZZ'S and ζ'ζ̄ integrals.
    pub fn bridge_boundary(&self, t: f64, cache: &ZeroCache) -> f64 {
        let g = |x: f64| self.ev.z_unchecked(x).powi(2) * cache.s_count(x);
        0.5 * (g(t) - g(self.t0))
    }
}
