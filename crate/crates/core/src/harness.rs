//! Verification suites: each runs one family of checks over a grid of
//! heights and collects `(computed, expected, tol)` rows into a report.

use crate::config::LabConfig;
use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::explicit::{log_zeta_direct, logderiv_direct, ExplicitFormula};
use crate::moments::{abs2_main, abs2_s_scale, zprime_zbar_main_printed, Moments};
use crate::special::Evaluator;
use crate::zero_sums::{gonek_sum_extended, sum_sq_zeros, ShiftedZeroSum};
use crate::zeros::{n_real, s_of_t, ZeroCache};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem4,
    Gonek,
    Explicit,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Theorem1, Suite::Theorem2, Suite::Theorem4, Suite::Gonek, Suite::Explicit, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem4 => "theorem4",
            Suite::Gonek => "gonek",
            Suite::Explicit => "explicit",
            Suite::Identities => "identities",
        }
    }

    /// Ordinate range the suite needs from the zero cache, if any.
    pub fn required_coverage(self, grid: &[f64], cfg: &LabConfig) -> Option<(f64, f64)> {
        let top = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let bottom = grid.iter().copied().fold(f64::INFINITY, f64::min);
        match self {
            Suite::Theorem1 => None,
            Suite::Theorem2 | Suite::Theorem4 | Suite::Gonek => Some((0.0, top)),
            Suite::Explicit => {
                let w = cfg.explicit.window_c / cfg.explicit.x.ln();
                Some(((bottom - w).max(0.0), top + w))
            }
            Suite::Identities => Some((bottom, top)),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| LabError::Domain(format!("unknown suite `{s}`")))
    }
}

/// One check: passes when `|computed − expected| ≤ tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub id: String,
    pub computed: f64,
    pub expected: f64,
    pub tol: f64,
}

impl CheckRow {
    pub fn new(id: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        Self { id: id.into(), computed, expected, tol }
    }

    /// `computed ≤ bound`, written as a row centred on 0 with `computed ≥ 0`.
    pub fn at_most(id: impl Into<String>, computed: f64, bound: f64) -> Self {
        Self::new(id, computed.abs(), 0.0, bound)
    }

    pub fn pass(&self) -> bool {
        (self.computed - self.expected).abs() <= self.tol
    }
}

impl Serialize for CheckRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckRow", 5)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("computed", &self.computed)?;
        st.serialize_field("expected", &self.expected)?;
        st.serialize_field("tol", &self.tol)?;
        st.serialize_field("pass", &self.pass())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub t_grid: Vec<f64>,
    pub rows: Vec<CheckRow>,
    pub config_echo: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(CheckRow::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn versions(cache: Option<&ZeroCache>) -> BTreeMap<String, String> {
    let mut v = BTreeMap::new();
    v.insert("code".to_string(), format!("critline {}", env!("CARGO_PKG_VERSION")));
    if let Some(c) = cache {
        v.insert("zero_cache_checksum".to_string(), format!("{:016x}", c.checksum()));
        v.insert("zero_cache_range".to_string(), format!("{},{}", c.t_min_scanned(), c.t_max_scanned()));
    }
    v
}

fn key(t: f64) -> String {
    format!("{t}")
}

/// Runs `suite` over `grid` (every value ≥ 30).
pub fn run_suite(suite: Suite, grid: &[f64], cfg: &LabConfig, cache: Option<&ZeroCache>, exec: Exec) -> Result<VerificationReport> {
    cfg.validate()?;
    if grid.is_empty() {
        return Err(LabError::Domain("empty t grid".into()));
    }
    if let Some(bad) = grid.iter().find(|&&t| !(t >= 30.0)) {
        return Err(LabError::Domain(format!("grid values must be at least 30, got {bad}")));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let cache = match suite.required_coverage(&grid, cfg) {
        Some((lo, hi)) => {
            let c = cache.ok_or(LabError::Coverage { lo, hi })?;
            c.covers(lo, hi)?;
            Some(c)
        }
        None => cache,
    };
    let ev = Evaluator::new(cfg.eval)?;
    let rows = match suite {
        Suite::Identities => identities(&ev, &grid, cfg, cache)?,
        Suite::Theorem1 => theorem1(&ev, &grid, cfg, exec)?,
        Suite::Theorem2 => theorem2(&ev, &grid, cfg, cache.expect("coverage checked"), exec)?,
        Suite::Theorem4 => theorem4(&ev, &grid, cfg, cache.expect("coverage checked"), exec)?,
        Suite::Gonek => gonek(&ev, &grid, cfg, cache.expect("coverage checked"), exec)?,
        Suite::Explicit => explicit(&ev, &grid, cfg, cache.expect("coverage checked"), exec)?,
    };
    let mut config_echo = cfg.echo();
    config_echo.insert("exec".into(), if exec.is_parallel() { "parallel" } else { "sequential" }.into());
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        t_grid: grid,
        rows,
        config_echo,
        versions: versions(cache),
    })
}

fn identities(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, cache: Option<&ZeroCache>) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let known = cache.map(ZeroCache::gammas).unwrap_or(&[]);
    let mut rows = Vec::new();
    for &t in grid {
        let j = ev.j_of_t(t, known)?;
        rows.push(CheckRow::at_most(format!("re_j@{}", key(t)), j.re, b.re_j));
        let p = ev.eval_point(t)?;
        let z2 = p.z * p.z;
        rows.push(CheckRow::new(format!("z_squared@{}", key(t)), z2, p.zeta_half.norm_sqr(), b.z_squared * (1.0 + z2)));
        let n = n_real(ev, t)?;
        rows.push(CheckRow::new(format!("n_residue@{}", key(t)), n, n.round(), b.n_residue));
        if let Some(c) = cache {
            rows.push(CheckRow::new(format!("n_count@{}", key(t)), n.round(), c.count_le(t) as f64, 0.0));
        }
    }
    Ok(rows)
}

fn moments(ev: &Evaluator, cfg: &LabConfig, exec: Exec) -> Moments {
    Moments::new(*ev, cfg.quad, exec, cfg.t0)
}

fn theorem1(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, exec: Exec) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let m = moments(ev, cfg, exec);
    let abs2 = m.abs2_grid(grid)?;
    let zpz = m.zprime_zbar_grid(grid)?;
    let id31 = m.identity_31_grid(grid)?;
    let mut rows = Vec::new();
    for (i, &t) in grid.iter().enumerate() {
        let scale = t.powf(1.0 / 3.0);
        rows.push(CheckRow::at_most(format!("second_moment@{}", key(t)), (abs2[i].value - abs2_main(t)) / scale, b.second_moment_factor));
        rows.push(CheckRow::at_most(format!("thm1_remainder@{}", key(t)), zpz[i].remainder / scale, b.thm1_factor));
        let printed = zpz[i].value - zprime_zbar_main_printed(t);
        // Below 1 when the derivation-consistent main term fits better than the printed one.
        rows.push(CheckRow::at_most(format!("thm1_dual_fit@{}", key(t)), zpz[i].remainder.abs() / printed.abs(), 1.0));
        rows.push(CheckRow::at_most(format!("identity31@{}", key(t)), id31[i], b.identity31));
    }
    Ok(rows)
}

fn theorem2(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, cache: &ZeroCache, exec: Exec) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let m = moments(ev, cfg, exec);
    let zzs = m.zzprime_s_grid(grid, cache)?;
    let zpz = m.zprime_zbar_grid(grid)?;
    let mut rows = Vec::new();
    for (i, &t) in grid.iter().enumerate() {
        rows.push(CheckRow::at_most(format!("thm2_remainder@{}", key(t)), zzs[i].remainder / t.powf(1.0 / 3.0), b.thm2_factor));
        let bridge = (zzs[i].value + zpz[i].value / (2.0 * PI)) / zzs[i].value;
        rows.push(CheckRow::at_most(format!("thm2_bridge@{}", key(t)), bridge, b.thm2_bridge));
    }
    Ok(rows)
}

fn theorem4(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, cache: &ZeroCache, exec: Exec) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let m = moments(ev, cfg, exec);
    let s1 = m.abs2_s_grid(grid, 1, cache)?;
    let s2 = m.abs2_s_grid(grid, 2, cache)?;
    let mut rows = Vec::new();
    for (i, &t) in grid.iter().enumerate() {
        rows.push(CheckRow::at_most(format!("thm4_s@{}", key(t)), s1[i].value / abs2_s_scale(t, 1), b.thm4_ratio));
        rows.push(CheckRow::at_most(format!("thm4_s2@{}", key(t)), s2[i].value / abs2_s_scale(t, 2), b.thm4_ratio));
    }
    Ok(rows)
}

/// Shifts used by the Gonek suite; the ordering check runs over the positive ones.
pub const GONEK_ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// Number of adjacent pairs whose order differs from that of `1 − sinc²(α)`.
pub fn gonek_order_violations(sums: &[ShiftedZeroSum]) -> usize {
    sums.windows(2)
        .filter(|w| (w[1].value - w[0].value).signum() != (w[1].main_term - w[0].main_term).signum())
        .count()
}

fn gonek(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, cache: &ZeroCache, exec: Exec) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let mut rows = Vec::new();
    let centre = 0.5 * (b.gonek_lo + b.gonek_hi);
    let half = 0.5 * (b.gonek_hi - b.gonek_lo);
    for &t in grid {
        rows.push(CheckRow::at_most(format!("gonek_zero@{}", key(t)), sum_sq_zeros(ev, t, cache, exec)?, b.gonek_zero_sum));
        let sums = GONEK_ALPHAS
            .iter()
            .map(|&a| gonek_sum_extended(ev, t, a, cache, cfg.gonek_log, exec))
            .collect::<Result<Vec<_>>>()?;
        for s in &sums {
            if s.alpha == 0.5 || s.alpha == 1.0 {
                let ratio = s.ratio.unwrap_or(f64::NAN);
                rows.push(CheckRow::new(format!("gonek_ratio@{},alpha={}", key(t), s.alpha), ratio, centre, half));
            }
        }
        rows.push(CheckRow::new(format!("gonek_order@{}", key(t)), gonek_order_violations(&sums) as f64, 0.0, 0.0));
        let minus = gonek_sum_extended(ev, t, -0.5, cache, cfg.gonek_log, exec)?;
        let plus = &sums[1];
        rows.push(CheckRow::at_most(
            format!("gonek_symmetry@{}", key(t)),
            (plus.value - minus.value) / plus.value,
            b.gonek_symmetry,
        ));
    }
    Ok(rows)
}

fn explicit(ev: &Evaluator, grid: &[f64], cfg: &LabConfig, cache: &ZeroCache, exec: Exec) -> Result<Vec<CheckRow>> {
    let b = &cfg.check;
    let x = cfg.explicit.x;
    let fm = ExplicitFormula::new(*ev, cfg.explicit, exec);
    let known = cache.gammas();
    let mut rows = Vec::new();
    for &t in grid {
        let k = key(t);
        let formula = fm.log_zeta(t, x, cache)?;
        let direct = log_zeta_direct(ev, t, known)?;
        rows.push(CheckRow::new(format!("log_zeta_re@{k}"), formula.value.re, direct.re, b.explicit_tol));
        rows.push(CheckRow::new(format!("log_zeta_im@{k}"), formula.value.im, direct.im, b.explicit_tol));
        let s = s_of_t(ev, t, known)?;
        rows.push(CheckRow::new(format!("log_zeta_im_vs_pi_s@{k}"), formula.value.im, PI * s, b.explicit_tol));
        for (sigma, tol) in [(2.0, b.logderiv_tol_sigma2), (0.5, b.logderiv_tol_half)] {
            let f = fm.logderiv(sigma, t, x, cache)?;
            let d = logderiv_direct(ev, Complex64::new(sigma, t))?;
            rows.push(CheckRow::new(format!("logderiv_re@{k},sigma={sigma}"), f.value.re, d.re, tol));
            rows.push(CheckRow::new(format!("logderiv_im@{k},sigma={sigma}"), f.value.im, d.im, tol));
        }
        let half = fm.log_zeta_window(t, x, 0.5 * formula.window, cache)?;
        rows.push(CheckRow::at_most(format!("window_halving@{k}"), (formula.value - half.value).norm(), half.tail_bound));
    }
    Ok(rows)
}
