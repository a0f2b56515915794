//! Sums over zero ordinates: `Σ |ζ(½+iγ)|²` and Gonek's shifted sum
//! `Σ |ζ(½+i(γ+α/L))|²`, `L = (1/2π)log(T/2π)`.

use crate::config::GonekLog;
use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::special::Evaluator;
use crate::sum::NeumaierSum;
use crate::zeros::ZeroCache;
use serde::Serialize;
use std::f64::consts::PI;

/// `Σ_{0<γ≤T} Z(γ)²`; zero in exact arithmetic, so it measures refinement residuals.
pub fn sum_sq_zeros(ev: &Evaluator, t: f64, cache: &ZeroCache, exec: Exec) -> Result<f64> {
    cache.covers(0.0, t)?;
    let gammas = cache.gammas_in(0.0, t);
    Ok(ordered_sum(exec.map(gammas, |&g| ev.z_unchecked(g).powi(2))))
}

fn ordered_sum(xs: Vec<f64>) -> f64 {
    xs.into_iter().collect::<NeumaierSum>().value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftedZeroSum {
    #[serde(rename = "T")]
    pub t: f64,
    pub alpha: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub value: f64,
    pub main_term: f64,
    /// `value / main_term`; `None` when the main term vanishes (α = 0).
    pub ratio: Option<f64>,
    /// Bound on the evaluation error of `value`: `Σ 2|Z|·est_abs_err`.
    pub est_err: f64,
    /// Whether `|α| ≤ L/2`, the range in which the asymptotic formula is uniform.
    pub in_range: bool,
}

impl ShiftedZeroSum {
    pub const CSV_HEADER: &'static str = "T,alpha,L,value,main_term,ratio";

    pub fn csv_row(&self) -> String {
        let ratio = self.ratio.map_or_else(|| "nan".to_string(), |r| format!("{r:e}"));
        format!("{},{},{:e},{:e},{:e},{}", self.t, self.alpha, self.l, self.value, self.main_term, ratio)
    }
}

/// `1 − (sin πα / πα)²`, with the removable singularity at α = 0 filled by its limit.
pub fn sinc_factor(alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let x = PI * alpha;
    if x.abs() < 1e-4 {
        // 1 − sinc² = x²/3 − 2x⁴/45 + …
        let x2 = x * x;
        return x2 / 3.0 - 2.0 * x2 * x2 / 45.0;
    }
    1.0 - (x.sin() / x).powi(2)
}

/// `L = (1/2π)log(T/2π)`.
pub fn gonek_l(t: f64) -> f64 {
    (t / (2.0 * PI)).ln() / (2.0 * PI)
}

pub fn gonek_main(t: f64, alpha: f64, log: GonekLog) -> f64 {
    let lg = match log {
        GonekLog::Literal => t.ln(),
        GonekLog::Shifted => (t / (2.0 * PI)).ln(),
    };
    sinc_factor(alpha) * t / (2.0 * PI) * lg * lg
}

/// Gonek's shifted sum, restricted to the uniformity range `|α| ≤ L/2`.
pub fn gonek_sum(ev: &Evaluator, t: f64, alpha: f64, cache: &ZeroCache, log: GonekLog, exec: Exec) -> Result<ShiftedZeroSum> {
    let l = gonek_l(t);
    if !(l > 0.0) || alpha.abs() > 0.5 * l {
        return Err(LabError::Range(format!("|alpha| = {} exceeds L/2 = {} at T = {t}", alpha.abs(), 0.5 * l)));
    }
    gonek_sum_extended(ev, t, alpha, cache, log, exec)
}

/// The same sum for any α, with `in_range` recording whether `|α| ≤ L/2`.
pub fn gonek_sum_extended(
    ev: &Evaluator,
    t: f64,
    alpha: f64,
    cache: &ZeroCache,
    log: GonekLog,
    exec: Exec,
) -> Result<ShiftedZeroSum> {
    let l = gonek_l(t);
    if !(l > 0.0) {
        return Err(LabError::Range(format!("L must be positive, T = {t}")));
    }
    cache.covers(0.0, t)?;
    let shift = alpha / l;
    let gammas = cache.gammas_in(0.0, t);
    let terms = exec.map(gammas, |&g| {
        let x = g + shift;
        let z = ev.z_unchecked(x);
        (z * z, 2.0 * z.abs() * ev.z_error_estimate(x))
    });
    let value = terms.iter().map(|p| p.0).collect::<NeumaierSum>().value();
    let est_err = terms.iter().map(|p| p.1).sum();
    let main_term = gonek_main(t, alpha, log);
    Ok(ShiftedZeroSum {
        t,
        alpha,
        l,
        value,
        main_term,
        ratio: (main_term != 0.0).then(|| value / main_term),
        est_err,
        in_range: alpha.abs() <= 0.5 * l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EvalConfig;
    use crate::zeros::ZeroRecord;
    use std::sync::OnceLock;

    fn ev() -> Evaluator {
        Evaluator::new(EvalConfig::default()).unwrap()
    }

    fn cache() -> &'static ZeroCache {
        static C: OnceLock<ZeroCache> = OnceLock::new();
        C.get_or_init(|| ZeroCache::scan(&ev(), 1.0, 1500.0, Exec::Parallel).unwrap())
    }

    #[test]
    fn empty_below_first_zero() {
        assert_eq!(sum_sq_zeros(&ev(), 10.0, cache(), Exec::Sequential).unwrap(), 0.0);
    }

    #[test]
    fn residual_sum_is_tiny() {
        let n = cache().count_le(1500.0) as f64;
        let v = sum_sq_zeros(&ev(), 1500.0, cache(), Exec::Parallel).unwrap();
        assert!(v <= 1e-18 * n, "{v:e}");
        assert!(v <= 1e-10);
    }

    #[test]
    fn stale_cache_is_detected() {
        let mut recs: Vec<ZeroRecord> = cache().records()[..50].to_vec();
        recs[10].gamma += 1e-3;
        let stale = ZeroCache::new(recs, 1.0, cache().records()[49].gamma + 0.01).unwrap();
        let t = stale.t_max_scanned();
        assert!(sum_sq_zeros(&ev(), t, &stale, Exec::Sequential).unwrap() > 1e-4 * 1e-2);
        // |Z'| near a zero is O(1), so a 1e-3 shift moves Z by roughly 1e-3.
        let zp = ev().hardy_z_prime(cache().gammas()[10]).unwrap().value;
        let expected = (zp * 1e-3).powi(2);
        let got = sum_sq_zeros(&ev(), t, &stale, Exec::Sequential).unwrap();
        assert!((got / expected - 1.0).abs() < 0.01, "{got:e} vs {expected:e}");
    }

    #[test]
    fn coverage_error() {
        assert!(matches!(sum_sq_zeros(&ev(), 2000.0, cache(), Exec::Sequential), Err(LabError::Coverage { .. })));
    }

    #[test]
    fn sinc_factor_values() {
        assert_eq!(sinc_factor(0.0), 0.0);
        assert!((sinc_factor(0.5) - (1.0 - (2.0 / PI).powi(2))).abs() < 1e-15);
        assert!((sinc_factor(0.5) - 0.594_715).abs() < 1e-6);
        assert!((sinc_factor(1.0) - 1.0).abs() < 1e-15);
        // Both sides of the series switch agree with the Taylor expansion.
        for x in [0.999e-4f64, 1.001e-4] {
            let series = x * x / 3.0 - 2.0 * x.powi(4) / 45.0;
            assert!((sinc_factor(x / PI) - series).abs() < 1e-15);
        }
    }

    #[test]
    fn alpha_zero_matches_unshifted_sum() {
        let e = ev();
        let g = gonek_sum(&e, 1500.0, 0.0, cache(), GonekLog::Literal, Exec::Parallel).unwrap();
        assert_eq!(g.main_term, 0.0);
        assert_eq!(g.ratio, None);
        assert_eq!(g.value, sum_sq_zeros(&e, 1500.0, cache(), Exec::Parallel).unwrap());
    }

    #[test]
    fn range_is_enforced() {
        let e = ev();
        let l = gonek_l(1500.0);
        assert!(matches!(
            gonek_sum(&e, 1500.0, 0.6 * l, cache(), GonekLog::Literal, Exec::Sequential),
            Err(LabError::Range(_))
        ));
        let ext = gonek_sum_extended(&e, 1500.0, 0.6 * l, cache(), GonekLog::Literal, Exec::Sequential).unwrap();
        assert!(!ext.in_range);
    }

    #[test]
    fn shifted_sum_against_direct_reference() {
        let e = ev();
        let alpha = 0.3;
        let g = gonek_sum(&e, 300.0, alpha, cache(), GonekLog::Literal, Exec::Sequential).unwrap();
        let shift = alpha / gonek_l(300.0);
        let direct: f64 = cache()
            .gammas_in(0.0, 300.0)
            .iter()
            .map(|&x| e.zeta_em(num_complex::Complex64::new(0.5, x + shift)).unwrap().norm_sqr())
            .sum();
        assert!((g.value - direct).abs() <= 1e-8 * direct, "{} vs {}", g.value, direct);
        assert!(g.est_err <= 1e-6);
    }

    #[test]
    fn csv_row_has_six_fields() {
        let g = gonek_sum(&ev(), 500.0, 0.25, cache(), GonekLog::Shifted, Exec::Sequential).unwrap();
        assert_eq!(g.csv_row().split(',').count(), 6);
        assert!(g.ratio.unwrap() > 0.0);
    }
}
