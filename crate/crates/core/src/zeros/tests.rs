use super::*;
use crate::special::EvalConfig;
use std::sync::OnceLock;

fn ev() -> Evaluator {
    Evaluator::new(EvalConfig::default()).unwrap()
}

/// Zeros up to 1100, shared by the tests below.
fn cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(|| ZeroCache::scan(&ev(), 1.0, 1100.0, Exec::Parallel).unwrap())
}

/// Independent zero finder: plain bisection on the reference Z.
fn bisect_zero(lo: f64, hi: f64) -> f64 {
    let e = ev();
    let z = |t: f64| e.hardy_z_reference(t).unwrap();
    let (mut a, mut b) = (lo, hi);
    let fa = z(a);
    assert!(fa * z(b) < 0.0);
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        if (z(m) < 0.0) == (fa < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[test]
fn first_zero_alone_in_14_15() {
    let recs = scan_and_refine(&ev(), 14.0, 15.0, Exec::Sequential).unwrap();
    assert_eq!(recs.len(), 1);
    let oracle = bisect_zero(14.0, 14.2);
    assert!((recs[0].gamma - oracle).abs() <= 1e-9, "{} vs {}", recs[0].gamma, oracle);
    assert_eq!(recs[0].index, 1);
    assert!(recs[0].bracket_width <= 1e-9);
}

#[test]
fn no_zeros_below_13() {
    assert!(scan_and_refine(&ev(), 2.0, 13.0, Exec::Sequential).unwrap().is_empty());
}

#[test]
fn scan_preconditions() {
    assert!(matches!(scan_and_refine(&ev(), 0.9, 5.0, Exec::Sequential), Err(LabError::Domain(_))));
    assert!(scan_and_refine(&ev(), 5.0, 5.0, Exec::Sequential).is_err());
    assert!(scan_and_refine(&ev(), 5.0, 2e5, Exec::Sequential).is_err());
}

#[test]
fn counts_at_14_and_100() {
    let e = ev();
    assert_eq!(n_of_t(&e, 14.0, cache().gammas()).unwrap(), 0);
    assert_eq!(n_of_t(&e, 100.0, cache().gammas()).unwrap(), 29);
    assert_eq!(cache().count_le(100.0), 29);
    assert!(matches!(n_of_t(&e, 14.134725, cache().gammas()), Err(LabError::Proximity { .. })));
}

#[test]
fn scan_matches_independent_bisection_on_first_ten() {
    let e = ev();
    // Brackets from a fine uniform grid on the reference evaluator.
    let z = |t: f64| e.hardy_z_reference(t).unwrap();
    let mut brackets = Vec::new();
    let mut t = 10.0;
    while brackets.len() < 10 {
        if z(t) * z(t + 0.01) < 0.0 {
            brackets.push((t, t + 0.01));
        }
        t += 0.01;
    }
    for (r, (a, b)) in cache().records().iter().zip(brackets) {
        assert!((r.gamma - bisect_zero(a, b)).abs() < 1e-9);
    }
}

#[test]
fn records_satisfy_residual_and_sign_invariants() {
    let e = ev();
    for r in cache().records() {
        let zp = e.hardy_z_prime(r.gamma).unwrap().value;
        assert!(r.z_residual <= 1e-9 * (1.0 + zp.abs()), "{r:?}");
        assert!(r.bracket_width <= 1e-9);
        assert_eq!(r.multiplicity_flag, 1);
        let w = 2.0 * r.bracket_width.max(1e-12);
        let (lo, hi) = (e.hardy_z(r.gamma - w).unwrap(), e.hardy_z(r.gamma + w).unwrap());
        assert!(lo * hi <= 0.0 || r.z_residual == 0.0, "{r:?}");
    }
    let idx: Vec<usize> = cache().records().iter().map(|r| r.index).collect();
    assert_eq!(idx, (1..=cache().len()).collect::<Vec<_>>());
}

#[test]
fn s_matches_count_route_at_30() {
    let e = ev();
    let s = s_of_t(&e, 30.0, cache().gammas()).unwrap();
    let by_count = 3.0 - e.theta(30.0).unwrap() / PI - 1.0;
    assert!((s - by_count).abs() <= 1e-6, "{s} vs {by_count}");
}

#[test]
fn s_jumps_by_one_across_first_zero() {
    let e = ev();
    let g = cache().gammas()[0];
    let below = s_of_t(&e, g - 0.01, &[]).unwrap();
    let above = s_of_t(&e, g + 0.01, &[]).unwrap();
    // θ changes by θ'·0.02 across the probe pair.
    let drift = (e.theta(g + 0.01).unwrap() - e.theta(g - 0.01).unwrap()) / PI;
    assert!((above - below + drift - 1.0).abs() <= 1e-3, "{}", above - below);
    assert!((above - below - 1.0).abs() <= 1e-3 + drift.abs());
}

#[test]
fn s_at_2_from_empty_count() {
    // N(2) = 0, so S(2) = −1 − θ(2)/π.
    let e = ev();
    let s = s_of_t(&e, 2.0, &[]).unwrap();
    let expected = -1.0 - theta_raw(2.0) / PI;
    assert!((s - expected).abs() <= 1e-9, "{s} vs {expected}");
    assert!(matches!(s_of_t(&e, 1.5, &[]), Err(LabError::Domain(_))));
}

#[test]
fn s_pole_guard() {
    let g = cache().gammas()[3];
    assert!(matches!(s_of_t(&ev(), g + 5e-5, cache().gammas()), Err(LabError::Proximity { .. })));
}

#[test]
fn count_certificate_at_random_heights() {
    use rand::{Rng, SeedableRng};
    let e = ev();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 50 {
        let t: f64 = rng.gen_range(20.0..1100.0);
        if cache().nearest(t).unwrap().1 < 1e-3 {
            continue;
        }
        let x = n_real(&e, t).unwrap();
        assert!((x - x.round()).abs() < 0.05, "t = {t}: {x}");
        assert_eq!(n_of_t(&e, t, cache().gammas()).unwrap(), cache().count_le(t), "t = {t}");
        let s = s_of_t(&e, t, cache().gammas()).unwrap();
        assert!((s - cache().s_count(t)).abs() <= 1e-6);
        assert!(s.abs() <= t.ln());
        checked += 1;
    }
}

#[test]
fn parallel_and_sequential_scans_agree() {
    let e = ev();
    let a = scan_and_refine(&e, 100.0, 260.0, Exec::Sequential).unwrap();
    let b = scan_and_refine(&e, 100.0, 260.0, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].index, 30);
    let from_cache: Vec<f64> = cache().gammas_in(100.0, 260.0).to_vec();
    let scanned: Vec<f64> = a.iter().map(|r| r.gamma).collect();
    assert_eq!(from_cache.len(), scanned.len());
    for (x, y) in from_cache.iter().zip(&scanned) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn grid_halving_recovers_close_pair() {
    // Lehmer's pair near 7005.1 is closer than the base grid step.
    let e = ev();
    let strict = ScanConfig { chunk_len: 1.0, max_rescans: 0 };
    let r = scan_with(&e, 7005.0, 7006.0, strict, Exec::Sequential);
    assert!(matches!(r, Err(LabError::IncompleteScan { .. })), "{r:?}");
    let r = scan_with(&e, 7005.0, 7006.0, ScanConfig { chunk_len: 1.0, max_rescans: 3 }, Exec::Sequential).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r[1].gamma - r[0].gamma < 0.1);
}

#[test]
fn cache_round_trip_of_first_29() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    let recs: Vec<ZeroRecord> = cache().records()[..29].to_vec();
    let c = ZeroCache::new(recs, 1.0, 100.0).unwrap();
    c.save(&path).unwrap();
    let back = ZeroCache::load(&path).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.len(), 29);
}

#[test]
fn empty_cache_round_trip() {
    let c = ZeroCache::new(Vec::new(), 1.0, 10.0).unwrap();
    let back = ZeroCache::from_csv(&c.to_csv()).unwrap();
    assert_eq!(back, c);
    assert!(back.is_empty());
    assert!(back.covers(0.0, 10.0).is_ok());
    assert!(back.covers(0.0, 11.0).is_err());
}

#[test]
fn tampering_is_detected() {
    let c = ZeroCache::new(cache().records()[..5].to_vec(), 1.0, 30.0).unwrap();
    let text = c.to_csv();
    let lines: Vec<&str> = text.lines().collect();
    // Swap two records: ordering violation.
    let mut swapped = lines.clone();
    swapped.swap(3, 4);
    assert!(matches!(ZeroCache::from_csv(&swapped.join("\n")), Err(LabError::Format(_))));
    // Perturb a digit of gamma: checksum mismatch.
    let tampered = text.replacen("1.4134725141734", "1.4134725141735", 1);
    assert_ne!(tampered, text);
    assert!(matches!(ZeroCache::from_csv(&tampered), Err(LabError::CorruptCache(_))));
    // Drop the checksum.
    let truncated: String = lines[..lines.len() - 1].join("\n");
    assert!(matches!(ZeroCache::from_csv(&truncated), Err(LabError::Format(_))));
}

#[test]
fn checksum_is_fnv1a() {
    let mut h = fnv::FnvHasher::default();
    h.write(b"a");
    assert_eq!(h.finish(), 0xaf63_dc4c_8601_ec8c);
}

#[test]
fn coverage_queries() {
    let c = cache();
    assert!(c.covers(0.0, 1000.0).is_ok());
    assert!(matches!(c.covers(0.0, 2000.0), Err(LabError::Coverage { .. })));
    let partial = ZeroCache::new(Vec::new(), 500.0, 600.0).unwrap();
    assert!(partial.covers(510.0, 590.0).is_ok());
    assert!(partial.covers(400.0, 590.0).is_err());
}
