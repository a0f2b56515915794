//! Zero ordinates on the critical line: S(t), N(T), scanning and refinement,
//! and the on-disk zero cache.
//!
//! `S(t)` is computed from its definition, `(1/π)` times the continuous
//! variation of `arg ζ` along `2 → 2+it → ½+it`. On the vertical segment
//! `Re ζ(2+iτ) ≥ 2 − ζ(2) > 0`, so the variation there is the principal
//! argument of `ζ(2+it)`. The horizontal segment is followed by adaptive
//! sampling that never lets the phase move by more than π/4 between
//! neighbouring samples.
//!
//! Scans are certified by the integer `θ(T)/π + 1 + S(T)` at chunk
//! boundaries, never by Gram's law.

use crate::error::{LabError, Result};
use crate::exec::Exec;
use crate::special::{em, theta_prime, theta_raw, Evaluator};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::hash::Hasher;
use std::io::Write as _;
use std::path::Path;

/// One refined zero ordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    /// 1-based rank by ordinate.
    pub index: usize,
    pub gamma: f64,
    /// |Z(gamma)| after refinement.
    pub z_residual: f64,
    pub bracket_width: f64,
    /// 1 for a presumed simple zero, 2 when |Z'(gamma)| < 1e-4 and the zero needs review.
    pub multiplicity_flag: u8,
}

/// Shortest phase step accepted before the path is declared to pass through a zero.
const MIN_ARG_STEP: f64 = 1e-10;

/// `(1/π)·arg ζ` continued along `2 → 2+it → ½+it`, for any `t > 0`.
pub(crate) fn s_by_continuation(ev: &Evaluator, t: f64) -> Result<f64> {
    let terms = ev.config().em_terms;
    let zeta = |sigma: f64| em::zeta_em(Complex64::new(sigma, t), terms).0;
    let start = zeta(2.0);
    let mut total = start.arg();
    let pieces = 8;
    let mut prev = (2.0, start);
    for k in 1..=pieces {
        let sigma = 2.0 - 1.5 * k as f64 / pieces as f64;
        let next = (sigma, zeta(sigma));
        total += arg_variation(&zeta, prev, next, t)?;
        prev = next;
    }
    Ok(total / PI)
}

fn arg_variation(
    zeta: &impl Fn(f64) -> Complex64,
    (a, fa): (f64, Complex64),
    (b, fb): (f64, Complex64),
    t: f64,
) -> Result<f64> {
    let mut stack = vec![((a, fa), (b, fb))];
    let mut total = 0.0;
    while let Some(((a, fa), (b, fb))) = stack.pop() {
        let m = 0.5 * (a + b);
        let fm = zeta(m);
        let d = (fb / fa).arg();
        let d1 = (fm / fa).arg();
        let d2 = (fb / fm).arg();
        let settled = d.abs() < PI / 4.0
            && d1.abs() < PI / 4.0
            && d2.abs() < PI / 4.0
            && (d1 + d2 - d).abs() < 1e-9;
        if settled {
            total += d1 + d2;
        } else if (a - b).abs() < MIN_ARG_STEP || fm.norm() == 0.0 {
            return Err(LabError::Proximity { t, gamma: t, distance: (m - 0.5).abs() });
        } else {
            stack.push(((m, fm), (b, fb)));
            stack.push(((a, fa), (m, fm)));
        }
    }
    Ok(total)
}

fn nearest_distance(sorted: &[f64], t: f64) -> Option<(f64, f64)> {
    let idx = sorted.partition_point(|&g| g < t);
    [idx.checked_sub(1), Some(idx)]
        .into_iter()
        .flatten()
        .filter_map(|i| sorted.get(i))
        .map(|&g| (g, (g - t).abs()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
}

fn guard(known_zeros: &[f64], t: f64, min_distance: f64) -> Result<()> {
    match nearest_distance(known_zeros, t) {
        Some((gamma, distance)) if distance < min_distance => Err(LabError::Proximity { t, gamma, distance }),
        _ => Ok(()),
    }
}

/// S(t) by argument continuation, `t ≥ 2`. `known_zeros` (sorted) drives the
/// 1e-4 pole guard; pass an empty slice to rely on the path check alone.
pub fn s_of_t(ev: &Evaluator, t: f64, known_zeros: &[f64]) -> Result<f64> {
    if !(t >= 2.0) {
        return Err(LabError::Domain(format!("S(t) requires t >= 2, got {t}")));
    }
    if t > ev.config().max_t {
        return Err(LabError::OutOfRange { t, max: ev.config().max_t });
    }
    guard(known_zeros, t, 1e-4)?;
    s_by_continuation(ev, t)
}

/// `θ(T)/π + 1 + S(T)` before rounding.
pub fn n_real(ev: &Evaluator, t: f64) -> Result<f64> {
    Ok(theta_raw(t) / PI + 1.0 + s_by_continuation(ev, t)?)
}

fn round_count(t: f64, x: f64, tol: f64) -> Result<usize> {
    let n = x.round();
    if (x - n).abs() > tol || n < 0.0 {
        return Err(LabError::Consistency(format!(
            "theta/pi + 1 + S at T = {t} is {x}, not within {tol} of an integer"
        )));
    }
    Ok(n as usize)
}

/// N(T) = round(θ(T)/π + 1 + S(T)), `T ≥ 1`, with the residue asserted to be below 0.05.
pub fn n_of_t(ev: &Evaluator, t: f64, known_zeros: &[f64]) -> Result<usize> {
    if !(t >= 1.0) {
        return Err(LabError::Domain(format!("N(T) requires T >= 1, got {t}")));
    }
    guard(known_zeros, t, 1e-6)?;
    round_count(t, n_real(ev, t)?, 0.05)
}

/// Grid step for the sign-change scan: a quarter of the mean zero spacing, at most 0.25.
fn grid_step(t: f64) -> f64 {
    let tp = theta_prime(t);
    if tp > 0.0 {
        (PI / (4.0 * tp)).min(0.25)
    } else {
        0.25
    }
}

/// Illinois-modified regula falsi on a sign-change bracket of Z. Returns
/// (gamma, bracket width).
fn refine(z: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> (f64, f64) {
    let tol = 8.0 * f64::EPSILON * b.abs().max(1.0);
    let mut side = 0i8;
    for _ in 0..200 {
        if (b - a) <= tol {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = z(c);
        if fc == 0.0 {
            return (c, 0.0);
        }
        if (fc < 0.0) == (fa < 0.0) {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        // Keep the bracket shrinking geometrically even when one end stalls.
        let mid = 0.5 * (a + b);
        let fm = z(mid);
        if fm == 0.0 {
            return (mid, 0.0);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    (0.5 * (a + b), b - a)
}

/// Sign-change brackets of Z on `[a, b]`, scanning with the grid step divided by `2^halvings`.
fn scan_chunk(ev: &Evaluator, a: f64, b: f64, halvings: u32) -> Vec<(f64, f64)> {
    let z = |t: f64| ev.z_unchecked(t);
    let scale = 0.5f64.powi(halvings as i32);
    let mut out = Vec::new();
    let mut x = a;
    let mut fx = z(x);
    while x < b {
        let y = (x + grid_step(x) * scale).min(b);
        let fy = z(y);
        if fy == 0.0 && y < b {
            // A grid point landed on a zero; nudge it.
            let y2 = y + 1e-9;
            out.push((x, y2));
            x = y2;
            fx = z(y2);
            continue;
        }
        if (fx < 0.0) != (fy < 0.0) && fx != 0.0 {
            out.push((x, y));
        }
        x = y;
        fx = fy;
    }
    out
}

fn refine_brackets(ev: &Evaluator, brackets: &[(f64, f64)]) -> Vec<ZeroRecord> {
    let z = |t: f64| ev.z_unchecked(t);
    brackets
        .iter()
        .map(|&(a, b)| {
            let (gamma, width) = refine(&z, a, b, z(a), z(b));
            let zp = ev.z_prime_unchecked(gamma);
            ZeroRecord {
                index: 0,
                gamma,
                z_residual: z(gamma).abs(),
                bracket_width: width,
                multiplicity_flag: if zp.abs() < 1e-4 { 2 } else { 1 },
            }
        })
        .collect()
}

/// Scan tuning; the defaults suit the whole desk range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Length of each certified chunk.
    pub chunk_len: f64,
    /// Grid halvings tried on a chunk whose count falls short.
    pub max_rescans: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { chunk_len: 50.0, max_rescans: 3 }
    }
}

/// Moves a checkpoint off any nearby zero so the count there is well defined.
fn safe_checkpoint(ev: &Evaluator, mut c: f64, limit: f64) -> f64 {
    for _ in 0..100 {
        if ev.z_unchecked(c).abs() > 1e-3 || c + 0.01 >= limit {
            break;
        }
        c += 0.01;
    }
    c
}

/// All zeros of Z in `[t_lo, t_hi]`, refined and certified chunk by chunk.
pub fn scan_and_refine(ev: &Evaluator, t_lo: f64, t_hi: f64, exec: Exec) -> Result<Vec<ZeroRecord>> {
    scan_with(ev, t_lo, t_hi, ScanConfig::default(), exec)
}

pub fn scan_with(ev: &Evaluator, t_lo: f64, t_hi: f64, scfg: ScanConfig, exec: Exec) -> Result<Vec<ZeroRecord>> {
    if !(t_lo >= 1.0 && t_lo < t_hi && t_hi <= 1e5) {
        return Err(LabError::Domain(format!("scan requires 1 <= t_lo < t_hi <= 1e5, got [{t_lo}, {t_hi}]")));
    }
    if t_hi > ev.config().max_t {
        return Err(LabError::OutOfRange { t: t_hi, max: ev.config().max_t });
    }
    let n_chunks = ((t_hi - t_lo) / scfg.chunk_len).ceil().max(1.0) as usize;
    let nominal: Vec<f64> = (1..n_chunks).map(|k| t_lo + k as f64 * (t_hi - t_lo) / n_chunks as f64).collect();
    let mut points = vec![t_lo];
    points.extend(exec.map(&nominal, |&c| safe_checkpoint(ev, c, t_hi)));
    points.push(t_hi);
    let counts = exec.map(&points, |&t| n_real(ev, t).and_then(|x| round_count(t, x, 0.05)));
    let counts = counts.into_iter().collect::<Result<Vec<_>>>()?;

    let chunks: Vec<(f64, f64, usize)> = points
        .windows(2)
        .zip(counts.windows(2))
        .map(|(p, c)| (p[0], p[1], c[1].saturating_sub(c[0])))
        .collect();
    let found = exec.map(&chunks, |&(a, b, expected)| {
        for halvings in 0..=scfg.max_rescans {
            let brackets = scan_chunk(ev, a, b, halvings);
            if brackets.len() == expected {
                return Ok(refine_brackets(ev, &brackets));
            }
            if brackets.len() > expected {
                return Err(LabError::IncompleteScan {
                    lo: a,
                    hi: b,
                    reason: format!("{} sign changes but the count certificate gives {expected}", brackets.len()),
                });
            }
        }
        Err(LabError::IncompleteScan {
            lo: a,
            hi: b,
            reason: format!("count certificate gives {expected} zeros; grid halving could not locate them all"),
        })
    });
    let mut records = Vec::new();
    for chunk in found {
        records.extend(chunk?);
    }
    let offset = counts[0];
    for (i, r) in records.iter_mut().enumerate() {
        r.index = offset + i + 1;
    }
    if records.windows(2).any(|w| w[1].gamma <= w[0].gamma) {
        return Err(LabError::Consistency("merged zero list is not strictly increasing".into()));
    }
    Ok(records)
}

/// Refined zeros plus the range they certify.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    records: Vec<ZeroRecord>,
    gammas: Vec<f64>,
    t_min_scanned: f64,
    t_max_scanned: f64,
    checksum: u64,
}

/// Below this height Z has no zeros, so any scan starting lower covers `[0, t]`.
const FIRST_ZERO_FLOOR: f64 = 14.0;

impl ZeroCache {
    pub fn new(records: Vec<ZeroRecord>, t_min_scanned: f64, t_max_scanned: f64) -> Result<Self> {
        validate_records(&records)?;
        let checksum = checksum(&records);
        let gammas = records.iter().map(|r| r.gamma).collect();
        Ok(Self { records, gammas, t_min_scanned, t_max_scanned, checksum })
    }

    pub fn scan(ev: &Evaluator, t_lo: f64, t_hi: f64, exec: Exec) -> Result<Self> {
        Self::new(scan_and_refine(ev, t_lo, t_hi, exec)?, t_lo, t_hi)
    }

    pub fn records(&self) -> &[ZeroRecord] {
        &self.records
    }

    /// Ordinates in increasing order.
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn t_min_scanned(&self) -> f64 {
        self.t_min_scanned
    }

    pub fn t_max_scanned(&self) -> f64 {
        self.t_max_scanned
    }

    pub fn checksum(&self) -> u64 {
        self.checksum
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Errors unless every zero with ordinate in `[lo, hi]` is in the cache.
    pub fn covers(&self, lo: f64, hi: f64) -> Result<()> {
        let low_ok = lo >= self.t_min_scanned || self.t_min_scanned <= FIRST_ZERO_FLOOR;
        if low_ok && hi <= self.t_max_scanned {
            Ok(())
        } else {
            Err(LabError::Coverage { lo, hi })
        }
    }

    /// Number of zeros with `0 < γ ≤ t`.
    pub fn count_le(&self, t: f64) -> usize {
        let below = self.records.first().map_or(0, |r| r.index - 1);
        below + self.gammas.partition_point(|&g| g <= t)
    }

    /// Ordinates in `[lo, hi]`.
    pub fn gammas_in(&self, lo: f64, hi: f64) -> &[f64] {
        let i = self.gammas.partition_point(|&g| g < lo);
        let j = self.gammas.partition_point(|&g| g <= hi);
        &self.gammas[i..j.max(i)]
    }

    /// Nearest cached ordinate and its distance from `t`.
    pub fn nearest(&self, t: f64) -> Option<(f64, f64)> {
        nearest_distance(&self.gammas, t)
    }

    /// S(t) = N(t) − θ(t)/π − 1 with N from the cache; cheap enough for integrands.
    pub fn s_count(&self, t: f64) -> f64 {
        self.count_le(t) as f64 - theta_raw(t) / PI - 1.0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,gamma,z_residual,bracket_width,multiplicity_flag\n");
        let _ = writeln!(out, "#scanned={:e},{:e}", self.t_min_scanned, self.t_max_scanned);
        for r in &self.records {
            out.push_str(&record_line(r));
            out.push('\n');
        }
        let _ = writeln!(out, "#checksum={}", self.checksum);
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("index,gamma,z_residual,bracket_width,multiplicity_flag") {
            return Err(LabError::Format("missing zero-cache header".into()));
        }
        let mut records = Vec::new();
        let mut scanned = None;
        let mut stored = None;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("#scanned=") {
                let (lo, hi) = v.split_once(',').ok_or_else(|| LabError::Format("bad #scanned line".into()))?;
                scanned = Some((parse_f64(lo)?, parse_f64(hi)?));
            } else if let Some(v) = line.strip_prefix("#checksum=") {
                stored = Some(v.parse::<u64>().map_err(|_| LabError::Format("bad checksum line".into()))?);
            } else if line.starts_with('#') {
                continue;
            } else {
                if stored.is_some() {
                    return Err(LabError::Format("record after checksum line".into()));
                }
                records.push(parse_record(line)?);
            }
        }
        let stored = stored.ok_or_else(|| LabError::Format("missing #checksum line".into()))?;
        let (lo, hi) = scanned.ok_or_else(|| LabError::Format("missing #scanned line".into()))?;
        validate_records(&records)?;
        let cache = Self::new(records, lo, hi)?;
        if cache.checksum != stored {
            return Err(LabError::CorruptCache(format!(
                "checksum {} does not match stored {stored}",
                cache.checksum
            )));
        }
        Ok(cache)
    }

    /// Writes the cache atomically: a temporary file in the target directory is renamed into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Writes through a temporary file in the target directory, so a failed
/// write never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| LabError::Io(e.error.to_string()))?;
    Ok(())
}

fn record_line(r: &ZeroRecord) -> String {
    format!("{},{:.16e},{:e},{:e},{}", r.index, r.gamma, r.z_residual, r.bracket_width, r.multiplicity_flag)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| LabError::Format(format!("not a number: `{s}`")))
}

fn parse_record(line: &str) -> Result<ZeroRecord> {
    let f: Vec<&str> = line.split(',').collect();
    if f.len() != 5 {
        return Err(LabError::Format(format!("expected 5 fields: `{line}`")));
    }
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| LabError::Format(format!("not an integer: `{s}`")));
    let flag = int(f[4])?;
    if !(flag == 1 || flag == 2) {
        return Err(LabError::Format(format!("multiplicity flag must be 1 or 2: `{line}`")));
    }
    Ok(ZeroRecord {
        index: int(f[0])?,
        gamma: parse_f64(f[1])?,
        z_residual: parse_f64(f[2])?,
        bracket_width: parse_f64(f[3])?,
        multiplicity_flag: flag as u8,
    })
}

fn validate_records(records: &[ZeroRecord]) -> Result<()> {
    for w in records.windows(2) {
        if !(w[1].gamma > w[0].gamma) {
            return Err(LabError::Format(format!("ordinates not increasing at index {}", w[1].index)));
        }
        if w[1].index != w[0].index + 1 {
            return Err(LabError::Format(format!("index gap after {}", w[0].index)));
        }
    }
    if records.first().is_some_and(|r| r.index == 0) {
        return Err(LabError::Format("indices are 1-based".into()));
    }
    Ok(())
}

/// 64-bit FNV-1a over the record lines, each terminated by `\n`.
fn checksum(records: &[ZeroRecord]) -> u64 {
    let mut h = fnv::FnvHasher::default();
    for r in records {
        h.write(record_line(r).as_bytes());
        h.write(b"\n");
    }
    h.finish()
}

#[cfg(test)]
mod tests;
