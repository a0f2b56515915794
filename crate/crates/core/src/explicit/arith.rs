//! Sieved arithmetic functions: primes, Λ(n), d(n), ω(n).

use crate::error::{LabError, Result};
use std::path::Path;

const MAGIC: &[u8; 8] = b"CLARITH\0";
const VERSION: u32 = 1;

/// Tables for `1 ≤ n ≤ n_max`, indexed by `n` (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithTables {
    n_max: usize,
    primes: Vec<u32>,
    /// `p` when `n = p^m`, else 0; Λ(n) = log of this.
    lambda_base: Vec<u32>,
    divisors: Vec<u32>,
    omega: Vec<u8>,
}

impl ArithTables {
    /// Linear sieve over `[1, n_max]`.
    pub fn build(n_max: usize) -> Result<Self> {
        if n_max < 2 || n_max > u32::MAX as usize - 1 {
            return Err(LabError::Range(format!("table size {n_max} outside [2, 2^32)")));
        }
        let len = n_max + 1;
        let mut spf = vec![0u32; len];
        let mut primes = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > spf[i] || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }
        let mut lambda_base = vec![0u32; len];
        let mut divisors = vec![0u32; len];
        let mut omega = vec![0u8; len];
        // Exponent of spf(n) in n, needed for d(n) = d(n/p^e)·(e+1).
        let mut exp = vec![0u8; len];
        divisors[1] = 1;
        for n in 2..len {
            let p = spf[n] as usize;
            let rest = n / p;
            if rest % p == 0 {
                exp[n] = exp[rest] + 1;
                omega[n] = omega[rest];
                let e = exp[n] as u32;
                divisors[n] = divisors[rest] / e * (e + 1);
                if lambda_base[rest] == p as u32 {
                    lambda_base[n] = p as u32;
                }
            } else {
                exp[n] = 1;
                omega[n] = omega[rest] + 1;
                divisors[n] = divisors[rest] * 2;
                if rest == 1 {
                    lambda_base[n] = p as u32;
                }
            }
        }
        Ok(Self { n_max, primes, lambda_base, divisors, omega })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn primes_up_to(&self, x: f64) -> &[u32] {
        let k = self.primes.partition_point(|&p| (p as f64) <= x);
        &self.primes[..k]
    }

    fn check(&self, n: usize) {
        assert!(n >= 1 && n <= self.n_max, "n = {n} outside table [1, {}]", self.n_max);
    }

    /// Λ(n) = log p if n = p^m, else 0.
    pub fn von_mangoldt(&self, n: usize) -> f64 {
        self.check(n);
        match self.lambda_base[n] {
            0 => 0.0,
            p => (p as f64).ln(),
        }
    }

    /// The prime `p` when `n = p^m`.
    pub fn prime_power_base(&self, n: usize) -> Option<u32> {
        self.check(n);
        (self.lambda_base[n] != 0).then_some(self.lambda_base[n])
    }

    pub fn divisor_count(&self, n: usize) -> u32 {
        self.check(n);
        self.divisors[n]
    }

    pub fn omega(&self, n: usize) -> u8 {
        self.check(n);
        self.omega[n]
    }

    /// `Σ_{m≤x} ω(m)²` exactly, and its ratio to `x(log log x)²`.
    pub fn omega_sq_sum(&self, x: usize) -> Result<(f64, f64)> {
        if !(1_000..=10_000_000).contains(&x) {
            return Err(LabError::Domain(format!("omega_sq_sum requires 1e3 <= X <= 1e7, got {x}")));
        }
        if x > self.n_max {
            return Err(LabError::Range(format!("X = {x} exceeds the table size {}", self.n_max)));
        }
        let sum: u64 = self.omega[1..=x].iter().map(|&w| (w as u64) * (w as u64)).sum();
        let xf = x as f64;
        let ll = xf.ln().ln();
        Ok((sum as f64, sum as f64 / (xf * ll * ll)))
    }

    /// `Σ_{m≤x} ω(m)²/m`, the weighted companion sum.
    pub fn omega_sq_harmonic(&self, x: usize) -> Result<f64> {
        if x > self.n_max {
            return Err(LabError::Range(format!("X = {x} exceeds the table size {}", self.n_max)));
        }
        Ok(crate::sum::neumaier((1..=x).map(|m| (self.omega[m] as f64).powi(2) / m as f64)))
    }

    /// Binary layout: magic, version (u32), `n_max` (u64), prime count (u64),
    /// then primes, Λ bases and d(n) as little-endian u32 and ω as bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let len = self.n_max + 1;
        let mut out = Vec::with_capacity(24 + 4 * self.primes.len() + 9 * len);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.n_max as u64).to_le_bytes());
        out.extend_from_slice(&(self.primes.len() as u64).to_le_bytes());
        for v in self.primes.iter().chain(&self.lambda_base).chain(&self.divisors) {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&self.omega);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |m: &str| LabError::Format(format!("arithmetic tables: {m}"));
        if bytes.len() < 28 || &bytes[..8] != MAGIC {
            return Err(bad("missing header"));
        }
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let n_max = u64::from_le_bytes(bytes[12..20].try_into().unwrap()) as usize;
        let n_primes = u64::from_le_bytes(bytes[20..28].try_into().unwrap()) as usize;
        let len = n_max.checked_add(1).ok_or_else(|| bad("size overflow"))?;
        let expected = n_primes
            .checked_add(2 * len)
            .and_then(|w| w.checked_mul(4))
            .and_then(|b| b.checked_add(len + 28))
            .ok_or_else(|| bad("size overflow"))?;
        if bytes.len() != expected {
            return Err(bad(&format!("expected {expected} bytes, found {}", bytes.len())));
        }
        let mut words = bytes[28..28 + 4 * (n_primes + 2 * len)]
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()));
        let primes: Vec<u32> = words.by_ref().take(n_primes).collect();
        let lambda_base: Vec<u32> = words.by_ref().take(len).collect();
        let divisors: Vec<u32> = words.collect();
        let omega = bytes[bytes.len() - len..].to_vec();
        Ok(Self { n_max, primes, lambda_base, divisors, omega })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::zeros::write_atomic(path, &self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }

    /// Loads `arith_<n_max>.bin` from `dir` when present and large enough,
    /// otherwise sieves and stores it there.
    pub fn cached(dir: &Path, n_max: usize) -> Result<Self> {
        let path = dir.join(format!("arith_{n_max}.bin"));
        if let Ok(t) = Self::load(&path) {
            if t.n_max >= n_max {
                return Ok(t);
            }
        }
        let t = Self::build(n_max)?;
        t.save(&path)?;
        Ok(t)
    }
}
