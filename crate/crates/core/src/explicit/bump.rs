//! The smooth bump `u`, its tail `v` and its Mellin transform `ũ`.

use num_complex::Complex64;
use std::f64::consts::{E, PI};

/// Gauss–Legendre rule mapped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    /// `n`-point Gauss–Legendre rule by Newton iteration on `P_n`.
    pub fn gauss_legendre(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Truncated Taylor series of order 4, used to differentiate the bump exactly.
#[derive(Debug, Clone, Copy)]
struct Jet([f64; 5]);

impl Jet {
    fn var(x: f64) -> Self {
        Jet([x, 1.0, 0.0, 0.0, 0.0])
    }

    fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0, 0.0])
    }

    fn mul(self, o: Jet) -> Jet {
        let mut r = [0.0; 5];
        for (i, ri) in r.iter_mut().enumerate() {
            *ri = (0..=i).map(|j| self.0[j] * o.0[i - j]).sum();
        }
        Jet(r)
    }

    fn recip(self) -> Jet {
        let mut r = [0.0; 5];
        r[0] = 1.0 / self.0[0];
        for i in 1..5 {
            let s: f64 = (1..=i).map(|j| self.0[j] * r[i - j]).sum();
            r[i] = -s * r[0];
        }
        Jet(r)
    }

    fn exp(self) -> Jet {
        let mut r = [0.0; 5];
        r[0] = self.0[0].exp();
        for n in 1..5 {
            let s: f64 = (1..=n).map(|k| k as f64 * self.0[k] * r[n - k]).sum();
            r[n] = s / n as f64;
        }
        Jet(r)
    }

    fn scale(self, c: f64) -> Jet {
        Jet(self.0.map(|v| v * c))
    }

    fn sub(self, o: Jet) -> Jet {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0) {
            *a -= b;
        }
        Jet(r)
    }
}

/// `exp(−1/((x−1)(e−x)))` on `(1, e)`, zero elsewhere.
fn bump_raw(x: f64) -> f64 {
    if x <= 1.0 || x >= E {
        return 0.0;
    }
    (-1.0 / ((x - 1.0) * (E - x))).exp()
}

/// `u(x) = c·exp(−1/((x−1)(e−x)))`, normalised so that `∫u = 1`.
///
/// Every integral of `u` (the normalisation, `v`, `ũ`) goes through the same
/// 64-point rule in `y = log x`, so `v(1) = ũ(1) = 1` hold to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothTestFunction {
    pub normalization: f64,
    /// Rule on `y ∈ [0, 1]`, i.e. `x = e^y ∈ [1, e]`.
    pub quad_nodes: QuadRule,
    /// `max |u^(k)|` on `[1, e]` for `k = 0..=4`.
    pub umax_derivs: [f64; 5],
    /// `u(e^y)·e^y` at the rule's nodes, which is all `ũ` needs.
    weights_u: Vec<f64>,
}

impl Default for SmoothTestFunction {
    fn default() -> Self {
        Self::new()
    }
}

/// Oscillation handled by one copy of the 64-point rule before it is
/// subdivided; a degree-127 rule resolves `e^{iωy}` on `[0, 1]` to rounding
/// for ω up to about 60.
const MAX_FREQ_PER_PANEL: f64 = 40.0;

impl SmoothTestFunction {
    pub fn new() -> Self {
        let rule = QuadRule::gauss_legendre(64);
        let raw: Vec<f64> = rule.nodes.iter().map(|&y| bump_raw(y.exp()) * y.exp()).collect();
        let mass: f64 = raw.iter().zip(&rule.weights).map(|(f, w)| f * w).sum();
        let c = 1.0 / mass;
        let weights_u = raw.iter().zip(&rule.weights).map(|(f, w)| c * f * w).collect();
        Self { normalization: c, umax_derivs: derivative_maxima(c), quad_nodes: rule, weights_u }
    }

    pub fn u(&self, x: f64) -> f64 {
        self.normalization * bump_raw(x)
    }

    /// `v(x) = ∫_x^∞ u`, equal to 1 on `[0, 1]` and 0 from `e` on.
    pub fn v(&self, x: f64) -> f64 {
        if x <= 1.0 {
            return 1.0;
        }
        if x >= E {
            return 0.0;
        }
        // ∫_{log x}^{1} u(e^y)e^y dy with the rule mapped onto the subinterval.
        let a = x.ln();
        let h = 1.0 - a;
        let s: f64 = self
            .quad_nodes
            .nodes
            .iter()
            .zip(&self.quad_nodes.weights)
            .map(|(&y, &w)| {
                let xe = (a + h * y).exp();
                w * self.u(xe) * xe
            })
            .sum();
        (s * h).clamp(0.0, 1.0)
    }

    /// `ũ(s) = ∫₁^e u(x)x^{s−1} dx`. Large `|Im s|` splits `[0, 1]` (in
    /// `y = log x`) into equal panels, each carrying the 64-point rule.
    pub fn mellin(&self, s: Complex64) -> Complex64 {
        if s.im.abs() <= MAX_FREQ_PER_PANEL {
            return self
                .quad_nodes
                .nodes
                .iter()
                .zip(&self.weights_u)
                .map(|(&y, &w)| (s - 1.0).scale(y).exp() * w)
                .sum();
        }
        let panels = (s.im.abs() / MAX_FREQ_PER_PANEL).ceil() as usize;
        let h = 1.0 / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = p as f64 * h;
            for (&y, &w) in self.quad_nodes.nodes.iter().zip(&self.quad_nodes.weights) {
                let yy = a + h * y;
                let x = yy.exp();
                let u = self.u(x);
                if u == 0.0 {
                    continue;
                }
                acc += (s.scale(yy)).exp() * (w * h * u);
            }
        }
        acc
    }

    /// `|ũ(s)|` bound from k-fold integration by parts:
    /// `max|u^(k)|·e^{max(Re s, 0) + 4k}·(1 + |s|)^{−k}`.
    pub fn mellin_bound(&self, s: Complex64, k: usize) -> f64 {
        self.umax_derivs[k] * (s.re.max(0.0) + 4.0 * k as f64).exp() * (1.0 + s.norm()).powi(-(k as i32))
    }
}

/// `max |u^(k)|`, k ≤ 4, sampled on a fine grid with exact Taylor coefficients.
fn derivative_maxima(c: f64) -> [f64; 5] {
    let n = 20_000;
    let mut out = [0.0f64; 5];
    let fact = [1.0, 1.0, 2.0, 6.0, 24.0];
    for i in 1..n {
        let x = 1.0 + (E - 1.0) * i as f64 / n as f64;
        let xv = Jet::var(x);
        let q = xv.sub(Jet::constant(1.0)).mul(Jet::constant(E).sub(xv));
        let j = q.recip().scale(-1.0).exp().scale(c);
        for k in 0..5 {
            out[k] = out[k].max((j.0[k] * fact[k]).abs());
        }
    }
    out
}
