//! Numerical laboratory for the Riemann zeta function on the critical line.
//!
//! The crate evaluates Hardy's `Z(t)`, the Riemann–Siegel theta function,
//! `S(t)` and `N(T)`; locates and caches zero ordinates; integrates the
//! oscillatory moment integrals built from `Z`, `Z'` and `S`; evaluates sums
//! over zeros; and implements the smoothed explicit formulas for `log ζ` and
//! `ζ'/ζ` with a compactly supported bump function.
//!
//! Data-parallel loops (quadrature panels, zero-scan chunks, sums over zeros)
//! run on rayon when the `parallel` feature is enabled and fall back to plain
//! iterators otherwise. Reductions always happen in a fixed order, so results
//! do not depend on the worker count.

pub mod config;
pub mod error;
pub mod exec;
pub mod explicit;
pub mod harness;
pub mod moments;
pub mod quad;
pub mod special;
pub mod sum;
pub mod zero_sums;
pub mod zeros;

pub use config::LabConfig;
pub use error::{LabError, Result};
pub use exec::Exec;
pub use special::{EvalConfig, EvalPoint, Evaluator};
pub use zeros::{ZeroCache, ZeroRecord};

/// Default lower integration limit `T₀` and explicit-formula parameter `X`.
pub const DEFAULT_T0: f64 = 20.0;
pub const DEFAULT_X: f64 = 3.0;
