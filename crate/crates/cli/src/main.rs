//! `critline`: zero scans, moment integrals, shifted zero sums, explicit
//! formula comparisons and verification suites from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 missing or bad data
//! (coverage, incomplete scan, corrupt cache), 3 I/O, 64 usage.

use clap::{Parser, Subcommand};
use critline::config::{cache_dir, GonekLog};
use critline::explicit::{log_zeta_direct, logderiv_direct, ExplicitFormula};
use critline::harness::{run_suite, Suite};
use critline::moments::{MomentKind, MomentResult, Moments};
use critline::zero_sums::{gonek_sum_extended, ShiftedZeroSum};
use critline::zeros::write_atomic;
use critline::{Evaluator, Exec, LabConfig, LabError, ZeroCache};
use num_complex::Complex64;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CHECK: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "critline", version, about = "Numerical laboratory for zeta on the critical line")]
struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set check.thm1_factor=12`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Scan, refine and certify zeros in a range and write the zero cache.
    Zeros {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite over a grid of heights.
    Verify {
        #[arg(long, value_parser = suite_names())]
        suite: String,
        #[arg(long = "t-grid", value_delimiter = ',', required = true)]
        t_grid: Vec<f64>,
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// One moment integral as a CSV row.
    Moment {
        #[arg(long, value_parser = ["abs2", "zprime_zbar", "zzprime_s", "abs2_s", "abs2_s2"])]
        kind: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        zeros: Option<PathBuf>,
    },
    /// Gonek's shifted sum as a CSV row.
    Gonek {
        #[arg(long)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        zeros: PathBuf,
    },
    /// Explicit formula against direct evaluation, as JSON.
    Explicit {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        zeros: PathBuf,
    },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(Suite::ALL.map(Suite::name))
}

fn exit_code(e: &LabError) -> u8 {
    match e {
        LabError::Io(_) => EXIT_IO,
        LabError::Coverage { .. }
        | LabError::IncompleteScan { .. }
        | LabError::CorruptCache(_)
        | LabError::Format(_)
        | LabError::Proximity { .. } => EXIT_DATA,
        LabError::Domain(_) | LabError::Range(_) | LabError::OutOfRange { .. } | LabError::Pole => EXIT_USAGE,
        LabError::Budget { .. } | LabError::Precision(_) | LabError::Consistency(_) => EXIT_CHECK,
    }
}

/// Relative cache paths live under `$CRITLINE_CACHE_DIR`.
fn cache_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        cache_dir().join(p)
    }
}

fn load_cache(p: &Path) -> Result<ZeroCache, LabError> {
    let path = cache_path(p);
    ZeroCache::load(&path).map_err(|e| match e {
        LabError::Io(msg) => LabError::Io(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn resolve_config(cli: &Cli) -> Result<LabConfig, LabError> {
    let mut cfg = match &cli.config {
        Some(p) => LabConfig::load(p)?,
        None => LabConfig::default(),
    };
    for kv in &cli.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| LabError::Domain(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, LabError> {
    // A malformed configuration is a usage problem, not bad data.
    let cfg = resolve_config(&cli).map_err(|e| match e {
        LabError::Format(m) => LabError::Domain(m),
        other => other,
    })?;
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let ev = Evaluator::new(cfg.eval)?;
    match cli.cmd {
        Cmd::Zeros { from, to, out } => {
            let cache = ZeroCache::scan(&ev, from, to, exec)?;
            let path = cache_path(&out);
            cache.save(&path)?;
            let flagged = cache.records().iter().filter(|r| r.multiplicity_flag != 1).count();
            println!(
                "{} zeros in [{from}, {to}], count certified at every checkpoint, {flagged} flagged; checksum {:016x} -> {}",
                cache.len(),
                cache.checksum(),
                path.display()
            );
            Ok(0)
        }
        Cmd::Verify { suite, t_grid, zeros, json } => {
            let suite: Suite = suite.parse()?;
            let cache = zeros.as_deref().map(load_cache).transpose()?;
            let report = run_suite(suite, &t_grid, &cfg, cache.as_ref(), exec)?;
            let text = report.to_json() + "\n";
            match json {
                Some(p) => write_atomic(&p, text.as_bytes())?,
                None => print!("{text}"),
            }
            for r in report.failures() {
                eprintln!("FAIL {}: computed {:e}, expected {:e}, tol {:e}", r.id, r.computed, r.expected, r.tol);
            }
            eprintln!("{}: {}/{} checks pass", report.suite, report.rows.len() - report.failures().count(), report.rows.len());
            Ok(if report.all_pass() { 0 } else { EXIT_CHECK })
        }
        Cmd::Moment { kind, t, zeros } => {
            let kind: MomentKind = kind.parse()?;
            let m = Moments::new(ev, cfg.quad, exec, cfg.t0);
            let needs_cache = matches!(kind, MomentKind::ZzprimeS | MomentKind::Abs2S | MomentKind::Abs2S2);
            let cache = match (needs_cache, zeros) {
                (true, None) => return Err(LabError::Coverage { lo: 0.0, hi: t }),
                (_, z) => z.as_deref().map(load_cache).transpose()?,
            };
            let r = match kind {
                MomentKind::Abs2 => m.moment_abs2(t)?,
                MomentKind::ZprimeZbar => m.moment_zprime_zbar(t)?,
                MomentKind::ZzprimeS => m.moment_zzprime_s(t, cache.as_ref().expect("checked"))?,
                MomentKind::Abs2S => m.moment_abs2_s(t, 1, cache.as_ref().expect("checked"))?,
                MomentKind::Abs2S2 => m.moment_abs2_s(t, 2, cache.as_ref().expect("checked"))?,
            };
            println!("{}\n{}", MomentResult::CSV_HEADER, r.csv_row());
            Ok(0)
        }
        Cmd::Gonek { t, alpha, zeros } => {
            let cache = load_cache(&zeros)?;
            let g = gonek_sum_extended(&ev, t, alpha, &cache, cfg.gonek_log, exec)?;
            if !g.in_range {
                eprintln!("note: |alpha| = {} exceeds L/2 = {}; the asymptotic formula is not uniform there", alpha.abs(), g.l / 2.0);
            }
            if cfg.gonek_log == GonekLog::Shifted {
                eprintln!("note: main term uses log^2(T/2pi)");
            }
            println!("{}\n{}", ShiftedZeroSum::CSV_HEADER, g.csv_row());
            Ok(0)
        }
        Cmd::Explicit { t, x, zeros } => {
            let cache = load_cache(&zeros)?;
            let x = x.unwrap_or(cfg.explicit.x);
            let fm = ExplicitFormula::new(ev, cfg.explicit, exec);
            let formula = fm.log_zeta(t, x, &cache)?;
            let direct = log_zeta_direct(&ev, t, cache.gammas())?;
            let d2 = fm.logderiv(2.0, t, x, &cache)?;
            let d2_direct = logderiv_direct(&ev, Complex64::new(2.0, t))?;
            let dh = fm.logderiv(0.5, t, x, &cache)?;
            let dh_direct = logderiv_direct(&ev, Complex64::new(0.5, t))?;
            let tol = cfg.check.explicit_tol;
            let delta = formula.value - direct;
            let pass = delta.re.abs() <= tol
                && delta.im.abs() <= tol
                && (d2.value - d2_direct).re.abs().max((d2.value - d2_direct).im.abs()) <= cfg.check.logderiv_tol_sigma2
                && (dh.value - dh_direct).re.abs().max((dh.value - dh_direct).im.abs()) <= cfg.check.logderiv_tol_half;
            let c = |z: Complex64| serde_json::json!([z.re, z.im]);
            let out = serde_json::json!({
                "t": t,
                "X": x,
                "log_zeta": {
                    "formula": c(formula.value),
                    "direct": c(direct),
                    "delta_re": delta.re,
                    "delta_im": delta.im,
                    "terms": formula,
                },
                "logderiv": [
                    {"sigma": 2.0, "formula": c(d2.value), "direct": c(d2_direct), "delta": c(d2.value - d2_direct)},
                    {"sigma": 0.5, "formula": c(dh.value), "direct": c(dh_direct), "delta": c(dh.value - dh_direct)},
                ],
                "tol": tol,
                "pass": pass,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            Ok(if pass { 0 } else { EXIT_CHECK })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
