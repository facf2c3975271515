//! Command-line front end: point queries, figure-data sweeps and randomized
//! verification campaigns, with CSV or JSON output.
//!
//! Exit codes: `0` success, `1` a bound or witness check failed, `2` invalid
//! input. Every subcommand is also callable as a library function returning
//! plain rows, which is what the tests use.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    check_bounds, evaluate_bounds, lower_bound, theorem_r_min, upper_bound, BoundsCertificate,
    MAIN_EPS_MAX,
};
use crate::error::{Error, Result};
use crate::sampling::{bounds_case, rng_for};
use crate::sharpness::{sharpness_example, SharpnessWitness};
use crate::tube::{
    cusp_distance, tube_distance, tube_radius, tube_radius_oracle, ModelSolidTorus, Realizer,
    TWO_PI,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Cone angles above `2π - ALPHA_SNAP` are read as exactly 2π.
pub const ALPHA_SNAP: f64 = 1e-9;

const SIG_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "tubedist",
    version,
    about = "Tube radii and distances in hyperbolic solid tori"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized campaigns.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Cross-check tube radii with the bisection oracle.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Upper limit for eps; above 0.3 the additive constant is recomputed.
    #[arg(long, global = true)]
    pub eps_max: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, clap::Args)]
pub struct TorusArgs {
    /// Cone angle in radians; 2π (the default) is nonsingular.
    #[arg(long, default_value_t = TWO_PI)]
    pub alpha: f64,
    /// Core length.
    #[arg(long)]
    pub lambda: f64,
    /// Core rotation in radians.
    #[arg(long)]
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, clap::Args)]
pub struct GridArgs {
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long, default_value_t = 300)]
    pub lambda_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub tau_min: f64,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 301)]
    pub tau_steps: usize,
    /// Cone angle for every cell.
    #[arg(long, default_value_t = TWO_PI)]
    pub alpha: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radius of the eps-thin tube and the power realizing it.
    #[command(allow_negative_numbers = true)]
    Radius {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        eps: f64,
    },
    /// Distance between the delta- and eps-tubes with both bounds.
    #[command(allow_negative_numbers = true)]
    Distance {
        #[command(flatten)]
        torus: TorusArgs,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps: f64,
        /// Report inputs outside the hypotheses instead of rejecting them.
        #[arg(long)]
        allow_out_of_hypothesis: bool,
    },
    /// Realizing power over a (lambda, tau) grid at fixed eps.
    #[command(allow_negative_numbers = true)]
    RegionMap {
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// d(delta, eps) over a (lambda, tau) grid.
    #[command(allow_negative_numbers = true)]
    Surface {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Randomized campaign checking both bounds.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Push the first row 1 above its upper bound to confirm violations are caught.
        #[arg(long)]
        self_test: bool,
    },
    /// Witness torus showing the lower bound is nearly sharp.
    #[command(allow_negative_numbers = true)]
    Sharpness {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Distance between levels of a horocusp, with both bounds.
    #[command(allow_negative_numbers = true)]
    Cusp {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps: f64,
    },
}

/// `%.12g`-style formatting, independent of locale.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Snaps cone angles from `2π - 1e-9` upwards to exactly 2π. The flag is set
/// when the input was not already exactly 2π.
pub fn normalize_alpha(alpha: f64) -> (f64, bool) {
    if alpha >= TWO_PI - ALPHA_SNAP {
        (TWO_PI, alpha != TWO_PI)
    } else {
        (alpha, false)
    }
}

fn torus_from(alpha: f64, lambda: f64, tau: f64, warn: &mut dyn Write) -> Result<ModelSolidTorus> {
    let (alpha, snapped) = normalize_alpha(alpha);
    if snapped {
        let _ = writeln!(
            warn,
            "warning: cone angle read as exactly 2pi (nonsingular)"
        );
    }
    ModelSolidTorus::new(alpha, lambda, tau)
}

/// Evenly spaced values `lo..=hi`. One step is allowed only for `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: &'static str, lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(crate::error::invalid(
                name,
                lo,
                "range must be finite and nonempty",
            ));
        }
        if steps < 2 && !(steps == 1 && lo == hi) {
            return Err(crate::error::invalid(
                "steps",
                steps as f64,
                "need at least 2 unless the range is a single point",
            ));
        }
        Ok(Axis { lo, hi, steps })
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.lo
        } else if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }
}

/// Grid over `(lambda, tau)` with a common cone angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub lambda: Axis,
    pub tau: Axis,
    pub alpha: f64,
}

impl SweepConfig {
    fn from_args(grid: &GridArgs, lambda_lo: f64, lambda_hi: f64) -> Result<Self> {
        let lo = grid.lambda_min.unwrap_or(lambda_lo);
        let hi = grid.lambda_max.unwrap_or(lambda_hi);
        if !(lo > 0.0) {
            return Err(crate::error::invalid(
                "lambda_min",
                lo,
                "core lengths must be positive",
            ));
        }
        let (alpha, _) = normalize_alpha(grid.alpha);
        if !(alpha > 0.0 && alpha <= TWO_PI) {
            return Err(crate::error::invalid(
                "alpha",
                grid.alpha,
                "cone angle must lie in (0, 2pi]",
            ));
        }
        Ok(SweepConfig {
            lambda: Axis::new("lambda", lo, hi, grid.lambda_steps)?,
            tau: Axis::new("tau", grid.tau_min, grid.tau_max, grid.tau_steps)?,
            alpha,
        })
    }

    fn cells(&self) -> usize {
        self.lambda.steps * self.tau.steps
    }

    fn cell(&self, k: usize) -> (f64, f64) {
        (
            self.lambda.value(k / self.tau.steps),
            self.tau.value(k % self.tau.steps),
        )
    }
}

/// Anything that can be written as a CSV row.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

fn write_rows<R: Row, S: Serialize>(
    out: &mut dyn Write,
    format: Format,
    rows: &[R],
    summary: Option<&S>,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::header())?;
            for row in rows {
                w.write_record(row.fields())?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a, R, S> {
                rows: &'a [R],
                #[serde(skip_serializing_if = "Option::is_none")]
                summary: Option<&'a S>,
            }
            serde_json::to_writer_pretty(&mut *out, &Doc { rows, summary })?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn b(x: bool) -> String {
    x.to_string()
}

fn realizer_label(r: Option<Realizer>) -> String {
    match r {
        Some(r) => r.to_string(),
        None => "empty thin part".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusRow {
    pub alpha: f64,
    pub lambda: f64,
    pub tau: f64,
    pub eps: f64,
    pub radius: crate::trig::ExtendedLength,
    /// `n` for powers, `-1` elliptic, `0` empty.
    pub power: i64,
    pub realizer: String,
    pub oracle: Option<crate::trig::ExtendedLength>,
    pub residual: Option<f64>,
}

impl Row for RadiusRow {
    fn header() -> &'static [&'static str] {
        &[
            "alpha", "lambda", "tau", "eps", "radius", "power", "realizer", "oracle", "residual",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.alpha),
            fmt_float(self.lambda),
            fmt_float(self.tau),
            fmt_float(self.eps),
            fmt_float(self.radius.value()),
            self.power.to_string(),
            self.realizer.clone(),
            self.oracle
                .map(|o| fmt_float(o.value()))
                .unwrap_or_default(),
            self.residual.map(fmt_float).unwrap_or_default(),
        ]
    }
}

/// Tube radius for one torus, optionally with the oracle cross-check.
pub fn cmd_radius(torus: &ModelSolidTorus, eps: f64, oracle: bool) -> Result<RadiusRow> {
    let res = tube_radius(torus, eps)?;
    let (oracle_value, residual) = if oracle {
        let o = tube_radius_oracle(torus, eps)?;
        let residual = match (res.radius.as_finite(), o.as_finite()) {
            (Some(a), Some(b)) => (a - b).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        (Some(o), Some(residual))
    } else {
        (None, None)
    };
    Ok(RadiusRow {
        alpha: torus.alpha(),
        lambda: torus.lambda(),
        tau: torus.tau(),
        eps,
        radius: res.radius,
        power: res.realizer.map_or(0, Realizer::code),
        realizer: realizer_label(res.realizer),
        oracle: oracle_value,
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateRow {
    pub index: u64,
    pub alpha: f64,
    pub lambda: f64,
    pub tau: f64,
    pub delta: f64,
    pub eps: f64,
    pub actual: f64,
    pub lower_linear: f64,
    pub lower_log: crate::trig::ExtendedLength,
    pub lower: f64,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub realizer_delta: i64,
    pub realizer_eps: i64,
    pub certified: bool,
}

impl CertificateRow {
    fn new(
        index: u64,
        torus: &ModelSolidTorus,
        delta: f64,
        eps: f64,
        c: &BoundsCertificate,
        certified: bool,
    ) -> Self {
        CertificateRow {
            index,
            alpha: torus.alpha(),
            lambda: torus.lambda(),
            tau: torus.tau(),
            delta,
            eps,
            actual: c.actual,
            lower_linear: c.lower_linear,
            lower_log: c.lower_log,
            lower: c.lower(),
            upper: c.upper,
            lower_ok: c.lower_ok,
            upper_ok: c.upper_ok,
            realizer_delta: c.realizer_delta.code(),
            realizer_eps: c.realizer_eps.code(),
            certified,
        }
    }

    /// Flags recomputed from this row's own inputs, independent of the stored ones.
    pub fn recheck(&self, r_min: f64) -> (bool, bool) {
        let lower = lower_bound(self.delta, self.eps, r_min);
        let upper = upper_bound(self.delta, self.eps);
        (
            self.actual >= lower - crate::bounds::CERT_TOL,
            self.actual <= upper + crate::bounds::CERT_TOL,
        )
    }
}

impl Row for CertificateRow {
    fn header() -> &'static [&'static str] {
        &[
            "index",
            "alpha",
            "lambda",
            "tau",
            "delta",
            "eps",
            "actual",
            "lower_linear",
            "lower_log",
            "lower",
            "upper",
            "lower_ok",
            "upper_ok",
            "realizer_delta",
            "realizer_eps",
            "certified",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            fmt_float(self.alpha),
            fmt_float(self.lambda),
            fmt_float(self.tau),
            fmt_float(self.delta),
            fmt_float(self.eps),
            fmt_float(self.actual),
            fmt_float(self.lower_linear),
            fmt_float(self.lower_log.value()),
            fmt_float(self.lower),
            fmt_float(self.upper),
            b(self.lower_ok),
            b(self.upper_ok),
            self.realizer_delta.to_string(),
            self.realizer_eps.to_string(),
            b(self.certified),
        ]
    }
}

/// Certificate for one torus. With `allow_out_of_hypothesis`, inputs that
/// break `lambda <= delta` or `eps <= eps_max` are evaluated but marked
/// uncertified.
pub fn cmd_distance(
    torus: &ModelSolidTorus,
    delta: f64,
    eps: f64,
    eps_max: f64,
    allow_out_of_hypothesis: bool,
) -> Result<CertificateRow> {
    match check_bounds(torus, delta, eps, eps_max) {
        Ok(c) => Ok(CertificateRow::new(0, torus, delta, eps, &c, true)),
        Err(Error::CoreLongerThanDelta { .. } | Error::EpsAboveMax { .. })
            if allow_out_of_hypothesis =>
        {
            let r_min = theorem_r_min(eps_max.max(eps).min(crate::bounds::GENERAL_EPS_MAX))?;
            let c = evaluate_bounds(torus, delta, eps, r_min)?;
            Ok(CertificateRow::new(0, torus, delta, eps, &c, false))
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionRow {
    pub lambda: f64,
    pub tau: f64,
    /// `n` for powers, `-1` elliptic, `0` empty thin part.
    pub power: i64,
}

impl Row for RegionRow {
    fn header() -> &'static [&'static str] {
        &["lambda", "tau", "power"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.lambda),
            fmt_float(self.tau),
            self.power.to_string(),
        ]
    }
}

/// Realizing power at fixed `eps` over the grid, in row-major order
/// (`lambda` outer, `tau` inner).
pub fn cmd_region_map(cfg: &SweepConfig, eps: f64) -> Result<Vec<RegionRow>> {
    if !(eps > 0.0) {
        return Err(crate::error::invalid("eps", eps, "must be positive"));
    }
    (0..cfg.cells())
        .into_par_iter()
        .map(|k| {
            let (lambda, tau) = cfg.cell(k);
            let torus = ModelSolidTorus::new(cfg.alpha, lambda, tau)?;
            let res = tube_radius(&torus, eps)?;
            Ok(RegionRow {
                lambda,
                tau,
                power: res.realizer.map_or(0, Realizer::code),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceRow {
    pub lambda: f64,
    pub tau: f64,
    pub distance: f64,
}

impl Row for SurfaceRow {
    fn header() -> &'static [&'static str] {
        &["lambda", "tau", "distance"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.lambda),
            fmt_float(self.tau),
            fmt_float(self.distance),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceSummary {
    pub cells: usize,
    pub min: f64,
    pub max: f64,
    pub argmin: (f64, f64),
    pub argmax: (f64, f64),
}

/// `d(delta, eps)` over the grid, with its extremes.
pub fn cmd_surface(
    cfg: &SweepConfig,
    delta: f64,
    eps: f64,
) -> Result<(Vec<SurfaceRow>, SurfaceSummary)> {
    if !(delta > 0.0 && delta < eps) {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    if cfg.lambda.hi > delta {
        return Err(Error::CoreLongerThanDelta {
            lambda: cfg.lambda.hi,
            delta,
        });
    }
    let rows: Vec<SurfaceRow> = (0..cfg.cells())
        .into_par_iter()
        .map(|k| {
            let (lambda, tau) = cfg.cell(k);
            let torus = ModelSolidTorus::new(cfg.alpha, lambda, tau)?;
            Ok(SurfaceRow {
                lambda,
                tau,
                distance: tube_distance(&torus, delta, eps)?,
            })
        })
        .collect::<Result<_>>()?;
    let min = rows
        .iter()
        .min_by(|a, b| a.distance.total_cmp(&b.distance))
        .expect("grid is nonempty");
    let max = rows
        .iter()
        .max_by(|a, b| a.distance.total_cmp(&b.distance))
        .expect("grid is nonempty");
    let summary = SurfaceSummary {
        cells: rows.len(),
        min: min.distance,
        max: max.distance,
        argmin: (min.lambda, min.tau),
        argmax: (max.lambda, max.tau),
    };
    Ok((rows, summary))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub samples: u64,
    pub eps_max: f64,
    pub r_min: f64,
    pub violations: u64,
    pub worst_lower_margin: f64,
    pub worst_upper_margin: f64,
}

/// Seeded campaign of `samples` random certificates. Sample `i` depends only
/// on `(seed, i)`.
pub fn cmd_verify(
    seed: u64,
    samples: u64,
    eps_max: f64,
    self_test: bool,
) -> Result<(Vec<CertificateRow>, VerifySummary)> {
    let r_min = theorem_r_min(eps_max)?;
    let mut rows: Vec<CertificateRow> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let case = bounds_case(&mut rng_for(seed, i), eps_max);
            let c = check_bounds(&case.torus, case.delta, case.eps, eps_max)?;
            Ok(CertificateRow::new(
                i,
                &case.torus,
                case.delta,
                case.eps,
                &c,
                true,
            ))
        })
        .collect::<Result<_>>()?;
    if self_test {
        if let Some(first) = rows.first_mut() {
            first.actual = first.upper + 1.0;
            let (lower_ok, upper_ok) = first.recheck(r_min);
            first.lower_ok = lower_ok;
            first.upper_ok = upper_ok;
        }
    }
    let violations = rows.iter().filter(|r| !(r.lower_ok && r.upper_ok)).count() as u64;
    let worst_lower_margin = rows
        .iter()
        .map(|r| r.actual - r.lower)
        .fold(f64::INFINITY, f64::min);
    let worst_upper_margin = rows
        .iter()
        .map(|r| r.upper - r.actual)
        .fold(f64::INFINITY, f64::min);
    let summary = VerifySummary {
        samples,
        eps_max,
        r_min,
        violations,
        worst_lower_margin,
        worst_upper_margin,
    };
    Ok((rows, summary))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub n: u64,
    pub lambda: f64,
    pub tau: f64,
    pub delta: f64,
    pub eps: f64,
    pub actual_distance: f64,
    pub sharpness_upper: f64,
    pub lower: f64,
    pub gap_to_lower: f64,
    pub holds: bool,
}

impl SharpnessRow {
    fn new(delta: f64, eps: f64, w: &SharpnessWitness) -> Self {
        SharpnessRow {
            n: w.n,
            lambda: w.torus.lambda(),
            tau: w.torus.tau(),
            delta,
            eps,
            actual_distance: w.actual_distance,
            sharpness_upper: w.sharpness_upper,
            lower: w.lower,
            gap_to_lower: w.gap_to_lower,
            holds: w.holds(),
        }
    }
}

impl Row for SharpnessRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "lambda",
            "tau",
            "delta",
            "eps",
            "actual_distance",
            "sharpness_upper",
            "lower",
            "gap_to_lower",
            "holds",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_float(self.lambda),
            fmt_float(self.tau),
            fmt_float(self.delta),
            fmt_float(self.eps),
            fmt_float(self.actual_distance),
            fmt_float(self.sharpness_upper),
            fmt_float(self.lower),
            fmt_float(self.gap_to_lower),
            b(self.holds),
        ]
    }
}

pub fn cmd_sharpness(delta: f64, eps: f64) -> Result<SharpnessRow> {
    Ok(SharpnessRow::new(
        delta,
        eps,
        &sharpness_example(delta, eps)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspRow {
    pub delta: f64,
    pub eps: f64,
    pub distance: f64,
    pub lower: f64,
    pub upper: f64,
    pub within: bool,
}

impl Row for CuspRow {
    fn header() -> &'static [&'static str] {
        &["delta", "eps", "distance", "lower", "upper", "within"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.delta),
            fmt_float(self.eps),
            fmt_float(self.distance),
            fmt_float(self.lower),
            fmt_float(self.upper),
            b(self.within),
        ]
    }
}

pub fn cmd_cusp(delta: f64, eps: f64, eps_max: f64) -> Result<CuspRow> {
    if eps > eps_max {
        return Err(Error::EpsAboveMax { eps, eps_max });
    }
    let distance = cusp_distance(delta, eps)?;
    let r_min = theorem_r_min(eps_max)?;
    let lower = lower_bound(delta, eps, r_min);
    let upper = upper_bound(delta, eps);
    let tol = crate::bounds::CERT_TOL;
    Ok(CuspRow {
        delta,
        eps,
        distance,
        lower,
        upper,
        within: distance >= lower - tol && distance <= upper + tol,
    })
}

fn single<R: Row>(out: &mut dyn Write, format: Format, row: R) -> io::Result<()> {
    match format {
        Format::Csv => write_rows::<R, ()>(out, format, std::slice::from_ref(&row), None),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &row)?;
            writeln!(out)
        }
    }
}

fn execute(
    cli: &Cli,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let eps_max = cli.eps_max.unwrap_or(MAIN_EPS_MAX);
    match cli.command {
        Command::Radius { torus, eps } => {
            let t = torus_from(torus.alpha, torus.lambda, torus.tau, err)?;
            let row = cmd_radius(&t, eps, cli.oracle)?;
            if row.power == 0 {
                writeln!(err, "empty thin part")?;
            }
            single(out, cli.format, row)?;
            Ok(EXIT_OK)
        }
        Command::Distance {
            torus,
            delta,
            eps,
            allow_out_of_hypothesis,
        } => {
            let t = torus_from(torus.alpha, torus.lambda, torus.tau, err)?;
            let row = cmd_distance(&t, delta, eps, eps_max, allow_out_of_hypothesis)?;
            let code = if !row.certified {
                writeln!(err, "outside the hypotheses: reported, not certified")?;
                EXIT_OK
            } else if row.lower_ok && row.upper_ok {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            single(out, cli.format, row)?;
            Ok(code)
        }
        Command::RegionMap { eps, grid } => {
            let cfg = SweepConfig::from_args(&grid, eps / 100.0, eps)?;
            let rows = cmd_region_map(&cfg, eps)?;
            write_rows::<_, ()>(out, cli.format, &rows, None)?;
            Ok(EXIT_OK)
        }
        Command::Surface { delta, eps, grid } => {
            let cfg =
                SweepConfig::from_args(&grid, delta / grid.lambda_steps.max(1) as f64, delta)?;
            let (rows, summary) = cmd_surface(&cfg, delta, eps)?;
            write_rows(out, cli.format, &rows, Some(&summary))?;
            writeln!(
                err,
                "cells={} min={} at (lambda={}, tau={}) max={} at (lambda={}, tau={})",
                summary.cells,
                fmt_float(summary.min),
                fmt_float(summary.argmin.0),
                fmt_float(summary.argmin.1),
                fmt_float(summary.max),
                fmt_float(summary.argmax.0),
                fmt_float(summary.argmax.1)
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify { samples, self_test } => {
            let (rows, summary) = cmd_verify(cli.seed, samples, eps_max, self_test)?;
            write_rows(out, cli.format, &rows, Some(&summary))?;
            writeln!(
                err,
                "samples={} eps_max={} r_min={} violations={} worst_lower_margin={} worst_upper_margin={}",
                summary.samples,
                fmt_float(summary.eps_max),
                fmt_float(summary.r_min),
                summary.violations,
                fmt_float(summary.worst_lower_margin),
                fmt_float(summary.worst_upper_margin)
            )?;
            Ok(if summary.violations == 0 {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Sharpness { delta, eps } => {
            let row = cmd_sharpness(delta, eps)?;
            let code = if row.holds { EXIT_OK } else { EXIT_VIOLATION };
            single(out, cli.format, row)?;
            Ok(code)
        }
        Command::Cusp { delta, eps } => {
            let row = cmd_cusp(delta, eps, eps_max.max(MAIN_EPS_MAX))?;
            let code = if row.within { EXIT_OK } else { EXIT_VIOLATION };
            single(out, cli.format, row)?;
            Ok(code)
        }
    }
}

enum Failure {
    Input(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut file_out;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file_out = BufWriter::new(f);
                &mut file_out
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return EXIT_INVALID;
            }
        },
        None => stdout,
    };

    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                // the pool's workers need `Send` sinks; buffer and copy out afterwards
                let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
                let r = pool.install(|| execute(cli, &mut buf_out, &mut buf_err));
                let _ = stderr.write_all(&buf_err);
                match out.write_all(&buf_out) {
                    Ok(()) => r,
                    Err(e) => Err(Failure::Io(e)),
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: thread pool: {e}");
                return EXIT_INVALID;
            }
        },
        None => execute(cli, out, stderr),
    };
    let flushed = out.flush();

    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Ok(_), Err(e)) | (Err(Failure::Io(e)), _) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
        (Err(Failure::Input(e)), _) => {
            let mut msg = String::new();
            let _ = write!(msg, "error: {e}");
            let _ = writeln!(stderr, "{msg}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(2.0650501568929), "2.06505015689");
        assert_eq!(fmt_float(0.075), "0.075");
        assert_eq!(fmt_float(1e-7), "1e-07");
        assert_eq!(fmt_float(-1.5e13), "-1.5e+13");
        assert_eq!(fmt_float(123456.0), "123456");
        assert_eq!(fmt_float(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn alpha_snapping() {
        assert_eq!(normalize_alpha(6.2832), (TWO_PI, true));
        assert_eq!(normalize_alpha(TWO_PI), (TWO_PI, false));
        assert_eq!(normalize_alpha(TWO_PI - 1e-10), (TWO_PI, true));
        assert_eq!(normalize_alpha(6.28), (6.28, false));
    }

    #[test]
    fn axis_values() {
        let a = Axis::new("x", 0.0, 1.0, 5).unwrap();
        assert_eq!(
            (0..5).map(|i| a.value(i)).collect::<Vec<_>>(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert!(Axis::new("x", 0.0, 1.0, 1).is_err());
        assert!(Axis::new("x", 1.0, 0.0, 3).is_err());
        assert_eq!(Axis::new("x", 0.05, 0.05, 1).unwrap().value(0), 0.05);
    }
}
