//! Named verification suites and their reports.
//!
//! Every check is deterministic given the seed. Exact checks count
//! failures (tolerance 0); float checks report a residual against a pinned
//! tolerance that [`RunConfig::tolerance`] may override.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cocycle::{
    branch_residual, build_twist, cocycle_residual, induced_grid_permutation,
    induced_inverse_permutation, root_branches, structured_unitarity_residual, unitarity_residual,
    xi_forward, xi_inverse, xi_jacobian, Budget, TwistMethod, XiPoint, COCYCLE_DIMENSION_CAP,
};
use crate::error::{Error, Result};
use crate::field::Qp;
use crate::fourier::{
    normalized_fourier_matrix, periodized_fourier, periodized_integral, GammaFourier,
};
use crate::function::{haar_integral, pullback_phi, pullback_sigma, Domain, LcFunction};
use crate::grid::{BallClass, Level, DEFAULT_GUARD};
use crate::padic::{phi, phi_inv, sqrt_unit, PadicNumber};
use crate::quantization::{
    omega_from_lift, omega_point, rep_pi, representable_gn_points, GnPoint, Quantizer, StarMethod,
};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

const TOL_EXACT: f64 = 0.0;
const TOL_FINE: f64 = 1e-12;
const TOL_OPERATOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown output format '{other}' (text | json)"
            ))),
        }
    }
}

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub guard: u32,
    /// Overrides the pinned tolerance of every float check.
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub budget_mb: usize,
    pub format: OutputFormat,
    /// Write `elapsed_ms = 0` so that reports are byte-identical.
    pub omit_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 3,
            n: 1,
            m: 1,
            guard: DEFAULT_GUARD,
            tolerance: None,
            seed: 0,
            budget_mb: 1024,
            format: OutputFormat::Text,
            omit_timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<Level> {
        Qp::new(self.p).map_err(|e| Error::Config(e.to_string()))?;
        if self.n < 1 || self.m < 1 {
            return Err(Error::Config(format!(
                "level n = {} and resolution m = {} must both be at least 1",
                self.n, self.m
            )));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!(
                    "tolerance must be positive and finite, got {t}"
                )));
            }
        }
        Level::with_guard(self.p, self.n, self.m, self.guard)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn budget(&self) -> Budget {
        Budget::megabytes(self.budget_mb)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Substitution,
    Plancherel,
    OmegaIsometry,
    Covariance,
    StarAgreement,
    StarAssociativity,
    XiRoundtrip,
    XiJacobian,
    XiPermutation,
    TwistOracle,
    Unitarity,
    Cocycle,
    PadicIdentities,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const EACH: [Suite; 13] = [
        Suite::PadicIdentities,
        Suite::Substitution,
        Suite::Plancherel,
        Suite::OmegaIsometry,
        Suite::Covariance,
        Suite::StarAgreement,
        Suite::StarAssociativity,
        Suite::XiRoundtrip,
        Suite::XiJacobian,
        Suite::XiPermutation,
        Suite::TwistOracle,
        Suite::Unitarity,
        Suite::Cocycle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Substitution => "substitution",
            Suite::Plancherel => "plancherel",
            Suite::OmegaIsometry => "omega-isometry",
            Suite::Covariance => "covariance",
            Suite::StarAgreement => "star-agreement",
            Suite::StarAssociativity => "star-associativity",
            Suite::XiRoundtrip => "xi-roundtrip",
            Suite::XiJacobian => "xi-jacobian",
            Suite::XiPermutation => "xi-permutation",
            Suite::TwistOracle => "twist-oracle",
            Suite::Unitarity => "unitarity",
            Suite::Cocycle => "cocycle",
            Suite::PadicIdentities => "padic-identities",
            Suite::All => "all",
        }
    }

    fn seed_offset(&self) -> u64 {
        Suite::EACH.iter().position(|s| s == self).unwrap_or(0) as u64
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::EACH.iter().map(Suite::name).collect();
                Error::Config(format!(
                    "unknown suite '{s}' (one of: {}, all)",
                    names.join(", ")
                ))
            })
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check did not run, e.g. because it exceeds the memory budget.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub guard: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSize {
    pub grid: String,
    pub points: u64,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub name: String,
    pub parameters: Parameters,
    /// `None` when the check was skipped.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    pub pass: bool,
    pub elapsed_ms: f64,
    pub grid_sizes: Vec<GridSize>,
    pub library_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// No check failed (skipped checks do not count as failures).
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

fn grid_sizes(level: &Level) -> Vec<GridSize> {
    let side = level.side() as u64;
    [
        ("units", side),
        ("gamma", side),
        ("ball", side),
        ("xn", side * side),
        ("xn-pair", side.pow(4)),
        ("xn-triple", side.pow(6)),
    ]
    .into_iter()
    .map(|(g, points)| GridSize {
        grid: g.to_string(),
        points,
    })
    .collect()
}

struct Runner<'a> {
    config: &'a RunConfig,
    level: Level,
    reports: Vec<CheckReport>,
}

impl Runner<'_> {
    fn tolerance(&self, pinned: f64) -> f64 {
        if pinned == TOL_EXACT {
            TOL_EXACT
        } else {
            self.config.tolerance.unwrap_or(pinned)
        }
    }

    fn record(
        &mut self,
        name: &str,
        pinned: f64,
        check: impl FnOnce() -> Result<(f64, Option<String>)>,
    ) {
        let tolerance = self.tolerance(pinned);
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (residual, status, note) = match outcome {
            Ok((r, note)) => {
                let status = if r <= tolerance {
                    Status::Pass
                } else {
                    Status::Fail
                };
                (Some(r), status, note)
            }
            Err(Error::OutOfBudget(msg)) => (None, Status::Skipped, Some(msg)),
            Err(e) => (None, Status::Fail, Some(e.to_string())),
        };
        self.reports.push(CheckReport {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            parameters: Parameters {
                p: self.config.p,
                n: self.config.n,
                m: self.config.m,
                guard: self.config.guard,
                seed: self.config.seed,
            },
            residual,
            tolerance,
            pass: status == Status::Pass,
            status,
            elapsed_ms: if self.config.omit_timing {
                0.0
            } else {
                elapsed
            },
            grid_sizes: grid_sizes(&self.level),
            library_version: LIBRARY_VERSION.to_string(),
            note,
        });
    }
}

fn plain(r: f64) -> Result<(f64, Option<String>)> {
    Ok((r, None))
}

fn count(failures: usize) -> Result<(f64, Option<String>)> {
    Ok((failures as f64, None))
}

const XI_SAMPLES: usize = 200;

/// Run one suite (or all of them) and return one report per check.
pub fn run_suite(config: &RunConfig, suite: Suite) -> Result<Vec<CheckReport>> {
    let level = config.validate()?;
    let mut runner = Runner {
        config,
        level,
        reports: Vec::new(),
    };
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(
            config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ s.seed_offset(),
        );
        run_one(&mut runner, s, &mut rng);
    }
    Ok(runner.reports)
}

fn run_one(r: &mut Runner<'_>, suite: Suite, rng: &mut ChaCha8Rng) {
    let level = r.level;
    let n = level.n();
    match suite {
        Suite::All => {}
        Suite::PadicIdentities => {
            let prec = level.precision();
            let points: Vec<XiPoint> = (0..XI_SAMPLES)
                .map(|_| XiPoint::random(level.p(), n, prec, rng))
                .collect();
            r.record("padic-identities/phi-difference", TOL_EXACT, || {
                // φ(a₃)a₄⁻¹ − φ(a₄)a₃⁻¹ = φ(a₃a₄⁻¹)
                let mut bad = 0;
                for q in &points {
                    let (a3, a4) = (q.a1, q.a2);
                    let lhs = phi(&a3)? * a4.invert()? - phi(&a4)? * a3.invert()?;
                    bad += usize::from(lhs != phi(&(a3 * a4.invert()?))?);
                }
                count(bad)
            });
            r.record("padic-identities/isometries", TOL_EXACT, || {
                let mut bad = 0;
                for q in &points {
                    let d = q.a1 - q.a2;
                    let dv = if d.is_zero() {
                        None
                    } else {
                        Some(d.valuation())
                    };
                    let val = |x: PadicNumber| {
                        if x.is_zero() {
                            None
                        } else {
                            Some(x.valuation())
                        }
                    };
                    bad += usize::from(val(phi(&q.a1)? - phi(&q.a2)?) != dv);
                    bad += usize::from(val(q.a1.square() - q.a2.square()) != dv);
                }
                count(bad)
            });
            r.record("padic-identities/square-roots", TOL_EXACT, || {
                let mut bad = 0;
                for q in &points {
                    bad += usize::from(sqrt_unit(&q.a1.square())? != q.a1);
                    let s = sqrt_unit(&q.a2)?;
                    bad += usize::from(s.square() != q.a2);
                    bad += usize::from(phi_inv(&phi(&q.a1)?, n as i64)? != q.a1);
                    bad += usize::from(phi(&phi_inv(&q.x1, n as i64)?)? != q.x1);
                }
                count(bad)
            });
        }
        Suite::Substitution => {
            let fs: Vec<LcFunction> = (0..20)
                .map(|_| LcFunction::random(level, Domain::Units, rng))
                .collect();
            let hs: Vec<LcFunction> = (0..20)
                .map(|_| LcFunction::random(level, Domain::Ball, rng))
                .collect();
            r.record("substitution/haar-volume", TOL_FINE, || {
                let one = LcFunction::constant(level, Domain::Units, Complex64::new(1.0, 0.0));
                let vol = (level.p() as f64).powi(-(n as i32));
                plain((haar_integral(&one)? - vol).norm() / vol)
            });
            r.record("substitution/sigma", TOL_FINE, || {
                let mut worst: f64 = 0.0;
                for f in &fs {
                    let lhs = haar_integral(&pullback_sigma(f)?)?;
                    worst = worst.max((lhs - haar_integral(f)?).norm());
                }
                plain(worst)
            });
            r.record("substitution/phi", TOL_FINE, || {
                let mut worst: f64 = 0.0;
                for h in &hs {
                    let lhs = haar_integral(&pullback_phi(h)?)?;
                    worst = worst.max((lhs - h.integral()).norm());
                }
                plain(worst)
            });
        }
        Suite::Plancherel => {
            let fs: Vec<LcFunction> = (0..100)
                .map(|_| LcFunction::random(level, Domain::Gamma, rng))
                .collect();
            r.record("plancherel/round-trip", TOL_FINE, || {
                let ft = GammaFourier::new(level)?;
                let mut worst: f64 = 0.0;
                for f in &fs {
                    worst = worst.max(ft.inverse(&ft.forward(f)?)?.max_abs_diff(f)?);
                }
                plain(worst)
            });
            r.record("plancherel/scaling", TOL_FINE, || {
                let ft = GammaFourier::new(level)?;
                let scale = (level.p() as f64).powi(-(n as i32));
                let mut worst: f64 = 0.0;
                for f in &fs {
                    let lhs = ft.forward(f)?.norm().powi(2);
                    worst = worst.max((lhs - scale * f.norm().powi(2)).abs());
                }
                let unit = normalized_fourier_matrix(&ft).unitarity_residual()?;
                plain(worst.max(unit))
            });
            r.record("plancherel/intg", TOL_FINE, || {
                let qn = (level.q() as f64).powi(-(n as i32));
                let mut worst: f64 = 0.0;
                for f in fs.iter().take(20) {
                    let lhs: Complex64 = f.values().iter().sum();
                    worst = worst.max((lhs - periodized_integral(f)? * qn).norm());
                }
                plain(worst)
            });
            r.record("plancherel/ident-fourier", TOL_FINE, || {
                let ft = GammaFourier::new(level)?;
                let qn = (level.q() as f64).powi(n as i32);
                let mut worst: f64 = 0.0;
                for f in fs.iter().take(10) {
                    let g = ft.forward(f)?;
                    for (rr, gv) in g.values().iter().enumerate() {
                        let x = BallClass(rr as u64).representative(&level);
                        worst = worst.max((periodized_fourier(f, &x)? - *gv * qn).norm());
                    }
                    // off p^n Z_p the transform vanishes
                    for v in 0..n as i64 {
                        for u in 1..level.p() as i64 {
                            let x = level.padic(u).shift(v);
                            worst = worst.max(periodized_fourier(f, &x)?.norm());
                        }
                    }
                }
                plain(worst)
            });
        }
        Suite::OmegaIsometry => {
            let pairs: Vec<(LcFunction, LcFunction)> = (0..50)
                .map(|_| {
                    (
                        LcFunction::random(level, Domain::Xn, rng),
                        LcFunction::random(level, Domain::Xn, rng),
                    )
                })
                .collect();
            r.record("omega-isometry/inner-product", TOL_FINE, || {
                let q = Quantizer::new(level)?;
                let mut worst: f64 = 0.0;
                for (f, g) in &pairs {
                    let hs = q.quantize(f)?.hs_inner(&q.quantize(g)?)?;
                    worst = worst.max((hs - f.inner(g)?).norm());
                }
                plain(worst)
            });
            r.record("omega-isometry/round-trip", TOL_FINE, || {
                let q = Quantizer::new(level)?;
                let mut worst: f64 = 0.0;
                for (f, _) in &pairs {
                    worst = worst.max(q.dequantize(&q.quantize(f)?)?.max_abs_diff(f)?);
                }
                plain(worst)
            });
            r.record("omega-isometry/lift-independence", TOL_FINE, || {
                let q = Quantizer::new(level)?;
                let shift = PadicNumber::one(level.p(), level.precision()).shift(-(n as i64));
                let mut worst: f64 = 0.0;
                for g in q.grid().elements() {
                    let direct = omega_point(&level, &g)?;
                    let lift = GnPoint::lift(&level, &g);
                    let other = GnPoint::new(lift.a, lift.t + shift);
                    worst = worst
                        .max(direct.max_abs_diff(&omega_from_lift(&level, &lift)?)?)
                        .max(direct.max_abs_diff(&omega_from_lift(&level, &other)?)?);
                }
                plain(worst)
            });
        }
        Suite::Covariance => {
            let fs: Vec<LcFunction> = (0..3)
                .map(|_| LcFunction::random(level, Domain::Xn, rng))
                .collect();
            r.record("covariance", TOL_OPERATOR, || {
                let q = Quantizer::new(level)?;
                let ops = fs
                    .iter()
                    .map(|f| q.quantize(f))
                    .collect::<Result<Vec<_>>>()?;
                let mut worst: f64 = 0.0;
                for g in representable_gn_points(&level) {
                    let pi = rep_pi(&level, &g)?;
                    let gi = g.class(&level)?.index(&level);
                    for (f, op) in fs.iter().zip(&ops) {
                        let lhs = pi.matmul(op)?.matmul(&pi.adjoint())?;
                        let rhs = q.quantize(&f.left_translate(q.grid(), gi)?)?;
                        worst = worst.max(lhs.sub(&rhs)?.frobenius_norm());
                    }
                }
                plain(worst)
            });
        }
        Suite::StarAgreement => {
            let pairs: Vec<(LcFunction, LcFunction)> = (0..20)
                .map(|_| {
                    (
                        LcFunction::random(level, Domain::Xn, rng),
                        LcFunction::random(level, Domain::Xn, rng),
                    )
                })
                .collect();
            r.record("star-agreement", TOL_OPERATOR, || {
                let q = Quantizer::new(level)?;
                let mut worst: f64 = 0.0;
                for (f1, f2) in &pairs {
                    let a = q.star_product(f1, f2, StarMethod::Kernel)?;
                    let b = q.star_product(f1, f2, StarMethod::HilbertSchmidt)?;
                    worst = worst.max(a.max_abs_diff(&b)?);
                }
                plain(worst)
            });
            r.record("star-agreement/equivariance", TOL_OPERATOR, || {
                let q = Quantizer::new(level)?;
                let mut worst: f64 = 0.0;
                for (f1, f2) in pairs.iter().take(5) {
                    let prod = q.star_product(f1, f2, StarMethod::Kernel)?;
                    for g in 0..q.grid().len() {
                        let lhs = prod.left_translate(q.grid(), g)?;
                        let rhs = q.star_product(
                            &f1.left_translate(q.grid(), g)?,
                            &f2.left_translate(q.grid(), g)?,
                            StarMethod::HilbertSchmidt,
                        )?;
                        worst = worst.max(lhs.max_abs_diff(&rhs)?);
                    }
                }
                plain(worst)
            });
        }
        Suite::StarAssociativity => {
            let triples: Vec<[LcFunction; 3]> = (0..20)
                .map(|_| {
                    [
                        LcFunction::random(level, Domain::Xn, rng),
                        LcFunction::random(level, Domain::Xn, rng),
                        LcFunction::random(level, Domain::Xn, rng),
                    ]
                })
                .collect();
            r.record("star-associativity", TOL_OPERATOR, || {
                let q = Quantizer::new(level)?;
                let star =
                    |a: &LcFunction, b: &LcFunction| q.star_product(a, b, StarMethod::Kernel);
                let mut worst: f64 = 0.0;
                for [f1, f2, f3] in &triples {
                    let lhs = star(&star(f1, f2)?, f3)?;
                    let rhs = star(f1, &star(f2, f3)?)?;
                    worst = worst.max(lhs.max_abs_diff(&rhs)?);
                }
                plain(worst)
            });
        }
        Suite::XiRoundtrip => {
            let prec = level.precision();
            let points: Vec<XiPoint> = (0..XI_SAMPLES)
                .map(|_| XiPoint::random(level.p(), n, prec, rng))
                .collect();
            r.record("xi-roundtrip", TOL_EXACT, || {
                let mut bad = 0;
                for q in &points {
                    let back = xi_inverse(&xi_forward(q, n)?, n)?;
                    let fwd = xi_forward(&xi_inverse(q, n)?, n)?;
                    bad += usize::from(!back.congruent(q) || back.precision() < prec);
                    bad += usize::from(!fwd.congruent(q) || fwd.precision() < prec);
                }
                count(bad)
            });
            r.record("xi-roundtrip/root-admissibility", TOL_EXACT, || {
                let mut bad = 0;
                for q in &points {
                    let big_x1 = q.x1 * q.a1.invert()?;
                    let big_x2 = q.x2 * q.a2.invert()?;
                    if big_x1.is_zero() {
                        continue;
                    }
                    let (plus, minus) = root_branches(&big_x1, &big_x2)?;
                    bad += usize::from(!branch_residual(&big_x1, &big_x2, &plus)?.is_zero());
                    bad += usize::from(branch_residual(&big_x1, &big_x2, &minus)?.is_zero());
                }
                count(bad)
            });
        }
        Suite::XiJacobian => {
            let prec = level.precision();
            let points: Vec<XiPoint> = (0..XI_SAMPLES)
                .map(|_| XiPoint::random(level.p(), n, prec, rng))
                .collect();
            r.record("xi-jacobian", TOL_EXACT, || {
                let mut bad = 0;
                for q in &points {
                    let jac = xi_jacobian(q, n)?;
                    let unit = jac.value().abs().is_some_and(|a| a.is_one());
                    let c = jac.correction;
                    let small = c.is_zero() || c.valuation() >= 2 * n as i64;
                    bad += usize::from(!unit || !small);
                }
                count(bad)
            });
        }
        Suite::XiPermutation => {
            r.record("xi-permutation", TOL_EXACT, || {
                let perm = induced_grid_permutation(&level)?;
                let inv = induced_inverse_permutation(&level)?;
                let bad = perm
                    .iter()
                    .enumerate()
                    .filter(|&(i, &j)| inv[j] != i)
                    .count();
                count(bad)
            });
        }
        Suite::TwistOracle => {
            r.record("twist-oracle", TOL_OPERATOR, || {
                let budget = r.config.budget();
                let fact = build_twist(level, TwistMethod::Factorized, budget)?;
                let direct = build_twist(level, TwistMethod::Direct, budget)?;
                plain(direct.matrix().max_abs_diff(fact.matrix())?)
            });
        }
        Suite::Unitarity => {
            r.record("unitarity", TOL_OPERATOR, || {
                match build_twist(level, TwistMethod::Factorized, r.config.budget()) {
                    Ok(f) => plain(unitarity_residual(&f)?),
                    Err(Error::OutOfBudget(msg)) => Ok((
                        structured_unitarity_residual(&level)?,
                        Some(format!("structured check: {msg}")),
                    )),
                    Err(e) => Err(e),
                }
            });
        }
        Suite::Cocycle => {
            r.record("cocycle", TOL_OPERATOR, || {
                let triple = level.side().pow(6);
                if triple > COCYCLE_DIMENSION_CAP {
                    return Err(Error::OutOfBudget(format!(
                        "triple space has dimension {triple}, above the dense cap {COCYCLE_DIMENSION_CAP}"
                    )));
                }
                let f = crate::cocycle::TwistOperator::new(level)?;
                plain(cocycle_residual(&f, r.config.budget())?)
            });
        }
    }
}

/// Serialize reports as a fixed-width table or a JSON array.
pub fn emit_report(
    reports: &[CheckReport],
    format: OutputFormat,
    out: &mut impl Write,
) -> Result<()> {
    let text = match format {
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(reports).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s
        }
        OutputFormat::Text => render_table(reports),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

pub fn parse_reports(json: &str) -> Result<Vec<CheckReport>> {
    serde_json::from_str(json).map_err(|e| Error::Io(format!("malformed report: {e}")))
}

fn render_table(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<6} {:<36} {:>12} {:>10} {:>10}  PARAMS",
        "STATUS", "CHECK", "RESIDUAL", "TOL", "MS"
    );
    for r in reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let residual = r
            .residual
            .map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
        let pr = &r.parameters;
        let _ = writeln!(
            s,
            "{:<6} {:<36} {:>12} {:>10.1e} {:>10.1}  p={} n={} m={} G={} seed={}",
            status,
            r.name,
            residual,
            r.tolerance,
            r.elapsed_ms,
            pr.p,
            pr.n,
            pr.m,
            pr.guard,
            pr.seed
        );
        if let Some(note) = &r.note {
            let _ = writeln!(s, "{:<6} {}", "", note);
        }
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = reports
        .iter()
        .filter(|r| r.status == Status::Skipped)
        .count();
    let _ = writeln!(
        s,
        "{} checks, {} passed, {} failed, {} skipped",
        reports.len(),
        reports.len() - failed - skipped,
        failed,
        skipped
    );
    s
}
