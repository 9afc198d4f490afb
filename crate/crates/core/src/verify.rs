//! Named verification suites: every cross-check identity the library
//! claims, runnable over the default parameter grid with pinned tolerances.
//!
//! Each check reports its worst measured error against its tolerance;
//! individual tolerances can be overridden by key. Checks are independent
//! and may run in parallel; report assembly sorts by check id, so the
//! output is deterministic given (grid, tolerances, seed).

use crate::assocfun::{self, AssocFunction};
use crate::bargmann::{self, AnalyticSeries, LadderOp};
use crate::cases::{CaseKind, CaseParams, CaseSpec, Interval};
use crate::coherent::{self, bessel, measure};
use crate::error::Result;
use crate::ladder;
use crate::poly::Polynomial;
use crate::polyengine;
use crate::quadrature::{self, TanhSinh};
use crate::scalar::ratio;
use nalgebra::{DMatrix, DVector};
use num::BigRational;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

/// Which set of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Poly,
    Assoc,
    Ladder,
    Coherent,
    Bargmann,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "core" => Suite::Core,
            "poly" => Suite::Poly,
            "assoc" => Suite::Assoc,
            "ladder" => Suite::Ladder,
            "coherent" => Suite::Coherent,
            "bargmann" => Suite::Bargmann,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Poly => "poly",
            Suite::Assoc => "assoc",
            Suite::Ladder => "ladder",
            Suite::Coherent => "coherent",
            Suite::Bargmann => "bargmann",
            Suite::All => "all",
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

/// Full run outcome.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The failed check with the largest error-to-tolerance ratio.
    pub fn worst_offender(&self) -> Option<&CheckResult> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .max_by(|a, b| {
                let ra = a.max_error / a.tolerance.max(f64::MIN_POSITIVE);
                let rb = b.max_error / b.tolerance.max(f64::MIN_POSITIVE);
                ra.partial_cmp(&rb).unwrap_or(std::cmp::Ordering::Equal)
            })
    }
}

/// Run configuration; `threads` of `None` defers to the
/// `HYPERTYPE_THREADS` environment variable, then to the rayon default.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub z_max: f64,
    pub seed: u64,
    pub tol_overrides: BTreeMap<String, f64>,
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            z_max: 3.0,
            seed: 42,
            tol_overrides: BTreeMap::new(),
            threads: None,
        }
    }
}

impl VerifyConfig {
    pub fn tolerance(&self, id: &str) -> f64 {
        self.tol_overrides
            .get(id)
            .copied()
            .unwrap_or_else(|| default_tolerance(id))
    }
}

/// One validated spec per case kind; constraint margins are comfortable and
/// the finite cases carry usable degree room.
pub fn default_grid() -> Vec<CaseSpec> {
    [
        (CaseKind::SigmaOne, -2.0, 0.0),
        (CaseKind::SigmaS, -1.0, 2.0),
        (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
        (CaseKind::SigmaS2Minus1, -4.0, 5.0),
        (CaseKind::SigmaS2, -9.0, 1.0),
        (CaseKind::SigmaS2Plus1, -4.0, 1.0),
    ]
    .into_iter()
    .map(|(k, a, b)| CaseSpec::validate(k, a, b).expect("grid specs satisfy the case table"))
    .collect()
}

fn rational_grid() -> Vec<CaseParams<BigRational>> {
    [
        (CaseKind::SigmaOne, -2, 0),
        (CaseKind::SigmaS, -1, 2),
        (CaseKind::SigmaOneMinusS2, -3, 0),
        (CaseKind::SigmaS2Minus1, -4, 5),
        (CaseKind::SigmaS2, -9, 1),
        (CaseKind::SigmaS2Plus1, -4, 1),
    ]
    .into_iter()
    .map(|(k, a, b)| CaseParams::new(k, ratio(a, 1), ratio(b, 1)).unwrap())
    .collect()
}

fn infinite_grid() -> Vec<CaseSpec> {
    default_grid()
        .into_iter()
        .filter(|s| !s.kind().is_finite_family())
        .collect()
}

fn finite_grid() -> Vec<CaseSpec> {
    default_grid()
        .into_iter()
        .filter(|s| s.kind().is_finite_family())
        .collect()
}

/// Map `u ∈ (0,1)` onto the interval: affine for bounded, rational/tangent
/// charts for the half-line and the full line.
pub fn map_to_interval(iv: Interval, u: f64) -> f64 {
    match (iv.lo.is_finite(), iv.hi.is_finite()) {
        (true, true) => iv.lo + (iv.hi - iv.lo) * u,
        (true, false) => iv.lo + u / (1.0 - u),
        (false, true) => iv.hi - u / (1.0 - u),
        (false, false) => (std::f64::consts::PI * (u - 0.5)).tan(),
    }
}

const CHECKS_CORE: &[&str] = &["boundary-decay", "lambda-monotone", "pearson"];
const CHECKS_POLY: &[&str] = &[
    "classical-proportionality",
    "degree",
    "moment-paths",
    "ode-residual",
    "orthogonality",
    "positivity",
    "realness-s2plus1",
    "rodrigues",
];
const CHECKS_ASSOC: &[&str] = &[
    "assoc-orthogonality",
    "chain",
    "eigen-residual",
    "factorization",
    "h-pointwise",
    "intertwining",
    "ladder-closure",
    "norm-recursion",
];
const CHECKS_LADDER: &[&str] = &[
    "adjointness",
    "algebra-h2",
    "algebra-su11",
    "algebra-su2",
    "number-diagonal",
    "phase-covariance",
];
const CHECKS_COHERENT: &[&str] = &[
    "annihilation",
    "bessel-oracle",
    "displacement",
    "finite-overlap",
    "measure-moments",
    "measure-offdiag",
    "overcompleteness",
    "overlap",
    "temporal-stability",
    "uncertainty",
];
const CHECKS_BARGMANN: &[&str] = &[
    "isometry",
    "measure-consistency",
    "operator-forms",
    "reproducing",
];

pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = match suite {
        Suite::Core => CHECKS_CORE.to_vec(),
        Suite::Poly => CHECKS_POLY.to_vec(),
        Suite::Assoc => CHECKS_ASSOC.to_vec(),
        Suite::Ladder => CHECKS_LADDER.to_vec(),
        Suite::Coherent => CHECKS_COHERENT.to_vec(),
        Suite::Bargmann => CHECKS_BARGMANN.to_vec(),
        Suite::All => CHECKS_CORE
            .iter()
            .chain(CHECKS_POLY)
            .chain(CHECKS_ASSOC)
            .chain(CHECKS_LADDER)
            .chain(CHECKS_COHERENT)
            .chain(CHECKS_BARGMANN)
            .copied()
            .collect(),
    };
    ids.sort_unstable();
    ids
}

/// Pinned default tolerance per check id.
pub fn default_tolerance(id: &str) -> f64 {
    match id {
        "pearson" => 1e-6,
        "boundary-decay" => 1e-8,
        "lambda-monotone" => 0.0,
        "ode-residual" => 1e-10,
        "rodrigues" => 1e-12,
        "classical-proportionality" => 1e-10,
        "degree" => 0.0,
        "realness-s2plus1" => 1e-10,
        "orthogonality" => 1e-8,
        "positivity" => 0.0,
        "moment-paths" => 1e-9,
        "ladder-closure" => 1e-12,
        "chain" => 1e-12,
        "factorization" => 1e-10,
        "intertwining" => 1e-10,
        "assoc-orthogonality" => 1e-8,
        "eigen-residual" => 1e-10,
        "norm-recursion" => 1e-8,
        "h-pointwise" => 1e-8,
        "adjointness" => 0.0,
        "number-diagonal" => 1e-12,
        "algebra-h2" => 1e-12,
        "algebra-su11" => 1e-12,
        "algebra-su2" => 1e-14,
        "phase-covariance" => 1e-12,
        "annihilation" => 1e-10,
        "overlap" => 1e-10,
        "measure-moments" => 1e-6,
        "measure-offdiag" => 1e-6,
        "temporal-stability" => 1e-14,
        "finite-overlap" => 1e-14,
        "bessel-oracle" => 1e-9,
        "displacement" => 1e-8,
        "uncertainty" => 1e-8,
        "overcompleteness" => 1.0,
        "isometry" => 1e-12,
        "operator-forms" => 0.0,
        "reproducing" => 1e-12,
        "measure-consistency" => 1e-6,
        other => panic!("unknown check id {other}"),
    }
}

/// Run a suite. Checks execute in a rayon pool capped by
/// `config.threads` / `HYPERTYPE_THREADS`.
pub fn run(config: &VerifyConfig) -> RunReport {
    let started = Instant::now();
    let ids = check_ids(config.suite);
    let threads = config.threads.or_else(|| {
        std::env::var("HYPERTYPE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let checks = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool.install(|| {
            ids.par_iter()
                .map(|id| run_single(id, config))
                .collect::<Vec<_>>()
        }),
        Err(_) => ids.iter().map(|id| run_single(id, config)).collect(),
    };
    let mut checks = checks;
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    RunReport {
        suite: config.suite.label().to_string(),
        seed: config.seed,
        checks,
        wall_ms: started.elapsed().as_millis(),
    }
}

/// Run an explicit list of checks (used by the acceptance suite).
pub fn run_checks(ids: &[&str], config: &VerifyConfig) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = ids.iter().map(|id| run_single(id, config)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

fn run_single(id: &str, config: &VerifyConfig) -> CheckResult {
    let outcome = dispatch(id, config);
    let tolerance = config.tolerance(id);
    match outcome {
        Ok((max_error, detail)) => CheckResult {
            id: id.to_string(),
            passed: max_error.is_finite() && max_error <= tolerance,
            max_error,
            tolerance,
            detail,
        },
        Err(e) => CheckResult {
            id: id.to_string(),
            passed: false,
            max_error: f64::INFINITY,
            tolerance,
            detail: format!("errored: {e}"),
        },
    }
}

fn dispatch(id: &str, cfg: &VerifyConfig) -> Result<(f64, String)> {
    match id {
        "pearson" => check_pearson(),
        "boundary-decay" => check_boundary_decay(),
        "lambda-monotone" => check_lambda_monotone(),
        "ode-residual" => check_ode_residual(),
        "rodrigues" => check_rodrigues(),
        "classical-proportionality" => check_classical(),
        "degree" => check_degree(),
        "realness-s2plus1" => check_realness(),
        "orthogonality" => check_orthogonality(),
        "positivity" => check_positivity(),
        "moment-paths" => check_moment_paths(),
        "ladder-closure" => check_ladder_closure(),
        "chain" => check_chain(),
        "factorization" => check_factorization(),
        "intertwining" => check_intertwining(),
        "assoc-orthogonality" => check_assoc_orthogonality(),
        "eigen-residual" => check_eigen_residual(),
        "norm-recursion" => check_norm_recursion(),
        "h-pointwise" => check_h_pointwise(),
        "adjointness" => check_adjointness(),
        "number-diagonal" => check_number_diagonal(),
        "algebra-h2" => check_algebra_h2(),
        "algebra-su11" => check_algebra_su11(),
        "algebra-su2" => check_algebra_su2(),
        "phase-covariance" => check_phase_covariance(),
        "annihilation" => check_annihilation(cfg.z_max),
        "overlap" => check_overlap(cfg.z_max),
        "measure-moments" => check_measure_moments(),
        "measure-offdiag" => check_measure_offdiag(),
        "temporal-stability" => check_temporal_stability(),
        "finite-overlap" => check_finite_overlap(),
        "bessel-oracle" => check_bessel_oracle(),
        "displacement" => check_displacement(),
        "uncertainty" => check_uncertainty(),
        "overcompleteness" => check_overcompleteness(),
        "isometry" => check_isometry(cfg.seed),
        "operator-forms" => check_operator_forms(),
        "reproducing" => check_reproducing(cfg.seed),
        "measure-consistency" => check_measure_consistency(),
        other => panic!("unknown check id {other}"),
    }
}

// ---------------------------------------------------------------------------
// core

fn check_pearson() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let mut where_ = String::new();
    for spec in default_grid() {
        let iv = spec.interval();
        let sigma_rho = |s: f64| spec.sigma_at(s) * spec.weight(s).unwrap_or(0.0);
        let mut scale = 0.0f64;
        let mut devs = Vec::new();
        for i in 0..200 {
            let u = 0.05 + 0.9 * (i as f64 + 0.5) / 200.0;
            let s = map_to_interval(iv, u);
            let h = 1e-4 * s.abs().max(1.0);
            // fourth-order central difference of (σρ)'
            let d = (sigma_rho(s - 2.0 * h) - 8.0 * sigma_rho(s - h) + 8.0 * sigma_rho(s + h)
                - sigma_rho(s + 2.0 * h))
                / (12.0 * h);
            let target = spec.tau_at(s) * spec.weight(s)?;
            scale = scale.max(target.abs());
            devs.push((d - target).abs());
        }
        let err = devs.iter().fold(0.0f64, |m, &d| m.max(d)) / scale;
        if err > worst {
            worst = err;
            where_ = format!("sigma = {}", spec.kind().label());
        }
    }
    Ok((worst, format!("worst at {where_}")))
}

fn check_boundary_decay() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for spec in default_grid() {
        let iv = spec.interval();
        let sigma_rho = |s: f64| spec.sigma_at(s) * spec.weight(s).unwrap_or(0.0);
        let interior_max = (0..100)
            .map(|i| {
                let u = 0.05 + 0.9 * (i as f64 + 0.5) / 100.0;
                sigma_rho(map_to_interval(iv, u))
            })
            .fold(0.0f64, f64::max);
        for toward_hi in [false, true] {
            // deep enough that even a (distance)^{1/2} zero drops below the
            // 1e-8 threshold; offsets below one ulp collapse onto the
            // endpoint and contribute exact zeros
            let seq: Vec<f64> = (1..=70)
                .map(|j| {
                    let end = if toward_hi { iv.hi } else { iv.lo };
                    let s = if end.is_finite() {
                        let off = 2f64.powi(-j);
                        if toward_hi {
                            end - off
                        } else {
                            end + off
                        }
                    } else if toward_hi {
                        1.6f64.powi(j)
                    } else {
                        -(1.6f64.powi(j))
                    };
                    sigma_rho(s)
                })
                .collect();
            // monotone decrease after the sequence max, final value below 1e-8
            // of the interior maximum
            let argmax = seq
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            let monotone = seq[argmax..]
                .windows(2)
                .all(|w| w[1] <= w[0] * (1.0 + 1e-12));
            let err = if monotone {
                seq.last().unwrap() / interior_max
            } else {
                f64::INFINITY
            };
            if err > worst {
                worst = err;
                detail = format!(
                    "sigma = {} toward {}",
                    spec.kind().label(),
                    if toward_hi { "upper end" } else { "lower end" }
                );
            }
        }
    }
    Ok((worst, detail))
}

fn check_lambda_monotone() -> Result<(f64, String)> {
    let mut violations = 0usize;
    for spec in default_grid() {
        let top = spec.degree_cap(40);
        for l in 0..top {
            if spec.lambda_l(l + 1) <= spec.lambda_l(l) {
                violations += 1;
            }
        }
    }
    Ok((violations as f64, "strict increase below Lambda".into()))
}

// ---------------------------------------------------------------------------
// poly + quadrature

fn check_ode_residual() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let p = spec.params();
        for l in 0..=spec.degree_cap(10) {
            let f = polyengine::phi(&spec, l)?;
            let res = p
                .sigma()
                .mul(&f.nth_derivative(2))
                .add(&p.tau().mul(&f.derivative()))
                .add(&f.scale(&spec.lambda_l(l)));
            let scale = f.max_abs_coeff().max(1.0)
                * spec.alpha().abs().max(spec.beta().abs()).max(1.0).powi(2);
            worst = worst.max(res.max_abs_coeff() / scale);
        }
    }
    Ok((worst, "sigma phi'' + tau phi' + lambda phi".into()))
}

fn check_rodrigues() -> Result<(f64, String)> {
    // exact coefficientwise equality in rational mode
    for p in rational_grid() {
        let cap = rational_degree_cap(&p, 10);
        for l in 0..=cap {
            let a = polyengine::phi_in(&p, l)?;
            let b = polyengine::rodrigues_in(&p, l)?;
            if a != b {
                return Ok((
                    f64::INFINITY,
                    format!("rational mismatch at sigma = {} l = {l}", p.kind.label()),
                ));
            }
        }
    }
    // float mode within 1e-12 relative
    let mut worst = 0.0f64;
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(10) {
            let a = polyengine::phi(&spec, l)?;
            let b = polyengine::rodrigues(&spec, l)?;
            worst = worst.max(a.sub(&b).max_abs_coeff() / a.max_abs_coeff().max(1.0));
        }
    }
    Ok((worst, "rational route exact; float deviation shown".into()))
}

fn rational_degree_cap(p: &CaseParams<BigRational>, cap: usize) -> usize {
    (0..=cap).take_while(|&l| p.degree_admissible(l)).last().unwrap_or(0)
}

fn check_classical() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let mut at = String::new();
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(10) {
            let spread = polyengine::proportionality_spread(
                &polyengine::phi(&spec, l)?,
                &polyengine::classical_ref(&spec, l)?,
            );
            if spread > worst {
                worst = spread;
                at = format!("sigma = {} l = {l}", spec.kind().label());
            }
        }
    }
    Ok((worst, format!("worst at {at}")))
}

fn check_degree() -> Result<(f64, String)> {
    let mut violations = 0usize;
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(10) {
            let f = polyengine::phi(&spec, l)?;
            if f.degree() != Some(l) || (f.coeff(l) - 1.0).abs() > 0.0 {
                violations += 1;
            }
        }
    }
    Ok((violations as f64, "degree exactly l, monic".into()))
}

fn check_realness() -> Result<(f64, String)> {
    let spec = CaseSpec::validate(CaseKind::SigmaS2Plus1, -4.0, 1.0)?;
    let mut worst = 0.0f64;
    for l in 0..=spec.degree_cap(10) {
        worst = worst.max(polyengine::classical_s2plus1_residue(&spec, l)?);
    }
    Ok((worst, "imaginary residue of i^l P_l(is)".into()))
}

/// `Σ_{i,j} f_i g_j r_{i+j}` over exact moment ratios.
fn rational_inner(
    f: &Polynomial<BigRational>,
    g: &Polynomial<BigRational>,
    ratios: &[BigRational],
) -> BigRational {
    let mut acc = BigRational::from_integer(0.into());
    for (i, a) in f.coeffs().iter().enumerate() {
        for (j, b) in g.coeffs().iter().enumerate() {
            acc += a * b * &ratios[i + j];
        }
    }
    acc
}

fn check_orthogonality() -> Result<(f64, String)> {
    use num::ToPrimitive;
    let mut worst = 0.0f64;
    let mut at = String::new();
    // Exact route: the grid parameters are rational and four of the six
    // cases have rational moment ratios, so the normalized Gram there is
    // evaluated without rounding (the m_0 factors cancel). The monomial
    // representation of degree-8 polynomials against factorially growing
    // moments is too ill-conditioned for a plain f64 pipeline to certify
    // 1e-8.
    for p in rational_grid() {
        let cap = rational_degree_cap(&p, 8);
        let Some(ratios) = quadrature::moment_ratios_exact(&p, 2 * cap) else {
            continue;
        };
        let phis: Vec<Polynomial<BigRational>> = (0..=cap)
            .map(|l| polyengine::phi_in(&p, l))
            .collect::<Result<_>>()?;
        let sq_norms: Vec<BigRational> = phis
            .iter()
            .map(|f| rational_inner(f, f, &ratios))
            .collect();
        for l in 0..=cap {
            for k in 0..l {
                let ip = rational_inner(&phis[l], &phis[k], &ratios);
                let rel_sq = (&ip * &ip) / (&sq_norms[l] * &sq_norms[k]);
                let rel = rel_sq.to_f64().unwrap_or(f64::INFINITY).sqrt();
                if rel > worst {
                    worst = rel;
                    at = format!("sigma = {} (l,k) = ({l},{k})", p.kind.label());
                }
            }
        }
    }
    // float route for the two adaptive-moment cases (small finite L keeps
    // the expansion well conditioned there)
    for spec in default_grid()
        .into_iter()
        .filter(|s| matches!(s.kind(), CaseKind::SigmaS2Minus1 | CaseKind::SigmaS2Plus1))
    {
        let cap = spec.degree_cap(8);
        let phis: Vec<Polynomial<f64>> = (0..=cap)
            .map(|l| polyengine::phi(&spec, l))
            .collect::<Result<_>>()?;
        let norms: Vec<f64> = phis
            .iter()
            .map(|f| quadrature::inner_product(&spec, f, f).map(f64::sqrt))
            .collect::<Result<_>>()?;
        for l in 0..=cap {
            for k in 0..l {
                let ip = quadrature::inner_product(&spec, &phis[l], &phis[k])?;
                let rel = ip.abs() / (norms[l] * norms[k]);
                if rel > worst {
                    worst = rel;
                    at = format!("sigma = {} (l,k) = ({l},{k})", spec.kind().label());
                }
            }
        }
    }
    Ok((worst, format!("worst Gram off-diagonal at {at}")))
}

fn check_positivity() -> Result<(f64, String)> {
    let mut violations = 0usize;
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(8) {
            let f = polyengine::phi(&spec, l)?;
            if !(quadrature::inner_product(&spec, &f, &f)? > 0.0) {
                violations += 1;
            }
        }
    }
    Ok((violations as f64, "<phi_l, phi_l> > 0".into()))
}

fn check_moment_paths() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let k_cap = match quadrature::moment_degree_limit(&spec) {
            l if l.is_finite() => ((l.ceil() as usize).saturating_sub(1)).min(12),
            _ => 12,
        };
        for k in 0..=k_cap {
            if let Some(closed) = quadrature::moment_closed(&spec, k) {
                let closed = closed?;
                let adaptive = quadrature::moment_adaptive(&spec, k)?;
                worst = worst.max((closed - adaptive).abs() / closed.abs().max(1e-300));
            }
        }
    }
    Ok((worst, "closed-form vs adaptive moments".into()))
}

// ---------------------------------------------------------------------------
// assoc

fn check_ladder_closure() -> Result<(f64, String)> {
    // rational: A_m⁺A_m Φ_{l,m} = (λ_l−λ_m)Φ_{l,m} coefficientwise
    for p in rational_grid() {
        let cap = rational_degree_cap(&p, 5);
        for l in 0..=cap {
            for m in 0..l {
                let f = assocfun::assoc_in(&p, l, m)?;
                let up = assocfun::apply_a_in(&p, m, &f)?;
                let down = assocfun::apply_a_plus_in(&p, m, &up)?;
                let want = f.poly.scale(&(p.lambda(l) - p.lambda(m)));
                if down.poly != want {
                    return Ok((
                        f64::INFINITY,
                        format!("rational mismatch sigma = {} l={l} m={m}", p.kind.label()),
                    ));
                }
            }
        }
    }
    // float
    let mut worst = 0.0f64;
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(8) {
            for m in 0..l {
                let f = assocfun::assoc(&spec, l, m)?;
                let up = assocfun::apply_a(&spec, m, &f)?;
                let down = assocfun::apply_a_plus(&spec, m, &up)?;
                let want = f.poly.scale(&(spec.lambda_l(l) - spec.lambda_l(m)));
                worst = worst
                    .max(down.poly.sub(&want).max_abs_coeff() / want.max_abs_coeff().max(1.0));
            }
        }
    }
    Ok((worst, "rational route exact; float deviation shown".into()))
}

fn check_chain() -> Result<(f64, String)> {
    for p in rational_grid() {
        let cap = rational_degree_cap(&p, 5);
        for l in 1..=cap {
            for m in 0..l {
                let direct = assocfun::assoc_in(&p, l, m)?;
                let chained = assocfun::chain_from_top_in(&p, l, m)?;
                if direct.poly != chained.poly {
                    return Ok((
                        f64::INFINITY,
                        format!("rational mismatch sigma = {} l={l} m={m}", p.kind.label()),
                    ));
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let p = spec.params();
        for l in 1..=spec.degree_cap(8) {
            for m in 0..l {
                let direct = assocfun::assoc(&spec, l, m)?;
                let chained = assocfun::chain_from_top_in(&p, l, m)?;
                worst = worst.max(
                    direct.poly.sub(&chained.poly).max_abs_coeff()
                        / direct.poly.max_abs_coeff().max(1.0),
                );
            }
        }
    }
    Ok((worst, "reconstruction from the top rung".into()))
}

fn check_factorization() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let p = spec.params();
        for m in 1..4usize {
            for deg in 0..=8usize {
                let f = AssocFunction::new(m, Polynomial::<f64>::monomial(1.0, deg));
                let left = assocfun::apply_h_in(&p, m, &f)?;
                let lowered = assocfun::apply_a_plus_in(&p, m - 1, &f)?;
                let raised = assocfun::apply_a_in(&p, m - 1, &lowered)?;
                let right = raised.poly.add(&f.poly.scale(&p.lambda(m - 1)));
                worst = worst
                    .max(left.poly.sub(&right).max_abs_coeff() / left.poly.max_abs_coeff().max(1.0));
            }
        }
    }
    Ok((worst, "two factorization routes for H_m on monomials".into()))
}

fn check_intertwining() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let p = spec.params();
        for m in 0..3usize {
            for deg in 0..=8usize {
                let g = AssocFunction::new(m + 1, Polynomial::<f64>::monomial(1.0, deg));
                let left = assocfun::apply_h_in(&p, m, &assocfun::apply_a_plus_in(&p, m, &g)?)?;
                let right = assocfun::apply_a_plus_in(&p, m, &assocfun::apply_h_in(&p, m + 1, &g)?)?;
                let scale = left.poly.max_abs_coeff().max(1.0);
                worst = worst.max(left.poly.sub(&right.poly).max_abs_coeff() / scale);

                let h = AssocFunction::new(m, Polynomial::<f64>::monomial(1.0, deg));
                let left = assocfun::apply_a_in(&p, m, &assocfun::apply_h_in(&p, m, &h)?)?;
                let right = assocfun::apply_h_in(&p, m + 1, &assocfun::apply_a_in(&p, m, &h)?)?;
                let scale = left.poly.max_abs_coeff().max(1.0);
                worst = worst.max(left.poly.sub(&right.poly).max_abs_coeff() / scale);
            }
        }
    }
    Ok((worst, "H_m A_m⁺ = A_m⁺ H_{m+1} and A_m H_m = H_{m+1} A_m".into()))
}

fn check_assoc_orthogonality() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let cap = spec.degree_cap(8);
        for m in 0..=2.min(cap) {
            for l in m..=cap {
                for k in m..l {
                    let fl = assocfun::assoc(&spec, l, m)?;
                    let fk = assocfun::assoc(&spec, k, m)?;
                    let ip = quadrature::inner_product_weighted(&spec, &fl.poly, &fk.poly, m)?;
                    let nl = assocfun::norm_direct(&spec, l, m)?;
                    let nk = assocfun::norm_direct(&spec, k, m)?;
                    worst = worst.max(ip.abs() / (nl * nk));
                }
            }
        }
    }
    Ok((worst, "sigma^m-weighted Gram off-diagonals".into()))
}

fn check_eigen_residual() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        for l in 0..=spec.degree_cap(8) {
            for m in 0..=l {
                let f = assocfun::assoc(&spec, l, m)?;
                let hf = assocfun::apply_h(&spec, m, &f)?;
                let want = f.poly.scale(&spec.lambda_l(l));
                worst = worst
                    .max(hf.poly.sub(&want).max_abs_coeff() / want.max_abs_coeff().max(1.0));
            }
        }
    }
    Ok((worst, "H_m Phi_lm = lambda_l Phi_lm".into()))
}

fn check_norm_recursion() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let cap = spec.degree_cap(6);
        let table = assocfun::NormTable::build(&spec, cap)?;
        for l in 0..=cap {
            for m in 0..=l {
                let rec = table.norm(&spec, l, m)?;
                let direct = assocfun::norm_direct(&spec, l, m)?;
                worst = worst.max((rec - direct).abs() / direct);
            }
        }
    }
    Ok((worst, "norm recursion vs direct weighted quadrature".into()))
}

fn check_h_pointwise() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let iv = spec.interval();
        for l in 1..=spec.degree_cap(4) {
            for m in 0..=l {
                let f = assocfun::assoc(&spec, l, m)?;
                let hf = assocfun::apply_h(&spec, m, &f)?;
                for i in 0..50 {
                    let u = 0.05 + 0.9 * (i as f64 + 0.5) / 50.0;
                    let s = map_to_interval(iv, u);
                    let raw = assocfun::h_raw_reduced(&spec, &f, s);
                    let fac = hf.poly.eval(&s);
                    let scale = fac.abs().max(f.poly.eval(&s).abs()).max(1.0);
                    worst = worst.max((raw - fac).abs() / scale);
                }
            }
        }
    }
    Ok((worst, "raw second-order H_m vs factorized form".into()))
}

// ---------------------------------------------------------------------------
// ladder

fn ladder_fixtures(spec: &CaseSpec) -> Result<Vec<(usize, f64, usize)>> {
    // (m, gamma, dim) triples per spec
    let mut out = Vec::new();
    for m in 0..=spec.degree_cap(1) {
        for gamma in [0.0, 0.7] {
            let dim = match ladder::finite_dim(spec, m)? {
                Some(d) => d,
                None => 24,
            };
            if dim >= 2 {
                out.push((m, gamma, dim));
            }
        }
    }
    Ok(out)
}

fn check_adjointness() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        for (m, gamma, dim) in ladder_fixtures(&spec)? {
            let (a, ap) = ladder::build_ladder(&spec, m, gamma, dim)?;
            let diff = &ap.entries - a.entries.adjoint();
            worst = worst.max(ladder::max_abs(&diff));
        }
    }
    Ok((worst, "a⁺ equals the conjugate transpose of a".into()))
}

fn check_number_diagonal() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        for (m, gamma, dim) in ladder_fixtures(&spec)? {
            let (a, ap) = ladder::build_ladder(&spec, m, gamma, dim)?;
            let lower = &ap.entries * &a.entries;
            let upper = &a.entries * &ap.entries;
            let scale = ladder::max_abs(&lower).max(1.0);
            for n in 0..dim {
                let want = ladder::ladder_weight(&spec, m, n)?;
                worst = worst
                    .max((lower[(n, n)] - Complex64::new(want, 0.0)).norm() / scale);
                if n + 1 < dim {
                    let want = ladder::ladder_weight(&spec, m, n + 1)?;
                    worst = worst
                        .max((upper[(n, n)] - Complex64::new(want, 0.0)).norm() / scale);
                }
            }
        }
    }
    Ok((worst, "a⁺a and aa⁺ diagonals".into()))
}

fn check_algebra_h2() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid()
        .into_iter()
        .filter(|s| matches!(s.kind(), CaseKind::SigmaOne | CaseKind::SigmaS))
    {
        for (m, gamma, dim) in ladder_fixtures(&spec)? {
            let (a, ap) = ladder::build_ladder(&spec, m, gamma, dim)?;
            let scale = Complex64::new((-1.0 / spec.alpha()).sqrt(), 0.0);
            let p_plus = &ap.entries * scale;
            let p_minus = &a.entries * scale;
            let comm = &p_plus * &p_minus - &p_minus * &p_plus;
            let target = comm + DMatrix::<Complex64>::identity(dim, dim);
            worst = worst.max(ladder::max_abs_interior(&target));
        }
    }
    Ok((worst, "[P₊,P₋] = −I on the interior block".into()))
}

fn check_algebra_su11() -> Result<(f64, String)> {
    let spec = default_grid()
        .into_iter()
        .find(|s| s.kind() == CaseKind::SigmaOneMinusS2)
        .unwrap();
    let mut worst = 0.0f64;
    for (m, gamma, dim) in ladder_fixtures(&spec)? {
        let (a, ap) = ladder::build_ladder(&spec, m, gamma, dim)?;
        // analytic R = diag(σ''(m+n) + α)
        let r = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::new(
                    spec.kind().sigma_second() as f64 * (m + i) as f64 + spec.alpha(),
                    0.0,
                )
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let k0 = -&r * Complex64::new(0.5, 0.0);
        let scale = ladder::max_abs(&r).max(1.0);
        // [K₊,K₋] = −2K₀
        let comm = &ap.entries * &a.entries - &a.entries * &ap.entries;
        let diff = comm + &k0 * Complex64::new(2.0, 0.0);
        worst = worst.max(ladder::max_abs_interior(&diff) / scale);
        // [K₀,K₊] = K₊ and [K₀,K₋] = −K₋
        let kp = &k0 * &ap.entries - &ap.entries * &k0;
        let diff = kp - &ap.entries;
        worst = worst.max(ladder::max_abs_interior(&diff) / scale);
        let km = &k0 * &a.entries - &a.entries * &k0;
        let diff = km + &a.entries;
        worst = worst.max(ladder::max_abs_interior(&diff) / scale);
    }
    Ok((worst, "su(1,1) relations with K₀ = [a,a⁺]/2".into()))
}

fn check_algebra_su2() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in finite_grid() {
        for (m, gamma, dim) in ladder_fixtures(&spec)? {
            let (a, ap) = ladder::build_ladder(&spec, m, gamma, dim)?;
            let r = ladder::r_tilde(dim);
            let scale = ladder::max_abs(&ap.entries).max(1.0);
            let comm = &ap.entries * &a.entries - &a.entries * &ap.entries;
            let diff = comm - &r * Complex64::new(2.0, 0.0);
            worst = worst.max(ladder::max_abs(&diff) / scale);
            let rp = &r * &ap.entries - &ap.entries * &r;
            let diff = rp - &ap.entries;
            worst = worst.max(ladder::max_abs(&diff) / scale);
            let rm = &r * &a.entries - &a.entries * &r;
            let diff = rm + &a.entries;
            worst = worst.max(ladder::max_abs(&diff) / scale);
        }
    }
    Ok((worst, "[ã⁺,ã] = 2R̃, [R̃,ã±] = ±ã± on all rows".into()))
}

fn check_phase_covariance() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let m = 0;
        let gamma = 0.9;
        let dim = match ladder::finite_dim(&spec, m)? {
            Some(d) => d,
            None => 16,
        };
        if dim < 2 {
            continue;
        }
        let (a_g, _) = ladder::build_ladder(&spec, m, gamma, dim)?;
        let (a_0, _) = ladder::build_ladder(&spec, m, 0.0, dim)?;
        let phase = |sign: f64| -> Result<DMatrix<Complex64>> {
            let mut d = DMatrix::<Complex64>::zeros(dim, dim);
            for i in 0..dim {
                d[(i, i)] = Complex64::from_polar(1.0, sign * gamma * ladder::energy(&spec, m, i)?);
            }
            Ok(d)
        };
        let d = phase(-1.0)?;
        let d_inv = phase(1.0)?;
        let mapped = &d_inv * &a_g.entries * &d;
        let diff = mapped - &a_0.entries;
        worst = worst.max(ladder::max_abs(&diff) / ladder::max_abs(&a_0.entries).max(1.0));
    }
    Ok((worst, "diag(e^{−iγe_n}) similarity removes the phases".into()))
}

// ---------------------------------------------------------------------------
// coherent

fn z_samples(z_max: f64) -> Vec<Complex64> {
    vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.4 * z_max, 0.3 * z_max),
        Complex64::from_polar(z_max, 2.1),
    ]
}

fn check_annihilation(z_max: f64) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        for m in 0..=1usize {
            for gamma in [0.0, 0.8] {
                for &z in &z_samples(z_max) {
                    let st = coherent::coherent_state(&spec, m, z, gamma)?;
                    worst = worst.max(coherent::annihilation_residual(&spec, m, &st)?);
                }
            }
        }
    }
    Ok((worst, "‖a|z,γ⟩ − z|z,γ⟩‖ / ‖|z,γ⟩‖".into()))
}

fn check_overlap(z_max: f64) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        for m in 0..=1usize {
            for &z in &z_samples(z_max) {
                let st = coherent::coherent_state(&spec, m, z, 0.4)?;
                let series = coherent::overlap_series(&st);
                let closed = coherent::overlap_closed(&spec, m, z)?;
                worst = worst.max((series - closed).abs() / closed);
            }
        }
    }
    Ok((worst, "overlap series vs closed form".into()))
}

fn check_measure_moments() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let mut at = String::new();
    for spec in infinite_grid() {
        let ms: &[usize] = if spec.kind() == CaseKind::SigmaOneMinusS2 {
            &[0, 1]
        } else {
            &[0]
        };
        for &m in ms {
            for n in 0..=10usize {
                let got = measure::measure_moment(&spec, m, n)?;
                let want = measure::epsilon_reference(&spec, m, n)?;
                let rel = (got - want).abs() / want;
                if rel > worst {
                    worst = rel;
                    at = format!("sigma = {} m = {m} n = {n}", spec.kind().label());
                }
            }
        }
    }
    Ok((worst, format!("worst at {at}")))
}

fn check_measure_offdiag() -> Result<(f64, String)> {
    let spec = default_grid()
        .into_iter()
        .find(|s| s.kind() == CaseKind::SigmaOneMinusS2)
        .unwrap();
    let (n, n_prime) = (2usize, 5usize);
    let off = measure::measure_offdiagonal(&spec, 0, n, n_prime)?;
    let scale = (measure::epsilon_reference(&spec, 0, n)?
        * measure::epsilon_reference(&spec, 0, n_prime)?)
    .sqrt();
    Ok((
        off.abs() / scale,
        format!("entry (n,n') = ({n},{n_prime}) against √(ε_n ε_n')"),
    ))
}

fn check_temporal_stability() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in default_grid() {
        let m = if spec.kind().is_finite_family() { 1 } else { 0 };
        let z = Complex64::new(1.1, -0.6);
        for t in [0.3, 1.0, -2.4] {
            let st = coherent::coherent_state(&spec, m, z, 0.2)?;
            let evolved = coherent::evolve(&st, t);
            let direct = coherent::coherent_state(&spec, m, z, 0.2 + t)?;
            for n in 0..direct.dim() {
                let mag = direct.coeffs[n].norm().max(1.0);
                worst = worst.max((evolved.coeffs[n] - direct.coeffs[n]).norm() / mag);
            }
        }
    }
    Ok((worst, "evolve ∘ state = state with shifted gamma".into()))
}

fn check_finite_overlap() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in finite_grid() {
        for m in 0..=spec.degree_cap(1) {
            for &z in &[Complex64::new(0.7, 0.2), Complex64::new(1.5, -1.0)] {
                let st = coherent::coherent_state(&spec, m, z, 0.5)?;
                let series = coherent::overlap_series(&st);
                let closed = coherent::overlap_closed(&spec, m, z)?;
                worst = worst.max((series - closed).abs() / closed);
            }
        }
    }
    Ok((worst, "finite partial sum vs coefficient norm".into()))
}

fn check_bessel_oracle() -> Result<(f64, String)> {
    let rule = TanhSinh::with_rel_tol(1e-13);
    let mut worst = 0.0f64;
    for &nu in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
        for &x in &[0.4, 1.0, 1.9, 2.1, 5.0, 9.0, 20.0, 60.0] {
            let got = bessel::bessel_k(nu, x)?;
            let t_max = (745.0 / x).acosh() + 1.0;
            let want = rule
                .integrate(|t: f64| (-x * t.cosh()).exp() * (nu * t).cosh(), 0.0, t_max)?
                .value;
            worst = worst.max((got - want).abs() / want);
        }
    }
    Ok((worst, "K_ν against its integral representation".into()))
}

fn check_displacement() -> Result<(f64, String)> {
    let dim = 24;
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        for m in 0..=1usize {
            for &z in &[
                Complex64::new(0.5, 0.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 2.0),
            ] {
                let d = coherent::displacement_apply(&spec, m, z, 0.0, dim)?;
                let st = coherent::coherent_state(&spec, m, z, 0.0)?;
                let factor = (-0.5 * z.norm_sqr()).exp();
                // componentwise over the shared representation range
                let n_cmp = dim.min(st.dim());
                let mut diff_sq = 0.0;
                let mut ref_sq = 0.0;
                for n in 0..n_cmp {
                    diff_sq += (d.coeffs[n] - st.coeffs[n] * factor).norm_sqr();
                    ref_sq += (st.coeffs[n] * factor).norm_sqr();
                }
                worst = worst.max((diff_sq / ref_sq).sqrt());

                // independent route: full matrix exponential of za^⊥ − z̄a
                let (a, _) = ladder::build_ladder(&spec, m, 0.0, dim)?;
                let a_perp = ladder::a_perp(&spec, m, 0.0, dim)?;
                let gen = &a_perp.entries * z - &a.entries * z.conj();
                let expd = ladder::matrix_exp(&gen);
                let mut e0 = DVector::<Complex64>::zeros(dim);
                e0[0] = Complex64::new(1.0, 0.0);
                let via_exp = expd * e0;
                let mut diff_sq = 0.0;
                let mut ref_sq = 0.0;
                // the full exponential mixes the top rows through truncation;
                // compare away from the boundary
                for n in 0..n_cmp.saturating_sub(4) {
                    diff_sq += (via_exp[n] - d.coeffs[n]).norm_sqr();
                    ref_sq += d.coeffs[n].norm_sqr();
                }
                worst = worst.max((diff_sq / ref_sq).sqrt());
            }
        }
    }
    Ok((worst, "factored form vs state and vs full exponential".into()))
}

fn check_uncertainty() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        for &z in &[
            Complex64::new(0.3, 0.0),
            Complex64::new(0.5, 0.5),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(2.0, -1.0),
        ] {
            let st = coherent::coherent_state(&spec, 0, z, 0.25)?;
            let u = coherent::uncertainty(&spec, 0, &st)?;
            worst = worst.max((u.var_x * u.var_p - u.bound).abs() / u.bound);
            worst = worst.max(u.mean_x_imag.abs());
            worst = worst.max(u.mean_p_imag.abs());
        }
    }
    Ok((worst, "varX·varP = ¼⟨i[X,P]⟩² for a-eigenstates".into()))
}

fn check_overcompleteness() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in finite_grid() {
        let m = 1.min(spec.degree_cap(1));
        let dim = ladder::finite_dim(&spec, m)?.unwrap();
        let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
        for j in 0..dim {
            let z = Complex64::from_polar(0.5 + 0.45 * j as f64, 0.8 * j as f64);
            let st = coherent::coherent_state(&spec, m, z, 0.0)?;
            for n in 0..dim {
                mat[(j, n)] = st.coeffs[n];
            }
        }
        let svd = mat.svd(false, false);
        let max_sv = svd.singular_values.max();
        let min_sv = svd.singular_values.min();
        // pass iff min_sv ≥ 1e−8 · max_sv, i.e. reported ratio ≤ 1
        worst = worst.max(1e-8 * max_sv / min_sv);
    }
    Ok((
        worst,
        "L̃+1 distinct z give a full-rank coefficient matrix".into(),
    ))
}

// ---------------------------------------------------------------------------
// bargmann

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn check_isometry(seed: u64) -> Result<(f64, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs = infinite_grid();
    let mut worst = 0.0f64;
    for pair in 0..100usize {
        let spec = &specs[pair % specs.len()];
        let m = pair % 2;
        let gamma = 0.6;
        let phi = random_state(&mut rng, 12);
        let psi = random_state(&mut rng, 12);
        let direct: Complex64 = phi.iter().zip(&psi).map(|(a, b)| a.conj() * b).sum();
        let f = bargmann::to_analytic(&phi, spec, m, gamma)?;
        let g = bargmann::to_analytic(&psi, spec, m, gamma)?;
        let through = bargmann::fock_inner(&f, &g, spec, m)?;
        worst = worst.max((direct - through).norm() / direct.norm().max(1.0));
    }
    Ok((worst, "(f,g) in the series space vs ⟨φ,ψ⟩".into()))
}

fn check_operator_forms() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        for m in 0..=1usize {
            for n in 0..=12usize {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
                coeffs[n] = Complex64::new(1.0, 0.0);
                let f = AnalyticSeries {
                    coeffs,
                    gamma: 0.0,
                    tail_bound: 0.0,
                };
                for which in [LadderOp::Lower, LadderOp::Raise, LadderOp::Weight] {
                    let lhs = bargmann::op_on_series(which, &f, &spec, m)?;
                    let rhs = bargmann::op_differential(which, &f, &spec, m)?;
                    if lhs.coeffs.len() != rhs.coeffs.len() {
                        return Ok((f64::INFINITY, "length mismatch".into()));
                    }
                    for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
                        worst = worst.max((a - b).norm());
                    }
                }
            }
        }
    }
    Ok((worst, "monomial vs differential operator actions".into()))
}

fn check_reproducing(seed: u64) -> Result<(f64, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        let m = 1;
        let gamma = 0.35;
        let state = random_state(&mut rng, 10);
        let f = bargmann::to_analytic(&state, &spec, m, gamma)?;
        let eps = ladder::epsilon_seq(&spec, m, 9)?;
        for n in 0..10usize {
            let un = bargmann::u_basis(&spec, m, gamma, n)?;
            let ip = bargmann::fock_inner(&un, &f, &spec, m)?;
            let e = ladder::energy(&spec, m, n)?;
            let want = Complex64::from_polar(eps[n].sqrt(), -gamma * e) * f.coeffs[n];
            worst = worst.max((ip - want).norm() / want.norm().max(1e-12));
        }
    }
    Ok((worst, "(u_n, f) = √ε_n e^{−iγe_n} c_n".into()))
}

fn check_measure_consistency() -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for spec in infinite_grid() {
        let ms: &[usize] = if spec.kind() == CaseKind::SigmaOneMinusS2 {
            &[0, 1]
        } else {
            &[0]
        };
        for &m in ms {
            for n in 0..=8usize {
                let via_measure = measure::measure_moment(&spec, m, n)?;
                let eps = measure::epsilon_reference(&spec, m, n)?;
                worst = worst.max((via_measure - eps).abs() / eps);
            }
        }
    }
    Ok((worst, "(zⁿ, zⁿ) via the measure equals ε_n".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn check_ids_are_unique_and_cover_all_suites() {
        let all = check_ids(Suite::All);
        let set: BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len(), "duplicate check ids");
        let partitioned: usize = [
            Suite::Core,
            Suite::Poly,
            Suite::Assoc,
            Suite::Ladder,
            Suite::Coherent,
            Suite::Bargmann,
        ]
        .iter()
        .map(|s| check_ids(*s).len())
        .sum();
        assert_eq!(partitioned, all.len());
        for id in all {
            let _ = default_tolerance(id); // panics on unknown ids
        }
    }

    #[test]
    fn core_suite_passes() {
        let cfg = VerifyConfig {
            suite: Suite::Core,
            ..Default::default()
        };
        let report = run(&cfg);
        assert!(
            report.all_passed(),
            "failures: {:?}",
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn tolerance_overrides_apply() {
        let mut cfg = VerifyConfig::default();
        cfg.tol_overrides.insert("orthogonality".into(), 1e-6);
        assert_eq!(cfg.tolerance("orthogonality"), 1e-6);
        assert_eq!(cfg.tolerance("pearson"), 1e-6);
        assert_eq!(cfg.tolerance("rodrigues"), 1e-12);
    }
}
