//! `hypertype`: tables and verification suites for the six-case toolkit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypertype_core::{
    assocfun, coherent,
    verify::{self, Suite, VerifyConfig},
    CaseKind, CaseSpec, Error,
};
use num_complex::Complex64;
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "hypertype",
    about = "Orthogonal polynomials of hypergeometric type: tables, ladder algebra, coherent states, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CaseArgs {
    /// Which sigma case: 1 | s | 1-s2 | s2-1 | s2 | s2+1
    #[arg(long)]
    case: String,
    /// Slope of tau(s) = alpha s + beta
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Intercept of tau
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
}

impl CaseArgs {
    fn spec(&self) -> Result<CaseSpec, Error> {
        let kind = CaseKind::parse_label(&self.case).ok_or(Error::UnsupportedCase {
            case: "?",
            detail: "expected one of: 1, s, 1-s2, s2-1, s2, s2+1",
        })?;
        CaseSpec::validate(kind, self.alpha, self.beta)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monic polynomial coefficient tables
    Poly {
        #[command(flatten)]
        case: CaseArgs,
        /// Largest degree to tabulate
        #[arg(long, default_value_t = 6)]
        lmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Associated functions: kappa-power, polynomial factor, norm
    Assoc {
        #[command(flatten)]
        case: CaseArgs,
        /// Largest degree l to tabulate
        #[arg(long, default_value_t = 6)]
        lmax: usize,
        /// Kappa power m (rows run over l = m..=lmax)
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coherent-state coefficients, overlap and closed form
    Coherent {
        #[command(flatten)]
        case: CaseArgs,
        /// Basis label m
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Complex amplitude, e.g. "1+2i"
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z: String,
        /// Phase parameter
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a named verification suite over the default grid
    Verify {
        /// core | poly | assoc | ladder | coherent | bargmann | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest |z| exercised by the coherent-state checks
        #[arg(long, default_value_t = 3.0)]
        zmax: f64,
        /// Seed for the randomized state checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override one tolerance, e.g. orthogonality=1e-6 (repeatable)
        #[arg(long = "tol-override", value_name = "KEY=VAL")]
        tol_override: Vec<String>,
        /// Cap worker threads (also honours HYPERTYPE_THREADS)
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ConstraintViolation { .. } => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Poly { case, lmax, format } => cmd_poly(&case, lmax, format),
        Command::Assoc {
            case,
            lmax,
            m,
            format,
        } => cmd_assoc(&case, lmax, m, format),
        Command::Coherent {
            case,
            m,
            z,
            gamma,
            format,
        } => cmd_coherent(&case, m, &z, gamma, format),
        Command::Verify {
            suite,
            zmax,
            seed,
            tol_override,
            threads,
            format,
        } => cmd_verify(&suite, zmax, seed, &tol_override, threads, format),
    }
}

fn cmd_poly(case: &CaseArgs, lmax: usize, format: Format) -> Result<i32, Error> {
    let spec = case.spec()?;
    let top = spec.degree_cap(lmax);
    let polys: Vec<Vec<f64>> = (0..=top)
        .map(|l| {
            hypertype_core::polyengine::phi(&spec, l)
                .map(|p| (0..=l).map(|k| p.coeff(k)).collect())
        })
        .collect::<Result<_, _>>()?;
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "case": spec.kind().label(),
                "alpha": spec.alpha(),
                "beta": spec.beta(),
                "polys": polys,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            let header: Vec<String> = std::iter::once("l".to_string())
                .chain((0..=top).map(|k| format!("c{k}")))
                .collect();
            println!("{}", header.join(","));
            for (l, coeffs) in polys.iter().enumerate() {
                let mut row = vec![l.to_string()];
                row.extend(coeffs.iter().map(|c| format!("{c:.17e}")));
                row.extend(std::iter::repeat_n(String::new(), top - l));
                println!("{}", row.join(","));
            }
        }
    }
    Ok(0)
}

fn cmd_assoc(case: &CaseArgs, lmax: usize, m: usize, format: Format) -> Result<i32, Error> {
    let spec = case.spec()?;
    let top = spec.degree_cap(lmax);
    if m > top {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: format!("kappa-power m must not exceed the degree cap {top}"),
        });
    }
    let mut rows = Vec::new();
    for l in m..=top {
        let f = assocfun::assoc(&spec, l, m)?;
        let norm = assocfun::norm(&spec, l, m)?;
        let coeffs: Vec<f64> = (0..=(l - m)).map(|k| f.poly.coeff(k)).collect();
        rows.push((l, norm, coeffs));
    }
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "case": spec.kind().label(),
                "alpha": spec.alpha(),
                "beta": spec.beta(),
                "m": m,
                "rows": rows.iter().map(|(l, norm, coeffs)| json!({
                    "l": l,
                    "kappa_power": m,
                    "norm": norm,
                    "coeffs": coeffs,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            let width = top - m;
            let header: Vec<String> = ["l".to_string(), "m".to_string(), "norm".to_string()]
                .into_iter()
                .chain((0..=width).map(|k| format!("c{k}")))
                .collect();
            println!("{}", header.join(","));
            for (l, norm, coeffs) in &rows {
                let mut row = vec![l.to_string(), m.to_string(), format!("{norm:.17e}")];
                row.extend(coeffs.iter().map(|c| format!("{c:.17e}")));
                row.extend(std::iter::repeat_n(String::new(), width + 1 - coeffs.len()));
                println!("{}", row.join(","));
            }
        }
    }
    Ok(0)
}

fn cmd_coherent(
    case: &CaseArgs,
    m: usize,
    z_text: &str,
    gamma: f64,
    format: Format,
) -> Result<i32, Error> {
    let spec = case.spec()?;
    let z = parse_complex(z_text).ok_or(Error::UnsupportedCase {
        case: "z",
        detail: "expected a complex literal like 1.5, 2i or 1+2i",
    })?;
    let state = coherent::coherent_state(&spec, m, z, gamma)?;
    let series = coherent::overlap_series(&state);
    let closed = coherent::overlap_closed(&spec, m, z)?;
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "case": spec.kind().label(),
                "alpha": spec.alpha(),
                "beta": spec.beta(),
                "m": m,
                "z": {"re": z.re, "im": z.im},
                "gamma": gamma,
                "dim": state.dim(),
                "tail_bound": state.tail_bound,
                "overlap_series": series,
                "overlap_closed": closed,
                "coeffs": state.coeffs.iter().map(|c| json!({"re": c.re, "im": c.im})).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            println!(
                "# overlap_series={series:.17e} overlap_closed={closed:.17e} dim={} tail_bound={:.3e}",
                state.dim(),
                state.tail_bound
            );
            println!("n,re,im");
            for (n, c) in state.coeffs.iter().enumerate() {
                println!("{n},{:.17e},{:.17e}", c.re, c.im);
            }
        }
    }
    Ok(0)
}

fn cmd_verify(
    suite: &str,
    zmax: f64,
    seed: u64,
    tol_overrides: &[String],
    threads: Option<usize>,
    format: Format,
) -> Result<i32, Error> {
    let suite = Suite::parse(suite).ok_or(Error::UnsupportedCase {
        case: "suite",
        detail: "expected one of: core, poly, assoc, ladder, coherent, bargmann, all",
    })?;
    let mut overrides = BTreeMap::new();
    for item in tol_overrides {
        let (key, val) = item.split_once('=').ok_or(Error::UnsupportedCase {
            case: "tol-override",
            detail: "expected KEY=VAL",
        })?;
        let val: f64 = val.parse().map_err(|_| Error::UnsupportedCase {
            case: "tol-override",
            detail: "tolerance value must parse as a float",
        })?;
        overrides.insert(key.to_string(), val);
    }
    let config = VerifyConfig {
        suite,
        z_max: zmax,
        seed,
        tol_overrides: overrides,
        threads,
    };
    let report = verify::run(&config);
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "suite": report.suite,
                "seed": report.seed,
                "wall_ms": report.wall_ms,
                "all_passed": report.all_passed(),
                "checks": report.checks.iter().map(|c| json!({
                    "id": c.id,
                    "passed": c.passed,
                    "max_error": c.max_error,
                    "tolerance": c.tolerance,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Csv => {
            for c in &report.checks {
                println!(
                    "[{}] {:<24} max_err={:<12.3e} tol={:<9.1e} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.max_error,
                    c.tolerance,
                    c.detail
                );
            }
            println!(
                "suite '{}': {}/{} checks passed in {} ms (seed {})",
                report.suite,
                report.checks.iter().filter(|c| c.passed).count(),
                report.checks.len(),
                report.wall_ms,
                report.seed
            );
        }
    }
    if report.all_passed() {
        Ok(0)
    } else {
        if let Some(worst) = report.worst_offender() {
            eprintln!(
                "worst offender: {} (max_err {:.3e} vs tol {:.1e}) — {}",
                worst.id, worst.max_error, worst.tolerance, worst.detail
            );
        }
        Ok(1)
    }
}

/// Parse `a+bi` style complex literals: "1.5", "-2i", "1+2i", "1-0.5i", "i".
fn parse_complex(text: &str) -> Option<Complex64> {
    let t = text.trim().replace(' ', "");
    if t.is_empty() {
        return None;
    }
    if let Some(body) = t.strip_suffix(['i', 'j']) {
        // find the sign splitting the parts: not leading, not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for (i, &c) in bytes.iter().enumerate().skip(1) {
            if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().ok()?;
                let im_text = &body[i..];
                let im: f64 = match im_text {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => im_text.parse().ok()?,
                };
                Some(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body.parse().ok()?,
                };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        t.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}
