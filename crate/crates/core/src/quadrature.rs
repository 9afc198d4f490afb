//! Weighted moments and scalar products.
//!
//! Scalar products of polynomials reduce to the monomial moments
//! `m_k = ∫ s^k ρ(s) ds` by bilinear expansion, so quadrature error never
//! couples the two factors. Moments come from closed forms where the case
//! admits one (Gamma/Beta functions, Pearson recursions) and otherwise from
//! a tanh–sinh rule applied after an analytic substitution that maps the
//! interval to a finite one; unbounded intervals are never truncated
//! naively.

use crate::cases::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub err_est: f64,
    pub evals: usize,
}

/// Sample point handed to integrands: the abscissa plus its exact distances
/// to the endpoints. Integrands with endpoint singularities must build the
/// singular factors from the distances, never from `x` itself, or the
/// subtraction wipes out the digits the transformation preserved.
#[derive(Debug, Clone, Copy)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

/// Double-exponential (tanh–sinh) quadrature on a finite open interval.
/// Handles integrable endpoint singularities; abscissas are generated as
/// distances from the endpoints so the singular factors never lose
/// precision to cancellation.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_level: u32,
    pub max_evals: usize,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_level: 12,
            max_evals: 1 << 20,
        }
    }
}

impl TanhSinh {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Integrate a plain integrand over the open interval `(a, b)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Quad> {
        self.integrate_points(|p: Abscissa| f(p.x), a, b)
    }

    /// Integrate over `(a, b)` with endpoint-distance-aware samples.
    pub fn integrate_points<F: Fn(Abscissa) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Quad> {
        const T_MAX: f64 = 6.56;
        let d = 0.5 * (b - a);
        let mut evals = 0usize;

        // One transformed sample pair at |t|; returns w(t)·(f(x₋) + f(x₊)).
        let sample = |t: f64, evals: &mut usize| -> f64 {
            let g = 0.5 * PI * t.sinh();
            let u = (-2.0 * g).exp();
            if u == 0.0 {
                return 0.0;
            }
            let r = 2.0 * u / (1.0 + u); // 1 − tanh g
            let w = 0.5 * PI * t.cosh() * 4.0 * u / ((1.0 + u) * (1.0 + u));
            let off = d * r;
            let far = 2.0 * d - off;
            if off <= 0.0 {
                return 0.0;
            }
            // keep sampling past the point where b − off collapses onto b:
            // the distances stay exact even when the abscissa does not
            let mut acc = 0.0;
            for (x, from_lo, from_hi) in [(b - off, far, off), (a + off, off, far)] {
                let v = f(Abscissa { x, from_lo, from_hi });
                *evals += 1;
                if v.is_finite() {
                    acc += w * v;
                }
            }
            acc
        };

        // Level 0: h = 1, integer abscissas.
        let mut h = 1.0;
        let f0 = {
            let v = f(Abscissa {
                x: a + d,
                from_lo: d,
                from_hi: d,
            });
            evals += 1;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let mut raw = 0.5 * PI * f0;
        let mut k = 1;
        while k as f64 <= T_MAX {
            raw += sample(k as f64, &mut evals);
            k += 1;
        }
        let mut value = d * h * raw;
        let mut prev_delta = f64::INFINITY;
        let mut err_est = f64::INFINITY;

        for _level in 1..=self.max_level {
            h *= 0.5;
            // Only the new (odd-multiple) abscissas.
            let mut level_sum = 0.0;
            let mut k = 1;
            while k as f64 * h <= T_MAX {
                level_sum += sample(k as f64 * h, &mut evals);
                k += 2;
            }
            raw += level_sum;
            let new_value = d * h * raw;
            let delta = (new_value - value).abs();
            value = new_value;
            // double-exponential convergence doubles the digits per level;
            // estimate the remaining error accordingly, never more
            // optimistically than the last correction itself
            err_est = if delta == 0.0 {
                0.0
            } else if prev_delta.is_finite() && prev_delta > 0.0 {
                (delta * delta / prev_delta).min(delta)
            } else {
                delta
            };
            prev_delta = delta;
            if err_est <= self.rel_tol * value.abs() + self.abs_tol {
                return Ok(Quad {
                    value,
                    err_est,
                    evals,
                });
            }
            if evals > self.max_evals {
                break;
            }
        }
        Err(Error::IntegrationFailure {
            value,
            err_est,
            target: self.rel_tol * value.abs() + self.abs_tol,
        })
    }
}

/// Degree bound below which `∫ s^k ρ` converges: `k < 1 − α` for the finite
/// families, unbounded otherwise.
pub fn moment_degree_limit(spec: &CaseSpec) -> f64 {
    if spec.kind().is_finite_family() {
        1.0 - spec.alpha()
    } else {
        f64::INFINITY
    }
}

fn require_convergent(spec: &CaseSpec, k: usize) -> Result<()> {
    let limit = moment_degree_limit(spec);
    if (k as f64) < limit {
        Ok(())
    } else {
        Err(Error::DivergentMoment { degree: k, limit })
    }
}

/// `s^k · e^{log_rest}` with the sign of `s^k` restored; magnitudes combine
/// in log space so huge Jacobians and vanishing weights never overflow.
fn signed_exp(k: usize, s: f64, log_rest: f64) -> f64 {
    if s == 0.0 {
        return if k == 0 { log_rest.exp() } else { 0.0 };
    }
    let log_mag = if k == 0 {
        log_rest
    } else {
        k as f64 * s.abs().ln() + log_rest
    };
    let sign = if k % 2 == 1 && s < 0.0 { -1.0 } else { 1.0 };
    sign * log_mag.exp()
}

/// `(sin θ, cos θ)` evaluated through the distance to the nearer endpoint of
/// `(−π/2, π/2)`, so `cos θ` keeps full relative accuracy at the ends.
fn sincos_on_half_circle(p: Abscissa) -> (f64, f64) {
    if p.from_hi < 0.3 {
        (p.from_hi.cos(), p.from_hi.sin())
    } else if p.from_lo < 0.3 {
        (-p.from_lo.cos(), p.from_lo.sin())
    } else {
        p.x.sin_cos()
    }
}

/// Moment by the tanh–sinh rule after the case's analytic substitution.
/// Every singular endpoint factor is built from the endpoint distances the
/// rule provides.
pub fn moment_adaptive(spec: &CaseSpec, k: usize) -> Result<f64> {
    require_convergent(spec, k)?;
    let rule = TanhSinh::default();
    let (a, b) = (spec.alpha(), spec.beta());
    let quad = match spec.kind() {
        // s = μ + tan θ recentres the Gaussian bell before the map.
        CaseKind::SigmaOne => {
            let mu = -b / a;
            rule.integrate_points(
                |p: Abscissa| {
                    let (sin, cos) = sincos_on_half_circle(p);
                    let s = mu + sin / cos;
                    let log_rest = 0.5 * a * s * s + b * s - 2.0 * cos.ln();
                    signed_exp(k, s, log_rest)
                },
                -PI / 2.0,
                PI / 2.0,
            )?
        }
        // s = tan θ gives ∫ sin^k θ · cos^{−α−k} θ · e^{βθ} dθ.
        CaseKind::SigmaS2Plus1 => rule.integrate_points(
            |p: Abscissa| {
                let (sin, cos) = sincos_on_half_circle(p);
                let log_rest = (-a - k as f64) * cos.ln() + b * p.x;
                signed_exp(k, sin, log_rest)
            },
            -PI / 2.0,
            PI / 2.0,
        )?,
        // weight (1+s)^{−(α−β)/2−1} (1−s)^{−(α+β)/2−1} on (−1, 1)
        CaseKind::SigmaOneMinusS2 => rule.integrate_points(
            |p: Abscissa| {
                let log_rest = (-(a - b) / 2.0 - 1.0) * p.from_lo.ln()
                    + (-(a + b) / 2.0 - 1.0) * p.from_hi.ln();
                signed_exp(k, p.x, log_rest)
            },
            -1.0,
            1.0,
        )?,
        // s = u/(1−u) maps (0,1) to the half-line; ln s = ln u − ln(1−u)
        CaseKind::SigmaS => rule.integrate_points(
            |p: Abscissa| {
                let log_s = p.from_lo.ln() - p.from_hi.ln();
                let s = p.from_lo / p.from_hi;
                let log_rest = (k as f64 + b - 1.0) * log_s + a * s - 2.0 * p.from_hi.ln();
                log_rest.exp()
            },
            0.0,
            1.0,
        )?,
        CaseKind::SigmaS2 => rule.integrate_points(
            |p: Abscissa| {
                let log_s = p.from_lo.ln() - p.from_hi.ln();
                let s = p.from_lo / p.from_hi;
                let log_rest = (k as f64 + a - 2.0) * log_s - b / s - 2.0 * p.from_hi.ln();
                log_rest.exp()
            },
            0.0,
            1.0,
        )?,
        // s = 1 + u/(1−u): the (s−1) factor is exactly u/(1−u)
        CaseKind::SigmaS2Minus1 => rule.integrate_points(
            |p: Abscissa| {
                let log_sm1 = p.from_lo.ln() - p.from_hi.ln();
                let sm1 = p.from_lo / p.from_hi;
                let s = 1.0 + sm1;
                let log_rest = ((a - b) / 2.0 - 1.0) * (s + 1.0).ln()
                    + ((a + b) / 2.0 - 1.0) * log_sm1
                    - 2.0 * p.from_hi.ln();
                signed_exp(k, s, log_rest)
            },
            0.0,
            1.0,
        )?,
    };
    Ok(quad.value)
}

/// Closed-form moment where the case admits one; `None` for the two cases
/// that are integrated adaptively only.
pub fn moment_closed(spec: &CaseSpec, k: usize) -> Option<Result<f64>> {
    let (a, b) = (spec.alpha(), spec.beta());
    match spec.kind() {
        // Pearson recursion m_{j+1} = (β m_j + j m_{j−1}) / (−α) from the
        // Gaussian base integral.
        CaseKind::SigmaOne => {
            let m0 = (2.0 * PI / -a).sqrt() * (-b * b / (2.0 * a)).exp();
            Some(Ok(pearson_recursion(k, m0, |mj, mjm1, j| {
                (b * mj + j * mjm1) / -a
            })))
        }
        // Γ(k+β) / (−α)^{k+β}
        CaseKind::SigmaS => Some(Ok((ln_gamma(k as f64 + b) - (k as f64 + b) * (-a).ln()).exp())),
        // Beta base integral, then m_{j+1} = (β m_j + j m_{j−1}) / (j − α);
        // the divisor j − α is positive for every j, so the recursion is
        // well-posed and stable at all degrees.
        CaseKind::SigmaOneMinusS2 => {
            let p = -(a - b) / 2.0 - 1.0;
            let q = -(a + b) / 2.0 - 1.0;
            let m0 = ((p + q + 1.0) * 2.0f64.ln() + ln_gamma(p + 1.0) + ln_gamma(q + 1.0)
                - ln_gamma(p + q + 2.0))
                .exp();
            Some(Ok(pearson_recursion(k, m0, |mj, mjm1, j| {
                (b * mj + j * mjm1) / (j - a)
            })))
        }
        // Γ(1−k−α) · β^{k+α−1} via the substitution u = 1/s.
        CaseKind::SigmaS2 => Some(require_convergent(spec, k).map(|()| {
            (ln_gamma(1.0 - k as f64 - a) + (k as f64 + a - 1.0) * b.ln()).exp()
        })),
        CaseKind::SigmaS2Minus1 | CaseKind::SigmaS2Plus1 => None,
    }
}

fn pearson_recursion(k: usize, m0: f64, step: impl Fn(f64, f64, f64) -> f64) -> f64 {
    if k == 0 {
        return m0;
    }
    let mut prev = 0.0; // m_{-1}, multiplied by j = 0 in the first step
    let mut cur = m0;
    for j in 0..k {
        let next = step(cur, prev, j as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact moment ratios `m_k / m_0` from the Pearson recursions, over any
/// ordered scalar: integrating `(σρ)' s^k` by parts gives
/// `(α + k a2) m_{k+1} = −(β + k a1) m_k − k a0 m_{k−1}`,
/// whose divisor stays nonzero on the admissible degree range for
/// `σ ∈ {1, s, 1−s², s²}`. `None` for the two cases whose moments are not
/// rational multiples of `m_0`.
pub fn moment_ratios_exact<S: crate::scalar::RealScalar>(
    p: &crate::cases::CaseParams<S>,
    k_max: usize,
) -> Option<Vec<S>> {
    if matches!(p.kind, CaseKind::SigmaS2Minus1 | CaseKind::SigmaS2Plus1) {
        return None;
    }
    if p.kind == CaseKind::SigmaS2 {
        // the last recursion step uses k = k_max−1, which needs k < −α both
        // for the vanishing boundary term and a nonzero divisor
        let bound_ok = p.alpha.clone() + S::from_int(k_max as i64) < S::one();
        if !bound_ok {
            return None;
        }
    }
    let (a2, a1, a0) = p.kind.sigma_coeffs();
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(S::one());
    if k_max == 0 {
        return Some(out);
    }
    let mut prev = S::zero();
    let mut cur = S::one();
    for k in 0..k_max {
        let kf = S::from_int(k as i64);
        let divisor = p.alpha.clone() + kf.clone() * S::from_int(a2);
        let rhs = -(p.beta.clone() + kf.clone() * S::from_int(a1)) * cur.clone()
            - kf * S::from_int(a0) * prev.clone();
        let next = rhs / divisor;
        prev = cur;
        cur = next.clone();
        out.push(next);
    }
    Some(out)
}

/// `m_k = ∫ s^k ρ(s) ds`, closed form preferred.
pub fn moment(spec: &CaseSpec, k: usize) -> Result<f64> {
    require_convergent(spec, k)?;
    match moment_closed(spec, k) {
        Some(v) => v,
        None => moment_adaptive(spec, k),
    }
}

/// Frozen moment sequence for one case; built once, then read-only.
#[derive(Debug, Clone)]
pub struct MomentTable {
    moments: Vec<f64>,
}

impl MomentTable {
    pub fn build(spec: &CaseSpec, k_max: usize) -> Result<Self> {
        let mut moments = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            moments.push(moment(spec, k)?);
        }
        if !(moments[0] > 0.0) {
            return Err(Error::NumericalInstability {
                what: "zeroth moment must be positive",
                residual: moments[0],
                threshold: 0.0,
            });
        }
        Ok(Self { moments })
    }

    pub fn max_degree(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.moments.get(k).copied()
    }
}

/// `⟨f, g⟩ = ∫ f g ρ` by bilinear expansion over the moments.
pub fn inner_product(spec: &CaseSpec, f: &Polynomial<f64>, g: &Polynomial<f64>) -> Result<f64> {
    inner_product_weighted(spec, f, g, 0)
}

/// `∫ σ^m f g ρ`, the scalar product carried by the associated functions of
/// kappa-power `m`.
pub fn inner_product_weighted(
    spec: &CaseSpec,
    f: &Polynomial<f64>,
    g: &Polynomial<f64>,
    m: usize,
) -> Result<f64> {
    let mut rhs = g.clone();
    for _ in 0..m {
        rhs = rhs.mul(&spec.kind().sigma_poly());
    }
    if f.is_zero() || rhs.is_zero() {
        return Ok(0.0);
    }
    let deg = f.degree().unwrap_or(0) + rhs.degree().unwrap_or(0);
    require_convergent(spec, deg)?;
    let table = MomentTable::build(spec, deg)?;
    inner_with_table(&table, f, &rhs)
}

/// `Σ_{i,j} f_i g_j m_{i+j}` against a moment table. The double sum cancels
/// heavily for orthogonal pairs, so both the products and the accumulation
/// are compensated (FMA product errors carried alongside a Neumaier sum).
pub fn inner_with_table(
    table: &MomentTable,
    f: &Polynomial<f64>,
    g: &Polynomial<f64>,
) -> Result<f64> {
    let (fa, ga) = (f.coeffs(), g.coeffs());
    if fa.is_empty() || ga.is_empty() {
        return Ok(0.0);
    }
    let deg = fa.len() + ga.len() - 2;
    if deg > table.max_degree() {
        return Err(Error::DivergentMoment {
            degree: deg,
            limit: table.max_degree() as f64 + 1.0,
        });
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (i, &ai) in fa.iter().enumerate() {
        for (j, &bj) in ga.iter().enumerate() {
            let m = table.get(i + j).unwrap();
            let p1 = ai * bj;
            let e1 = ai.mul_add(bj, -p1);
            let p2 = p1 * m;
            let e2 = p1.mul_add(m, -p2);
            let t = sum + p2;
            comp += if sum.abs() >= p2.abs() {
                (sum - t) + p2
            } else {
                (p2 - t) + sum
            };
            sum = t;
            comp += e1 * m + e2;
        }
    }
    Ok(sum + comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseKind;
    use crate::polyengine::phi;
    use approx::assert_relative_eq;

    #[test]
    fn tanh_sinh_known_integrals() {
        let rule = TanhSinh::default();
        // smooth
        let q = rule.integrate(|x: f64| x.sin(), 0.0, PI).unwrap();
        assert_relative_eq!(q.value, 2.0, max_relative = 1e-12);
        // endpoint singularity x^{-1/2}, built from the endpoint distance
        let q = rule
            .integrate_points(|p: Abscissa| p.from_lo.powf(-0.5), 0.0, 1.0)
            .unwrap();
        assert_relative_eq!(q.value, 2.0, max_relative = 1e-11);
        // both endpoints singular: ∫ dx/√(1−x²) = π with 1−x² = d_lo·d_hi
        let q = rule
            .integrate_points(|p: Abscissa| 1.0 / (p.from_lo * p.from_hi).sqrt(), -1.0, 1.0)
            .unwrap();
        assert_relative_eq!(q.value, PI, max_relative = 1e-11);
    }

    #[test]
    fn gaussian_moment_matches_sqrt_pi() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -2.0, 0.0).unwrap();
        let m0 = moment(&spec, 0).unwrap();
        assert_relative_eq!(m0, PI.sqrt(), max_relative = 1e-13);
        let adaptive = moment_adaptive(&spec, 0).unwrap();
        assert_relative_eq!(adaptive, PI.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn exponential_and_inverse_gamma_moments() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 1.0).unwrap();
        assert_relative_eq!(moment(&spec, 0).unwrap(), 1.0, max_relative = 1e-13);

        let spec = CaseSpec::validate(CaseKind::SigmaS2, -4.0, 1.0).unwrap();
        assert_relative_eq!(moment(&spec, 0).unwrap(), 24.0, max_relative = 1e-12);
        assert_relative_eq!(
            moment_adaptive(&spec, 0).unwrap(),
            24.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn closed_and_adaptive_paths_agree() {
        for (kind, a, b) in [
            (CaseKind::SigmaOne, -2.0, 0.0),
            (CaseKind::SigmaS, -1.0, 2.0),
            (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
            (CaseKind::SigmaS2, -9.0, 1.0),
        ] {
            let spec = CaseSpec::validate(kind, a, b).unwrap();
            let kmax = match moment_degree_limit(&spec) {
                l if l.is_finite() => (l.ceil() as usize - 1).min(9),
                _ => 12,
            };
            for k in 0..=kmax {
                let closed = moment_closed(&spec, k).unwrap().unwrap();
                let adaptive = moment_adaptive(&spec, k).unwrap();
                assert_relative_eq!(closed, adaptive, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn divergent_moments_are_rejected() {
        let spec = CaseSpec::validate(CaseKind::SigmaS2, -4.0, 1.0).unwrap();
        assert!(moment(&spec, 4).is_ok());
        assert!(matches!(
            moment(&spec, 5),
            Err(Error::DivergentMoment { .. })
        ));
    }

    #[test]
    fn low_order_orthogonality() {
        // ⟨Φ_0, Φ_1⟩ = m_1 + (β/α) m_0 = 0 for every valid case
        for (kind, a, b) in [
            (CaseKind::SigmaOne, -2.0, 0.0),
            (CaseKind::SigmaS, -1.0, 2.0),
            (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
            (CaseKind::SigmaS2Minus1, -4.0, 5.0),
            (CaseKind::SigmaS2, -9.0, 1.0),
            (CaseKind::SigmaS2Plus1, -4.0, 1.0),
        ] {
            let spec = CaseSpec::validate(kind, a, b).unwrap();
            let p0 = phi(&spec, 0).unwrap();
            let p1 = phi(&spec, 1).unwrap();
            let ip = inner_product(&spec, &p0, &p1).unwrap();
            let scale = inner_product(&spec, &p1, &p1).unwrap();
            assert!(
                ip.abs() <= 1e-10 * scale.max(1.0),
                "{kind:?}: <phi0,phi1> = {ip:.3e}"
            );
            assert!(inner_product(&spec, &p0, &p0).unwrap() > 0.0);
        }
    }
}
