//! Associated functions `Φ_{l,m} = κ^m · dᵐΦ_l/dsᵐ` with `κ = √σ`, and the
//! ladder maps between neighbouring kappa-powers.
//!
//! The `(m, polynomial)` pair is closed under all operators, which makes
//! every action an exact polynomial map:
//!
//! - `A_m (κ^m P) = κ^{m+1} P'`
//! - `A_m⁺ (κ^{m+1} Q) = κ^m (−σ Q' − (mσ' + τ) Q)`
//! - `H_m = A_m⁺ A_m + λ_m` (the factorized form is the operational
//!   definition; the raw second-order form is kept as a pointwise check)
//!
//! No numerical differentiation appears anywhere.

use crate::cases::{CaseParams, CaseSpec};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature;
use crate::scalar::{RealScalar, Scalar};

/// `κ^m · P(s)`: the kappa-power together with the polynomial factor.
#[derive(Debug, Clone, PartialEq)]
pub struct AssocFunction<S = f64> {
    pub m: usize,
    pub poly: Polynomial<S>,
}

impl<S: Scalar> AssocFunction<S> {
    pub fn new(m: usize, poly: Polynomial<S>) -> Self {
        Self { m, poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl AssocFunction<f64> {
    /// Value `σ(s)^{m/2} P(s)` at an interior point.
    pub fn eval(&self, spec: &CaseSpec, s: f64) -> f64 {
        spec.sigma_at(s).powf(self.m as f64 / 2.0) * self.poly.eval(&s)
    }
}

/// `Φ_{l,m}`: kappa-power `m` with polynomial factor `dᵐΦ_l/dsᵐ`.
pub fn assoc_in<S: RealScalar>(p: &CaseParams<S>, l: usize, m: usize) -> Result<AssocFunction<S>> {
    if m > l {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: format!("kappa-power must satisfy m <= l = {l}"),
        });
    }
    let phi = crate::polyengine::phi_in(p, l)?;
    Ok(AssocFunction::new(m, phi.nth_derivative(m)))
}

pub fn assoc(spec: &CaseSpec, l: usize, m: usize) -> Result<AssocFunction<f64>> {
    assoc_in(&spec.params(), l, m)
}

/// `A_m = κ d/ds − m κ'` acting on kappa-power `m`; raises it to `m+1`.
pub fn apply_a_in<S: RealScalar>(
    p: &CaseParams<S>,
    m: usize,
    f: &AssocFunction<S>,
) -> Result<AssocFunction<S>> {
    let _ = p;
    if f.m != m {
        return Err(Error::PowerMismatch {
            expected: m,
            found: f.m,
        });
    }
    Ok(AssocFunction::new(m + 1, f.poly.derivative()))
}

/// `A_m⁺ = −κ d/ds − τ/κ − (m−1)κ'` acting on kappa-power `m+1`; lowers it
/// to `m`. On the polynomial factor: `Q ↦ −σQ' − (mσ' + τ)Q`.
pub fn apply_a_plus_in<S: RealScalar>(
    p: &CaseParams<S>,
    m: usize,
    f: &AssocFunction<S>,
) -> Result<AssocFunction<S>> {
    if f.m != m + 1 {
        return Err(Error::PowerMismatch {
            expected: m + 1,
            found: f.m,
        });
    }
    let sigma = p.sigma();
    let factor = p.tau().add(&sigma.derivative().scale(&S::from_int(m as i64)));
    let out = sigma
        .mul(&f.poly.derivative())
        .add(&factor.mul(&f.poly))
        .neg();
    Ok(AssocFunction::new(m, out))
}

/// `H_m = A_m⁺ A_m + λ_m` on kappa-power `m`.
pub fn apply_h_in<S: RealScalar>(
    p: &CaseParams<S>,
    m: usize,
    f: &AssocFunction<S>,
) -> Result<AssocFunction<S>> {
    if f.m != m {
        return Err(Error::PowerMismatch {
            expected: m,
            found: f.m,
        });
    }
    let raised = apply_a_in(p, m, f)?;
    let lowered = apply_a_plus_in(p, m, &raised)?;
    let out = lowered.poly.add(&f.poly.scale(&p.lambda(m)));
    Ok(AssocFunction::new(m, out))
}

pub fn apply_a(spec: &CaseSpec, m: usize, f: &AssocFunction<f64>) -> Result<AssocFunction<f64>> {
    apply_a_in(&spec.params(), m, f)
}

pub fn apply_a_plus(
    spec: &CaseSpec,
    m: usize,
    f: &AssocFunction<f64>,
) -> Result<AssocFunction<f64>> {
    apply_a_plus_in(&spec.params(), m, f)
}

pub fn apply_h(spec: &CaseSpec, m: usize, f: &AssocFunction<f64>) -> Result<AssocFunction<f64>> {
    apply_h_in(&spec.params(), m, f)
}

/// Chained reconstruction `Φ_{l,m} = A_m⁺/(λ_l−λ_m) ··· A_{l−1}⁺/(λ_l−λ_{l−1}) Φ_{l,l}`.
pub fn chain_from_top_in<S: RealScalar>(
    p: &CaseParams<S>,
    l: usize,
    m: usize,
) -> Result<AssocFunction<S>> {
    if m > l {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: format!("kappa-power must satisfy m <= l = {l}"),
        });
    }
    p.require_degree(l)?;
    // Φ_{l,l} has polynomial factor l! for monic Φ_l.
    let mut factorial = S::one();
    for j in 1..=l {
        factorial = factorial * S::from_int(j as i64);
    }
    let mut f = AssocFunction::new(l, Polynomial::constant(factorial));
    let lambda_l = p.lambda(l);
    for j in (m..l).rev() {
        let lowered = apply_a_plus_in(p, j, &f)?;
        let div = lambda_l.clone() - p.lambda(j);
        f = AssocFunction::new(j, lowered.poly.scale(&(S::one() / div)));
    }
    Ok(f)
}

/// The raw second-order form of `H_m`, evaluated pointwise with symbolic
/// derivatives of `κ^m P` and divided through by `κ^m`. Sampled checks
/// compare this against the factorized route; `σ` sits in denominators,
/// so callers stay away from endpoint neighbourhoods.
pub fn h_raw_reduced(spec: &CaseSpec, f: &AssocFunction<f64>, s: f64) -> f64 {
    let m = f.m as f64;
    let sg = spec.sigma_at(s);
    let sgp = {
        let (a2, a1, _) = spec.kind().sigma_coeffs();
        2.0 * a2 as f64 * s + a1 as f64
    };
    let sgpp = spec.kind().sigma_second() as f64;
    let tau = spec.tau_at(s);
    let p0 = f.poly.eval(&s);
    let p1 = f.poly.derivative().eval(&s);
    let p2 = f.poly.nth_derivative(2).eval(&s);
    let ratio = sgp / sg;
    // f^{(j)} / κ^m
    let f0 = p0;
    let f1 = p1 + 0.5 * m * ratio * p0;
    let f2 = p2 + m * ratio * p1 + (0.5 * m * sgpp / sg + 0.5 * m * (0.5 * m - 1.0) * ratio * ratio) * p0;
    let potential = m * (m - 2.0) / 4.0 * sgp * sgp / sg + 0.5 * m * tau * sgp / sg
        - 0.5 * m * (m - 2.0) * sgpp
        - m * spec.alpha();
    -sg * f2 - tau * f1 + potential * f0
}

/// `‖Φ_{l,m}‖` via the norm recursion seeded by quadrature:
/// `‖Φ_{l,0}‖ = √⟨Φ_l,Φ_l⟩`, then one factor `√(λ_l − λ_j)` per step.
pub fn norm(spec: &CaseSpec, l: usize, m: usize) -> Result<f64> {
    let base = {
        let p = crate::polyengine::phi(spec, l)?;
        quadrature::inner_product(spec, &p, &p)?.sqrt()
    };
    norm_from_base(spec, base, l, m)
}

fn norm_from_base(spec: &CaseSpec, base: f64, l: usize, m: usize) -> Result<f64> {
    if m > l {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: format!("kappa-power must satisfy m <= l = {l}"),
        });
    }
    let mut value = base;
    for j in 0..m {
        value *= (spec.lambda_l(l) - spec.lambda_l(j)).sqrt();
    }
    Ok(value)
}

/// Direct route for cross-checks: `‖Φ_{l,m}‖² = ∫ σ^m (dᵐΦ_l)² ρ`.
pub fn norm_direct(spec: &CaseSpec, l: usize, m: usize) -> Result<f64> {
    let f = assoc(spec, l, m)?;
    Ok(quadrature::inner_product_weighted(spec, &f.poly, &f.poly, m)?.sqrt())
}

/// Base norms `‖Φ_{l,0}‖` for `l ≤ l_max`, frozen after construction.
#[derive(Debug, Clone)]
pub struct NormTable {
    base: Vec<f64>,
}

impl NormTable {
    pub fn build(spec: &CaseSpec, l_max: usize) -> Result<Self> {
        let mut base = Vec::with_capacity(l_max + 1);
        for l in 0..=l_max {
            let p = crate::polyengine::phi(spec, l)?;
            base.push(quadrature::inner_product(spec, &p, &p)?.sqrt());
        }
        Ok(Self { base })
    }

    pub fn norm(&self, spec: &CaseSpec, l: usize, m: usize) -> Result<f64> {
        let base = *self.base.get(l).ok_or_else(|| Error::IndexOutOfRange {
            index: l,
            bound: format!("norm table built up to l = {}", self.base.len() - 1),
        })?;
        norm_from_base(spec, base, l, m)
    }
}

/// `φ_{l,m} = Φ_{l,m} / ‖Φ_{l,m}‖`.
pub fn normalized(spec: &CaseSpec, l: usize, m: usize) -> Result<AssocFunction<f64>> {
    let f = assoc(spec, l, m)?;
    let n = norm(spec, l, m)?;
    Ok(AssocFunction::new(f.m, f.poly.scale(&(1.0 / n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseKind;
    use crate::scalar::ratio;
    use approx::assert_relative_eq;
    use num::BigRational;

    fn grid() -> Vec<CaseSpec> {
        [
            (CaseKind::SigmaOne, -2.0, 0.0),
            (CaseKind::SigmaS, -1.0, 2.0),
            (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
            (CaseKind::SigmaS2Minus1, -4.0, 5.0),
            (CaseKind::SigmaS2, -9.0, 1.0),
            (CaseKind::SigmaS2Plus1, -4.0, 1.0),
        ]
        .into_iter()
        .map(|(k, a, b)| CaseSpec::validate(k, a, b).unwrap())
        .collect()
    }

    #[test]
    fn assoc_endpoints_of_the_m_range() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -2.0, 0.0).unwrap();
        let f = assoc(&spec, 3, 0).unwrap();
        assert_eq!(f.poly, crate::polyengine::phi(&spec, 3).unwrap());
        // m = l: l-th derivative of a monic degree-l polynomial is l!
        let f = assoc(&spec, 3, 3).unwrap();
        assert_eq!(f.poly.coeffs(), &[6.0]);
        // the worked example: Φ_2 = s² − 1/2, dΦ_2/ds = 2s
        let f = assoc(&spec, 2, 1).unwrap();
        assert_eq!(f.poly.coeffs(), &[0.0, 2.0]);
    }

    #[test]
    fn apply_a_annihilates_the_diagonal() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        for m in 0..4 {
            let f = assoc(&spec, m, m).unwrap();
            let out = apply_a(&spec, m, &f).unwrap();
            assert!(out.is_zero(), "A_m Phi_mm must vanish");
        }
    }

    #[test]
    fn power_mismatch_is_reported() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        let f = assoc(&spec, 3, 1).unwrap();
        assert!(matches!(
            apply_a(&spec, 2, &f),
            Err(Error::PowerMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            apply_a_plus(&spec, 1, &f),
            Err(Error::PowerMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn ladder_closure_exact_in_rational_mode() {
        // A_m⁺ A_m Φ_{l,m} = (λ_l − λ_m) Φ_{l,m}, coefficientwise.
        for (kind, a, b) in [
            (CaseKind::SigmaOne, -2, 0),
            (CaseKind::SigmaS, -1, 2),
            (CaseKind::SigmaOneMinusS2, -3, 0),
            (CaseKind::SigmaS2Minus1, -4, 5),
            (CaseKind::SigmaS2, -9, 1),
            (CaseKind::SigmaS2Plus1, -4, 1),
        ] {
            let p = CaseParams::new(kind, ratio(a, 1), ratio(b, 1)).unwrap();
            let l_cap = if kind.is_finite_family() {
                (((1 - a) / 2) as usize).saturating_sub(if (1 - a) % 2 == 0 { 1 } else { 0 })
            } else {
                5
            };
            for l in 0..=l_cap.min(5) {
                for m in 0..l {
                    let f: AssocFunction<BigRational> = assoc_in(&p, l, m).unwrap();
                    let up = apply_a_in(&p, m, &f).unwrap();
                    let down = apply_a_plus_in(&p, m, &up).unwrap();
                    let factor = p.lambda(l) - p.lambda(m);
                    assert_eq!(down.poly, f.poly.scale(&factor), "{kind:?} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn chain_reconstruction_matches_assoc() {
        let p = CaseParams::new(CaseKind::SigmaOneMinusS2, ratio(-3, 1), ratio(0, 1)).unwrap();
        for l in 1..=5usize {
            for m in 0..l {
                let direct: AssocFunction<BigRational> = assoc_in(&p, l, m).unwrap();
                let chained = chain_from_top_in(&p, l, m).unwrap();
                assert_eq!(direct.poly, chained.poly, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn h_eigenvalue_relation() {
        for spec in grid() {
            for l in 0..=spec.degree_cap(6) {
                for m in 0..=l {
                    let f = assoc(&spec, l, m).unwrap();
                    let hf = apply_h(&spec, m, &f).unwrap();
                    let expect = f.poly.scale(&spec.lambda_l(l));
                    let scale = expect.max_abs_coeff().max(1.0);
                    let diff = hf.poly.sub(&expect).max_abs_coeff();
                    assert!(
                        diff <= 1e-10 * scale,
                        "{:?} l={l} m={m}: {diff:.3e}",
                        spec.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn factorization_routes_agree_on_monomials() {
        // A_m⁺A_m f + λ_m f = A_{m−1}A_{m−1}⁺ f + λ_{m−1} f for any f of power m.
        for spec in grid() {
            let p = spec.params();
            for m in 1..4usize {
                for deg in 0..=8usize {
                    let f = AssocFunction::new(m, Polynomial::<f64>::monomial(1.0, deg));
                    let left = apply_h_in(&p, m, &f).unwrap();
                    let lowered = apply_a_plus_in(&p, m - 1, &f).unwrap();
                    let raised = apply_a_in(&p, m - 1, &lowered).unwrap();
                    let right = raised.poly.add(&f.poly.scale(&p.lambda(m - 1)));
                    let scale = left.poly.max_abs_coeff().max(1.0);
                    let diff = left.poly.sub(&right).max_abs_coeff();
                    assert!(diff <= 1e-10 * scale, "{:?} m={m} deg={deg}", spec.kind());
                }
            }
        }
    }

    #[test]
    fn intertwining_both_orderings() {
        for spec in grid() {
            let p = spec.params();
            for m in 0..3usize {
                for deg in 0..=8usize {
                    // H_m A_m⁺ g = A_m⁺ H_{m+1} g for g of power m+1
                    let g = AssocFunction::new(m + 1, Polynomial::<f64>::monomial(1.0, deg));
                    let left = apply_h_in(&p, m, &apply_a_plus_in(&p, m, &g).unwrap()).unwrap();
                    let right = apply_a_plus_in(&p, m, &apply_h_in(&p, m + 1, &g).unwrap()).unwrap();
                    let scale = left.poly.max_abs_coeff().max(1.0);
                    assert!(left.poly.sub(&right.poly).max_abs_coeff() <= 1e-10 * scale);

                    // A_m H_m h = H_{m+1} A_m h for h of power m
                    let h = AssocFunction::new(m, Polynomial::<f64>::monomial(1.0, deg));
                    let left = apply_a_in(&p, m, &apply_h_in(&p, m, &h).unwrap()).unwrap();
                    let right = apply_h_in(&p, m + 1, &apply_a_in(&p, m, &h).unwrap()).unwrap();
                    let scale = left.poly.max_abs_coeff().max(1.0);
                    assert!(left.poly.sub(&right.poly).max_abs_coeff() <= 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn norm_recursion_matches_direct_quadrature() {
        for spec in grid() {
            for l in 0..=spec.degree_cap(4) {
                for m in 0..=l {
                    let rec = norm(&spec, l, m).unwrap();
                    let direct = norm_direct(&spec, l, m).unwrap();
                    assert_relative_eq!(rec, direct, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn normalized_ladder_relations() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        for l in 1..=4usize {
            for m in 0..l {
                let lo = normalized(&spec, l, m).unwrap();
                let hi = normalized(&spec, l, m + 1).unwrap();
                let factor = (spec.lambda_l(l) - spec.lambda_l(m)).sqrt();
                // A_m φ_{l,m} = √(λ_l−λ_m) φ_{l,m+1}
                let up = apply_a(&spec, m, &lo).unwrap();
                let diff = up.poly.sub(&hi.poly.scale(&factor)).max_abs_coeff();
                assert!(diff <= 1e-10 * hi.poly.max_abs_coeff().max(1.0) * factor.max(1.0));
                // A_m⁺ φ_{l,m+1} = √(λ_l−λ_m) φ_{l,m}
                let down = apply_a_plus(&spec, m, &hi).unwrap();
                let diff = down.poly.sub(&lo.poly.scale(&factor)).max_abs_coeff();
                assert!(diff <= 1e-10 * lo.poly.max_abs_coeff().max(1.0) * factor.max(1.0));
            }
        }
    }

    #[test]
    fn raw_and_factorized_h_agree_pointwise() {
        for spec in grid() {
            let iv = spec.interval();
            for l in 1..=spec.degree_cap(4) {
                for m in 0..=l {
                    let f = assoc(&spec, l, m).unwrap();
                    let hf = apply_h(&spec, m, &f).unwrap();
                    for i in 0..50 {
                        let u = 0.05 + 0.9 * (i as f64 + 0.5) / 50.0;
                        let s = crate::verify::map_to_interval(iv, u);
                        let raw = h_raw_reduced(&spec, &f, s);
                        let fac = hf.poly.eval(&s);
                        let scale = fac.abs().max(f.poly.eval(&s).abs()).max(1.0);
                        assert!(
                            (raw - fac).abs() <= 1e-8 * scale,
                            "{:?} l={l} m={m} s={s}: raw {raw} vs {fac}",
                            spec.kind()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_within_fixed_m() {
        for spec in grid() {
            let cap = spec.degree_cap(5);
            for m in 0..=2usize.min(cap) {
                for l in m..=cap {
                    for k in m..l {
                        let fl = assoc(&spec, l, m).unwrap();
                        let fk = assoc(&spec, k, m).unwrap();
                        let ip =
                            quadrature::inner_product_weighted(&spec, &fl.poly, &fk.poly, m)
                                .unwrap();
                        let nl = norm_direct(&spec, l, m).unwrap();
                        let nk = norm_direct(&spec, k, m).unwrap();
                        assert!(
                            ip.abs() <= 1e-8 * nl * nk,
                            "{:?} m={m} l={l} k={k}: {ip:.3e}",
                            spec.kind()
                        );
                    }
                }
            }
        }
    }
}
