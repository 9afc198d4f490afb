//! Generation of the orthogonal polynomials `Φ_l`.
//!
//! Three independent routes are provided and cross-checked elsewhere:
//! a triangular coefficient recurrence derived from the defining equation
//! `σΦ'' + τΦ' + λ_lΦ = 0`, the Rodrigues chain
//! `Φ_l ∝ ρ^{-1} dˡ/dsˡ (σˡ ρ)`, and expansion of the classical families
//! (Hermite, Laguerre, Jacobi) with the case-specific argument
//! substitutions. The internal normalization is monic throughout, so the
//! cross-checks are scalar-free.

use crate::cases::{CaseParams, CaseSpec};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{RealScalar, Scalar};
use num_complex::Complex64;

/// Monic `Φ_l` by the downward coefficient recurrence
/// `c_k (λ_l − λ_k) = −[(k+1)(a1·k + β) c_{k+1} + a0 (k+2)(k+1) c_{k+2}]`
/// starting from `c_l = 1`. Every divisor is nonzero for `k < l < Λ` because
/// `λ` is strictly increasing below the spectral bound.
pub fn phi_in<S: RealScalar>(p: &CaseParams<S>, l: usize) -> Result<Polynomial<S>> {
    p.require_degree(l)?;
    let (_, a1, a0) = p.kind.sigma_coeffs();
    let lambda_l = p.lambda(l);
    let mut c = vec![S::zero(); l + 1];
    c[l] = S::one();
    for k in (0..l).rev() {
        let f1 = (S::from_int(a1 * k as i64) + p.beta.clone()) * S::from_int(k as i64 + 1);
        let f2 = S::from_int(a0 * (k as i64 + 2) * (k as i64 + 1));
        let c2 = if k + 2 <= l { c[k + 2].clone() } else { S::zero() };
        let rhs = S::mul_add2(&c[k + 1], &f1, &c2, &f2);
        let div = lambda_l.clone() - p.lambda(k);
        c[k] = -rhs / div;
    }
    Ok(Polynomial::new(c))
}

/// `Φ_l` through the Rodrigues chain. With the Pearson relation
/// `(σρ)' = τρ` one has `(σᵏρ q)' = σ^{k−1} ρ (σ q' + (τ + (k−1)σ') q)`,
/// so iterating `q ← σ q' + (τ + (k−1)σ') q` from `q = 1`, `k = l..1`,
/// produces `dˡ(σˡρ)/ρ` exactly as a polynomial. Normalized to monic.
pub fn rodrigues_in<S: RealScalar>(p: &CaseParams<S>, l: usize) -> Result<Polynomial<S>> {
    p.require_degree(l)?;
    let sigma = p.sigma();
    let sigma_d = sigma.derivative();
    let tau = p.tau();
    let mut q = Polynomial::one();
    for k in (1..=l).rev() {
        let factor = tau.add(&sigma_d.scale(&S::from_int(k as i64 - 1)));
        q = sigma.mul(&q.derivative()).add(&factor.mul(&q));
    }
    if q.degree() != Some(l) {
        return Err(Error::NumericalInstability {
            what: "rodrigues chain degree",
            residual: q.degree().map_or(0.0, |d| d as f64),
            threshold: l as f64,
        });
    }
    Ok(q.into_monic())
}

pub fn phi(spec: &CaseSpec, l: usize) -> Result<Polynomial<f64>> {
    phi_in(&spec.params(), l)
}

pub fn rodrigues(spec: &CaseSpec, l: usize) -> Result<Polynomial<f64>> {
    rodrigues_in(&spec.params(), l)
}

/// Classical orthogonal polynomials by their three-term recurrences,
/// generic over the coefficient scalar so the Jacobi family also runs with
/// complex parameters.
pub mod classical {
    use super::*;

    /// Physicists' Hermite: `H_{n+1} = 2x H_n − 2n H_{n−1}`.
    pub fn hermite(n: usize) -> Polynomial<f64> {
        let mut prev = Polynomial::one();
        if n == 0 {
            return prev;
        }
        let mut cur = Polynomial::new(vec![0.0, 2.0]);
        for k in 1..n {
            let next = cur
                .mul(&Polynomial::new(vec![0.0, 2.0]))
                .sub(&prev.scale(&(2.0 * k as f64)));
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Generalized Laguerre `L_n^{(p)}`:
    /// `(n+1) L_{n+1} = (2n+1+p−x) L_n − (n+p) L_{n−1}`.
    pub fn laguerre(n: usize, p: f64) -> Polynomial<f64> {
        let mut prev = Polynomial::one();
        if n == 0 {
            return prev;
        }
        let mut cur = Polynomial::new(vec![1.0 + p, -1.0]);
        for k in 1..n {
            let kf = k as f64;
            let lin = Polynomial::new(vec![2.0 * kf + 1.0 + p, -1.0]);
            let next = lin
                .mul(&cur)
                .sub(&prev.scale(&(kf + p)))
                .scale(&(1.0 / (kf + 1.0)));
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Jacobi `P_n^{(p,q)}` over any scalar (complex parameters included):
    /// `2n(n+p+q)(2n+p+q−2) P_n =
    ///  (2n+p+q−1)[(2n+p+q)(2n+p+q−2) x + p²−q²] P_{n−1}
    ///  − 2(n+p−1)(n+q−1)(2n+p+q) P_{n−2}`.
    pub fn jacobi<S: Scalar>(n: usize, p: &S, q: &S) -> Polynomial<S> {
        let two = S::from_int(2);
        let mut prev = Polynomial::one();
        if n == 0 {
            return prev;
        }
        let half = S::one() / two.clone();
        let mut cur = Polynomial::new(vec![
            (p.clone() - q.clone()) * half.clone(),
            (p.clone() + q.clone() + two.clone()) * half,
        ]);
        for k in 2..=n {
            let kf = S::from_int(k as i64);
            let pq = p.clone() + q.clone();
            let t = two.clone() * kf.clone() + pq.clone(); // 2k + p + q
            let tm2 = t.clone() - two.clone();
            let a = two.clone() * kf.clone() * (kf.clone() + pq.clone()) * tm2.clone();
            let b = (t.clone() - S::one()) * (p.clone() * p.clone() - q.clone() * q.clone());
            let c = (t.clone() - S::one()) * t.clone() * tm2.clone();
            let d = two.clone()
                * (kf.clone() + p.clone() - S::one())
                * (kf + q.clone() - S::one())
                * t;
            let lin = Polynomial::new(vec![b, c]);
            let next = lin
                .mul(&cur)
                .sub(&prev.scale(&d))
                .scale(&(S::one() / a));
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Right-hand side of the classical-polynomial table, expanded into a
/// polynomial in `s`. Proportional to `phi(spec, l)`; the proportionality
/// constant is free, matching the free Rodrigues constant.
pub fn classical_ref(spec: &CaseSpec, l: usize) -> Result<Polynomial<f64>> {
    spec.params().require_degree(l)?;
    let (a, b) = (spec.alpha(), spec.beta());
    match spec.kind() {
        crate::cases::CaseKind::SigmaOne => {
            // H_l(√(−α/2) s − β/√(−2α))
            let u = (-a / 2.0).sqrt();
            let v = -b / (-2.0 * a).sqrt();
            Ok(classical::hermite(l).compose_linear(&u, &v))
        }
        crate::cases::CaseKind::SigmaS => {
            // L_l^{β−1}(−α s)
            Ok(classical::laguerre(l, b - 1.0).compose_linear(&-a, &0.0))
        }
        crate::cases::CaseKind::SigmaOneMinusS2 => {
            // P_l^{(−(α+β)/2−1, (β−α)/2−1)}(s)
            let p = -(a + b) / 2.0 - 1.0;
            let q = (b - a) / 2.0 - 1.0;
            Ok(classical::jacobi(l, &p, &q))
        }
        crate::cases::CaseKind::SigmaS2Minus1 => {
            // P_l^{((α−β)/2−1, (α+β)/2−1)}(−s)
            let p = (a - b) / 2.0 - 1.0;
            let q = (a + b) / 2.0 - 1.0;
            Ok(classical::jacobi(l, &p, &q).compose_linear(&-1.0, &0.0))
        }
        crate::cases::CaseKind::SigmaS2 => {
            // (s/β)^l L_l^{(1−α−2l)}(β/s): coefficient of s^{l−j} is d_j β^{j−l}
            let d = classical::laguerre(l, 1.0 - a - 2.0 * l as f64);
            let mut out = vec![0.0; l + 1];
            for j in 0..=l {
                out[l - j] = d.coeff(j) * b.powi(j as i32 - l as i32);
            }
            Ok(Polynomial::new(out))
        }
        crate::cases::CaseKind::SigmaS2Plus1 => {
            let (poly, residue) = complex_jacobi_expansion(a, b, l)?;
            if residue > 1e-8 {
                return Err(Error::NumericalInstability {
                    what: "imaginary residue of realified Jacobi expansion",
                    residual: residue,
                    threshold: 1e-8,
                });
            }
            Ok(poly.map(|c| c.re))
        }
    }
}

/// `i^l P_l^{((α+iβ)/2−1, (α−iβ)/2−1)}(i s)` expanded in complex
/// arithmetic, with the relative imaginary residue of the coefficients.
fn complex_jacobi_expansion(
    a: f64,
    b: f64,
    l: usize,
) -> Result<(Polynomial<Complex64>, f64)> {
    if l > 12 {
        return Err(Error::NumericalInstability {
            what: "complex-parameter Jacobi evaluation (degree cap 12)",
            residual: l as f64,
            threshold: 12.0,
        });
    }
    let p = Complex64::new(a / 2.0 - 1.0, b / 2.0);
    let q = p.conj();
    let poly = classical::jacobi::<Complex64>(l, &p, &q)
        .compose_linear(&Complex64::i(), &Complex64::new(0.0, 0.0))
        .scale(&Complex64::i().powu(l as u32));
    let scale = poly.coeffs().iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let residue = poly.coeffs().iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
    Ok((poly, if scale > 0.0 { residue / scale } else { 0.0 }))
}

/// Relative imaginary residue of the realified expansion for the `s²+1`
/// case; the realness guarantee the cross-checks assert.
pub fn classical_s2plus1_residue(spec: &CaseSpec, l: usize) -> Result<f64> {
    spec.params().require_degree(l)?;
    if spec.kind() != crate::cases::CaseKind::SigmaS2Plus1 {
        return Err(Error::UnsupportedCase {
            case: spec.kind().label(),
            detail: "imaginary-residue diagnostic applies to sigma = s^2+1",
        });
    }
    Ok(complex_jacobi_expansion(spec.alpha(), spec.beta(), l)?.1)
}

/// Largest relative deviation of the coefficient ratios of `p` and `q` from
/// a single common scalar; zero means exact proportionality.
pub fn proportionality_spread(p: &Polynomial<f64>, q: &Polynomial<f64>) -> f64 {
    if p.degree() != q.degree() {
        return f64::INFINITY;
    }
    let (Some(lp), Some(lq)) = (p.leading(), q.leading()) else {
        return 0.0; // both zero
    };
    let c = lq / lp;
    let scale = q.max_abs_coeff().max(p.max_abs_coeff() * c.abs());
    let mut worst = 0.0f64;
    for k in 0..p.coeffs().len() {
        worst = worst.max((p.coeff(k) * c - q.coeff(k)).abs());
    }
    worst / scale
}
