//! The six canonical cases: `sigma(s) ∈ {1, s, 1−s², s²−1, s², s²+1}` with
//! `tau(s) = αs + β`, their parameter constraints, orthogonality intervals,
//! weight functions and eigenvalue sequences.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{RealScalar, Scalar};

/// Which second-degree coefficient polynomial the equation carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// `sigma = 1`
    SigmaOne,
    /// `sigma = s`
    SigmaS,
    /// `sigma = 1 − s²`
    SigmaOneMinusS2,
    /// `sigma = s² − 1`
    SigmaS2Minus1,
    /// `sigma = s²`
    SigmaS2,
    /// `sigma = s² + 1`
    SigmaS2Plus1,
}

impl CaseKind {
    pub const ALL: [CaseKind; 6] = [
        CaseKind::SigmaOne,
        CaseKind::SigmaS,
        CaseKind::SigmaOneMinusS2,
        CaseKind::SigmaS2Minus1,
        CaseKind::SigmaS2,
        CaseKind::SigmaS2Plus1,
    ];

    /// Coefficients `(a2, a1, a0)` of `sigma(s) = a2 s² + a1 s + a0`.
    pub fn sigma_coeffs(self) -> (i64, i64, i64) {
        match self {
            CaseKind::SigmaOne => (0, 0, 1),
            CaseKind::SigmaS => (0, 1, 0),
            CaseKind::SigmaOneMinusS2 => (-1, 0, 1),
            CaseKind::SigmaS2Minus1 => (1, 0, -1),
            CaseKind::SigmaS2 => (1, 0, 0),
            CaseKind::SigmaS2Plus1 => (1, 0, 1),
        }
    }

    /// `sigma''`, constant per case: 0, 0, −2, 2, 2, 2.
    pub fn sigma_second(self) -> i64 {
        2 * self.sigma_coeffs().0
    }

    /// The three `sigma'' = 2` cases carry a finite polynomial system.
    pub fn is_finite_family(self) -> bool {
        self.sigma_coeffs().0 == 1
    }

    /// Orthogonality interval from the case table.
    pub fn interval(self) -> Interval {
        match self {
            CaseKind::SigmaOne | CaseKind::SigmaS2Plus1 => {
                Interval::new(f64::NEG_INFINITY, f64::INFINITY)
            }
            CaseKind::SigmaS | CaseKind::SigmaS2 => Interval::new(0.0, f64::INFINITY),
            CaseKind::SigmaOneMinusS2 => Interval::new(-1.0, 1.0),
            CaseKind::SigmaS2Minus1 => Interval::new(1.0, f64::INFINITY),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseKind::SigmaOne => "1",
            CaseKind::SigmaS => "s",
            CaseKind::SigmaOneMinusS2 => "1-s2",
            CaseKind::SigmaS2Minus1 => "s2-1",
            CaseKind::SigmaS2 => "s2",
            CaseKind::SigmaS2Plus1 => "s2+1",
        }
    }

    pub fn parse_label(label: &str) -> Option<CaseKind> {
        CaseKind::ALL.iter().copied().find(|k| k.label() == label)
    }

    /// `sigma` as a polynomial over any scalar.
    pub fn sigma_poly<S: Scalar>(self) -> Polynomial<S> {
        let (a2, a1, a0) = self.sigma_coeffs();
        Polynomial::new(vec![
            S::from_int(a0),
            S::from_int(a1),
            S::from_int(a2),
        ])
    }

    /// Table constraints on `(alpha, beta)`; returns the violated inequality.
    fn check_constraints<S: RealScalar>(self, alpha: &S, beta: &S) -> std::result::Result<(), &'static str> {
        let zero = S::zero();
        let neg = |c: &'static str, ok: bool| if ok { Ok(()) } else { Err(c) };
        match self {
            CaseKind::SigmaOne | CaseKind::SigmaS2Plus1 => neg("alpha < 0", *alpha < zero),
            CaseKind::SigmaS | CaseKind::SigmaS2 => {
                neg("alpha < 0", *alpha < zero)?;
                neg("beta > 0", *beta > zero)
            }
            CaseKind::SigmaOneMinusS2 => {
                neg("alpha < beta", *alpha < *beta)?;
                neg("alpha + beta < 0", alpha.clone() + beta.clone() < zero)
            }
            CaseKind::SigmaS2Minus1 => {
                neg("alpha + beta > 0", alpha.clone() + beta.clone() > zero)?;
                neg("alpha < 0", *alpha < zero)
            }
        }
    }
}

/// Open interval with extended-real endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, s: f64) -> bool {
        self.lo < s && s < self.hi
    }
}

/// Validated case parameters over an arbitrary ordered scalar. This is the
/// carrier the polynomial recurrences run on; [`CaseSpec`] wraps the `f64`
/// instance together with its interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseParams<S> {
    pub kind: CaseKind,
    pub alpha: S,
    pub beta: S,
}

impl<S: RealScalar> CaseParams<S> {
    pub fn new(kind: CaseKind, alpha: S, beta: S) -> std::result::Result<Self, &'static str> {
        kind.check_constraints(&alpha, &beta)?;
        Ok(Self { kind, alpha, beta })
    }

    /// `tau(s) = αs + β`.
    pub fn tau(&self) -> Polynomial<S> {
        Polynomial::new(vec![self.beta.clone(), self.alpha.clone()])
    }

    pub fn sigma(&self) -> Polynomial<S> {
        self.kind.sigma_poly()
    }

    /// `λ_l = −(σ''/2)·l(l−1) − α·l`.
    pub fn lambda(&self, l: usize) -> S {
        let a2 = self.kind.sigma_coeffs().0;
        let l = l as i64;
        S::from_int(-a2 * l * (l - 1)) - self.alpha.clone() * S::from_int(l)
    }

    /// Whether degree `l` is below the spectral bound `Λ`.
    pub fn degree_admissible(&self, l: usize) -> bool {
        if !self.kind.is_finite_family() {
            return true;
        }
        // l < (1 − α)/2  ⟺  α + 2l < 1
        self.alpha.clone() + S::from_int(2 * l as i64) < S::one()
    }

    pub fn require_degree(&self, l: usize) -> Result<()> {
        if self.degree_admissible(l) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: l,
                bound: format!("spectral bound Lambda for sigma = {}", self.kind.label()),
            })
        }
    }
}

/// A validated case: kind, `f64` parameters and the orthogonality interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    kind: CaseKind,
    alpha: f64,
    beta: f64,
    interval: Interval,
}

/// Spectral bound `Λ` and, for the finite families, the largest admissible
/// degree `L = max{ l | l < (1−α)/2 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralIndexBound {
    pub capital_lambda: f64,
    pub finite_l: Option<usize>,
}

impl CaseSpec {
    /// Validate Table-1 constraints and fill in the interval.
    pub fn validate(kind: CaseKind, alpha: f64, beta: f64) -> Result<CaseSpec> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::ConstraintViolation {
                case: kind.label(),
                constraint: "alpha, beta finite",
                alpha,
                beta,
            });
        }
        CaseParams::new(kind, alpha, beta).map_err(|constraint| Error::ConstraintViolation {
            case: kind.label(),
            constraint,
            alpha,
            beta,
        })?;
        Ok(CaseSpec {
            kind,
            alpha,
            beta,
            interval: kind.interval(),
        })
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn params(&self) -> CaseParams<f64> {
        CaseParams {
            kind: self.kind,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// The weight `ρ(s)` from the case table. Must be called strictly inside
    /// the interval; callers clamp to the interior, the weight may be
    /// singular at finite endpoints.
    pub fn weight(&self, s: f64) -> Result<f64> {
        if !self.interval.contains(s) {
            return Err(Error::OutOfDomain {
                s,
                lo: self.interval.lo,
                hi: self.interval.hi,
            });
        }
        let (a, b) = (self.alpha, self.beta);
        Ok(match self.kind {
            CaseKind::SigmaOne => (0.5 * a * s * s + b * s).exp(),
            CaseKind::SigmaS => s.powf(b - 1.0) * (a * s).exp(),
            CaseKind::SigmaOneMinusS2 => {
                (1.0 + s).powf(-(a - b) / 2.0 - 1.0) * (1.0 - s).powf(-(a + b) / 2.0 - 1.0)
            }
            CaseKind::SigmaS2Minus1 => {
                (s + 1.0).powf((a - b) / 2.0 - 1.0) * (s - 1.0).powf((a + b) / 2.0 - 1.0)
            }
            CaseKind::SigmaS2 => s.powf(a - 2.0) * (-b / s).exp(),
            CaseKind::SigmaS2Plus1 => (1.0 + s * s).powf(a / 2.0 - 1.0) * (b * s.atan()).exp(),
        })
    }

    /// `sigma(s)` evaluated at a point.
    pub fn sigma_at(&self, s: f64) -> f64 {
        let (a2, a1, a0) = self.kind.sigma_coeffs();
        (a2 as f64) * s * s + (a1 as f64) * s + a0 as f64
    }

    /// `tau(s) = αs + β`.
    pub fn tau_at(&self, s: f64) -> f64 {
        self.alpha * s + self.beta
    }

    /// `λ_l = −(σ''/2)·l(l−1) − α·l`.
    pub fn lambda_l(&self, l: usize) -> f64 {
        self.params().lambda(l)
    }

    pub fn index_bound(&self) -> SpectralIndexBound {
        if self.kind.is_finite_family() {
            let cap = (1.0 - self.alpha) / 2.0;
            // L = max{ l ∈ ℕ | l < cap }, cap > 1/2 since alpha < 0
            let l = if cap.fract() == 0.0 {
                cap as usize - 1
            } else {
                cap.floor() as usize
            };
            SpectralIndexBound {
                capital_lambda: cap,
                finite_l: Some(l),
            }
        } else {
            SpectralIndexBound {
                capital_lambda: f64::INFINITY,
                finite_l: None,
            }
        }
    }

    /// Largest degree to exercise in tests: `min(cap, L)`.
    pub fn degree_cap(&self, cap: usize) -> usize {
        match self.index_bound().finite_l {
            Some(l) => cap.min(l),
            None => cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_accepts_table_rows() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        assert_eq!(spec.interval(), Interval::new(0.0, f64::INFINITY));

        let spec = CaseSpec::validate(CaseKind::SigmaOneMinusS2, -3.0, 0.0).unwrap();
        assert_eq!(spec.interval(), Interval::new(-1.0, 1.0));
    }

    #[test]
    fn validate_names_the_violated_inequality() {
        let err = CaseSpec::validate(CaseKind::SigmaS, -1.0, 0.0).unwrap_err();
        match err {
            Error::ConstraintViolation { constraint, .. } => assert_eq!(constraint, "beta > 0"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn weight_spot_values() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -2.0, 0.0).unwrap();
        assert_eq!(spec.weight(0.0).unwrap(), 1.0);

        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        assert!((spec.weight(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);

        let spec = CaseSpec::validate(CaseKind::SigmaS2Plus1, -4.0, 0.0).unwrap();
        assert_eq!(spec.weight(0.0).unwrap(), 1.0);
    }

    #[test]
    fn weight_rejects_exterior_points() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        assert!(matches!(
            spec.weight(-0.5),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn lambda_spot_values() {
        let spec = CaseSpec::validate(CaseKind::SigmaOneMinusS2, -3.0, 0.0).unwrap();
        assert_eq!(spec.lambda_l(0), 0.0);
        assert_eq!(spec.lambda_l(2), 8.0);

        let spec = CaseSpec::validate(CaseKind::SigmaS2, -9.0, 1.0).unwrap();
        assert_eq!(spec.lambda_l(3), 21.0);
    }

    #[test]
    fn index_bound_finite_and_infinite() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        let b = spec.index_bound();
        assert!(b.capital_lambda.is_infinite());
        assert_eq!(b.finite_l, None);

        let spec = CaseSpec::validate(CaseKind::SigmaS2, -9.0, 1.0).unwrap();
        let b = spec.index_bound();
        assert_eq!(b.capital_lambda, 5.0);
        assert_eq!(b.finite_l, Some(4));

        let spec = CaseSpec::validate(CaseKind::SigmaS2Plus1, -2.0, 0.0).unwrap();
        let b = spec.index_bound();
        assert_eq!(b.capital_lambda, 1.5);
        assert_eq!(b.finite_l, Some(1));
    }

    #[test]
    fn sigma_positive_inside_interval() {
        for kind in CaseKind::ALL {
            let spec = CaseSpec::validate(kind, -2.0, kind_beta(kind)).unwrap();
            let iv = spec.interval();
            for t in 1..100 {
                let u = t as f64 / 100.0;
                let s = sample_point(iv, u);
                assert!(spec.sigma_at(s) > 0.0, "sigma <= 0 for {kind:?} at {s}");
            }
        }
    }

    fn kind_beta(kind: CaseKind) -> f64 {
        match kind {
            CaseKind::SigmaS | CaseKind::SigmaS2 => 1.0,
            CaseKind::SigmaS2Minus1 => 3.0,
            _ => 0.0,
        }
    }

    fn sample_point(iv: Interval, u: f64) -> f64 {
        match (iv.lo.is_finite(), iv.hi.is_finite()) {
            (true, true) => iv.lo + (iv.hi - iv.lo) * u,
            (true, false) => iv.lo + u / (1.0 - u),
            (false, false) => (std::f64::consts::PI * (u - 0.5)).tan(),
            (false, true) => iv.hi - u / (1.0 - u),
        }
    }
}
