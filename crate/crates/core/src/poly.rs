//! Dense univariate polynomials over a generic scalar.

use crate::scalar::Scalar;
use std::ops::{Add, Mul, Sub};

/// Polynomial stored as a dense coefficient sequence; `coeffs[k]` multiplies
/// `s^k`. The zero polynomial is the empty sequence; otherwise the trailing
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c · s^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * S::from_int(k as i64))
            .collect();
        Self::new(out)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// Divide by the leading coefficient.
    pub fn into_monic(self) -> Self {
        match self.coeffs.last().cloned() {
            None => self,
            Some(lead) => Self::new(
                self.coeffs
                    .into_iter()
                    .map(|c| c / lead.clone())
                    .collect(),
            ),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// `p(u·s + v)` by Horner over polynomials.
    pub fn compose_linear(&self, u: &S, v: &S) -> Self {
        let lin = Self::new(vec![v.clone(), u.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<f64> {
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: Self) -> Polynomial<S> {
        Polynomial::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: Self) -> Polynomial<S> {
        Polynomial::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Self) -> Polynomial<S> {
        Polynomial::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        let z = Polynomial::new(vec![0.0, 0.0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn mul_and_compose() {
        // (1 + s)^2 = 1 + 2s + s^2
        let p = Polynomial::new(vec![1.0, 1.0]);
        let sq = p.mul(&p);
        assert_eq!(sq.coeffs(), &[1.0, 2.0, 1.0]);
        // q(s) = s^2, q(2s + 1) = 4s^2 + 4s + 1
        let q = Polynomial::monomial(1.0, 2);
        let c = q.compose_linear(&2.0, &1.0);
        assert_eq!(c.coeffs(), &[1.0, 4.0, 4.0]);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let p = Polynomial::new(vec![ratio(1, 3), ratio(1, 1)]);
        let d = p.mul(&p).derivative();
        // (1/3 + s)^2 = 1/9 + 2/3 s + s^2, derivative 2/3 + 2 s
        assert_eq!(d.coeffs(), &[ratio(2, 3), ratio(2, 1)]);
    }

    #[test]
    fn monic_normalization() {
        let p = Polynomial::new(vec![2.0, 4.0]).into_monic();
        assert_eq!(p.coeffs(), &[0.5, 1.0]);
    }
}
