//! Modified Bessel functions `I_ν` and `K_ν`.
//!
//! `I_ν` is the ascending series. `K_ν` combines three branches: the
//! reflection formula `K_ν = (π/2)(I_{−ν} − I_ν)/sin(νπ)` for non-integer
//! order at small argument, the integer-order limiting series at small
//! argument, and a continued-fraction evaluation (Steed's algorithm, seeded
//! at fractional order with the stable upward recurrence) for `x > 2`,
//! where the small-`x` formulas lose accuracy to cancellation that grows
//! like `e^{2x}`.

use crate::error::{Error, Result};
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

const MAX_TERMS: usize = 4000;
const CF_MAX_ITER: usize = 20000;
const X_LIMIT: f64 = 600.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Treat orders this close to an integer as integer.
const INTEGER_BAND: f64 = 1e-6;

/// `I_ν(x)` by the ascending series `Σ (x/2)^{ν+2n} / (n! Γ(ν+n+1))`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::OutOfDomain {
            s: x,
            lo: 0.0,
            hi: X_LIMIT,
        });
    }
    if x > X_LIMIT {
        return Err(Error::Overflow {
            what: "bessel I argument",
            value: x,
            limit: X_LIMIT,
        });
    }
    // Negative integer orders reduce by symmetry; the series would hit
    // Gamma poles term by term.
    if nu < 0.0 && (nu - nu.round()).abs() < 1e-9 {
        return bessel_i(-nu, x);
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Overflow {
                what: "bessel I at x = 0 with negative order",
                value: nu,
                limit: 0.0,
            })
        };
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) / gamma(nu + 1.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= q / ((nf + 1.0) * (nu + nf + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && nf + 1.0 > half {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceFailure {
        what: "bessel I ascending series",
        max_terms: MAX_TERMS,
    })
}

fn digamma_int(j: usize) -> f64 {
    // ψ(j) = −γ + Σ_{i<j} 1/i for positive integer j
    let mut v = -EULER_GAMMA;
    for i in 1..j {
        v += 1.0 / i as f64;
    }
    v
}

/// Integer-order limiting series, valid at small argument.
fn k_integer_series(n: usize, x: f64) -> Result<f64> {
    let half = 0.5 * x;
    let q = half * half;
    // finite part: (1/2)(x/2)^{−n} Σ_{k<n} [(n−k−1)!/k!] (−x²/4)^k
    let mut finite = 0.0;
    if n > 0 {
        let mut coef = gamma(n as f64); // (n−1)!
        for k in 0..n {
            finite += coef;
            // (n−k−2)!/(k+1)! ← (n−k−1)!/k! · (−q) adjustment
            if k + 1 < n {
                coef *= -q / ((k + 1) as f64 * (n - k - 1) as f64);
            }
        }
        finite *= 0.5 * half.powi(-(n as i32));
    }
    let log_part = if n % 2 == 0 { -1.0 } else { 1.0 } * half.ln() * bessel_i(n as f64, x)?;
    // ψ-series with coef_k = (x²/4)^k / (k!(n+k)!)
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut coef = 1.0 / gamma(n as f64 + 1.0);
    let mut psi_low = digamma_int(1);
    let mut psi_high = digamma_int(n + 1);
    let mut series = coef * (psi_low + psi_high);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        coef *= q / ((kf + 1.0) * (n as f64 + kf + 1.0));
        psi_low += 1.0 / (kf + 1.0);
        psi_high += 1.0 / (n as f64 + kf + 1.0);
        let term = coef * (psi_low + psi_high);
        series += term;
        if term.abs() <= 1e-17 * series.abs() {
            break;
        }
    }
    let psi_part = sign * 0.5 * half.powi(n as i32) * series;
    Ok(finite + log_part + psi_part)
}

/// Continued-fraction evaluation for `x > 2`: Steed's algorithm at
/// fractional order `|μ| ≤ 1/2`, then the forward recurrence
/// `K_{μ+j+1} = K_{μ+j−1} + 2(μ+j)/x · K_{μ+j}` (stable: K grows with
/// order).
fn k_continued_fraction(nu: f64, x: f64) -> Result<f64> {
    let steps = nu.round() as usize;
    let mu = nu - nu.round();
    let mu2 = mu * mu;
    let a1 = 0.25 - mu2;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=CF_MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() <= 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            what: "bessel K continued fraction",
            max_terms: CF_MAX_ITER,
        });
    }
    h *= a1;
    let mut k_lo = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let mut k_hi = k_lo * (mu + x + 0.5 - h) / x;
    for j in 1..=steps {
        let next = 2.0 * (mu + j as f64) / x * k_hi + k_lo;
        k_lo = k_hi;
        k_hi = next;
    }
    Ok(k_lo)
}

/// `K_ν(x)`; even in `ν`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let nu = nu.abs();
    if x <= 0.0 {
        return Err(Error::OutOfDomain {
            s: x,
            lo: 0.0,
            hi: X_LIMIT,
        });
    }
    if x > X_LIMIT {
        return Err(Error::Overflow {
            what: "bessel K argument",
            value: x,
            limit: X_LIMIT,
        });
    }
    if x > 2.0 {
        return k_continued_fraction(nu, x);
    }
    if (nu - nu.round()).abs() <= INTEGER_BAND {
        k_integer_series(nu.round() as usize, x)
    } else {
        let i_neg = bessel_i(-nu, x)?;
        let i_pos = bessel_i(nu, x)?;
        Ok(0.5 * PI * (i_neg - i_pos) / (nu * PI).sin())
    }
}

/// The pair `(I_ν(x), K_ν(x))`.
pub fn bessel_ik(nu: f64, x: f64) -> Result<(f64, f64)> {
    Ok((bessel_i(nu, x)?, bessel_k(nu, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::TanhSinh;
    use approx::assert_relative_eq;

    /// Oracle: `K_ν(x) = ∫_0^∞ e^{−x cosh t} cosh(νt) dt`, integrated over
    /// a range that exhausts the double exponential decay.
    fn k_integral_oracle(nu: f64, x: f64) -> f64 {
        let t_max = (745.0 / x).acosh() + 1.0;
        TanhSinh::with_rel_tol(1e-13)
            .integrate(|t: f64| (-x * t.cosh()).exp() * (nu * t).cosh(), 0.0, t_max)
            .unwrap()
            .value
    }

    #[test]
    fn i_series_base_values() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(2.0, 0.0).unwrap(), 0.0);
        // I_{1/2}(x) = √(2/(πx)) sinh x
        for &x in &[0.3, 1.0, 4.0] {
            let expect = (2.0 / (PI * x)).sqrt() * x.sinh();
            assert_relative_eq!(bessel_i(0.5, x).unwrap(), expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn k_half_order_closed_form() {
        for &x in &[0.5, 1.0, 2.0, 5.0, 9.0, 20.0] {
            let expect = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert_relative_eq!(bessel_k(0.5, x).unwrap(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn k_is_even_in_nu() {
        for &nu in &[0.3, 1.0, 2.5] {
            for &x in &[0.7, 3.0, 11.0] {
                assert_eq!(bessel_k(nu, x).unwrap(), bessel_k(-nu, x).unwrap());
            }
        }
    }

    #[test]
    fn k_matches_integral_representation() {
        // orders and arguments covering the measure integrals, the branch
        // switch at x = 2 and the large-argument regime
        for &nu in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            for &x in &[0.4, 1.0, 1.9, 2.1, 5.0, 8.5, 15.0, 40.0, 90.0] {
                let got = bessel_k(nu, x).unwrap();
                let want = k_integral_oracle(nu, x);
                assert_relative_eq!(got, want, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn arguments_beyond_the_limit_are_rejected() {
        assert!(matches!(
            bessel_k(1.0, 700.0),
            Err(Error::Overflow { .. })
        ));
        assert!(bessel_k(1.0, 0.0).is_err());
    }
}
