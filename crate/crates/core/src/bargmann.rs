//! Analytic series representation: states map to entire series
//! `f(z) = Σ c_n e^{iγe_n}/√ε_n · zⁿ` with the weighted inner product
//! `(f,g) = Σ ε_n c̄_n d_n`, on which the ladder operators act as simple
//! coefficient maps and, equivalently, as differential operators.

use crate::cases::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use crate::ladder;
use crate::scalar::compensated_sum;
use num_complex::Complex64;

/// Truncated entire series `Σ c_n zⁿ` with the phase convention of the
/// representation it came from.
#[derive(Debug, Clone)]
pub struct AnalyticSeries {
    pub coeffs: Vec<Complex64>,
    pub gamma: f64,
    /// Certified bound on the dropped `Σ ε_n|c_n|²` membership tail.
    pub tail_bound: f64,
}

impl AnalyticSeries {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Horner evaluation at a point (convenience only; all algebra runs on
    /// the coefficients).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

fn require_infinite(spec: &CaseSpec) -> Result<()> {
    if spec.kind().is_finite_family() {
        return Err(Error::UnsupportedCase {
            case: spec.kind().label(),
            detail: "the analytic representation is built on the infinite ladders",
        });
    }
    Ok(())
}

/// Series coefficients of the state `Σ c_n |n⟩`:
/// `c_n ↦ c_n e^{iγe_n}/√ε_n`. The membership tail mirrors the state
/// truncation: `ε_n |f_n|² = |c_n|²`.
pub fn to_analytic(
    state_coeffs: &[Complex64],
    spec: &CaseSpec,
    m: usize,
    gamma: f64,
) -> Result<AnalyticSeries> {
    require_infinite(spec)?;
    let n = state_coeffs.len();
    let eps = ladder::epsilon_seq(spec, m, n.saturating_sub(1))?;
    let mut coeffs = Vec::with_capacity(n);
    for (k, c) in state_coeffs.iter().enumerate() {
        let e = ladder::energy(spec, m, k)?;
        coeffs.push(c * Complex64::from_polar(1.0, gamma * e) / eps[k].sqrt());
    }
    Ok(AnalyticSeries {
        coeffs,
        gamma,
        tail_bound: 0.0,
    })
}

/// Basis element `u_n(z) = zⁿ e^{iγe_n}/√ε_n`, the image of `|n⟩`.
pub fn u_basis(spec: &CaseSpec, m: usize, gamma: f64, n: usize) -> Result<AnalyticSeries> {
    let mut state = vec![Complex64::new(0.0, 0.0); n + 1];
    state[n] = Complex64::new(1.0, 0.0);
    to_analytic(&state, spec, m, gamma)
}

/// `(f,g) = Σ ε_n c̄_n d_n`.
pub fn fock_inner(
    f: &AnalyticSeries,
    g: &AnalyticSeries,
    spec: &CaseSpec,
    m: usize,
) -> Result<Complex64> {
    require_infinite(spec)?;
    let n = f.dim().min(g.dim());
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let eps = ladder::epsilon_seq(spec, m, n - 1)?;
    let re = compensated_sum((0..n).map(|k| (f.coeffs[k].conj() * g.coeffs[k]).re * eps[k]));
    let im = compensated_sum((0..n).map(|k| (f.coeffs[k].conj() * g.coeffs[k]).im * eps[k]));
    Ok(Complex64::new(re, im))
}

/// The three operators in their coefficient action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    /// `a zⁿ = e_n z^{n−1}`
    Lower,
    /// `a⁺ zⁿ = z^{n+1}`
    Raise,
    /// `R zⁿ = (e_n − e_{n+1}) zⁿ`
    Weight,
}

/// Monomial action of the operator on the coefficient sequence.
pub fn op_on_series(
    which: LadderOp,
    f: &AnalyticSeries,
    spec: &CaseSpec,
    m: usize,
) -> Result<AnalyticSeries> {
    require_infinite(spec)?;
    let n = f.dim();
    let coeffs = match which {
        LadderOp::Lower => {
            let mut out = Vec::with_capacity(n.saturating_sub(1));
            for k in 1..n {
                out.push(f.coeffs[k] * ladder::energy(spec, m, k)?);
            }
            out
        }
        LadderOp::Raise => {
            let mut out = Vec::with_capacity(n + 1);
            out.push(Complex64::new(0.0, 0.0));
            out.extend_from_slice(&f.coeffs);
            out
        }
        LadderOp::Weight => {
            let mut out = Vec::with_capacity(n);
            for k in 0..n {
                let scale = ladder::energy(spec, m, k)? - ladder::energy(spec, m, k + 1)?;
                out.push(f.coeffs[k] * scale);
            }
            out
        }
    };
    Ok(AnalyticSeries {
        coeffs,
        gamma: f.gamma,
        tail_bound: f.tail_bound,
    })
}

/// The same operators as differential expressions in `z`, applied to the
/// coefficient sequence symbolically (shift-and-scale, no numeric
/// differentiation): `a = −α d/dz`, `a⁺ = z`, `R = α` for `σ ∈ {1,s}`;
/// `a = z d²/dz² + (2m−α) d/dz`, `a⁺ = z`, `R = −2z d/dz − 2m + α` for
/// `σ = 1−s²`.
pub fn op_differential(
    which: LadderOp,
    f: &AnalyticSeries,
    spec: &CaseSpec,
    m: usize,
) -> Result<AnalyticSeries> {
    require_infinite(spec)?;
    let n = f.dim();
    let a = spec.alpha();
    let laguerre_like = spec.kind() == CaseKind::SigmaOneMinusS2;
    let coeffs: Vec<Complex64> = match which {
        LadderOp::Lower => {
            if laguerre_like {
                // z f'' + (2m−α) f': coefficient k gets (k+1)(k + 2m − α) c_{k+1}
                (1..n)
                    .map(|k| {
                        let kf = k as f64;
                        f.coeffs[k] * (kf * (kf - 1.0) + (2.0 * m as f64 - a) * kf)
                    })
                    .collect()
            } else {
                // −α f'
                (1..n).map(|k| f.coeffs[k] * (-a * k as f64)).collect()
            }
        }
        LadderOp::Raise => {
            let mut out = Vec::with_capacity(n + 1);
            out.push(Complex64::new(0.0, 0.0));
            out.extend_from_slice(&f.coeffs);
            out
        }
        LadderOp::Weight => (0..n)
            .map(|k| {
                let scale = if laguerre_like {
                    -2.0 * k as f64 - 2.0 * m as f64 + a
                } else {
                    a
                };
                f.coeffs[k] * scale
            })
            .collect(),
    };
    Ok(AnalyticSeries {
        coeffs,
        gamma: f.gamma,
        tail_bound: f.tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn specs() -> Vec<(CaseSpec, usize)> {
        vec![
            (CaseSpec::validate(CaseKind::SigmaOne, -2.0, 0.0).unwrap(), 0),
            (CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap(), 1),
            (
                CaseSpec::validate(CaseKind::SigmaOneMinusS2, -3.0, 0.0).unwrap(),
                1,
            ),
        ]
    }

    #[test]
    fn basis_images() {
        let (spec, m) = (CaseSpec::validate(CaseKind::SigmaOne, -2.0, 0.0).unwrap(), 2);
        // |0⟩ ↦ constant 1
        let u0 = u_basis(&spec, m, 0.7, 0).unwrap();
        assert_eq!(u0.coeffs.len(), 1);
        assert!((u0.coeffs[0] - c(1.0, 0.0)).norm() < 1e-15);
        // |n⟩ ↦ zⁿ e^{iγeₙ}/√εₙ
        let n = 3;
        let un = u_basis(&spec, m, 0.7, n).unwrap();
        let eps = ladder::epsilon_seq(&spec, m, n).unwrap();
        let e = ladder::energy(&spec, m, n).unwrap();
        let want = Complex64::from_polar(1.0 / eps[n].sqrt(), 0.7 * e);
        assert!((un.coeffs[n] - want).norm() < 1e-15);
    }

    #[test]
    fn monomial_inner_products() {
        for (spec, m) in specs() {
            let eps = ladder::epsilon_seq(&spec, m, 6).unwrap();
            for n in 0..=6usize {
                for k in 0..=6usize {
                    let f = AnalyticSeries {
                        coeffs: monomial(n),
                        gamma: 0.0,
                        tail_bound: 0.0,
                    };
                    let g = AnalyticSeries {
                        coeffs: monomial(k),
                        gamma: 0.0,
                        tail_bound: 0.0,
                    };
                    let ip = fock_inner(&f, &g, &spec, m).unwrap();
                    if n == k {
                        assert_relative_eq!(ip.re, eps[n], max_relative = 1e-14);
                    } else {
                        assert_eq!(ip.norm(), 0.0);
                    }
                }
            }
        }
    }

    fn monomial(n: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); n + 1];
        v[n] = c(1.0, 0.0);
        v
    }

    #[test]
    fn u_basis_is_orthonormal() {
        for (spec, m) in specs() {
            for n in 0..=5usize {
                let un = u_basis(&spec, m, 0.4, n).unwrap();
                let ip = fock_inner(&un, &un, &spec, m).unwrap();
                assert_relative_eq!(ip.re, 1.0, max_relative = 1e-13);
                assert!(ip.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn isometry_on_a_coherent_pair() {
        for (spec, m) in specs() {
            let phi = coherent::coherent_state(&spec, m, c(0.8, 0.3), 0.4).unwrap();
            let psi = coherent::coherent_state(&spec, m, c(-0.5, 1.0), 0.4).unwrap();
            let n = phi.dim().min(psi.dim());
            let direct: Complex64 = (0..n)
                .map(|k| phi.coeffs[k].conj() * psi.coeffs[k])
                .sum();
            let f = to_analytic(&phi.coeffs[..n], &spec, m, 0.4).unwrap();
            let g = to_analytic(&psi.coeffs[..n], &spec, m, 0.4).unwrap();
            let through = fock_inner(&f, &g, &spec, m).unwrap();
            assert!((direct - through).norm() <= 1e-12 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn reproducing_property() {
        for (spec, m) in specs() {
            let gamma = 0.6;
            let state: Vec<Complex64> =
                (0..8).map(|k| c(0.3 * k as f64 - 0.9, 0.1 * k as f64)).collect();
            let f = to_analytic(&state, &spec, m, gamma).unwrap();
            let eps = ladder::epsilon_seq(&spec, m, 7).unwrap();
            for n in 0..8usize {
                let un = u_basis(&spec, m, gamma, n).unwrap();
                let ip = fock_inner(&un, &f, &spec, m).unwrap();
                let e = ladder::energy(&spec, m, n).unwrap();
                // (u_n, f) = √ε_n e^{−iγe_n} f_n against the series coefficients
                let want = Complex64::from_polar(eps[n].sqrt(), -gamma * e) * f.coeffs[n];
                assert!((ip - want).norm() <= 1e-12 * want.norm().max(1e-12));
            }
        }
    }

    #[test]
    fn monomial_and_differential_routes_coincide() {
        for (spec, m) in specs() {
            for n in 0..=12usize {
                let f = AnalyticSeries {
                    coeffs: monomial(n),
                    gamma: 0.0,
                    tail_bound: 0.0,
                };
                for which in [LadderOp::Lower, LadderOp::Raise, LadderOp::Weight] {
                    let lhs = op_on_series(which, &f, &spec, m).unwrap();
                    let rhs = op_differential(which, &f, &spec, m).unwrap();
                    assert_eq!(lhs.coeffs.len(), rhs.coeffs.len(), "{which:?} n={n}");
                    for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
                        // integer energies: both routes are exact in f64
                        assert_eq!(a, b, "{:?} {which:?} n={n}", spec.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn lower_kills_constants() {
        let (spec, m) = (CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap(), 0);
        let f = AnalyticSeries {
            coeffs: monomial(0),
            gamma: 0.0,
            tail_bound: 0.0,
        };
        let out = op_on_series(LadderOp::Lower, &f, &spec, m).unwrap();
        assert!(out.coeffs.is_empty());
    }

    #[test]
    fn measure_side_inner_product_matches_epsilon() {
        // (zⁿ, zⁿ) via the radial measure equals ε_n: the bridge between
        // the measure and the series inner product.
        let spec = CaseSpec::validate(CaseKind::SigmaOneMinusS2, -3.0, 0.0).unwrap();
        let m = 1;
        for n in 0..=6usize {
            let via_measure = coherent::measure::measure_moment(&spec, m, n).unwrap();
            let eps = ladder::epsilon_seq(&spec, m, n).unwrap();
            assert_relative_eq!(via_measure, eps[n], max_relative = 1e-6);
        }
    }
}
