//! Creation/annihilation matrices in the normalized basis `|n⟩ = φ_{m+n,m}`
//! and the classification of the Lie algebra they generate.
//!
//! Infinite families carry amplitudes `√e_n` with `e_n = λ_{m+n} − λ_m`;
//! the finite families carry the su(2) amplitudes `√ẽ_n`, `ẽ_n = n(L̃−n+1)`
//! with `L̃ = L − m`, while the phases use `e_n` in both.

use crate::cases::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Which finite-dimensional Lie algebra `{a_m, a_m⁺}` generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    HeisenbergWeyl,
    SU11,
    SU2,
}

pub fn classify_algebra(spec: &CaseSpec) -> AlgebraKind {
    match spec.kind() {
        CaseKind::SigmaOne | CaseKind::SigmaS => AlgebraKind::HeisenbergWeyl,
        CaseKind::SigmaOneMinusS2 => AlgebraKind::SU11,
        CaseKind::SigmaS2Minus1 | CaseKind::SigmaS2 | CaseKind::SigmaS2Plus1 => AlgebraKind::SU2,
    }
}

/// `L̃ + 1`, the basis size of the finite families; `None` when infinite.
pub fn finite_dim(spec: &CaseSpec, m: usize) -> Result<Option<usize>> {
    match spec.index_bound().finite_l {
        None => Ok(None),
        Some(l_max) => {
            if m > l_max {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    bound: format!("m must not exceed L = {l_max}"),
                });
            }
            Ok(Some(l_max - m + 1))
        }
    }
}

/// `e_n = λ_{m+n} − λ_m` by the per-case closed form.
pub fn energy(spec: &CaseSpec, m: usize, n: usize) -> Result<f64> {
    if let Some(dim) = finite_dim(spec, m)? {
        if n >= dim {
            return Err(Error::IndexOutOfRange {
                index: n,
                bound: format!("finite basis has {dim} levels"),
            });
        }
    }
    let a = spec.alpha();
    let (nf, mf) = (n as f64, m as f64);
    Ok(match spec.kind() {
        CaseKind::SigmaOne | CaseKind::SigmaS => -a * nf,
        CaseKind::SigmaOneMinusS2 => nf * (nf + 2.0 * mf - a - 1.0),
        _ => -nf * (nf + 2.0 * mf + a - 1.0),
    })
}

/// Squared ladder amplitude: `e_n` for the infinite families, `ẽ_n` for the
/// finite ones.
pub fn ladder_weight(spec: &CaseSpec, m: usize, n: usize) -> Result<f64> {
    match finite_dim(spec, m)? {
        None => energy(spec, m, n),
        Some(dim) => {
            let l_tilde = (dim - 1) as f64;
            if n > dim {
                return Err(Error::IndexOutOfRange {
                    index: n,
                    bound: format!("finite ladder stops at n = {dim}"),
                });
            }
            Ok(n as f64 * (l_tilde - n as f64 + 1.0))
        }
    }
}

/// `ε_0 = 1, ε_n = w_1 w_2 ··· w_n` over the ladder weights.
pub fn epsilon_seq(spec: &CaseSpec, m: usize, count: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(1.0);
    for n in 1..=count {
        let w = ladder_weight(spec, m, n)?;
        let prev = *out.last().unwrap();
        out.push(prev * w);
    }
    Ok(out)
}

/// Truncated matrix of an operator in the basis `|n⟩ = φ_{m+n,m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub basis_m: usize,
    pub gamma: f64,
    pub entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            basis_m: self.basis_m,
            gamma: self.gamma,
            entries: self.entries.adjoint(),
        }
    }
}

/// The pair `(a_m, a_m⁺)`; the second is exactly the conjugate transpose of
/// the first. For the finite families `dim` must equal `L̃ + 1`.
pub fn build_ladder(
    spec: &CaseSpec,
    m: usize,
    gamma: f64,
    dim: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if dim == 0 {
        return Err(Error::DimensionError {
            detail: "ladder needs at least one basis level".into(),
        });
    }
    if let Some(exact) = finite_dim(spec, m)? {
        if dim != exact {
            return Err(Error::DimensionError {
                detail: format!("finite case requires dim = L-tilde+1 = {exact}, got {dim}"),
            });
        }
    }
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        let w = ladder_weight(spec, m, n)?;
        let phase = gamma * (energy(spec, m, n)? - energy(spec, m, n - 1)?);
        a[(n - 1, n)] = Complex64::from_polar(w.sqrt(), phase);
    }
    let a = OperatorMatrix {
        basis_m: m,
        gamma,
        entries: a,
    };
    let a_plus = a.adjoint();
    Ok((a, a_plus))
}

/// `N/H · a_m⁺`: the diagonally rescaled creation operator with
/// `[a_m, a_m^⊥] = I`. Defined for the infinite families.
pub fn a_perp(spec: &CaseSpec, m: usize, gamma: f64, dim: usize) -> Result<OperatorMatrix> {
    if spec.kind().is_finite_family() {
        return Err(Error::UnsupportedCase {
            case: spec.kind().label(),
            detail: "the rescaled creation operator needs an infinite ladder",
        });
    }
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let e_up = energy(spec, m, n + 1)?;
        let phase = -gamma * (e_up - energy(spec, m, n)?);
        mat[(n + 1, n)] = Complex64::from_polar((n as f64 + 1.0) / e_up.sqrt(), phase);
    }
    Ok(OperatorMatrix {
        basis_m: m,
        gamma,
        entries: mat,
    })
}

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionError {
            detail: format!("commutator of dims {} and {}", a.dim(), b.dim()),
        });
    }
    Ok(OperatorMatrix {
        basis_m: a.basis_m,
        gamma: a.gamma,
        entries: &a.entries * &b.entries - &b.entries * &a.entries,
    })
}

/// Number operator `N|n⟩ = n|n⟩`.
pub fn number_operator(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `R̃ = N − L̃/2` on the full finite basis.
pub fn r_tilde(dim: usize) -> DMatrix<Complex64> {
    let l_tilde = (dim - 1) as f64;
    number_operator(dim)
        - DMatrix::from_diagonal_element(dim, dim, Complex64::new(l_tilde / 2.0, 0.0))
}

/// Largest entry magnitude; the scale for matrix-identity tolerances.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, c| acc.max(c.norm()))
}

/// Largest entry magnitude over the interior block (last row and column
/// excluded), where truncation of shift operators cannot intrude.
pub fn max_abs_interior(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    if n <= 1 {
        return 0.0;
    }
    let mut acc = 0.0f64;
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            acc = acc.max(m[(i, j)].norm());
        }
    }
    acc
}

/// Matrix exponential by scaling-and-squaring with a Taylor core; ample for
/// the truncated ladder representations used here.
pub fn matrix_exp(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let norm = m
        .row_iter()
        .map(|r| r.iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0);
    let t = m * scale;
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..=40 {
        term = (&term * &t) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 * max_abs(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
