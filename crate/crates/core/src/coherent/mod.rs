//! Temporally stable coherent states `|z,γ⟩ = Σ zⁿ e^{−iγeₙ}/√εₙ |n⟩`.
//!
//! Infinite families get a per-`|z|` truncation with a certified geometric
//! tail bound; the finite families are exact at length `L̃+1`. Time
//! evolution is the diagonal phase action, so `e^{−itH}|z,γ⟩ = |z,γ+t⟩`
//! holds componentwise.

pub mod bessel;
pub mod measure;

use crate::cases::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use crate::ladder;
use crate::scalar::compensated_sum;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Truncated coefficient vector of `|z,γ⟩` together with the energies that
/// generated it.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub z: Complex64,
    pub gamma: f64,
    pub coeffs: Vec<Complex64>,
    pub energies: Vec<f64>,
    /// Certified bound on the dropped `Σ|c_n|²` tail (zero when exact).
    pub tail_bound: f64,
}

impl CoherentState {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `Σ |c_n|²` over the kept coefficients.
    pub fn norm_sq(&self) -> f64 {
        compensated_sum(self.coeffs.iter().map(|c| c.norm_sqr()))
    }

    pub fn vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.coeffs)
    }
}

const MAX_LEVELS: usize = 600;

/// Build `|z,γ⟩`. The infinite-family truncation keeps terms until the next
/// squared coefficient falls below both `1e−16` and `1e−24/|z|²`; the
/// second condition keeps the annihilation-eigenstate residual at the
/// `1e−12` scale even for states of near-unit norm.
pub fn coherent_state(
    spec: &CaseSpec,
    m: usize,
    z: Complex64,
    gamma: f64,
) -> Result<CoherentState> {
    let finite = ladder::finite_dim(spec, m)?;
    let z_sq = z.norm_sqr();
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut energies = vec![0.0];
    let mut tail_bound = 0.0;
    match finite {
        Some(dim) => {
            for n in 1..dim {
                let w = ladder::ladder_weight(spec, m, n)?;
                let e = ladder::energy(spec, m, n)?;
                let phase = Complex64::from_polar(1.0, -gamma * (e - energies[n - 1]));
                let c = coeffs[n - 1] * z * phase / w.sqrt();
                coeffs.push(c);
                energies.push(e);
            }
        }
        None => {
            let cutoff = 1e-16f64.min(1e-24 / z_sq.max(1.0));
            let mut n = 1usize;
            loop {
                let e = ladder::energy(spec, m, n)?;
                let phase = Complex64::from_polar(1.0, -gamma * (e - energies[n - 1]));
                let c = coeffs[n - 1] * z * phase / e.sqrt();
                let t = c.norm_sqr();
                if t < cutoff && e > 2.0 * z_sq {
                    // geometric tail: ratio |z|²/e_{k} ≤ 1/2 from here on
                    tail_bound = 2.0 * t;
                    break;
                }
                coeffs.push(c);
                energies.push(e);
                n += 1;
                if n > MAX_LEVELS {
                    return Err(Error::ConvergenceFailure {
                        what: "coherent-state truncation",
                        max_terms: MAX_LEVELS,
                    });
                }
            }
        }
    }
    Ok(CoherentState {
        z,
        gamma,
        coeffs,
        energies,
        tail_bound,
    })
}

/// `⟨z,γ|z,γ⟩` summed from the kept coefficients.
pub fn overlap_series(state: &CoherentState) -> f64 {
    state.norm_sq()
}

/// Confluent limit series `₀F₁(c; x) = Σ xᵏ / ((c)ₖ k!)`.
pub fn hyp0f1(c: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..500 {
        let kf = k as f64;
        term *= x / ((c + kf) * (kf + 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Closed-form overlap: `e^{−|z|²/α}` for `σ ∈ {1, s}`,
/// `₀F₁(2m−α; |z|²)` for `σ = 1−s²`, and the exact partial sum
/// `Σ_{n≤L̃} |z|^{2n}/ε̃_n` for the finite families.
pub fn overlap_closed(spec: &CaseSpec, m: usize, z: Complex64) -> Result<f64> {
    let z_sq = z.norm_sqr();
    match spec.kind() {
        CaseKind::SigmaOne | CaseKind::SigmaS => Ok((-z_sq / spec.alpha()).exp()),
        CaseKind::SigmaOneMinusS2 => Ok(hyp0f1(2.0 * m as f64 - spec.alpha(), z_sq)),
        _ => {
            let dim = ladder::finite_dim(spec, m)?.unwrap();
            let eps = ladder::epsilon_seq(spec, m, dim - 1)?;
            Ok(compensated_sum(
                (0..dim).map(|n| z_sq.powi(n as i32) / eps[n]),
            ))
        }
    }
}

/// Diagonal time evolution: each coefficient picks up `e^{−it e_n}`; the
/// result is `|z, γ+t⟩` on the same truncation.
pub fn evolve(state: &CoherentState, t: f64) -> CoherentState {
    let coeffs = state
        .coeffs
        .iter()
        .zip(&state.energies)
        .map(|(c, e)| c * Complex64::from_polar(1.0, -t * e))
        .collect();
    CoherentState {
        z: state.z,
        gamma: state.gamma + t,
        coeffs,
        energies: state.energies.clone(),
        tail_bound: state.tail_bound,
    }
}

/// `‖a|z,γ⟩ − z|z,γ⟩‖ / ‖|z,γ⟩‖` in the truncated representation.
pub fn annihilation_residual(spec: &CaseSpec, m: usize, state: &CoherentState) -> Result<f64> {
    let dim = state.dim();
    let (a, _) = ladder::build_ladder(spec, m, state.gamma, dim)?;
    let v = state.vector();
    let diff = &a.entries * &v - &v * state.z;
    Ok(diff.norm() / v.norm())
}

/// `D(z)|0⟩` through the factored form
/// `e^{−|z|²/2} · exp(z a^⊥) · exp(−z̄ a) |0⟩` in the truncated matrix
/// representation (the rightmost factor fixes the vacuum). Equals
/// `e^{−|z|²/2} |z,γ⟩` exactly, since `[a, a^⊥] = I`.
///
/// `a^⊥` is a pure raising shift, so the first `dim` coefficients are exact
/// regardless of the truncation; `tail_bound` reports what the window
/// leaves out, and only a clearly undersized `dim` (top coefficient above
/// `1e−4` of the norm) is rejected.
pub fn displacement_apply(
    spec: &CaseSpec,
    m: usize,
    z: Complex64,
    gamma: f64,
    dim: usize,
) -> Result<CoherentState> {
    let a_perp = ladder::a_perp(spec, m, gamma, dim)?;
    let mut v = DVector::<Complex64>::zeros(dim);
    v[0] = Complex64::new(1.0, 0.0);
    let mut term = v.clone();
    for k in 1..dim {
        term = (&a_perp.entries * &term) * (z / Complex64::new(k as f64, 0.0));
        v += &term;
    }
    let scale = Complex64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
    v *= scale;
    let norm = v.norm();
    let last = v[dim - 1].norm();
    if last > 1e-4 * norm {
        return Err(Error::TruncationError {
            detail: format!(
                "top coefficient {last:.3e} above 1e-4 of the norm {norm:.3e}; increase dim"
            ),
        });
    }
    let mut energies = Vec::with_capacity(dim);
    for n in 0..dim {
        energies.push(ladder::energy(spec, m, n)?);
    }
    Ok(CoherentState {
        z,
        gamma,
        coeffs: v.iter().copied().collect(),
        energies,
        tail_bound: 2.0 * last * last,
    })
}

/// Variances of `X = (a⁺+a)/√2` and `P = i(a⁺−a)/√2` in the state, plus
/// the uncertainty bound `¼⟨i[X,P]⟩²`.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub var_x: f64,
    pub var_p: f64,
    pub bound: f64,
    pub mean_x_imag: f64,
    pub mean_p_imag: f64,
}

pub fn uncertainty(spec: &CaseSpec, m: usize, state: &CoherentState) -> Result<UncertaintyReport> {
    // pad so the truncated shift does not clip the working components
    let dim = state.dim() + 2;
    let (a, ap) = ladder::build_ladder(spec, m, state.gamma, dim)?;
    let inv_sqrt2 = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let x = (&ap.entries + &a.entries) * inv_sqrt2;
    let p = (&ap.entries - &a.entries) * (Complex64::i() * inv_sqrt2);
    let mut v = DVector::<Complex64>::zeros(dim);
    for (i, c) in state.coeffs.iter().enumerate() {
        v[i] = *c;
    }
    let nsq = v.dotc(&v).re;
    let mean = |mat: &DMatrix<Complex64>| v.dotc(&(mat * &v)) / nsq;
    let mx = mean(&x);
    let mp = mean(&p);
    let mx2 = mean(&(&x * &x)).re;
    let mp2 = mean(&(&p * &p)).re;
    let comm = &x * &p - &p * &x;
    let bound_mean = mean(&(comm * Complex64::i())).re;
    Ok(UncertaintyReport {
        var_x: mx2 - mx.re * mx.re,
        var_p: mp2 - mp.re * mp.re,
        bound: 0.25 * bound_mean * bound_mean,
        mean_x_imag: mx.im,
        mean_p_imag: mp.im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_state_is_the_ground_level() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        let st = coherent_state(&spec, 0, c(0.0, 0.0), 0.3).unwrap();
        assert_eq!(st.dim(), 1);
        assert_eq!(st.coeffs[0], c(1.0, 0.0));
        assert_eq!(st.tail_bound, 0.0);
    }

    #[test]
    fn canonical_coefficients() {
        // σ=1, α=−1, γ=0: c_n = zⁿ/√(n!)
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        let z = c(0.8, -0.4);
        let st = coherent_state(&spec, 0, z, 0.0).unwrap();
        let mut fact = 1.0;
        for n in 0..st.dim().min(8) {
            if n > 0 {
                fact *= n as f64;
            }
            let want = z.powu(n as u32) / fact.sqrt();
            assert!((st.coeffs[n] - want).norm() <= 1e-14 * want.norm().max(1e-12));
        }
    }

    #[test]
    fn truncation_certificate_holds() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        for &zr in &[0.5, 1.5, 3.0] {
            let st = coherent_state(&spec, 1, c(zr, 0.7), 0.2).unwrap();
            assert!(st.tail_bound < 1e-14 * st.norm_sq());
        }
    }

    #[test]
    fn annihilation_eigenstate() {
        for (kind, a, b) in [
            (CaseKind::SigmaOne, -2.0, 0.0),
            (CaseKind::SigmaS, -1.0, 2.0),
            (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
        ] {
            let spec = CaseSpec::validate(kind, a, b).unwrap();
            for &z in &[c(0.5, 0.0), c(1.0, 1.0), c(0.0, 3.0)] {
                let st = coherent_state(&spec, 1, z, 0.4).unwrap();
                let res = annihilation_residual(&spec, 1, &st).unwrap();
                assert!(res <= 1e-10, "{kind:?} z={z}: residual {res:.3e}");
            }
        }
    }

    #[test]
    fn overlap_series_matches_closed_forms() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        let st = coherent_state(&spec, 0, c(1.0, 0.0), 0.0).unwrap();
        assert_relative_eq!(
            overlap_series(&st),
            std::f64::consts::E,
            max_relative = 1e-12
        );

        let spec = CaseSpec::validate(CaseKind::SigmaOneMinusS2, -2.0, 0.0).unwrap();
        for &z in &[c(0.3, 0.1), c(1.2, -2.0)] {
            let st = coherent_state(&spec, 0, z, 0.9).unwrap();
            let closed = overlap_closed(&spec, 0, z).unwrap();
            assert_relative_eq!(overlap_series(&st), closed, max_relative = 1e-10);
        }
    }

    #[test]
    fn finite_overlap_is_the_exact_partial_sum() {
        let spec = CaseSpec::validate(CaseKind::SigmaS2, -9.0, 1.0).unwrap();
        let st = coherent_state(&spec, 1, c(1.3, 0.4), 0.5).unwrap();
        assert_eq!(st.dim(), 4); // L = 4, m = 1 → L̃+1
        let closed = overlap_closed(&spec, 1, st.z).unwrap();
        assert_relative_eq!(overlap_series(&st), closed, max_relative = 1e-14);
    }

    #[test]
    fn evolution_shifts_gamma_only() {
        let spec = CaseSpec::validate(CaseKind::SigmaS, -1.0, 2.0).unwrap();
        let z = c(1.1, -0.3);
        let st = coherent_state(&spec, 0, z, 0.0).unwrap();
        let evolved = evolve(&st, 1.0);
        let direct = coherent_state(&spec, 0, z, 1.0).unwrap();
        assert_eq!(evolved.dim(), direct.dim());
        for n in 0..direct.dim() {
            assert!((evolved.coeffs[n] - direct.coeffs[n]).norm() <= 1e-14);
        }
        assert_relative_eq!(
            overlap_series(&evolved),
            overlap_series(&st),
            max_relative = 1e-14
        );
    }

    #[test]
    fn displaced_vacuum_reproduces_the_state() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        let z = c(0.9, 0.6);
        let d = displacement_apply(&spec, 0, z, 0.0, 24).unwrap();
        let st = coherent_state(&spec, 0, z, 0.0).unwrap();
        let factor = (-0.5 * z.norm_sqr()).exp();
        let mut worst = 0.0f64;
        for n in 0..st.dim().min(d.dim()) {
            worst = worst.max((d.coeffs[n] - st.coeffs[n] * factor).norm());
        }
        assert!(worst <= 1e-12 * factor * st.norm_sq().sqrt());
    }

    #[test]
    fn displacement_rejects_short_truncations() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        assert!(matches!(
            displacement_apply(&spec, 0, c(2.0, 0.0), 0.0, 6),
            Err(Error::TruncationError { .. })
        ));
    }

    #[test]
    fn ground_state_uncertainty_is_canonical() {
        let spec = CaseSpec::validate(CaseKind::SigmaOne, -1.0, 0.0).unwrap();
        let st = coherent_state(&spec, 0, c(0.0, 0.0), 0.0).unwrap();
        let u = uncertainty(&spec, 0, &st).unwrap();
        assert_relative_eq!(u.var_x, 0.5, max_relative = 1e-12);
        assert_relative_eq!(u.var_p, 0.5, max_relative = 1e-12);
        assert_relative_eq!(u.bound, 0.25, max_relative = 1e-12);
    }

    #[test]
    fn coherent_states_saturate_the_bound() {
        for (kind, a, b) in [
            (CaseKind::SigmaOne, -2.0, 0.0),
            (CaseKind::SigmaS, -1.0, 2.0),
            (CaseKind::SigmaOneMinusS2, -3.0, 0.0),
        ] {
            let spec = CaseSpec::validate(kind, a, b).unwrap();
            for &z in &[c(0.5, 0.0), c(1.0, 1.0), c(0.0, 2.0)] {
                let st = coherent_state(&spec, 0, z, 0.25).unwrap();
                let u = uncertainty(&spec, 0, &st).unwrap();
                let prod = u.var_x * u.var_p;
                assert_relative_eq!(prod, u.bound, max_relative = 1e-8);
                assert!(u.mean_x_imag.abs() <= 1e-12);
                assert!(u.mean_p_imag.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn finite_overcompleteness_rank() {
        let spec = CaseSpec::validate(CaseKind::SigmaS2, -9.0, 1.0).unwrap();
        let dim = ladder::finite_dim(&spec, 1).unwrap().unwrap();
        let zs: Vec<Complex64> = (0..dim)
            .map(|j| Complex64::from_polar(0.5 + j as f64 * 0.4, 0.7 * j as f64))
            .collect();
        let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
        for (j, &z) in zs.iter().enumerate() {
            let st = coherent_state(&spec, 1, z, 0.0).unwrap();
            for n in 0..dim {
                mat[(j, n)] = st.coeffs[n];
            }
        }
        let svd = mat.svd(false, false);
        let max_sv = svd.singular_values.max();
        let min_sv = svd.singular_values.min();
        assert!(min_sv > 1e-8 * max_sv, "rank deficiency: {min_sv} vs {max_sv}");
    }
}
