//! Lanczos tridiagonalization of the shift operator and the Gauss quadrature
//! rule it induces for the spectral measure of a start vector.

use crate::error::{Error, Result};
use crate::graph::ShiftOperator;
use crate::scalar::{axpy, dot, Scalar};
use crate::tridiag::eig_first_components;

/// Recurrence coefficients of an `s`-step Lanczos run.
#[derive(Clone, Debug, PartialEq)]
pub struct LanczosFactorization<T = f64> {
    /// Diagonal of the tridiagonal factor, length `s`.
    pub alpha: Vec<T>,
    /// Off-diagonal of the tridiagonal factor, length `s - 1`, all above the
    /// breakdown tolerance.
    pub beta: Vec<T>,
    pub start_norm: T,
}

impl<T: Scalar> LanczosFactorization<T> {
    pub fn steps(&self) -> usize {
        self.alpha.len()
    }
}

/// Runs at most `max_steps` Lanczos steps from `start`.
///
/// The recurrence works on `start / ||start||`. It stops early once the next
/// off-diagonal coefficient falls to [`Scalar::breakdown_tol`], i.e. when the
/// Krylov space has become invariant. With `reorthogonalize` every new
/// direction is Gram-Schmidt'ed twice against the whole basis.
pub fn lanczos_tridiagonalize<T: Scalar>(
    op: &ShiftOperator<T>,
    start: &[T],
    max_steps: usize,
    reorthogonalize: bool,
) -> Result<LanczosFactorization<T>> {
    let n = op.dim();
    if start.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: start.len(),
        });
    }
    if max_steps == 0 {
        return Err(Error::InvalidConfig("Lanczos needs at least one step".into()));
    }
    let start_norm = dot(start, start).sqrt();
    if !(start_norm > T::zero()) {
        return Err(Error::ZeroStartVector);
    }
    let steps = max_steps.min(n);
    let tol = T::breakdown_tol();

    let mut q: Vec<T> = start.iter().map(|&x| x / start_norm).collect();
    let mut q_prev = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let mut basis: Vec<T> = Vec::with_capacity(if reorthogonalize { steps * n } else { 0 });
    let mut coeffs = vec![T::zero(); if reorthogonalize { steps } else { 0 }];

    let mut alpha = Vec::with_capacity(steps);
    let mut beta: Vec<T> = Vec::with_capacity(steps);

    for j in 0..steps {
        if reorthogonalize {
            basis.extend_from_slice(&q);
        }
        op.apply(&q, &mut w);
        if let Some(&b) = beta.last() {
            axpy(-b, &q_prev, &mut w);
        }
        let a = dot(&q, &w);
        axpy(-a, &q, &mut w);
        alpha.push(a);

        if j + 1 == steps {
            break;
        }

        if reorthogonalize {
            let cols = j + 1;
            for _ in 0..2 {
                for (c, qk) in coeffs[..cols].iter_mut().zip(basis.chunks_exact(n)) {
                    *c = dot(qk, &w);
                }
                for (&c, qk) in coeffs[..cols].iter().zip(basis.chunks_exact(n)) {
                    axpy(-c, qk, &mut w);
                }
            }
        }

        let b = dot(&w, &w).sqrt();
        if b <= tol {
            break;
        }
        beta.push(b);
        std::mem::swap(&mut q_prev, &mut q);
        for (qi, &wi) in q.iter_mut().zip(&w) {
            *qi = wi / b;
        }
    }

    Ok(LanczosFactorization {
        alpha,
        beta,
        start_norm,
    })
}

/// Discrete measure `sum_j weights[j] * delta(x - nodes[j])`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T = f64> {
    /// Ritz values in ascending order, inside `[-1, 1]`.
    pub nodes: Vec<T>,
    /// Nonnegative, summing to one.
    pub weights: Vec<T>,
    /// How many nodes sat further than [`Scalar::bin_snap`] outside `[-1, 1]`.
    /// Smaller overshoots are round-off and are clamped silently.
    pub clamped: usize,
    /// Largest distance a node sat outside `[-1, 1]` before clamping.
    pub max_overshoot: T,
}

impl<T: Scalar> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_j w_j f(x_j)`.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Golub-Welsch: nodes are the eigenvalues of the tridiagonal factor, weights
/// the squared first components of its unit eigenvectors.
pub fn tridiagonal_quadrature<T: Scalar>(fac: &LanczosFactorization<T>) -> Result<QuadratureRule<T>> {
    let (mut nodes, first) = eig_first_components(&fac.alpha, &fac.beta)?;
    let weights = first.into_iter().map(|z| z * z).collect();
    let mut clamped = 0;
    let mut max_overshoot = T::zero();
    for x in nodes.iter_mut() {
        let over = x.abs() - T::one();
        if over > T::zero() {
            if over > T::bin_snap() {
                clamped += 1;
            }
            max_overshoot = max_overshoot.max(over);
            *x = x.signum();
        }
    }
    if clamped > 0 {
        log::debug!("clamped {clamped} Ritz values, max overshoot {max_overshoot:e}");
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        clamped,
        max_overshoot,
    })
}

/// Gauss quadrature for the spectral measure of `v / ||v||`.
pub fn gauss_quadrature<T: Scalar>(
    op: &ShiftOperator<T>,
    v: &[T],
    eta_l: usize,
    reorthogonalize: bool,
) -> Result<QuadratureRule<T>> {
    let fac = lanczos_tridiagonalize(op, v, eta_l, reorthogonalize)?;
    tridiagonal_quadrature(&fac)
}
