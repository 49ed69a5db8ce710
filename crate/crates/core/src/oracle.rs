//! Dense reference spectra for small graphs.
//!
//! Everything here materializes the full eigendecomposition of the shift
//! operator and evaluates the histogram definitions literally. It is the
//! ground truth the Lanczos estimators are tested against.

use nalgebra::{DMatrix, RealField, SymmetricEigen};

use crate::dos::{bin_index, bin_width, HistogramKind, SpectralHistogram};
use crate::error::{Error, Result};
use crate::graph::{AttributeVector, ShiftOperator};
use crate::scalar::Scalar;

pub const DEFAULT_SIZE_CAP: usize = 2048;

#[derive(Clone, Debug)]
pub struct ExactSpectrum<T: Scalar + RealField = f64> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Column `i` is the unit eigenvector of `eigenvalues[i]`.
    pub eigenvectors: DMatrix<T>,
}

impl<T: Scalar + RealField> ExactSpectrum<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `u_i . v` for every eigenvector.
    pub fn projections(&self, v: &[T]) -> Vec<T> {
        (0..self.dim())
            .map(|i| {
                self.eigenvectors
                    .column(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&u, &x)| acc + u * x)
            })
            .collect()
    }
}

pub fn exact_spectrum<T: Scalar + RealField>(op: &ShiftOperator<T>) -> Result<ExactSpectrum<T>> {
    exact_spectrum_with_cap(op, DEFAULT_SIZE_CAP)
}

pub fn exact_spectrum_with_cap<T: Scalar + RealField>(op: &ShiftOperator<T>, cap: usize) -> Result<ExactSpectrum<T>> {
    let n = op.dim();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let dense = DMatrix::from_row_slice(n, n, &op.to_dense());
    let eig = SymmetricEigen::new(dense);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(ExactSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn binned<T: Scalar + RealField>(
    spec: &ExactSpectrum<T>,
    masses: impl Iterator<Item = T>,
    bins: usize,
    kind: HistogramKind,
    provenance: Vec<String>,
) -> SpectralHistogram<T> {
    let n = spec.dim();
    let mut hist = SpectralHistogram::zeros(bins, kind, provenance, n);
    let scale = T::one() / (bin_width::<T>(bins) * T::from_usize(n).unwrap());
    for (&lambda, m) in spec.eigenvalues.iter().zip(masses) {
        let b = bin_index(lambda, bins);
        hist.bins[b] += m * scale;
    }
    hist
}

/// Eigenvalue counts per bin over `delta n`.
pub fn exact_dos_hist<T: Scalar + RealField>(spec: &ExactSpectrum<T>, bins: usize) -> SpectralHistogram<T> {
    binned(spec, std::iter::repeat(T::one()), bins, HistogramKind::Dos, Vec::new())
}

/// Squared projections `(v . u_i)^2` per bin over `delta n`.
pub fn exact_ldos_hist<T: Scalar + RealField>(
    spec: &ExactSpectrum<T>,
    v: &AttributeVector<T>,
    bins: usize,
) -> SpectralHistogram<T> {
    let p = spec.projections(v.values());
    binned(
        spec,
        p.into_iter().map(|x| x * x),
        bins,
        HistogramKind::Ldos,
        vec![v.label.clone()],
    )
}

/// Cross projections `(v . u_i)(u_i . v')` per bin over `delta n`.
pub fn exact_cldos_hist<T: Scalar + RealField>(
    spec: &ExactSpectrum<T>,
    v: &AttributeVector<T>,
    v2: &AttributeVector<T>,
    bins: usize,
) -> SpectralHistogram<T> {
    let p = spec.projections(v.values());
    let q = spec.projections(v2.values());
    binned(
        spec,
        p.into_iter().zip(q).map(|(a, b)| a * b),
        bins,
        HistogramKind::Cldos,
        vec![v.label.clone(), v2.label.clone()],
    )
}

/// `sum_i phi(lambda_i)`, i.e. `trace(phi(S))`.
pub fn exact_trace_phi<T: Scalar + RealField>(spec: &ExactSpectrum<T>, phi: impl Fn(T) -> T) -> T {
    spec.eigenvalues.iter().fold(T::zero(), |acc, &l| acc + phi(l))
}
