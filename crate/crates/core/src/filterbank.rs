//! Frequency response tables evaluated at the bin centers and the reduction
//! of a histogram against them.

use serde::{Deserialize, Serialize};

use crate::dos::{bin_centers, SpectralHistogram};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default half-width of the window around zero where negative powers are muted.
pub const DEFAULT_POWER_GUARD: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrfFamily {
    Chebyshev,
    Power,
}

/// `K x B` table with entry `(k, b) = phi_k(center_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrfTable<T = f64> {
    pub family: FrfFamily,
    values: Vec<T>,
    centers: Vec<T>,
    /// Per-row parameter: Chebyshev index (1-based) or signed exponent.
    params: Vec<i32>,
    power_guard: Option<T>,
}

impl<T: Scalar> FrfTable<T> {
    pub fn rows(&self) -> usize {
        self.params.len()
    }

    pub fn bins(&self) -> usize {
        self.centers.len()
    }

    pub fn row(&self, k: usize) -> &[T] {
        let b = self.bins();
        &self.values[k * b..(k + 1) * b]
    }

    pub fn centers(&self) -> &[T] {
        &self.centers
    }

    /// Chebyshev index (`1..=K`) or power exponent of every row.
    pub fn params(&self) -> &[i32] {
        &self.params
    }

    pub fn power_guard(&self) -> Option<T> {
        self.power_guard
    }

    /// Bins whose center falls inside the negative-power guard window.
    pub fn guarded_bins(&self) -> Vec<usize> {
        match self.power_guard {
            Some(eps) => (0..self.bins()).filter(|&b| self.centers[b].abs() < eps).collect(),
            None => Vec::new(),
        }
    }
}

/// First `k` Chebyshev polynomials `T_0 .. T_{k-1}` at the bin centers.
///
/// The recurrence runs on `x = (2 lambda - (max + min)) / (max - min)` for the
/// spectrum interval `[-1, 1]` of the normalized adjacency, so `x = lambda`.
pub fn chebyshev_frf_table<T: Scalar>(k: usize, bins: usize) -> FrfTable<T> {
    let centers = bin_centers::<T>(bins);
    let (lo, hi) = (-T::one(), T::one());
    let two = T::of(2.0);
    let mapped: Vec<T> = centers.iter().map(|&l| (two * l - (hi + lo)) / (hi - lo)).collect();

    let mut values = Vec::with_capacity(k * bins);
    for row in 0..k {
        match row {
            0 => values.extend(std::iter::repeat_n(T::one(), bins)),
            1 => values.extend_from_slice(&mapped),
            _ => {
                let (prev2, prev1) = (row - 2, row - 1);
                for b in 0..bins {
                    let next = two * mapped[b] * values[prev1 * bins + b] - values[prev2 * bins + b];
                    values.push(next);
                }
            }
        }
    }
    FrfTable {
        family: FrfFamily::Chebyshev,
        values,
        centers,
        params: (1..=k as i32).collect(),
        power_guard: None,
    }
}

/// Signed powers `lambda^{+1..+k/2}` then `lambda^{-1..-k/2}`.
///
/// Negative powers are zero at centers with `|lambda| < eps_guard`.
pub fn power_frf_table<T: Scalar>(k: usize, bins: usize, eps_guard: T) -> Result<FrfTable<T>> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "power family needs an even K >= 2, got {k}"
        )));
    }
    if !(eps_guard > T::zero()) {
        return Err(Error::InvalidConfig("power guard must be positive".into()));
    }
    let centers = bin_centers::<T>(bins);
    let half = (k / 2) as i32;
    let params: Vec<i32> = (1..=half).chain((1..=half).map(|p| -p)).collect();
    let mut values = Vec::with_capacity(k * bins);
    for &p in &params {
        for &c in &centers {
            values.push(if p < 0 && c.abs() < eps_guard {
                T::zero()
            } else {
                c.powi(p)
            });
        }
    }
    Ok(FrfTable {
        family: FrfFamily::Power,
        values,
        centers,
        params,
        power_guard: Some(eps_guard),
    })
}

/// `g_k = sum_b h_b phi_k(center_b)` for every row of the table.
pub fn aggregate<T: Scalar>(h: &SpectralHistogram<T>, table: &FrfTable<T>) -> Result<Vec<T>> {
    if h.len() != table.bins() {
        return Err(Error::DimensionMismatch {
            expected: table.bins(),
            got: h.len(),
        });
    }
    Ok((0..table.rows())
        .map(|k| {
            table
                .row(k)
                .iter()
                .zip(&h.bins)
                .fold(T::zero(), |acc, (&phi, &x)| acc + phi * x)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dos::HistogramKind;

    fn hist(bins: Vec<f64>) -> SpectralHistogram<f64> {
        SpectralHistogram {
            n: 2,
            bins,
            kind: HistogramKind::Dos,
            provenance: vec![],
            clamped_ritz: 0,
        }
    }

    #[test]
    fn chebyshev_rows() {
        let t = chebyshev_frf_table::<f64>(3, 4);
        assert_eq!(t.row(0), &[1.0; 4]);
        // centers -0.75, -0.25, 0.25, 0.75
        assert_eq!(t.row(1), &[-0.75, -0.25, 0.25, 0.75]);
        assert!((t.row(2)[3] - (2.0 * 0.5625 - 1.0)).abs() < 1e-15);
        assert_eq!(t.params(), &[1, 2, 3]);
    }

    #[test]
    fn chebyshev_hand_values() {
        // B = 8 has centers at +-0.125, +-0.375, +-0.625, +-0.875; B = 2 centers +-0.5
        let t = chebyshev_frf_table::<f64>(3, 2);
        assert_eq!(t.row(1)[1], 0.5);
        assert_eq!(t.row(2)[1], -0.5);
        // center 0 is never a bin center for even B; T_2(0) = -1 checked directly
        let t = chebyshev_frf_table::<f64>(3, 2000);
        let mid = t.centers().iter().position(|c| c.abs() < 1e-3).unwrap();
        assert!((t.row(2)[mid] + 1.0).abs() < 1e-5);
    }

    #[test]
    fn chebyshev_bounded_and_matches_cosine_form() {
        let t = chebyshev_frf_table::<f64>(100, 200);
        for k in 0..100 {
            for (b, &c) in t.centers().iter().enumerate() {
                let v = t.row(k)[b];
                assert!(v.abs() <= 1.0 + 1e-12);
                assert!((v - (k as f64 * c.acos()).cos()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn power_rows() {
        let t = power_frf_table::<f64>(4, 4, 0.05).unwrap();
        assert_eq!(t.params(), &[1, 2, -1, -2]);
        assert_eq!(t.row(1)[1], 0.0625);
        let t = power_frf_table::<f64>(4, 8, 0.05).unwrap();
        let c = t.centers();
        let b = c.iter().position(|&x| x == 0.625).unwrap();
        assert!((t.row(2)[b] - 1.6).abs() < 1e-15);
        assert!(power_frf_table::<f64>(3, 4, 0.05).is_err());
        assert!(power_frf_table::<f64>(4, 4, 0.0).is_err());
    }

    #[test]
    fn power_examples_at_bin_centers() {
        // B = 2 centers are exactly +-0.5
        let t = power_frf_table::<f64>(4, 2, 0.05).unwrap();
        assert_eq!(t.row(1)[0], 0.25);
        assert_eq!(t.row(2)[1], 2.0);
        // B = 4: center -0.25 squared; B = 200: centers +-0.005 guarded
        let t = power_frf_table::<f64>(4, 4, 0.05).unwrap();
        let b = t.centers().iter().position(|&x| x == -0.25).unwrap();
        assert_eq!(t.row(1)[b], 0.0625);
        let t = power_frf_table::<f64>(4, 200, 0.05).unwrap();
        let near_zero = t.centers().iter().position(|&x| (x - 0.005).abs() < 1e-12).unwrap();
        assert_eq!(t.row(3)[near_zero], 0.0);
        assert_eq!(t.guarded_bins().len(), 10);
        // reciprocal outside the guard
        let t = power_frf_table::<f64>(2, 4, 0.05).unwrap();
        let b = t.centers().iter().position(|&x| x == 0.25).unwrap();
        assert_eq!(t.row(1)[b], 4.0);
    }

    #[test]
    fn guarded_table_is_finite() {
        let t = power_frf_table::<f64>(100, 200, DEFAULT_POWER_GUARD).unwrap();
        for k in 0..100 {
            assert!(t.row(k).iter().all(|x| x.is_finite()));
        }
    }

    #[test]
    fn aggregate_examples() {
        let t = power_frf_table::<f64>(4, 4, 0.05).unwrap();
        assert_eq!(aggregate(&hist(vec![0.0; 4]), &t).unwrap(), vec![0.0; 4]);
        let g = aggregate(&hist(vec![1.0, 0.0, 0.0, 1.0]), &t).unwrap();
        assert!((g[1] - 1.125).abs() < 1e-15);
        let c = chebyshev_frf_table::<f64>(2, 4);
        let h = hist(vec![0.3, 0.9, 0.5, 0.3]);
        let g = aggregate(&h, &c).unwrap();
        assert!((g[0] - 1.0 / h.bin_width()).abs() < 1e-12);
        assert!(matches!(
            aggregate(&hist(vec![0.0; 3]), &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
