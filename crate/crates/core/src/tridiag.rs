//! Implicit-shift QL on a symmetric tridiagonal matrix, tracking only the
//! first row of the eigenvector matrix.
//!
//! Follows the EISPACK `tql2` sweep; instead of accumulating all rotations
//! into a full matrix, the rotations are applied to the single row `e_0^T V`,
//! which is what Golub-Welsch quadrature weights need. Work is `O(s^2)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 30;

/// Eigenvalues (ascending) and first eigenvector components of the symmetric
/// tridiagonal matrix with diagonal `diag` and off-diagonal `offdiag`.
pub fn eig_first_components<T: Scalar>(diag: &[T], offdiag: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    assert!(n >= 1, "empty tridiagonal matrix");
    assert_eq!(offdiag.len() + 1, n, "off-diagonal must have length n - 1");

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(T::zero());
    let mut z = vec![T::zero(); n];
    z[0] = T::one();

    let two = T::of(2.0);
    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS_PER_EIGENVALUE {
                    return Err(Error::EigensolverFailure(MAX_SWEEPS_PER_EIGENVALUE));
                }

                // Wilkinson-style shift from the leading 2x2 block
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    h = z[i + 1];
                    z[i + 1] = s * z[i] + c * h;
                    z[i] = c * z[i] - s * h;
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    Ok((
        order.iter().map(|&k| d[k]).collect(),
        order.iter().map(|&k| z[k]).collect(),
    ))
}
