use num_traits::{Float, One, Zero};

use super::matrix::DenseMatrix;
use crate::scalar::{norm, real, Real, Scalar};

/// Numerical rank by Householder QR with column pivoting.
///
/// The pivot column at each step is the remaining column of largest norm;
/// elimination stops once that norm is at most the threshold. `tol = None`
/// uses `max(rows, cols) · ε · (largest column norm)`.
pub fn rank<S: Scalar>(m: &DenseMatrix<S>, tol: Option<f64>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = m.clone();
    let largest = (0..cols)
        .map(|j| norm(&a.column(j)))
        .fold(S::Real::zero(), Float::max);
    let threshold = match tol {
        Some(t) => real::<S::Real>(t),
        None => S::Real::from_usize_lossy(rows.max(cols)) * S::Real::epsilon() * largest,
    };
    if largest == S::Real::zero() {
        return 0;
    }

    let mut r = 0;
    for k in 0..rows.min(cols) {
        let (pivot, pivot_norm) =
            (k..cols)
                .map(|j| (j, tail_norm(&a, k, j)))
                .fold((k, -S::Real::one()), |best, cur| {
                    if cur.1 > best.1 {
                        cur
                    } else {
                        best
                    }
                });
        if pivot_norm <= threshold {
            break;
        }
        a.swap_columns(k, pivot);
        reflect(&mut a, k, pivot_norm);
        r += 1;
    }
    r
}

fn tail_norm<S: Scalar>(a: &DenseMatrix<S>, k: usize, j: usize) -> S::Real {
    let tail: Vec<S> = (k..a.rows()).map(|i| a[(i, j)]).collect();
    norm(&tail)
}

/// Applies the Householder reflection that zeroes column `k` below the diagonal.
fn reflect<S: Scalar>(a: &mut DenseMatrix<S>, k: usize, col_norm: S::Real) {
    let rows = a.rows();
    let alpha = -a[(k, k)].phase().scale(col_norm);
    let mut v: Vec<S> = (k..rows).map(|i| a[(i, k)]).collect();
    v[0] -= alpha;
    let vv = crate::scalar::norm_sq(&v);
    if vv == S::Real::zero() {
        return;
    }
    let two = real::<S::Real>(2.0);
    for j in k + 1..a.cols() {
        let mut dot = S::zero();
        for (t, i) in (k..rows).enumerate() {
            dot += v[t].conj() * a[(i, j)];
        }
        let f = dot.scale(two / vv);
        for (t, i) in (k..rows).enumerate() {
            let vt = v[t];
            a[(i, j)] -= vt * f;
        }
    }
    a[(k, k)] = alpha;
    for i in k + 1..rows {
        a[(i, k)] = S::zero();
    }
}
