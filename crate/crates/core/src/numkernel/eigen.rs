use num_traits::{Float, One, Zero};

use super::hermitian::{spectral_scale, HermitianOperator};
use super::matrix::{DenseMatrix, PlaneUnitary};
use crate::error::{Error, Result};
use crate::scalar::{real, Real, Scalar};
use crate::tol::Tolerances;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<S: Scalar> {
    pub values: Vec<S::Real>,
    pub vectors: DenseMatrix<S>,
}

impl<S: Scalar> EigenDecomposition<S> {
    pub fn min(&self) -> S::Real {
        self.values.first().copied().unwrap_or_else(S::Real::zero)
    }

    pub fn max(&self) -> S::Real {
        self.values.last().copied().unwrap_or_else(S::Real::zero)
    }

    /// `V Λ V*`.
    pub fn reconstruct(&self) -> HermitianOperator<S> {
        HermitianOperator::from_spectral(&self.values, &self.vectors)
    }

    /// `V f(Λ) V*`.
    pub fn map(&self, f: impl Fn(S::Real) -> S::Real) -> HermitianOperator<S> {
        let mapped: Vec<_> = self.values.iter().map(|&v| f(v)).collect();
        HermitianOperator::from_spectral(&mapped, &self.vectors)
    }
}

/// Cyclic Jacobi eigensolver for dense Hermitian operators.
///
/// Each rotation first removes the phase of the pivot entry with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation, so the real
/// and complex cases share one code path. Sweeps run in row-major order over
/// the strict upper triangle until every off-diagonal modulus is at most
/// `jacobi_offdiag · ‖H‖_F`.
///
/// Eigenvalues come back ascending (stable with respect to the diagonal
/// position on ties). Each eigenvector is rotated so that its first
/// component of modulus above `phase_threshold` is real and positive.
pub fn hermitian_eigen<S: Scalar>(
    h: &HermitianOperator<S>,
    tol: &Tolerances,
) -> Result<EigenDecomposition<S>> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = DenseMatrix::<S>::identity(n);
    let threshold = Tolerances::get::<S::Real>(tol.jacobi_offdiag) * a.frobenius_norm();
    let two = real::<S::Real>(2.0);

    let mut converged = false;
    for sweep in 0..=tol.jacobi_max_sweeps {
        if max_off_diagonal(&a) <= threshold {
            converged = true;
            break;
        }
        if sweep == tol.jacobi_max_sweeps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.modulus();
                if r <= threshold {
                    continue;
                }
                let u = apq.phase();
                let app = a[(p, p)].re();
                let aqq = a[(q, q)].re();
                let theta = (aqq - app) / (two * r);
                let sign = if theta >= S::Real::zero() {
                    S::Real::one()
                } else {
                    -S::Real::one()
                };
                let t = sign / (theta.abs() + (theta * theta + S::Real::one()).sqrt());
                let c = (t * t + S::Real::one()).sqrt().recip();
                let s = t * c;
                let w = PlaneUnitary {
                    p,
                    q,
                    pp: S::from_real(c),
                    pq: S::from_real(s),
                    qp: u.conj().scale(-s),
                    qq: u.conj().scale(c),
                };
                a.congruence(&w);
                a[(p, q)] = S::zero();
                a[(q, p)] = S::zero();
                a[(p, p)] = S::from_real(app - t * r);
                a[(q, q)] = S::from_real(aqq + t * r);
                v.right_multiply(&w);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: tol.jacobi_max_sweeps,
        });
    }

    let diag: Vec<S::Real> = (0..n).map(|i| a[(i, i)].re()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<S::Real> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = v.select_columns(&order);
    fix_phases(&mut vectors, Tolerances::get(tol.phase_threshold));
    Ok(EigenDecomposition { values, vectors })
}

fn max_off_diagonal<S: Scalar>(a: &DenseMatrix<S>) -> S::Real {
    let n = a.rows();
    let mut m = S::Real::zero();
    for i in 0..n {
        for j in i + 1..n {
            m = m.max(a[(i, j)].modulus());
        }
    }
    m
}

fn fix_phases<S: Scalar>(vectors: &mut DenseMatrix<S>, threshold: S::Real) {
    let n = vectors.rows();
    for j in 0..vectors.cols() {
        let Some(lead) = (0..n)
            .map(|i| vectors[(i, j)])
            .find(|x| x.modulus() > threshold)
        else {
            continue;
        };
        let rot = lead.phase().conj();
        for i in 0..n {
            vectors[(i, j)] *= rot;
        }
        // make the leading component exactly real
        for i in 0..n {
            let x = vectors[(i, j)];
            if x.modulus() > threshold {
                vectors[(i, j)] = S::from_real(x.re());
                break;
            }
        }
    }
}

/// Which power of a positive operator to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Power {
    Inverse,
    InverseSqrt,
    Sqrt,
}

impl Power {
    pub fn exponent(self) -> f64 {
        match self {
            Power::Inverse => -1.0,
            Power::InverseSqrt => -0.5,
            Power::Sqrt => 0.5,
        }
    }
}

/// `V λᵖ V*` for `p ∈ {-1, -1/2, 1/2}`.
///
/// Negative powers require `λ_min > definiteness · λ_max`. The square root
/// accepts eigenvalues down to `-definiteness · λ_max` and clamps them to zero.
pub fn operator_power<S: Scalar>(
    h: &HermitianOperator<S>,
    power: Power,
    tol: &Tolerances,
) -> Result<HermitianOperator<S>> {
    let eig = hermitian_eigen(h, tol)?;
    let rel: S::Real = Tolerances::get(tol.definiteness);
    let scale = spectral_scale(&eig.values);
    let (lo, hi) = (eig.min(), eig.max());
    match power {
        Power::Inverse | Power::InverseSqrt => {
            if !(hi > S::Real::zero() && lo > rel * hi) {
                let ratio = if hi > S::Real::zero() {
                    lo / hi
                } else {
                    S::Real::zero()
                };
                return Err(Error::SingularOperator {
                    ratio: ratio.to_f64_lossy(),
                });
            }
        }
        Power::Sqrt => {
            if lo < -rel * scale {
                return Err(Error::IndefiniteOperator {
                    eigenvalue: lo.to_f64_lossy(),
                });
            }
        }
    }
    Ok(eig.map(|l| match power {
        Power::Inverse => l.recip(),
        Power::InverseSqrt => l.sqrt().recip(),
        Power::Sqrt => l.max(S::Real::zero()).sqrt(),
    }))
}

/// Spectral condition number `‖T‖·‖T⁻¹‖`, from the eigenvalues of `T*T`.
pub fn condition_number<S: Scalar>(t: &DenseMatrix<S>, tol: &Tolerances) -> Result<S::Real> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch {
            expected: t.rows(),
            found: t.cols(),
        });
    }
    let gram = HermitianOperator::symmetrized(t.adjoint().mul(t)?);
    let eig = hermitian_eigen(&gram, tol)?;
    let (lo, hi) = (eig.min(), eig.max());
    if lo.is_nan() || lo <= S::Real::zero() || super::rank(t, tol.rank) < t.rows() {
        let ratio = if hi > S::Real::zero() {
            lo / hi
        } else {
            S::Real::zero()
        };
        return Err(Error::SingularOperator {
            ratio: ratio.to_f64_lossy(),
        });
    }
    Ok((hi / lo).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn op(rows: &[Vec<f64>]) -> HermitianOperator<f64> {
        HermitianOperator::new(DenseMatrix::from_rows(rows).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn diagonal_input_gives_permuted_standard_basis() {
        let e = hermitian_eigen(
            &HermitianOperator::<f64>::from_diagonal(&[3.0, 1.0, 2.0]),
            &tol(),
        )
        .unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let expected = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(e.vectors, expected);
    }

    #[test]
    fn scalar_operator() {
        let e = hermitian_eigen(
            &HermitianOperator::<f64>::from_diagonal(&[2.0, 2.0]),
            &tol(),
        )
        .unwrap();
        assert_eq!(e.values, vec![2.0, 2.0]);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        // λ² − 4λ + 3 = 0
        let e = hermitian_eigen(&op(&[vec![2.0, 1.0], vec![1.0, 2.0]]), &tol()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // (1, -1)/√2 and (1, 1)/√2 with positive leading component
        assert!((e.vectors[(0, 0)] - s).abs() < 1e-14);
        assert!((e.vectors[(1, 0)] + s).abs() < 1e-14);
        assert!((e.vectors[(0, 1)] - s).abs() < 1e-14);
        assert!((e.vectors[(1, 1)] - s).abs() < 1e-14);
    }

    #[test]
    fn complex_phase_convention() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let m = DenseMatrix::from_rows(&[vec![2.0 * one, i], vec![-i, 2.0 * one]]).unwrap();
        let h = HermitianOperator::new(m, &tol()).unwrap();
        let e = hermitian_eigen(&h, &tol()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 3.0).abs() < 1e-14);
        for j in 0..2 {
            assert_eq!(e.vectors[(0, j)].im, 0.0);
            assert!(e.vectors[(0, j)].re > 0.0);
        }
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn zero_operator() {
        let e = hermitian_eigen(&HermitianOperator::<f64>::zeros(3), &tol()).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        assert_eq!(e.vectors, DenseMatrix::identity(3));
    }

    #[test]
    fn powers_of_diagonal_operators() {
        let id = HermitianOperator::<f64>::identity(3);
        let r = operator_power(&id, Power::InverseSqrt, &tol()).unwrap();
        assert!(r.max_abs_diff(&id) < 1e-15);

        let d = HermitianOperator::<f64>::from_diagonal(&[4.0, 1.0]);
        let r = operator_power(&d, Power::InverseSqrt, &tol()).unwrap();
        assert!(r.max_abs_diff(&HermitianOperator::from_diagonal(&[0.5, 1.0])) < 1e-15);
    }

    #[test]
    fn negative_power_of_singular_operator_fails() {
        let d = HermitianOperator::<f64>::from_diagonal(&[1.0, 0.0]);
        assert!(matches!(
            operator_power(&d, Power::Inverse, &tol()),
            Err(Error::SingularOperator { .. })
        ));
        // the square root of a PSD operator is fine
        let r = operator_power(&d, Power::Sqrt, &tol()).unwrap();
        assert!(r.max_abs_diff(&d) < 1e-15);
        let neg = HermitianOperator::<f64>::from_diagonal(&[1.0, -0.5]);
        assert!(matches!(
            operator_power(&neg, Power::Sqrt, &tol()),
            Err(Error::IndefiniteOperator { .. })
        ));
    }

    #[test]
    fn condition_number_of_diagonal() {
        let t = DenseMatrix::<f64>::from_diagonal(&[3.0, -0.5]);
        assert!((condition_number(&t, &tol()).unwrap() - 6.0).abs() < 1e-12);
        let s = DenseMatrix::<f64>::from_diagonal(&[3.0, 0.0]);
        assert!(condition_number(&s, &tol()).is_err());
    }
}
