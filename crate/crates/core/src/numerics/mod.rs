//! Scalars, symmetric matrices and the small dense linear-algebra kernel.
//!
//! Every operation dispatches on the matrix mode. Exact mode works over the
//! rationals (fraction-free elimination for rank and determinant, rational
//! Gauss-Jordan for kernels and solves). Float mode goes through a symmetric
//! eigendecomposition: for a symmetric matrix the singular values are the
//! absolute eigenvalues, so rank and kernel are read off the spectrum.

mod exact;
mod matrix;
mod scalar;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;

pub use matrix::{SymMatrix, TolerancePolicy};
pub use scalar::{l1_norm, sum, Mode, Scalar};

use crate::error::{Error, Result};

fn exact_rows(x: &SymMatrix) -> Vec<Vec<BigRational>> {
    (0..x.dim())
        .map(|k| {
            x.row(k)
                .iter()
                .map(|v| v.as_exact().expect("exact-mode matrix").clone())
                .collect()
        })
        .collect()
}

pub(crate) fn to_dmatrix(x: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(x.dim(), x.dim(), |k, q| x.get(k, q).to_f64())
}

/// Eigenvalues and eigenvectors (as columns) of a symmetric float matrix.
pub(crate) fn symmetric_eigen(x: &SymMatrix) -> SymmetricEigen<f64, nalgebra::Dyn> {
    SymmetricEigen::new(to_dmatrix(x))
}

fn largest_abs(values: &DVector<f64>) -> f64 {
    values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Rank over the rationals (exact mode) or the number of singular values
/// above `rank_eps` times the largest one (float mode).
pub fn rank(x: &SymMatrix) -> usize {
    match x.mode() {
        Mode::Exact => exact::rank(&exact_rows(x)),
        Mode::Float => {
            let eig = symmetric_eigen(x);
            let top = largest_abs(&eig.eigenvalues);
            if top == 0.0 {
                return 0;
            }
            let cut = x.policy().rank_eps * top;
            eig.eigenvalues.iter().filter(|v| v.abs() > cut).count()
        }
    }
}

/// A basis of the null space of `x`.
///
/// Each basis vector is canonicalized: first nonzero component positive and
/// l1-norm one.
pub fn kernel_basis(x: &SymMatrix) -> Vec<Vec<Scalar>> {
    match x.mode() {
        Mode::Exact => exact::kernel_basis(&exact_rows(x))
            .into_iter()
            .map(|mut v| {
                exact::canonicalize(&mut v);
                v.into_iter().map(Scalar::Exact).collect()
            })
            .collect(),
        Mode::Float => {
            let eig = symmetric_eigen(x);
            let top = largest_abs(&eig.eigenvalues);
            let cut = x.policy().rank_eps * top;
            let zero_eps = x.policy().zero_eps;
            eig.eigenvalues
                .iter()
                .enumerate()
                .filter(|(_, v)| top == 0.0 || v.abs() <= cut)
                .map(|(i, _)| {
                    let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
                    canonicalize_f64(&mut v, zero_eps);
                    v.into_iter().map(Scalar::Float).collect()
                })
                .collect()
        }
    }
}

fn canonicalize_f64(v: &mut [f64], zero_eps: f64) {
    let norm: f64 = v.iter().map(|x| x.abs()).sum();
    if norm == 0.0 {
        return;
    }
    let first = v
        .iter()
        .copied()
        .find(|x| x.abs() > zero_eps * norm)
        .unwrap_or(1.0);
    let scale = if first < 0.0 { -norm } else { norm };
    for x in v.iter_mut() {
        *x /= scale;
    }
}

/// Determinant. Exact in exact mode; LU-based in float mode (use
/// [`is_singular`] for the float-mode zero decision).
pub fn determinant(x: &SymMatrix) -> Scalar {
    match x.mode() {
        Mode::Exact => Scalar::Exact(exact::determinant(&exact_rows(x))),
        Mode::Float => Scalar::Float(to_dmatrix(x).determinant()),
    }
}

/// Whether the determinant is zero per the mode's zero test.
///
/// Float mode compares the smallest absolute eigenvalue with
/// `zero_eps · max(1, largest absolute eigenvalue)`, which is the
/// determinant test on a scale-free quantity.
pub fn is_singular(x: &SymMatrix) -> bool {
    match x.mode() {
        Mode::Exact => determinant(x).is_exact_zero(),
        Mode::Float => {
            let eig = symmetric_eigen(x);
            let top = largest_abs(&eig.eigenvalues);
            let bottom = eig
                .eigenvalues
                .iter()
                .fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
            bottom <= x.policy().zero_eps * top.max(1.0)
        }
    }
}

/// The unique solution of `a x = b`.
pub fn solve(a: &SymMatrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    if b.len() != a.dim() {
        return Err(Error::InvalidArgument(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.dim()
        )));
    }
    match a.mode() {
        Mode::Exact => {
            let rhs: Vec<BigRational> = b
                .iter()
                .map(|v| match v.to_mode(Mode::Exact) {
                    Scalar::Exact(r) => r,
                    Scalar::Float(_) => unreachable!(),
                })
                .collect();
            exact::solve(&exact_rows(a), &rhs)
                .map(|x| x.into_iter().map(Scalar::Exact).collect())
                .ok_or(Error::SingularSystem)
        }
        Mode::Float => {
            if is_singular(a) {
                return Err(Error::SingularSystem);
            }
            let rhs = DVector::from_iterator(b.len(), b.iter().map(Scalar::to_f64));
            to_dmatrix(a)
                .lu()
                .solve(&rhs)
                .map(|x| x.iter().map(|&v| Scalar::Float(v)).collect())
                .ok_or(Error::SingularSystem)
        }
    }
}
