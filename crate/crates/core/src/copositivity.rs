//! Copositivity checking and the simplex-grid oracle.
//!
//! The check uses the principal-submatrix eigenvector criterion: a
//! symmetric matrix fails to be copositive iff some principal submatrix has
//! an eigenvector with strictly positive entries for a negative eigenvalue.
//! Such an eigenvector is itself a certificate (`v'Xv = λ|v|² < 0`), and a
//! minimal non-copositive principal submatrix has exactly one negative
//! eigenvalue, so scanning the eigenpairs of every principal submatrix is
//! both sound and complete.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{symmetric_eigen, Mode, Scalar, SymMatrix};
use crate::support::SupportSet;

/// Default bound on `p` for [`check_copositive`] (`2^p` submatrices).
pub const DEFAULT_DIM_LIMIT: usize = 16;

/// Maximum number of grid points visited by [`grid_min`].
pub const GRID_POINT_CAP: u128 = 2_000_000;

/// Grid denominator used to settle borderline eigen decisions in exact mode.
pub const BORDERLINE_GRID: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PrincipalEigen,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CopositivityVerdict {
    pub is_copositive: bool,
    /// `t >= 0`, `‖t‖₁ = 1`, `t'Xt < 0`; present iff not copositive.
    pub witness: Option<Vec<Scalar>>,
    pub method: Method,
}

impl CopositivityVerdict {
    fn copositive(method: Method) -> Self {
        CopositivityVerdict {
            is_copositive: true,
            witness: None,
            method,
        }
    }

    fn refuted(witness: Vec<Scalar>, method: Method) -> Self {
        CopositivityVerdict {
            is_copositive: false,
            witness: Some(witness),
            method,
        }
    }
}

pub fn check_copositive(x: &SymMatrix) -> Result<CopositivityVerdict> {
    check_copositive_with_limit(x, DEFAULT_DIM_LIMIT)
}

pub fn check_copositive_with_limit(x: &SymMatrix, dim_limit: usize) -> Result<CopositivityVerdict> {
    let p = x.dim();
    if p > dim_limit {
        return Err(Error::ResourceLimit {
            what: "principal submatrices for copositivity check",
            required: 1u128 << p,
            limit: 1u128 << dim_limit,
        });
    }
    let float = x.to_mode(Mode::Float);
    let positivity_eps = x.policy().positivity_eps;
    let mut borderline = false;

    for bits in 1u64..(1u64 << p) {
        let subset = SupportSet::from_bits(bits as u32);
        let sub = float
            .principal_submatrix(subset)
            .expect("nonempty subset within range");
        let eig = symmetric_eigen(&sub);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda >= 0.0 {
                continue;
            }
            let column = eig.eigenvectors.column(i);
            let sign = if column.sum() < 0.0 { -1.0 } else { 1.0 };
            let v: Vec<f64> = column.iter().map(|c| sign * c).collect();
            if !v.iter().all(|&c| c > positivity_eps) {
                continue;
            }
            match candidate_witness(x, subset, &v) {
                Some(w) => return Ok(CopositivityVerdict::refuted(w, Method::PrincipalEigen)),
                None => borderline = true,
            }
        }
    }

    if borderline && x.mode() == Mode::Exact {
        let grid = grid_min(x, BORDERLINE_GRID)?;
        if grid.value.is_negative_within(0.0) {
            return Ok(CopositivityVerdict::refuted(grid.argmin, Method::Grid));
        }
        return Ok(CopositivityVerdict::copositive(Method::Grid));
    }
    Ok(CopositivityVerdict::copositive(Method::PrincipalEigen))
}

/// Pads a positive eigenvector of `X(subset)` to length `p`, normalizes it
/// onto the simplex and keeps it only if the quadratic form is strictly
/// negative under the matrix's own arithmetic.
fn candidate_witness(x: &SymMatrix, subset: SupportSet, v: &[f64]) -> Option<Vec<Scalar>> {
    let p = x.dim();
    let mode = x.mode();
    let mut padded = vec![Scalar::zero(mode); p];
    for (k, &c) in subset.iter().zip(v) {
        padded[k] = match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_float(c)?),
            Mode::Float => Scalar::Float(c),
        };
    }
    let total = crate::numerics::sum(mode, &padded);
    let witness: Vec<Scalar> = padded.iter().map(|c| c / &total).collect();
    let value = x.quadratic_form(&witness);
    x.is_clearly_negative(&value).then_some(witness)
}

/// Minimum of `t'Xt` over a simplex grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMin {
    pub value: Scalar,
    pub argmin: Vec<Scalar>,
}

/// Number of points `m/N` with `m ∈ ℕ^p`, `‖m‖₁ = N`.
pub fn grid_point_count(p: usize, n: u32) -> u128 {
    // C(n + p - 1, p - 1)
    let (top, k) = (n as u128 + p as u128 - 1, p as u128 - 1);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(top - i) / (i + 1))
}

pub(crate) fn ensure_grid_within_cap(p: usize, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "grid denominator must be at least 1".into(),
        ));
    }
    let count = grid_point_count(p, n);
    if count > GRID_POINT_CAP {
        return Err(Error::ResourceLimit {
            what: "simplex grid points",
            required: count,
            limit: GRID_POINT_CAP,
        });
    }
    Ok(())
}

/// Minimizes `t'Xt` over all grid points `t = m/N`.
///
/// Points are visited in decreasing lexicographic order of `m`, starting at
/// `N·e1`; the first point attaining the minimum is reported.
pub fn grid_min(x: &SymMatrix, n: u32) -> Result<GridMin> {
    let p = x.dim();
    ensure_grid_within_cap(p, n)?;
    let mode = x.mode();
    let scale = Scalar::from_i64(mode, i64::from(n) * i64::from(n));
    let mut best: Option<(Scalar, Vec<u32>)> = None;
    for m in SimplexGrid::new(p, n) {
        let as_scalars: Vec<Scalar> = m
            .iter()
            .map(|&c| Scalar::from_i64(mode, c.into()))
            .collect();
        let value = x.quadratic_form(&as_scalars);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, m));
        }
    }
    let (value, m) = best.expect("grid is never empty");
    let denom = Scalar::from_i64(mode, n.into());
    Ok(GridMin {
        value: value / &scale,
        argmin: m
            .iter()
            .map(|&c| Scalar::from_i64(mode, c.into()) / &denom)
            .collect(),
    })
}

/// Compositions `m ∈ ℕ^p` with `‖m‖₁ = N`, in decreasing lexicographic order.
#[derive(Clone, Debug)]
pub struct SimplexGrid {
    current: Option<Vec<u32>>,
}

impl SimplexGrid {
    pub fn new(p: usize, n: u32) -> Self {
        assert!(p >= 1, "simplex dimension must be positive");
        let mut first = vec![0; p];
        first[0] = n;
        SimplexGrid {
            current: Some(first),
        }
    }
}

impl Iterator for SimplexGrid {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let p = out.len();
        // Move one unit from the last nonzero position before the tail
        // into the next position, together with the whole tail.
        if let Some(i) = (0..p.saturating_sub(1)).rev().find(|&i| out[i] > 0) {
            let mut next = out.clone();
            let tail = next[p - 1];
            next[p - 1] = 0;
            next[i] -= 1;
            next[i + 1] = tail + 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(Mode::Exact, n, d)
    }

    #[test]
    fn fixtures_are_copositive() {
        for (name, x) in fixtures::all() {
            let verdict = check_copositive(&x).unwrap();
            assert!(verdict.is_copositive, "{name}");
            assert!(verdict.witness.is_none());
            let float = check_copositive(&x.to_mode(Mode::Float)).unwrap();
            assert!(float.is_copositive, "{name} (float)");
        }
    }

    #[test]
    fn diag_one_minus_one_is_refuted_by_e2() {
        let x = SymMatrix::from_integers(&[vec![1, 0], vec![0, -1]]).unwrap();
        let verdict = check_copositive(&x).unwrap();
        assert!(!verdict.is_copositive);
        assert_eq!(verdict.witness.unwrap(), vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn witness_is_valid_on_indefinite_off_diagonal() {
        let x = SymMatrix::from_integers(&[vec![1, -2], vec![-2, 1]]).unwrap();
        for m in [x.clone(), x.to_mode(Mode::Float)] {
            let verdict = check_copositive(&m).unwrap();
            assert!(!verdict.is_copositive);
            let w = verdict.witness.unwrap();
            assert!(w.iter().all(|c| c >= &Scalar::zero(m.mode())));
            assert!(m.is_clearly_negative(&m.quadratic_form(&w)));
        }
    }

    #[test]
    fn dimension_limit() {
        let x = SymMatrix::identity(5, Mode::Exact);
        assert!(matches!(
            check_copositive_with_limit(&x, 4),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn simplex_grid_order_and_count() {
        let pts: Vec<_> = SimplexGrid::new(3, 2).collect();
        assert_eq!(
            pts,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for (p, n) in [(1, 5), (4, 6), (5, 8)] {
            assert_eq!(
                SimplexGrid::new(p, n).count() as u128,
                grid_point_count(p, n)
            );
        }
    }

    #[test]
    fn grid_min_identity_p2_n2() {
        // Grid points (1,0), (1/2,1/2), (0,1) give 1, 1/2, 1.
        let g = grid_min(&SymMatrix::identity(2, Mode::Exact), 2).unwrap();
        assert_eq!(g.value, q(1, 2));
        assert_eq!(g.argmin, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn grid_min_example_x_hits_e1() {
        let g = grid_min(&fixtures::example_x(), 4).unwrap();
        assert!(g.value.is_exact_zero());
        assert_eq!(g.argmin, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn grid_min_zero_matrix() {
        let g = grid_min(&SymMatrix::zeros(3, Mode::Exact), 5).unwrap();
        assert!(g.value.is_exact_zero());
    }

    #[test]
    fn grid_limits() {
        let x = SymMatrix::identity(3, Mode::Exact);
        assert!(matches!(grid_min(&x, 0), Err(Error::InvalidArgument(_))));
        let big = SymMatrix::identity(20, Mode::Float);
        assert!(matches!(
            grid_min(&big, 20),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
