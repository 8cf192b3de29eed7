//! Exact kernels over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Clears denominators row by row. Returns the integer rows and the positive
/// factor each row was multiplied by.
pub(crate) fn integer_rows(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    rows.iter()
        .map(|row| {
            let scale = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints = row
                .iter()
                .map(|v| v.numer() * (&scale / v.denom()))
                .collect();
            (ints, scale)
        })
        .unzip()
}

/// Fraction-free (Bareiss) elimination to echelon form.
///
/// Returns the rank and, for square input, the determinant of the integer
/// matrix. Every intermediate division is exact.
pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        if pivot_row != rank {
            m.swap(pivot_row, rank);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_line = &head[rank];
        let pivot = pivot_line[col].clone();
        for line in tail.iter_mut() {
            let factor = line[col].clone();
            for c in col + 1..cols {
                let value = &pivot * &line[c] - &factor * &pivot_line[c];
                debug_assert!((&value % &prev).is_zero(), "inexact Bareiss step");
                line[c] = value / &prev;
            }
            line[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        col += 1;
    }
    let det = if rows == cols && rank == rows {
        if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    bareiss(integer_rows(rows).0).0
}

pub(crate) fn determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let (ints, scales) = integer_rows(rows);
    let (_, det) = bareiss(ints);
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    BigRational::new(det, scale)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, w) in m[i][c..].iter_mut().zip(&pivot_row[c..]) {
                    *v -= &factor * w;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the null space, one vector per free column.
pub(crate) fn kernel_basis(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut line = row.clone();
            line.push(rhs.clone());
            line
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.last() == Some(&n) {
        return None;
    }
    Some(aug.into_iter().map(|line| line[n].clone()).collect())
}

/// Scales `v` so that its first nonzero component is positive and its
/// l1-norm is one. Zero vectors are returned unchanged.
pub(crate) fn canonicalize(v: &mut [BigRational]) {
    let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return;
    };
    let norm = v.iter().fold(BigRational::zero(), |acc, x| acc + x.abs());
    let scale = if first.is_negative() { -norm } else { norm };
    for x in v.iter_mut() {
        *x = &*x / &scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v, 1)).collect())
            .collect()
    }

    #[test]
    fn bareiss_rank_with_skipped_columns() {
        let m = int_rows(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m), q(0, 1));
    }

    #[test]
    fn determinant_with_fractions_and_swaps() {
        let m = vec![vec![q(0, 1), q(1, 2)], vec![q(1, 3), q(1, 1)]];
        assert_eq!(determinant(&m), q(-1, 6));
        let m = int_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(determinant(&m), q(4, 1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = int_rows(&[&[1, -1], &[-1, 1]]);
        let mut k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        canonicalize(&mut k[0]);
        assert_eq!(k[0], vec![q(1, 2), q(1, 2)]);

        let a = int_rows(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[q(3, 1), q(4, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(1, 1)]);
        assert!(solve(&m, &[q(1, 1), q(0, 1)]).is_none());
    }
}
