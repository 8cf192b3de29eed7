//! Test-only reference implementations, written independently of the
//! library's linear algebra and clique search.

#![allow(dead_code, clippy::needless_range_loop)]

use copzero::graphgen::{matrix_from_graph, PlainGraph};
use copzero::{Scalar, SymMatrix};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED + offset)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn exact_rows(x: &SymMatrix) -> Vec<Vec<BigRational>> {
    x.rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match v {
                    Scalar::Exact(r) => r,
                    Scalar::Float(_) => panic!("oracle needs an exact matrix"),
                })
                .collect()
        })
        .collect()
}

pub fn submatrix(a: &[Vec<BigRational>], idx: &[usize]) -> Vec<Vec<BigRational>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect())
        .collect()
}

/// Reduced row echelon form by plain Gauss-Jordan; returns pivot columns.
pub fn rref(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let delta = &f * &a[r][k];
                    a[i][k] = &a[i][k] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<BigRational>]) -> usize {
    rref(&mut a.to_vec()).len()
}

pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for k in c..n {
                let delta = &f * &m[c][k];
                m[i][k] = &m[i][k] - delta;
            }
        }
    }
    det
}

/// Kernel vector of a corank-one matrix, scaled to be nonnegative with unit
/// ℓ1 norm, provided all entries share a strict sign.
pub fn positive_kernel_vector(a: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::from_integer(1.into());
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    let positive = v.iter().all(|x| x.is_positive());
    let negative = v.iter().all(|x| x.is_negative());
    if !positive && !negative {
        return None;
    }
    let total: BigRational = v.iter().map(|x| x.abs()).sum();
    Some(v.iter().map(|x| x.abs() / &total).collect())
}

/// Every nonempty index set whose principal submatrix has corank one and a
/// strictly positive kernel vector, without any pruning. Sorted by size,
/// then bit mask. Returned as (mask, normalized vector on the support).
pub fn brute_force_zeros(x: &SymMatrix) -> Vec<(u32, Vec<BigRational>)> {
    let a = exact_rows(x);
    let p = a.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << p) {
        let idx: Vec<usize> = (0..p).filter(|k| mask >> k & 1 == 1).collect();
        let sub = submatrix(&a, &idx);
        if let Some(v) = positive_kernel_vector(&sub) {
            out.push((mask, v));
        }
    }
    out.sort_by_key(|(mask, _)| (mask.count_ones(), *mask));
    out
}

/// Maximal cliques by checking every vertex subset. Sorted by size
/// descending, then lexicographically.
pub fn brute_force_cliques(n: usize, has_edge: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    assert!(n <= 16, "brute force is exponential");
    let is_clique = |mask: u32| {
        (0..n)
            .all(|a| mask >> a & 1 == 0 || (a + 1..n).all(|b| mask >> b & 1 == 0 || has_edge(a, b)))
    };
    let cliques: Vec<u32> = (1u32..(1u32 << n)).filter(|&m| is_clique(m)).collect();
    let mut maximal: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|&&m| (0..n).all(|v| m >> v & 1 == 1 || !is_clique(m | 1 << v)))
        .map(|&m| (0..n).filter(|v| m >> v & 1 == 1).collect())
        .collect();
    maximal.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    maximal
}

/// Seeded Erdős–Rényi graphs with `n` drawn from `sizes` and edge
/// probability cycling through 0.2, 0.5, 0.8.
pub fn random_graphs(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    offset: u64,
) -> Vec<PlainGraph> {
    use rand::Rng;
    let mut rng = rng(offset);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            let prob = [0.2, 0.5, 0.8][i % 3];
            PlainGraph::random(n, prob, &mut rng)
        })
        .collect()
}

pub fn random_graph_matrices(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    offset: u64,
) -> Vec<SymMatrix> {
    random_graphs(count, sizes, offset)
        .iter()
        .map(|g| matrix_from_graph(g).expect("small graph"))
        .collect()
}
