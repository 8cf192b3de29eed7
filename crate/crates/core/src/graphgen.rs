//! Realizing an arbitrary graph as a minimal zeros graph.
//!
//! For a graph on `n` vertices put `Y_ii = 0`, `Y_ij = 0` on edges and
//! `Y_ij = 1` elsewhere. `Y` is nonnegative, hence copositive; its minimal
//! zeros are exactly the basis vectors `e_i`, and `e_i'Ye_j = Y_ij` vanishes
//! exactly on the edges, so the minimal zeros graph of `Y` is the input
//! graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::minimal_zeros::enumerate_minimal_zeros;
use crate::numerics::{Mode, Scalar, SymMatrix};
use crate::zerograph::{build_graph, extended_support_set};

/// An undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl PlainGraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!(
                    "self-loop at vertex {}",
                    a + 1
                )));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(PlainGraph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        PlainGraph::new(n, edges).expect("valid complete graph")
    }

    /// Each of the `n(n-1)/2` possible edges independently with probability
    /// `prob`.
    pub fn random<R: Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> Self {
        let mut edges = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(prob) {
                    edges.insert((a, b));
                }
            }
        }
        PlainGraph { n, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Parses an edge list: a first line `n <count>`, then one `i j` pair
    /// per line with 1-based vertices. Blank lines and `#` comments are
    /// ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, line)| (no + 1, line.split('#').next().unwrap_or("").trim()))
            .filter(|(_, line)| !line.is_empty());
        let parse_err = |row: usize, column: usize, message: String| Error::Parse {
            row,
            column,
            message,
        };

        let (row, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "missing `n <count>` header".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("n") {
            return Err(parse_err(row, 1, "header must be `n <count>`".into()));
        }
        let n: usize = fields
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_err(row, 2, "vertex count must be a positive integer".into()))?;
        if n == 0 {
            return Err(parse_err(
                row,
                2,
                "vertex count must be a positive integer".into(),
            ));
        }
        if fields.next().is_some() {
            return Err(parse_err(
                row,
                3,
                "unexpected token after vertex count".into(),
            ));
        }

        let mut edges = Vec::new();
        for (row, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(parse_err(
                    row,
                    1,
                    format!("expected `i j`, found {} tokens", tokens.len()),
                ));
            }
            let mut pair = [0usize; 2];
            for (column, (slot, token)) in pair.iter_mut().zip(&tokens).enumerate() {
                let v: usize = token.parse().map_err(|_| {
                    parse_err(row, column + 1, format!("`{token}` is not a vertex number"))
                })?;
                if v == 0 || v > n {
                    return Err(parse_err(
                        row,
                        column + 1,
                        format!("vertex {v} outside 1..={n}"),
                    ));
                }
                *slot = v - 1;
            }
            if pair[0] == pair[1] {
                return Err(parse_err(
                    row,
                    1,
                    format!("self-loop at vertex {}", pair[0] + 1),
                ));
            }
            edges.push((pair[0], pair[1]));
        }
        PlainGraph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", a + 1, b + 1);
        }
        out
    }
}

/// The 0/1 matrix whose minimal zeros graph is `g`.
pub fn matrix_from_graph(g: &PlainGraph) -> Result<SymMatrix> {
    if g.n == 0 || g.n > SymMatrix::MAX_DIM {
        return Err(Error::ResourceLimit {
            what: "graph order",
            required: g.n as u128,
            limit: SymMatrix::MAX_DIM as u128,
        });
    }
    let rows = (0..g.n)
        .map(|i| {
            (0..g.n)
                .map(|j| {
                    let zero = i == j || g.has_edge(i, j);
                    Scalar::from_i64(Mode::Exact, if zero { 0 } else { 1 })
                })
                .collect()
        })
        .collect();
    SymMatrix::from_rows(rows, Default::default())
}

/// Builds `Y` from `g`, recomputes its minimal zeros graph and compares.
/// Also requires the minimal zeros to be exactly `e_1, ..., e_n`.
pub fn round_trip(g: &PlainGraph) -> Result<bool> {
    let y = matrix_from_graph(g)?;
    let zeros = enumerate_minimal_zeros(&y);
    let basis = zeros.len() == g.n
        && zeros.iter().enumerate().all(|(i, z)| {
            z.tau
                .iter()
                .enumerate()
                .all(|(k, v)| *v == Scalar::from_i64(Mode::Exact, i64::from(k == i)))
        });
    if !basis {
        return Ok(false);
    }
    let realized = build_graph(&extended_support_set(&y, &zeros));
    Ok(realized.order() == g.n && realized.edges() == g.edges())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_for_example_graph() {
        let g = PlainGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let y = matrix_from_graph(&g).unwrap();
        let expected = SymMatrix::from_integers(&[
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(y, expected);
    }

    #[test]
    fn trivial_matrices() {
        let single = PlainGraph::new(1, []).unwrap();
        assert_eq!(
            matrix_from_graph(&single).unwrap(),
            SymMatrix::zeros(1, Mode::Exact)
        );
        let k3 = PlainGraph::complete(3);
        assert_eq!(
            matrix_from_graph(&k3).unwrap(),
            SymMatrix::zeros(3, Mode::Exact)
        );
    }

    #[test]
    fn round_trip_examples() {
        assert!(round_trip(&PlainGraph::new(4, [(0, 1), (2, 3)]).unwrap()).unwrap());
        assert!(round_trip(&PlainGraph::new(3, []).unwrap()).unwrap());
        assert!(round_trip(&PlainGraph::complete(3)).unwrap());
    }

    #[test]
    fn round_trip_random_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for prob in [0.2, 0.5, 0.8] {
                let g = PlainGraph::random(n, prob, &mut rng);
                assert!(round_trip(&g).unwrap(), "{}", g.to_edge_list());
            }
        }
    }

    #[test]
    fn edge_list_parsing() {
        let g = PlainGraph::parse_edge_list("n 4\n1 2\n# comment\n\n3 4  # trailing\n").unwrap();
        assert_eq!(g, PlainGraph::new(4, [(0, 1), (2, 3)]).unwrap());
        assert_eq!(PlainGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);

        assert!(matches!(
            PlainGraph::parse_edge_list("n 3\n1 4\n"),
            Err(Error::Parse {
                row: 2,
                column: 2,
                ..
            })
        ));
        assert!(PlainGraph::parse_edge_list("3\n1 2\n").is_err());
        assert!(PlainGraph::parse_edge_list("n 3\n2 2\n").is_err());
        assert!(PlainGraph::parse_edge_list("n 3\n1 2 3\n").is_err());
        assert!(PlainGraph::parse_edge_list("").is_err());
    }
}
