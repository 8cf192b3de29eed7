//! Built-in matrices, addressable by name from the command line.

use crate::numerics::{Mode, Scalar, SymMatrix, TolerancePolicy};

pub const NAMES: [&str; 5] = ["example-x", "example-xbar", "horn", "identity-3", "zero-3"];

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<SymMatrix> {
    match name {
        "example-x" => Some(example_x()),
        "example-xbar" => Some(example_xbar()),
        "horn" => Some(horn()),
        "identity-3" => Some(SymMatrix::identity(3, Mode::Exact)),
        "zero-3" => Some(SymMatrix::zeros(3, Mode::Exact)),
        _ => None,
    }
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, SymMatrix)> {
    NAMES
        .iter()
        .map(|&name| (name, by_name(name).expect("known fixture")))
        .collect()
}

/// 0/1 matrix whose minimal zeros are `e1..e4` with graph edges (1,2), (3,4).
pub fn example_x() -> SymMatrix {
    SymMatrix::from_integers(&[
        vec![0, 0, 1, 1, 1],
        vec![0, 0, 1, 1, 1],
        vec![1, 1, 0, 0, 1],
        vec![1, 1, 0, 0, 1],
        vec![1, 1, 1, 1, 1],
    ])
    .expect("valid fixture")
}

/// The Horn matrix.
pub fn horn() -> SymMatrix {
    SymMatrix::from_integers(&[
        vec![1, -1, 1, 1, -1],
        vec![-1, 1, -1, 1, 1],
        vec![1, -1, 1, -1, 1],
        vec![1, 1, -1, 1, -1],
        vec![-1, 1, 1, -1, 1],
    ])
    .expect("valid fixture")
}

/// Horn matrix plus a nonnegative perturbation; same minimal zeros graph as
/// [`example_x`].
pub fn example_xbar() -> SymMatrix {
    // Entries doubled so they are integers; halved below.
    let doubled: [[i64; 5]; 5] = [
        [2, -2, 2, 2, -2],
        [-2, 2, -2, 2, 3],
        [2, -2, 2, -1, 3],
        [2, 2, -1, 2, -2],
        [-2, 3, 3, -2, 2],
    ];
    let rows = doubled
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| Scalar::ratio(Mode::Exact, v, 2))
                .collect()
        })
        .collect();
    SymMatrix::from_rows(rows, TolerancePolicy::default()).expect("valid fixture")
}
