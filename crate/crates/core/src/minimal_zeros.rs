//! Enumeration of the normalized minimal zeros of a copositive matrix.
//!
//! A nonempty index set `P̄` is the support of a minimal zero iff
//!
//! * (A) `rank X(P̄) = |P̄| - 1`, and
//! * (B) the kernel of `X(P̄)` contains a strictly positive vector.
//!
//! (B) is decided through one linear solve: for a pivot `i* ∈ P̄` with
//! `X(P̄ \ i*)` nonsingular, the kernel vector is `(y, 1)` with
//! `y = -X(P̄ \ i*)⁻¹ X(P̄ \ i*, i*)`, and (B) holds iff `y > 0`. A singular
//! `X(P̄ \ i*)` already rules (B) out.
//!
//! Supports are searched by increasing size. Indices with a zero diagonal
//! entry give the minimal zeros `e_k` and are dropped from the search, and
//! any candidate containing an accepted support is skipped, since supports
//! of distinct minimal zeros are never nested.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, l1_norm, Mode, Scalar, SymMatrix};
use crate::support::SupportSet;

/// A normalized minimal zero `τ(j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalZero {
    /// 0-based position `j` in the enumeration order.
    pub index: usize,
    /// `τ ≥ 0`, `‖τ‖₁ = 1`, `τ'Xτ = 0`.
    pub tau: Vec<Scalar>,
    /// Exactly the strictly positive components of `tau`.
    pub support: SupportSet,
}

/// Outcome of the (B) test on one index set.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionBResult {
    pub holds: bool,
    /// `t̄ > 0` on `P̄` with `X(P̄) t̄ = 0` and `‖t̄‖₁ = 1`, listed in ascending
    /// index order of `P̄`. Present iff `holds`.
    pub kernel_vector: Option<Vec<Scalar>>,
    /// Float mode: some component of `y` fell in `(ε/10, ε]` for
    /// `ε = positivity_eps`, so the sign decision was close.
    pub borderline: bool,
}

impl ConditionBResult {
    fn rejected(borderline: bool) -> Self {
        ConditionBResult {
            holds: false,
            kernel_vector: None,
            borderline,
        }
    }

    /// The trivially positive kernel vector `(1)` of a zero `1 × 1` block.
    pub fn singleton(mode: Mode) -> Self {
        ConditionBResult {
            holds: true,
            kernel_vector: Some(vec![Scalar::one(mode)]),
            borderline: false,
        }
    }
}

/// `rank X(P̄) = |P̄| - 1`. False for the empty set.
pub fn check_condition_a(x: &SymMatrix, pbar: SupportSet) -> bool {
    match x.principal_submatrix(pbar) {
        Ok(sub) => numerics::rank(&sub) + 1 == pbar.len(),
        Err(_) => false,
    }
}

/// The (B) test with the smallest index of `P̄` as pivot.
pub fn check_condition_b(x: &SymMatrix, pbar: SupportSet) -> Result<ConditionBResult> {
    let pivot = pbar
        .first()
        .ok_or_else(|| Error::Contract("condition (B) needs a nonempty index set".into()))?;
    check_condition_b_with_pivot(x, pbar, pivot)
}

/// The (B) test with an explicit pivot `i* ∈ P̄`.
///
/// Requires `|P̄| ≥ 2` and condition (A); violations are contract errors.
pub fn check_condition_b_with_pivot(
    x: &SymMatrix,
    pbar: SupportSet,
    pivot: usize,
) -> Result<ConditionBResult> {
    if pbar.len() < 2 {
        return Err(Error::Contract(format!(
            "condition (B) test needs |P̄| ≥ 2, got {pbar}"
        )));
    }
    if !pbar.contains(pivot) {
        return Err(Error::Contract(format!(
            "pivot {} is not in {pbar}",
            pivot + 1
        )));
    }
    if !check_condition_a(x, pbar) {
        return Err(Error::Contract(format!(
            "condition (A) does not hold on {pbar}"
        )));
    }
    Ok(condition_b_unchecked(x, pbar, pivot))
}

fn condition_b_unchecked(x: &SymMatrix, pbar: SupportSet, pivot: usize) -> ConditionBResult {
    let mode = x.mode();
    let rest = pbar.without(pivot);
    let block = x
        .principal_submatrix(rest)
        .expect("pivot removal leaves a nonempty set");
    if numerics::is_singular(&block) {
        return ConditionBResult::rejected(false);
    }
    let column: Vec<Scalar> = rest.iter().map(|k| x.get(k, pivot).clone()).collect();
    let Ok(solution) = numerics::solve(&block, &column) else {
        return ConditionBResult::rejected(false);
    };
    let y: Vec<Scalar> = solution.into_iter().map(|v| -v).collect();

    let eps = x.policy().positivity_eps;
    let borderline = mode == Mode::Float
        && y.iter().any(|v| {
            let v = v.to_f64();
            v > eps / 10.0 && v <= eps
        });
    if !y.iter().all(|v| v.is_positive_within(eps)) {
        return ConditionBResult::rejected(borderline);
    }

    let beta = Scalar::one(mode) + l1_norm(mode, &y);
    let mut y_iter = y.iter();
    let kernel_vector = pbar
        .iter()
        .map(|k| {
            if k == pivot {
                Scalar::one(mode) / &beta
            } else {
                y_iter.next().expect("one y component per non-pivot index") / &beta
            }
        })
        .collect();
    ConditionBResult {
        holds: true,
        kernel_vector: Some(kernel_vector),
        borderline,
    }
}

/// Embeds the kernel vector of a successful (B) test into `ℝ^p`.
///
/// The returned zero has `index` 0; enumeration assigns final indices.
pub fn build_minimal_zero(
    x: &SymMatrix,
    pbar: SupportSet,
    b: &ConditionBResult,
) -> Result<MinimalZero> {
    let kernel = match (&b.kernel_vector, b.holds) {
        (Some(k), true) => k,
        _ => {
            return Err(Error::Contract(format!(
                "condition (B) does not hold on {pbar}"
            )))
        }
    };
    if kernel.len() != pbar.len() {
        return Err(Error::Contract(format!(
            "kernel vector has {} entries for {pbar}",
            kernel.len()
        )));
    }
    let mut tau = vec![Scalar::zero(x.mode()); x.dim()];
    for (k, v) in pbar.iter().zip(kernel) {
        tau[k] = v.clone();
    }
    Ok(MinimalZero {
        index: 0,
        tau,
        support: pbar,
    })
}

/// Result of an enumeration run together with float-mode diagnostics.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ZeroEnumeration {
    pub zeros: Vec<MinimalZero>,
    /// Index sets on which condition (A) or (B) was evaluated.
    pub candidates_tested: usize,
    /// Index sets skipped because they contain an accepted support.
    pub candidates_pruned: usize,
    pub warnings: Vec<String>,
}

/// All normalized minimal zeros, ordered by support size and then by
/// support bit mask.
pub fn enumerate_minimal_zeros(x: &SymMatrix) -> Vec<MinimalZero> {
    enumerate_with_diagnostics(x).zeros
}

pub fn enumerate_with_diagnostics(x: &SymMatrix) -> ZeroEnumeration {
    let mut out = ZeroEnumeration::default();
    let mut accepted: Vec<SupportSet> = Vec::new();

    // Zero diagonal entries.
    let mut remaining = SupportSet::full(x.dim());
    for k in 0..x.dim() {
        out.candidates_tested += 1;
        if x.is_negligible(x.get(k, k)) {
            accepted.push(SupportSet::singleton(k));
            remaining = remaining.without(k);
        }
    }

    for size in 2..=remaining.len() {
        let mut level = Vec::new();
        for candidate in remaining.subsets_of_size(size) {
            if accepted.iter().any(|s| s.is_subset(candidate)) {
                out.candidates_pruned += 1;
                continue;
            }
            out.candidates_tested += 1;
            if !check_condition_a(x, candidate) {
                continue;
            }
            let pivot = candidate.first().expect("nonempty candidate");
            let b = condition_b_unchecked(x, candidate, pivot);
            if b.borderline {
                out.warnings.push(format!(
                    "borderline positivity decision on support {candidate} (positivity_eps = {:e})",
                    x.policy().positivity_eps
                ));
            }
            if b.holds {
                level.push((candidate, b));
            }
        }
        // Candidates of one size never contain each other, so a level can
        // be merged after it has been fully scanned.
        for (candidate, b) in level {
            accepted.push(candidate);
            out.zeros
                .push(build_minimal_zero(x, candidate, &b).expect("(B) holds"));
        }
    }

    let singles = accepted
        .iter()
        .take_while(|s| s.len() == 1)
        .map(|&s| {
            build_minimal_zero(x, s, &ConditionBResult::singleton(x.mode())).expect("(B) holds")
        })
        .collect::<Vec<_>>();
    out.zeros.splice(0..0, singles);
    for (j, zero) in out.zeros.iter_mut().enumerate() {
        zero.index = j;
    }
    out
}

/// No support is contained in the support of another zero.
pub fn verify_support_incomparability(zeros: &[MinimalZero]) -> bool {
    zeros.iter().enumerate().all(|(i, a)| {
        zeros
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.support.is_subset(b.support))
    })
}
