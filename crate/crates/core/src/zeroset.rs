//! Membership and sampling on the set `T0` of normalized zeros.

use serde::{Deserialize, Serialize};

use crate::copositivity::{ensure_grid_within_cap, SimplexGrid};
use crate::error::{Error, Result};
use crate::numerics::{sum, Mode, Scalar, SymMatrix};
use crate::support::SupportSet;
use crate::zerograph::Representation;

/// A point of the standard simplex: `t ≥ 0`, `‖t‖₁ = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    t: Vec<Scalar>,
}

impl SimplexPoint {
    /// Validates `t`. Exact vectors must sum to one exactly; float vectors
    /// within `1e-9`.
    pub fn new(t: Vec<Scalar>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidArgument("empty point".into()));
        }
        let mode = if t.iter().all(|v| v.mode() == Mode::Exact) {
            Mode::Exact
        } else {
            Mode::Float
        };
        let t: Vec<Scalar> = t.into_iter().map(|v| v.to_mode(mode)).collect();
        if t.iter()
            .any(|v| v < &Scalar::zero(mode) || !v.to_f64().is_finite())
        {
            return Err(Error::InvalidArgument(
                "point has a negative or non-finite component".into(),
            ));
        }
        let total = sum(mode, &t);
        let on_simplex = match mode {
            Mode::Exact => total == Scalar::one(mode),
            Mode::Float => (total.to_f64() - 1.0).abs() <= 1e-9,
        };
        if !on_simplex {
            return Err(Error::InvalidArgument(format!(
                "components sum to {total}, not 1"
            )));
        }
        Ok(SimplexPoint { t })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.t
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.t
    }

    /// Strictly positive components. Float points use the same threshold
    /// as [`SymMatrix::is_negligible`] on `x`.
    pub fn support(&self, x: &SymMatrix) -> SupportSet {
        self.t
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_exact_zero() && !x.is_negligible(v))
            .fold(SupportSet::empty(), |acc, (k, _)| acc.with(k))
    }
}

/// `t'Xt = 0` per the matrix's zero test.
pub fn is_zero(x: &SymMatrix, t: &SimplexPoint) -> bool {
    let coords: Vec<Scalar> = t.t.iter().map(|v| v.to_mode(x.mode())).collect();
    x.is_negligible(&x.quadratic_form(&coords))
}

/// Components `s` with `t ∈ T0(s)`, decided by `supp t ⊆ P*(s)`.
/// Points that are not zeros of `X` belong to no component.
pub fn component_membership(rep: &Representation, x: &SymMatrix, t: &SimplexPoint) -> Vec<usize> {
    if t.coords().len() != x.dim() || !is_zero(x, t) {
        return Vec::new();
    }
    let support = t.support(x);
    rep.components
        .iter()
        .filter(|c| support.is_subset(c.p_star))
        .map(|c| c.index)
        .collect()
}

/// `Σ_j w_j τ(j)` over the members of component `s`.
pub fn sample_component(
    rep: &Representation,
    s: usize,
    weights: &[Scalar],
) -> Result<SimplexPoint> {
    let component = rep
        .components
        .get(s)
        .ok_or_else(|| Error::InvalidArgument(format!("no component {}", s + 1)))?;
    let members = component.clique.members();
    if weights.len() != members.len() {
        return Err(Error::InvalidArgument(format!(
            "component {} has {} vertices, got {} weights",
            s + 1,
            members.len(),
            weights.len()
        )));
    }
    SimplexPoint::new(weights.to_vec())
        .map_err(|e| Error::InvalidArgument(format!("weights are not on the simplex: {e}")))?;
    let mode = rep.zeros.first().map_or(Mode::Exact, |z| z.tau[0].mode());
    let mut t = vec![Scalar::zero(mode); rep.dim];
    for (&j, w) in members.iter().zip(weights) {
        for (acc, v) in t.iter_mut().zip(&rep.zeros[j].tau) {
            *acc = &*acc + &(w * v);
        }
    }
    SimplexPoint::new(t)
}

/// The average of the vertices of component `s`, whose support is `P*(s)`.
pub fn barycenter(rep: &Representation, s: usize) -> Result<SimplexPoint> {
    let n = rep
        .components
        .get(s)
        .ok_or_else(|| Error::InvalidArgument(format!("no component {}", s + 1)))?
        .clique
        .len();
    let mode = rep.zeros.first().map_or(Mode::Exact, |z| z.tau[0].mode());
    sample_component(rep, s, &vec![Scalar::ratio(mode, 1, n as i64); n])
}

/// One grid point where zero-ness and component membership disagree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleViolation {
    pub point: Vec<Scalar>,
    pub is_zero: bool,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub grid: u32,
    pub points_checked: u64,
    pub zeros_found: u64,
    /// Non-zero grid points whose support still lies inside some `P*(s)`.
    /// The support test characterizes membership only among zeros, so
    /// these are expected (e.g. `e_1` for a matrix with `X_11 > 0`).
    pub covered_nonzeros: u64,
    pub violations: Vec<OracleViolation>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, on every grid point `t = m/N` of the simplex, that `t` is a zero
/// of `X` exactly when [`component_membership`] is nonempty, i.e. every
/// zero has its support inside some `P*(s)`.
pub fn oracle_equivalence(x: &SymMatrix, rep: &Representation, n: u32) -> Result<OracleReport> {
    let p = x.dim();
    ensure_grid_within_cap(p, n)?;
    let mode = x.mode();
    let denom = Scalar::from_i64(mode, n.into());
    let mut report = OracleReport {
        grid: n,
        points_checked: 0,
        zeros_found: 0,
        covered_nonzeros: 0,
        violations: Vec::new(),
    };
    for m in SimplexGrid::new(p, n) {
        let t: Vec<Scalar> = m
            .iter()
            .map(|&c| Scalar::from_i64(mode, c.into()) / &denom)
            .collect();
        let point = SimplexPoint { t };
        let zero = is_zero(x, &point);
        let components = component_membership(rep, x, &point);
        report.points_checked += 1;
        if zero {
            report.zeros_found += 1;
        } else {
            let support = SupportSet::from_indices(
                m.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, _)| k),
            );
            if rep.components.iter().any(|c| support.is_subset(c.p_star)) {
                report.covered_nonzeros += 1;
            }
        }
        if zero == components.is_empty() {
            report.violations.push(OracleViolation {
                point: point.t,
                is_zero: zero,
                components,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::minimal_zeros::enumerate_minimal_zeros;
    use crate::zerograph::{
        build_graph, build_representation, extended_support_set, maximal_cliques,
    };

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(Mode::Exact, n, d)
    }

    fn point(values: &[(i64, i64)]) -> SimplexPoint {
        SimplexPoint::new(values.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn representation(x: &SymMatrix) -> Representation {
        let zeros = enumerate_minimal_zeros(x);
        let g = build_graph(&extended_support_set(x, &zeros));
        build_representation(x, &zeros, &maximal_cliques(&g))
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(SimplexPoint::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(SimplexPoint::new(Vec::new()).is_err());
        assert!(SimplexPoint::new(vec![Scalar::Float(0.3), Scalar::Float(0.7)]).is_ok());
    }

    #[test]
    fn is_zero_examples() {
        let x = fixtures::example_x();
        assert!(is_zero(
            &x,
            &point(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)])
        ));
        // The X55 = 1 term alone contributes 1/25.
        assert!(!is_zero(&x, &point(&[(1, 5); 5])));
        let id = SymMatrix::identity(3, Mode::Exact);
        assert!(!is_zero(&id, &point(&[(1, 3); 3])));
        assert!(!is_zero(&id, &point(&[(1, 1), (0, 1), (0, 1)])));
    }

    #[test]
    fn membership_examples() {
        let x = fixtures::example_x();
        let rep = representation(&x);
        let mid = point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(component_membership(&rep, &x, &mid), vec![0]);
        let e3 = point(&[(0, 1), (0, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(component_membership(&rep, &x, &e3), vec![1]);
        let nonzero = point(&[(1, 5); 5]);
        assert!(component_membership(&rep, &x, &nonzero).is_empty());

        let zero3 = SymMatrix::zeros(3, Mode::Exact);
        let rep = representation(&zero3);
        assert_eq!(
            component_membership(&rep, &zero3, &point(&[(1, 3); 3])),
            vec![0]
        );
    }

    #[test]
    fn sample_examples() {
        let x = fixtures::example_x();
        let rep = representation(&x);
        let t = sample_component(&rep, 0, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(
            t.coords(),
            point(&[(1, 2), (1, 2), (0, 1), (0, 1), (0, 1)]).coords()
        );

        let xbar = fixtures::example_xbar();
        let rep = representation(&xbar);
        // Component 2 is {τ̄(3), τ̄(4)} with supports {1,5}, {4,5} in index order.
        let t = sample_component(&rep, 1, &[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(
            t.coords(),
            point(&[(0, 1), (0, 1), (0, 1), (1, 2), (1, 2)]).coords()
        );
        assert!(is_zero(&xbar, &t));
    }

    #[test]
    fn sample_rejects_bad_weights() {
        let x = fixtures::example_x();
        let rep = representation(&x);
        assert!(sample_component(&rep, 0, &[q(1, 2), q(1, 3)]).is_err());
        assert!(sample_component(&rep, 0, &[q(1, 1)]).is_err());
        assert!(sample_component(&rep, 5, &[q(1, 1)]).is_err());
    }

    #[test]
    fn barycenter_support_is_pstar() {
        for (name, x) in fixtures::all() {
            let rep = representation(&x);
            for c in &rep.components {
                let b = barycenter(&rep, c.index).unwrap();
                assert_eq!(b.support(&x), c.p_star, "{name}");
                assert!(is_zero(&x, &b), "{name}");
                assert_eq!(component_membership(&rep, &x, &b), vec![c.index], "{name}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        for x in [fixtures::example_x(), fixtures::example_xbar()] {
            let report = oracle_equivalence(&x, &representation(&x), 6).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
            assert_eq!(report.points_checked, 210);
            assert!(report.zeros_found > 0);
        }
        let id = SymMatrix::identity(3, Mode::Exact);
        let report = oracle_equivalence(&id, &representation(&id), 6).unwrap();
        assert!(report.passed());
        assert_eq!(report.zeros_found, 0);
    }

    #[test]
    fn oracle_detects_a_wrong_representation() {
        let x = fixtures::example_x();
        let mut rep = representation(&x);
        rep.components.pop();
        let report = oracle_equivalence(&x, &rep, 4).unwrap();
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.is_zero));
    }
}
