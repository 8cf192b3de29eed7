//! The full analysis pipeline and its serializable report.
//!
//! All indices in a report are 1-based, matching the command-line output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::copositivity::{check_copositive_with_limit, CopositivityVerdict, DEFAULT_DIM_LIMIT};
use crate::error::{Error, Result};
use crate::minimal_zeros::{
    enumerate_with_diagnostics, verify_support_incomparability, MinimalZero,
};
use crate::numerics::{is_singular, Mode, Scalar, SymMatrix, TolerancePolicy};
use crate::support::SupportSet;
use crate::zerograph::{
    build_graph, build_graph_quadratic, build_representation, extended_support_set,
    maximal_cliques, verify_pp1, verify_pstar_incomparability,
};
use crate::zeroset::oracle_equivalence;

pub const SCHEMA_VERSION: u32 = 1;

/// Tag attached when enumeration ran on a matrix whose copositivity was not
/// confirmed.
pub const UNVERIFIED_TAG: &str = "input not verified copositive";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Stop after the copositivity check when the matrix is not copositive.
    pub gate: bool,
    pub check_copositivity: bool,
    pub verify: bool,
    /// Grid denominator for the brute-force zero-set check.
    pub oracle_grid: Option<u32>,
    pub copositivity_dim_limit: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            gate: false,
            check_copositivity: true,
            verify: true,
            oracle_grid: None,
            copositivity_dim_limit: DEFAULT_DIM_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub p: usize,
    pub mode: Mode,
    pub rows: Vec<Vec<Scalar>>,
    pub tolerances: TolerancePolicy,
    /// Absolute threshold of the float zero test, `zero_eps·(1 + max|X|)`.
    pub zero_threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub j: usize,
    pub tau: Vec<Scalar>,
    pub support: SupportSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedEntry {
    pub j: usize,
    pub support: SupportSet,
    pub m: SupportSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEntry {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub s: usize,
    pub clique: Vec<usize>,
    pub p_star: SupportSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pp1Entry {
    pub coverage: bool,
    pub pstar_in_m: bool,
    pub separation: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub grid: u32,
    pub points_checked: u64,
    pub zeros_found: u64,
    pub covered_nonzeros: u64,
    pub violations: Vec<OracleViolationEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleViolationEntry {
    pub point: Vec<Scalar>,
    pub is_zero: bool,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub pp1: Pp1Entry,
    pub support_incomparability: bool,
    pub pstar_incomparability: bool,
    /// The support-based and quadratic-form edge definitions agree.
    pub edge_definition_agreement: bool,
    /// `det X(P̄ \ {i}) ≠ 0` for every accepted support `P̄` and `i ∈ P̄`.
    pub determinant_gate: bool,
    /// `X τ(j) ≥ 0` for every minimal zero.
    pub x_tau_nonnegative: bool,
    pub representation_issues: Vec<String>,
    pub oracle: Option<OracleEntry>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub candidates_tested: usize,
    pub candidates_pruned: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputEcho,
    pub copositivity: Option<CopositivityVerdict>,
    /// Enumeration was skipped because the gate rejected the input.
    pub gated: bool,
    pub tags: Vec<String>,
    pub minimal_zeros: Vec<ZeroEntry>,
    pub extended_support_set: Vec<ExtendedEntry>,
    pub graph: GraphEntry,
    pub maximal_cliques: Vec<Vec<usize>>,
    pub representation: Vec<ComponentEntry>,
    pub verification: Option<Verification>,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn is_copositive(&self) -> Option<bool> {
        self.copositivity.as_ref().map(|v| v.is_copositive)
    }

    pub fn verification_passed(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.all_passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            row: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

pub fn run_pipeline(x: &SymMatrix, options: &PipelineOptions) -> Result<AnalysisReport> {
    let mut warnings = Vec::new();
    let mut tags = Vec::new();

    let copositivity = if options.check_copositivity {
        match check_copositive_with_limit(x, options.copositivity_dim_limit) {
            Ok(v) => Some(v),
            Err(e @ Error::ResourceLimit { .. }) if !options.gate => {
                warnings.push(format!("copositivity not checked: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let verified = copositivity.as_ref().is_some_and(|v| v.is_copositive);
    if !verified {
        tags.push(UNVERIFIED_TAG.to_string());
    }

    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            p: x.dim(),
            mode: x.mode(),
            rows: x.rows(),
            tolerances: *x.policy(),
            zero_threshold: x.zero_threshold(),
        },
        copositivity,
        gated: false,
        tags,
        minimal_zeros: Vec::new(),
        extended_support_set: Vec::new(),
        graph: GraphEntry {
            vertices: Vec::new(),
            edges: Vec::new(),
        },
        maximal_cliques: Vec::new(),
        representation: Vec::new(),
        verification: None,
        diagnostics: Diagnostics {
            candidates_tested: 0,
            candidates_pruned: 0,
        },
        warnings,
    };
    if options.gate && report.is_copositive() == Some(false) {
        report.gated = true;
        return Ok(report);
    }

    let enumeration = enumerate_with_diagnostics(x);
    let zeros = &enumeration.zeros;
    let e = extended_support_set(x, zeros);
    let graph = build_graph(&e);
    let cliques = maximal_cliques(&graph);
    let rep = build_representation(x, zeros, &cliques);

    report.warnings.extend(enumeration.warnings.iter().cloned());
    report.diagnostics = Diagnostics {
        candidates_tested: enumeration.candidates_tested,
        candidates_pruned: enumeration.candidates_pruned,
    };
    report.minimal_zeros = zeros
        .iter()
        .map(|z| ZeroEntry {
            j: z.index + 1,
            tau: z.tau.clone(),
            support: z.support,
        })
        .collect();
    report.extended_support_set = e
        .iter()
        .map(|pair| ExtendedEntry {
            j: pair.j + 1,
            support: pair.supp,
            m: pair.m,
        })
        .collect();
    report.graph = GraphEntry {
        vertices: (1..=graph.order()).collect(),
        edges: graph
            .edges_one_based()
            .into_iter()
            .map(|(a, b)| [a, b])
            .collect(),
    };
    report.maximal_cliques = cliques.iter().map(|c| c.one_based()).collect();
    report.representation = rep
        .components
        .iter()
        .map(|c| ComponentEntry {
            s: c.index + 1,
            clique: c.clique.one_based(),
            p_star: c.p_star,
        })
        .collect();

    if options.verify {
        let pp1 = verify_pp1(&e, &cliques);
        let mut details = Vec::new();
        if !pp1.uncovered.is_empty() {
            let one_based: Vec<usize> = pp1.uncovered.iter().map(|j| j + 1).collect();
            details.push(format!("vertices in no clique: {one_based:?}"));
        }
        for &(s, j) in &pp1.pstar_violations {
            details.push(format!("P*({}) is not contained in M({})", s + 1, j + 1));
        }
        if let Some(v) = pp1.separation_violation {
            details.push(match v.i0 {
                Some(_) => format!(
                    "components {} and {} are not separated",
                    v.s + 1,
                    v.s_bar + 1
                ),
                None => format!("clique {} is contained in clique {}", v.s + 1, v.s_bar + 1),
            });
        }
        let oracle = match options.oracle_grid {
            Some(n) => {
                let o = oracle_equivalence(x, &rep, n)?;
                Some(OracleEntry {
                    grid: o.grid,
                    points_checked: o.points_checked,
                    zeros_found: o.zeros_found,
                    covered_nonzeros: o.covered_nonzeros,
                    violations: o
                        .violations
                        .into_iter()
                        .map(|v| OracleViolationEntry {
                            point: v.point,
                            is_zero: v.is_zero,
                            components: v.components.iter().map(|s| s + 1).collect(),
                        })
                        .collect(),
                })
            }
            None => None,
        };
        let mut verification = Verification {
            pp1: Pp1Entry {
                coverage: pp1.coverage,
                pstar_in_m: pp1.pstar_in_m,
                separation: pp1.separation,
                details,
            },
            support_incomparability: verify_support_incomparability(zeros),
            pstar_incomparability: verify_pstar_incomparability(&rep),
            edge_definition_agreement: build_graph_quadratic(x, zeros) == graph,
            determinant_gate: determinant_gate_holds(x, zeros),
            x_tau_nonnegative: x_tau_nonnegative(x, zeros),
            representation_issues: rep.issues.clone(),
            oracle,
            all_passed: false,
        };
        verification.all_passed = verification.pp1.coverage
            && verification.pp1.pstar_in_m
            && verification.pp1.separation
            && verification.support_incomparability
            && verification.pstar_incomparability
            && verification.edge_definition_agreement
            && verification.determinant_gate
            && verification.x_tau_nonnegative
            && verification.representation_issues.is_empty()
            && verification
                .oracle
                .as_ref()
                .is_none_or(|o| o.violations.is_empty());
        report.verification = Some(verification);
    }
    Ok(report)
}

/// Every proper principal submatrix of an accepted support obtained by
/// dropping one index is nonsingular.
pub fn determinant_gate_holds(x: &SymMatrix, zeros: &[MinimalZero]) -> bool {
    zeros.iter().filter(|z| z.support.len() >= 2).all(|z| {
        z.support.iter().all(|i| {
            let sub = x
                .principal_submatrix(z.support.without(i))
                .expect("nonempty subset within range");
            !is_singular(&sub)
        })
    })
}

/// `X τ ≥ 0` componentwise for every zero, up to the matrix's zero test.
pub fn x_tau_nonnegative(x: &SymMatrix, zeros: &[MinimalZero]) -> bool {
    zeros
        .iter()
        .all(|z| x.mul_vec(&z.tau).iter().all(|v| !x.is_clearly_negative(v)))
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn vector(v: &[Scalar]) -> String {
    format!("({})", join(v))
}

pub fn text_copositivity(verdict: Option<&CopositivityVerdict>) -> String {
    match verdict {
        Some(v) if v.is_copositive => {
            format!("copositive: yes (method {})\n", method_name(v))
        }
        Some(v) => {
            let witness = v.witness.as_deref().map(vector).unwrap_or_default();
            format!(
                "copositive: no (method {}), witness t = {witness}\n",
                method_name(v)
            )
        }
        None => "copositive: not checked\n".to_string(),
    }
}

fn method_name(v: &CopositivityVerdict) -> &'static str {
    match v.method {
        crate::copositivity::Method::PrincipalEigen => "principal-eigen",
        crate::copositivity::Method::Grid => "grid",
    }
}

pub fn text_minimal_zeros(report: &AnalysisReport) -> String {
    let mut out = format!("minimal zeros: {}\n", report.minimal_zeros.len());
    for z in &report.minimal_zeros {
        let _ = writeln!(
            out,
            "  tau({}) = {}  support {}",
            z.j,
            vector(&z.tau),
            z.support
        );
    }
    out
}

pub fn text_extended(report: &AnalysisReport) -> String {
    let mut out = String::from("extended support set:\n");
    for e in &report.extended_support_set {
        let _ = writeln!(out, "  j={}  supp {}  M {}", e.j, e.support, e.m);
    }
    out
}

pub fn text_graph(report: &AnalysisReport) -> String {
    let edges: Vec<String> = report
        .graph
        .edges
        .iter()
        .map(|[a, b]| format!("({a},{b})"))
        .collect();
    format!(
        "graph: {} vertices, edges {{{}}}\n",
        report.graph.vertices.len(),
        edges.join(", ")
    )
}

pub fn text_cliques(report: &AnalysisReport) -> String {
    let mut out = format!("maximal cliques: {}\n", report.maximal_cliques.len());
    for c in &report.maximal_cliques {
        let _ = writeln!(out, "  {{{}}}", join(c));
    }
    out
}

pub fn text_representation(report: &AnalysisReport) -> String {
    let mut out = format!(
        "representation: {} components\n",
        report.representation.len()
    );
    for c in &report.representation {
        let _ = writeln!(
            out,
            "  T0({}) = conv{{tau(j) : j in {{{}}}}}  P* {}",
            c.s,
            join(&c.clique),
            c.p_star
        );
    }
    out
}

pub fn text_verification(report: &AnalysisReport) -> String {
    let Some(v) = &report.verification else {
        return "verification: skipped\n".to_string();
    };
    let flag = |b: bool| if b { "ok" } else { "FAILED" };
    let mut out = String::from("verification:\n");
    let _ = writeln!(out, "  coverage                  {}", flag(v.pp1.coverage));
    let _ = writeln!(
        out,
        "  P* inside M(j)            {}",
        flag(v.pp1.pstar_in_m)
    );
    let _ = writeln!(
        out,
        "  component separation      {}",
        flag(v.pp1.separation)
    );
    let _ = writeln!(
        out,
        "  support incomparability   {}",
        flag(v.support_incomparability)
    );
    let _ = writeln!(
        out,
        "  P* incomparability        {}",
        flag(v.pstar_incomparability)
    );
    let _ = writeln!(
        out,
        "  edge definitions agree    {}",
        flag(v.edge_definition_agreement)
    );
    let _ = writeln!(
        out,
        "  determinant gate          {}",
        flag(v.determinant_gate)
    );
    let _ = writeln!(
        out,
        "  X tau >= 0                {}",
        flag(v.x_tau_nonnegative)
    );
    for d in v.pp1.details.iter().chain(&v.representation_issues) {
        let _ = writeln!(out, "    {d}");
    }
    if let Some(o) = &v.oracle {
        let _ = writeln!(
            out,
            "  grid oracle (N = {})      {}  ({} points, {} zeros, {} violations)",
            o.grid,
            flag(o.violations.is_empty()),
            o.points_checked,
            o.zeros_found,
            o.violations.len()
        );
        for viol in o.violations.iter().take(10) {
            let _ = writeln!(
                out,
                "    t = {}  zero: {}  components: {:?}",
                vector(&viol.point),
                viol.is_zero,
                viol.components
            );
        }
    }
    out
}

/// Human-readable rendering of the whole report.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = format!("p = {}, mode {}\n", report.input.p, report.input.mode);
    out.push_str(&text_copositivity(report.copositivity.as_ref()));
    for tag in &report.tags {
        let _ = writeln!(out, "note: {tag}");
    }
    if report.gated {
        out.push_str("stopped: matrix is not copositive\n");
        return out;
    }
    out.push_str(&text_minimal_zeros(report));
    out.push_str(&text_extended(report));
    out.push_str(&text_graph(report));
    out.push_str(&text_cliques(report));
    out.push_str(&text_representation(report));
    out.push_str(&text_verification(report));
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sets(report: &AnalysisReport) -> Vec<Vec<usize>> {
        report
            .minimal_zeros
            .iter()
            .map(|z| z.support.to_one_based())
            .collect()
    }

    #[test]
    fn example_x_report() {
        let r = run_pipeline(&fixtures::example_x(), &PipelineOptions::default()).unwrap();
        assert_eq!(r.is_copositive(), Some(true));
        assert!(r.tags.is_empty());
        assert_eq!(sets(&r), vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(r.graph.edges, vec![[1, 2], [3, 4]]);
        assert_eq!(r.maximal_cliques, vec![vec![1, 2], vec![3, 4]]);
        let pstars: Vec<Vec<usize>> = r
            .representation
            .iter()
            .map(|c| c.p_star.to_one_based())
            .collect();
        assert_eq!(pstars, vec![vec![1, 2], vec![3, 4]]);
        assert!(r.verification_passed());
    }

    #[test]
    fn identity_report_is_empty() {
        let r = run_pipeline(
            &fixtures::by_name("identity-3").unwrap(),
            &PipelineOptions::default(),
        )
        .unwrap();
        assert!(r.minimal_zeros.is_empty());
        assert!(r.graph.vertices.is_empty() && r.graph.edges.is_empty());
        assert!(r.representation.is_empty());
        assert!(r.verification_passed());
    }

    #[test]
    fn gate_stops_non_copositive_input() {
        let x = SymMatrix::from_integers(&[vec![1, -2], vec![-2, 1]]).unwrap();
        let gated = PipelineOptions {
            gate: true,
            ..Default::default()
        };
        let r = run_pipeline(&x, &gated).unwrap();
        assert!(r.gated);
        assert_eq!(r.is_copositive(), Some(false));
        assert!(r.minimal_zeros.is_empty());

        let r = run_pipeline(&x, &PipelineOptions::default()).unwrap();
        assert!(!r.gated);
        assert_eq!(r.tags, vec![UNVERIFIED_TAG.to_string()]);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for (name, x) in fixtures::all() {
            for x in [x.clone(), x.to_mode(Mode::Float)] {
                let options = PipelineOptions {
                    oracle_grid: Some(3),
                    ..Default::default()
                };
                let text = run_pipeline(&x, &options).unwrap().to_json();
                let back = AnalysisReport::from_json(&text).unwrap();
                assert_eq!(back.to_json(), text, "{name}");
            }
        }
    }

    #[test]
    fn text_rendering_mentions_every_section() {
        let r = run_pipeline(&fixtures::example_xbar(), &PipelineOptions::default()).unwrap();
        let text = render_text(&r);
        for needle in [
            "minimal zeros: 4",
            "M {1,2,3}",
            "edges {(1,2), (3,4)}",
            "P* {1,2,3}",
            "verification:",
        ] {
            assert!(text.contains(needle), "missing {needle}:\n{text}");
        }
    }
}
