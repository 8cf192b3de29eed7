//! The minimal zeros graph, its maximal cliques and the minimal
//! representation of the zero set.
//!
//! For every minimal zero `τ(j)` let `M(j) = { k : (Xτ(j))_k = 0 }`. Vertices
//! `i < j` are adjacent iff `supp τ(i) ⊆ M(j)`, equivalently
//! `τ(i)'Xτ(j) = 0`. Each maximal clique `J(s)` yields one polytope
//! `conv{ τ(j) : j ∈ J(s) }`, and together these polytopes cover the zero set
//! with as few pieces as possible.
//!
//! Vertex indices are 0-based here; the text and JSON outputs add one.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::minimal_zeros::MinimalZero;
use crate::numerics::SymMatrix;
use crate::support::SupportSet;

/// `(supp τ(j), M(j))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendedSupportPair {
    pub j: usize,
    pub supp: SupportSet,
    pub m: SupportSet,
}

/// `M(j) = { k : (X τ)_k = 0 }` under the matrix's zero test.
pub fn compute_m(x: &SymMatrix, tau: &MinimalZero) -> SupportSet {
    x.mul_vec(&tau.tau)
        .iter()
        .enumerate()
        .filter(|(_, v)| x.is_negligible(v))
        .fold(SupportSet::empty(), |acc, (k, _)| acc.with(k))
}

pub fn extended_support_set(x: &SymMatrix, zeros: &[MinimalZero]) -> Vec<ExtendedSupportPair> {
    zeros
        .iter()
        .enumerate()
        .map(|(j, z)| ExtendedSupportPair {
            j,
            supp: z.support,
            m: compute_m(x, z),
        })
        .collect()
}

/// Undirected simple graph on `0..order`, edges stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZerosGraph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ZerosGraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(order: usize, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!(
                    "self-loop at vertex {}",
                    a + 1
                )));
            }
            if a >= order || b >= order {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) outside vertex set 1..={order}",
                    a + 1,
                    b + 1
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(ZerosGraph { order, edges: set })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edges_one_based(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&u| u != v && self.has_edge(u, v))
            .collect()
    }

    /// Graphviz rendering; vertex `j` is labelled `j:support`.
    pub fn to_dot(&self, supports: &[SupportSet]) -> String {
        let mut out = String::from("graph minimal_zeros {\n");
        for v in 0..self.order {
            let label = supports
                .get(v)
                .map_or_else(|| (v + 1).to_string(), |s| format!("{}:{s}", v + 1));
            let _ = writeln!(out, "  {} [label=\"{label}\"];", v + 1);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {} -- {};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.order]; self.order];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }
}

/// Edge `(i, j)`, `i < j`, iff `supp τ(i) ⊆ M(j)`.
pub fn build_graph(e: &[ExtendedSupportPair]) -> ZerosGraph {
    let edges = e.iter().enumerate().flat_map(|(i, a)| {
        e.iter()
            .enumerate()
            .skip(i + 1)
            .filter(move |(_, b)| a.supp.is_subset(b.m))
            .map(move |(j, _)| (i, j))
    });
    ZerosGraph::new(e.len(), edges).expect("indices in range, no self-loops")
}

/// Edge `(i, j)`, `i < j`, iff `τ(i)'Xτ(j) = 0`.
pub fn build_graph_quadratic(x: &SymMatrix, zeros: &[MinimalZero]) -> ZerosGraph {
    let edges = zeros.iter().enumerate().flat_map(|(i, a)| {
        zeros
            .iter()
            .enumerate()
            .skip(i + 1)
            .filter(move |(_, b)| x.is_negligible(&x.bilinear(&a.tau, &b.tau)))
            .map(move |(j, _)| (i, j))
    });
    ZerosGraph::new(zeros.len(), edges).expect("indices in range, no self-loops")
}

/// A set of pairwise adjacent vertices, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique {
    members: Vec<usize>,
}

impl Clique {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Clique { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_clique_of(&self, g: &ZerosGraph) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(n, &a)| a < g.order() && self.members[n + 1..].iter().all(|&b| g.has_edge(a, b)))
    }

    /// Whether no vertex outside the clique is adjacent to every member.
    pub fn is_maximal_in(&self, g: &ZerosGraph) -> bool {
        (0..g.order())
            .filter(|v| !self.contains(*v))
            .all(|v| self.members.iter().any(|&m| !g.has_edge(v, m)))
    }
}

/// Vertices ordered by repeatedly removing one of minimum remaining degree.
fn degeneracy_order(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count())
        .collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        removed[v] = true;
        order.push(v);
        for u in 0..n {
            if adj[v][u] && !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Bron–Kerbosch with Tomita pivoting: reports every maximal clique that
/// extends `current` with vertices of `candidates` and none of `excluded`.
fn expand(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    out: &mut Vec<Clique>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(Clique::new(current.iter().copied()));
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adj[u][v]).count())
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| !adj[pivot][v])
        .collect();
    for v in branch {
        let next_candidates = candidates.iter().copied().filter(|&u| adj[v][u]).collect();
        let next_excluded = excluded.iter().copied().filter(|&u| adj[v][u]).collect();
        current.push(v);
        expand(adj, current, next_candidates, next_excluded, out);
        current.pop();
        candidates.retain(|&u| u != v);
        excluded.push(v);
    }
}

/// All maximal cliques, sorted by size (descending) then by members.
/// Isolated vertices give singleton cliques.
pub fn maximal_cliques(g: &ZerosGraph) -> Vec<Clique> {
    let adj = g.adjacency();
    let order = degeneracy_order(&adj);
    let mut position = vec![0; g.order()];
    for (n, &v) in order.iter().enumerate() {
        position[v] = n;
    }
    let mut out = Vec::new();
    for &v in &order {
        let (later, earlier): (Vec<usize>, Vec<usize>) = (0..g.order())
            .filter(|&u| adj[v][u])
            .partition(|&u| position[u] > position[v]);
        expand(&adj, &mut vec![v], later, earlier, &mut out);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// One polytope `conv{ τ(j) : j ∈ J(s) }` of the representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    /// 0-based component index `s`.
    pub index: usize,
    pub clique: Clique,
    /// Union of the supports of the members.
    pub p_star: SupportSet,
}

/// `T0 = ∪_s conv{ τ(j) : j ∈ J(s) }`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub dim: usize,
    pub zeros: Vec<MinimalZero>,
    pub components: Vec<Component>,
    /// Invariant violations found while assembling; empty when valid.
    pub issues: Vec<String>,
}

impl Representation {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Vertex list of component `s`.
    pub fn vertices(&self, s: usize) -> Vec<&MinimalZero> {
        self.components[s]
            .clique
            .members()
            .iter()
            .map(|&j| &self.zeros[j])
            .collect()
    }

    pub fn p_stars(&self) -> Vec<SupportSet> {
        self.components.iter().map(|c| c.p_star).collect()
    }
}

/// Assembles the representation from the maximal cliques of `G(X)`,
/// recording any invariant that does not hold.
pub fn build_representation(
    x: &SymMatrix,
    zeros: &[MinimalZero],
    cliques: &[Clique],
) -> Representation {
    let graph = build_graph_quadratic(x, zeros);
    let mut issues = Vec::new();
    let mut components = Vec::with_capacity(cliques.len());
    for (s, clique) in cliques.iter().enumerate() {
        if clique.is_empty() || clique.members().iter().any(|&j| j >= zeros.len()) {
            issues.push(format!("component {}: members out of range", s + 1));
            continue;
        }
        if !clique.is_clique_of(&graph) {
            issues.push(format!(
                "component {}: {:?} is not a clique",
                s + 1,
                clique.one_based()
            ));
        } else if !clique.is_maximal_in(&graph) {
            issues.push(format!(
                "component {}: {:?} is not maximal",
                s + 1,
                clique.one_based()
            ));
        }
        if cliques[..s].contains(clique) {
            issues.push(format!("component {}: duplicate clique", s + 1));
        }
        let p_star = clique
            .members()
            .iter()
            .fold(SupportSet::empty(), |acc, &j| acc.union(zeros[j].support));
        components.push(Component {
            index: s,
            clique: clique.clone(),
            p_star,
        });
    }
    let rep = Representation {
        dim: x.dim(),
        zeros: zeros.to_vec(),
        components,
        issues,
    };
    if verify_pstar_incomparability(&rep) {
        rep
    } else {
        let mut rep = rep;
        rep.issues
            .push("P* sets are not pairwise incomparable".into());
        rep
    }
}

/// No `P*(s)` is contained in another `P*(s̄)`.
pub fn verify_pstar_incomparability(rep: &Representation) -> bool {
    let sets = rep.p_stars();
    sets.iter().enumerate().all(|(s, a)| {
        sets.iter()
            .enumerate()
            .all(|(t, b)| s == t || !a.is_subset(*b))
    })
}

/// A failure of the separation condition between two components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparationViolation {
    pub s: usize,
    pub s_bar: usize,
    /// The member of `J(s) \ J(s̄)` adjacent to all of `J(s̄) \ J(s)`;
    /// `None` when `J(s) ⊆ J(s̄)`.
    pub i0: Option<usize>,
}

/// Check of the three structural conditions satisfied by the clique family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pp1Report {
    /// a) every vertex lies in some clique.
    pub coverage: bool,
    pub uncovered: Vec<usize>,
    /// b) `P*(s) ⊆ M(j)` for every `j ∈ J(s)`.
    pub pstar_in_m: bool,
    /// `(s, j)` pairs violating b).
    pub pstar_violations: Vec<(usize, usize)>,
    /// c) distinct cliques are mutually non-nested and separated.
    pub separation: bool,
    pub separation_violation: Option<SeparationViolation>,
}

impl Pp1Report {
    pub fn all_hold(&self) -> bool {
        self.coverage && self.pstar_in_m && self.separation
    }
}

pub fn verify_pp1(e: &[ExtendedSupportPair], cliques: &[Clique]) -> Pp1Report {
    let uncovered: Vec<usize> = (0..e.len())
        .filter(|&j| !cliques.iter().any(|c| c.contains(j)))
        .collect();

    let p_star = |c: &Clique| {
        c.members()
            .iter()
            .filter_map(|&j| e.get(j))
            .fold(SupportSet::empty(), |acc, pair| acc.union(pair.supp))
    };
    let pstar_violations: Vec<(usize, usize)> = cliques
        .iter()
        .enumerate()
        .flat_map(|(s, c)| {
            let ps = p_star(c);
            c.members()
                .iter()
                .filter(move |&&j| e.get(j).is_none_or(|pair| !ps.is_subset(pair.m)))
                .map(move |&j| (s, j))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut separation_violation = None;
    'outer: for (s, a) in cliques.iter().enumerate() {
        for (s_bar, b) in cliques.iter().enumerate() {
            if s == s_bar {
                continue;
            }
            let only_a: Vec<usize> = a
                .members()
                .iter()
                .copied()
                .filter(|&v| !b.contains(v))
                .collect();
            let only_b: Vec<usize> = b
                .members()
                .iter()
                .copied()
                .filter(|&v| !a.contains(v))
                .collect();
            if only_a.is_empty() || only_b.is_empty() {
                separation_violation = Some(SeparationViolation { s, s_bar, i0: None });
                break 'outer;
            }
            for &i0 in &only_a {
                let separated = only_b.iter().any(|&j0| !e[i0].supp.is_subset(e[j0].m));
                if !separated {
                    separation_violation = Some(SeparationViolation {
                        s,
                        s_bar,
                        i0: Some(i0),
                    });
                    break 'outer;
                }
            }
        }
    }

    Pp1Report {
        coverage: uncovered.is_empty(),
        uncovered,
        pstar_in_m: pstar_violations.is_empty(),
        pstar_violations,
        separation: separation_violation.is_none(),
        separation_violation,
    }
}
