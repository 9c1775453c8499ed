//! Ordered acyclic multigraphs with a unique source and sink.
//!
//! Vertices are numbered `1..=N` and the numbering *is* the total order: every
//! edge must run from a smaller to a larger number. Parallel edges are stored
//! as repeated entries of the sorted edge list.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::count::{self, Count};
use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// Degree pattern a [`Dag`] is declared to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegreeProfile {
    /// Every vertex has total degree 3.
    ThreeRegular,
    /// Source and sink have degree 2, every other vertex degree 3.
    BoundaryDeg2,
    /// Only the order, source and sink invariants are enforced.
    Any,
}

impl DegreeProfile {
    /// The most specific profile the degree sequence satisfies.
    pub fn infer(n: usize, edges: &[Edge]) -> DegreeProfile {
        let deg = total_degrees(n, edges);
        if n >= 2 && deg.iter().all(|&d| d == 3) {
            DegreeProfile::ThreeRegular
        } else if n >= 2
            && deg[0] == 2
            && deg[n - 1] == 2
            && deg[1..n - 1].iter().all(|&d| d == 3)
        {
            DegreeProfile::BoundaryDeg2
        } else {
            DegreeProfile::Any
        }
    }

    fn expected_degree(self, v: Vertex, n: usize) -> Option<usize> {
        match self {
            DegreeProfile::ThreeRegular => Some(3),
            DegreeProfile::BoundaryDeg2 if v == 1 || v == n => Some(2),
            DegreeProfile::BoundaryDeg2 => Some(3),
            DegreeProfile::Any => None,
        }
    }
}

/// One violated invariant found by [`Dag::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NoVertices,
    EdgeOutOfRange(Edge),
    SelfLoop(Vertex),
    BackwardEdge(Edge),
    ExtraSource(Vertex),
    ExtraSink(Vertex),
    Degree {
        vertex: Vertex,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::EdgeOutOfRange((u, v)) => write!(f, "edge {u}->{v} references a missing vertex"),
            Violation::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Violation::BackwardEdge((u, v)) => {
                write!(f, "edge {u}->{v} does not respect the vertex order")
            }
            Violation::ExtraSource(v) => write!(f, "vertex {v} has indegree 0 but is not vertex 1"),
            Violation::ExtraSink(v) => write!(f, "vertex {v} has outdegree 0 but is not the last vertex"),
            Violation::Degree {
                vertex,
                expected,
                found,
            } => write!(f, "vertex {vertex} has degree {found}, expected {expected}"),
        }
    }
}

/// An acyclic directed multigraph whose vertex numbering is a topological order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dag {
    n: usize,
    edges: Vec<Edge>,
    profile: DegreeProfile,
}

impl Dag {
    /// Builds and validates a graph.
    pub fn new(n: usize, edges: Vec<Edge>, profile: DegreeProfile) -> Result<Dag> {
        let dag = Dag::new_unchecked(n, edges, profile);
        let report = dag.validate();
        if report.is_empty() {
            Ok(dag)
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    /// Builds a graph with the inferred degree profile.
    pub fn with_inferred_profile(n: usize, edges: Vec<Edge>) -> Result<Dag> {
        let profile = DegreeProfile::infer(n, &edges);
        Dag::new(n, edges, profile)
    }

    /// Builds a graph without checking any invariant; see [`Dag::validate`].
    pub fn new_unchecked(n: usize, mut edges: Vec<Edge>, profile: DegreeProfile) -> Dag {
        edges.sort_unstable();
        Dag { n, edges, profile }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Sorted edge list; parallel edges appear repeatedly.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn profile(&self) -> DegreeProfile {
        self.profile
    }

    pub fn with_profile(mut self, profile: DegreeProfile) -> Dag {
        self.profile = profile;
        self
    }

    /// Every violated invariant; empty iff the graph is valid for its profile.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::NoVertices);
            return out;
        }
        let mut indeg = vec![0usize; n + 1];
        let mut outdeg = vec![0usize; n + 1];
        for &(u, v) in &self.edges {
            if u == 0 || v == 0 || u > n || v > n {
                out.push(Violation::EdgeOutOfRange((u, v)));
                continue;
            }
            if u == v {
                out.push(Violation::SelfLoop(u));
            } else if u > v {
                out.push(Violation::BackwardEdge((u, v)));
            }
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        for v in 2..=n {
            if indeg[v] == 0 {
                out.push(Violation::ExtraSource(v));
            }
        }
        for v in 1..n {
            if outdeg[v] == 0 {
                out.push(Violation::ExtraSink(v));
            }
        }
        for v in 1..=n {
            if let Some(expected) = self.profile.expected_degree(v, n) {
                let found = indeg[v] + outdeg[v];
                if found != expected {
                    out.push(Violation::Degree {
                        vertex: v,
                        expected,
                        found,
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    pub fn indegrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n + 1];
        for &(_, v) in &self.edges {
            d[v] += 1;
        }
        d
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n + 1];
        for &(u, _) in &self.edges {
            d[u] += 1;
        }
        d
    }

    /// Number of copies of `(u, v)`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        let lo = self.edges.partition_point(|&e| e < (u, v));
        let hi = self.edges.partition_point(|&e| e <= (u, v));
        hi - lo
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// True when no edge is repeated.
    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// In-neighbours of every vertex, with multiplicity, indexed by vertex.
    pub(crate) fn in_lists(&self) -> Vec<Vec<Vertex>> {
        let mut lists = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            lists[v].push(u);
        }
        lists
    }

    pub(crate) fn out_lists(&self) -> Vec<Vec<Vertex>> {
        let mut lists = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            lists[u].push(v);
        }
        lists
    }

    /// True iff `(i, i + 1)` is an edge for every `1 <= i < N`.
    pub fn is_on_ham_path(&self) -> bool {
        (1..self.n).all(|i| self.has_edge(i, i + 1))
    }

    /// The same graph with every edge reversed and vertex `i` renamed `N + 1 - i`.
    pub fn reverse(&self) -> Dag {
        let n = self.n;
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (n + 1 - v, n + 1 - u))
            .collect();
        Dag::new_unchecked(n, edges, self.profile)
    }

    /// Renumbers vertices: `order[p]` is the old vertex placed at position `p + 1`.
    pub fn renumber(&self, order: &[Vertex]) -> Result<Dag> {
        let n = self.n;
        if order.len() != n {
            return Err(Error::Precondition(format!(
                "ordering has {} entries, graph has {n} vertices",
                order.len()
            )));
        }
        let mut pos = vec![0usize; n + 1];
        for (p, &v) in order.iter().enumerate() {
            if v == 0 || v > n || pos[v] != 0 {
                return Err(Error::Precondition("ordering is not a permutation".into()));
            }
            pos[v] = p + 1;
        }
        let edges: Vec<Edge> = self.edges.iter().map(|&(u, v)| (pos[u], pos[v])).collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= v) {
            return Err(Error::Precondition(format!(
                "ordering reverses edge {}->{}",
                order[u - 1],
                order[v - 1]
            )));
        }
        Ok(Dag::new_unchecked(n, edges, self.profile))
    }

    /// Returns a new graph with one copy of each `remove` edge deleted and `add` inserted.
    pub(crate) fn replace_edges(&self, remove: &[Edge], add: &[Edge]) -> Result<Dag> {
        let mut edges = self.edges.clone();
        for e in remove {
            match edges.iter().rposition(|x| x == e) {
                Some(i) => {
                    edges.remove(i);
                }
                None => {
                    return Err(Error::Precondition(format!(
                        "edge {}->{} is not present",
                        e.0, e.1
                    )))
                }
            }
        }
        edges.extend_from_slice(add);
        Ok(Dag::new_unchecked(self.n, edges, self.profile))
    }
}

/// Per-vertex source-to-vertex path counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCountsOf<C> {
    /// `mu[v - 1]` is the number of paths from vertex 1 to vertex `v`.
    pub mu: Vec<C>,
    pub total: C,
}

impl<C: Count> PathCountsOf<C> {
    pub fn mu_at(&self, v: Vertex) -> &C {
        &self.mu[v - 1]
    }
}

/// Counts paths from the source to every vertex with the incoming-edge recurrence.
pub fn count_paths_as<C: Count>(dag: &Dag) -> Result<PathCountsOf<C>> {
    dag.ensure_valid()?;
    mu_vector(dag).map(|mu| {
        let total = mu.last().cloned().unwrap_or_else(C::one);
        PathCountsOf { mu, total }
    })
}

/// Recurrence without validation; the caller guarantees a forward edge order.
pub(crate) fn mu_vector<C: Count>(dag: &Dag) -> Result<Vec<C>> {
    let n = dag.n;
    let mut mu = vec![C::zero(); n + 1];
    if n == 0 {
        return Ok(Vec::new());
    }
    mu[1] = C::one();
    // Edges are sorted by tail, so every tail is final before it is read.
    for &(u, v) in &dag.edges {
        let next = count::add(&mu[v], &mu[u]).ok_or(Error::Overflow)?;
        mu[v] = next;
    }
    mu.remove(0);
    Ok(mu)
}

/// Outgoing (`0`, outdegree at least two) or incoming (`1`, indegree at least two).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Outgoing,
    Incoming,
}

impl VertexKind {
    pub fn bit(self) -> u8 {
        match self {
            VertexKind::Outgoing => 0,
            VertexKind::Incoming => 1,
        }
    }
}

/// 0/1 label of every vertex. Requires a 3-regular or boundary-degree-2 graph.
pub fn vertex_kinds(dag: &Dag) -> Result<Vec<VertexKind>> {
    dag.ensure_valid()?;
    if dag.profile == DegreeProfile::Any {
        return Err(Error::Precondition(
            "vertex kinds need a 3-regular or boundary-degree-2 graph".into(),
        ));
    }
    let indeg = dag.indegrees();
    let outdeg = dag.outdegrees();
    (1..=dag.n)
        .map(|v| match (indeg[v] >= 2, outdeg[v] >= 2) {
            (true, false) => Ok(VertexKind::Incoming),
            (false, true) => Ok(VertexKind::Outgoing),
            _ => Err(Error::Precondition(format!(
                "vertex {v} is neither incoming nor outgoing"
            ))),
        })
        .collect()
}

pub fn kind_bits(kinds: &[VertexKind]) -> Vec<u8> {
    kinds.iter().map(|k| k.bit()).collect()
}

fn total_degrees(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in edges {
        if (1..=n).contains(&u) {
            d[u - 1] += 1;
        }
        if (1..=n).contains(&v) {
            d[v - 1] += 1;
        }
    }
    d
}

/// Hamiltonian path `1 -> 2 -> ... -> n` plus the given arcs.
pub fn path_plus_arcs(n: usize, arcs: &[Edge]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = (1..n).map(|i| (i, i + 1)).collect();
    edges.extend_from_slice(arcs);
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigUint;

    #[test]
    fn truncated_tetrahedron_is_valid() {
        let d = fixtures::truncated_tetrahedron();
        assert!(d.validate().is_empty());
        assert_eq!(d.profile(), DegreeProfile::ThreeRegular);
        assert!(d.is_on_ham_path());
    }

    #[test]
    fn single_edge_declared_boundary_is_invalid() {
        let d = Dag::new_unchecked(2, vec![(1, 2)], DegreeProfile::BoundaryDeg2);
        let report = d.validate();
        assert_eq!(report.len(), 2);
        assert!(matches!(report[0], Violation::Degree { vertex: 1, expected: 2, found: 1 }));
    }

    #[test]
    fn backward_edges_and_extra_sources_are_reported() {
        let d = Dag::new_unchecked(3, vec![(2, 1), (1, 3)], DegreeProfile::Any);
        let report = d.validate();
        assert!(report.contains(&Violation::BackwardEdge((2, 1))));
        let d = Dag::new_unchecked(3, vec![(1, 3), (2, 3)], DegreeProfile::Any);
        assert_eq!(d.validate(), vec![Violation::ExtraSource(2)]);
        assert!(Dag::new_unchecked(2, vec![(1, 1)], DegreeProfile::Any)
            .validate()
            .contains(&Violation::SelfLoop(1)));
    }

    #[test]
    fn tetrahedron_mu_vector() {
        let pc = count_paths_as::<u64>(&fixtures::truncated_tetrahedron()).unwrap();
        assert_eq!(pc.mu, vec![1, 1, 2, 2, 2, 4, 4, 5, 9, 9, 11, 21]);
        assert_eq!(pc.total, 21);
    }

    #[test]
    fn wedge_and_single_edge_totals() {
        let pc = count_paths_as::<BigUint>(&fixtures::wedge12()).unwrap();
        assert_eq!(pc.total, BigUint::from(22u8));
        let single = Dag::with_inferred_profile(2, vec![(1, 2)]).unwrap();
        assert_eq!(single.profile(), DegreeProfile::Any);
        assert_eq!(count_paths_as::<u32>(&single).unwrap().total, 1);
    }

    #[test]
    fn count_rejects_invalid_graph() {
        let d = Dag::new_unchecked(3, vec![(1, 3), (2, 3)], DegreeProfile::Any);
        assert!(matches!(count_paths_as::<u64>(&d), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn narrow_counts_overflow_cleanly() {
        // A chain of doubled edges has 2^40 paths.
        let n = 41;
        let mut edges = Vec::new();
        for i in 1..n {
            edges.push((i, i + 1));
            edges.push((i, i + 1));
        }
        let d = Dag::new(n, edges, DegreeProfile::Any).unwrap();
        assert_eq!(count_paths_as::<u32>(&d), Err(Error::Overflow));
        assert_eq!(count_paths_as::<u64>(&d).unwrap().total, 1u64 << 40);
    }

    #[test]
    fn reverse_is_an_involution() {
        let w = fixtures::wedge12();
        assert_eq!(w.reverse().reverse(), w);
        let single = Dag::with_inferred_profile(2, vec![(1, 2)]).unwrap();
        assert_eq!(single.reverse(), single);
        let t = fixtures::truncated_tetrahedron().reverse();
        assert!(t.is_valid());
        assert_eq!(count_paths_as::<u64>(&t).unwrap().total, 21);
    }

    #[test]
    fn ham_path_detection() {
        assert!(fixtures::truncated_tetrahedron().is_on_ham_path());
        assert!(!fixtures::six_vertex().is_on_ham_path());
        assert!(Dag::with_inferred_profile(2, vec![(1, 2)]).unwrap().is_on_ham_path());
    }

    #[test]
    fn kinds() {
        let k = kind_bits(&vertex_kinds(&fixtures::truncated_tetrahedron()).unwrap());
        assert_eq!(k, vec![0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1]);
        let single = Dag::with_inferred_profile(2, vec![(1, 2)]).unwrap();
        assert!(matches!(vertex_kinds(&single), Err(Error::Precondition(_))));
    }

    #[test]
    fn renumber_rejects_orientation_flip() {
        let d = fixtures::six_vertex();
        assert!(d.renumber(&[1, 3, 5, 2, 4, 6]).is_ok());
        assert!(d.renumber(&[2, 1, 3, 4, 5, 6]).is_err());
    }
}
