//! Reordering and local edge swaps that put a 3-regular graph on a directed
//! Hamiltonian path without decreasing any per-vertex path count.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dag::{mu_vector, Dag, DegreeProfile, Edge, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    OutgoingMove,
    IncomingMove,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub focus: Vertex,
    pub deleted: [Edge; 2],
    pub added: [Edge; 2],
    #[serde(with = "crate::decimal::vec")]
    pub mu_before: Vec<BigUint>,
    #[serde(with = "crate::decimal::vec")]
    pub mu_after: Vec<BigUint>,
}

impl MoveRecord {
    /// Whether this single step kept every count. Incoming moves may lower the
    /// count at `u` until a later move restores it; only the final graph is
    /// guaranteed to dominate.
    pub fn is_monotone(&self) -> bool {
        self.mu_before.iter().zip(&self.mu_after).all(|(b, a)| a >= b)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog {
    /// Tree-sort order applied before any move: `order[p]` is the input vertex
    /// at position `p + 1`.
    pub order: Vec<Vertex>,
    pub moves: Vec<MoveRecord>,
}

fn require_three_regular(dag: &Dag) -> Result<()> {
    dag.ensure_valid()?;
    if dag.profile() != DegreeProfile::ThreeRegular {
        return Err(Error::Precondition("graph is not 3-regular".into()));
    }
    Ok(())
}

fn is_outgoing(indeg: &[usize], outdeg: &[usize], v: Vertex) -> bool {
    indeg[v] == 1 && outdeg[v] == 2
}

/// The order produced by tree sorting, as a list of input vertices.
///
/// Every outgoing vertex hangs off the tree rooted at the nearest non-outgoing
/// ancestor along its unique in-edge chain. Trees are laid out contiguously,
/// ordered by the path count at their root (ties keep input order), and each
/// tree keeps the input order of its members.
pub fn tree_sort_order(dag: &Dag) -> Result<Vec<Vertex>> {
    require_three_regular(dag)?;
    let n = dag.vertex_count();
    let indeg = dag.indegrees();
    let outdeg = dag.outdegrees();
    let ins = dag.in_lists();
    let mut root = vec![0; n + 1];
    for v in 1..=n {
        root[v] = if is_outgoing(&indeg, &outdeg, v) {
            root[ins[v][0]]
        } else {
            v
        };
    }
    let mu: Vec<BigUint> = mu_vector(dag)?;
    let mut roots: Vec<Vertex> = (1..=n).filter(|&v| root[v] == v).collect();
    roots.sort_by(|&a, &b| mu[a - 1].cmp(&mu[b - 1]));
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        members[root[v]].push(v);
    }
    Ok(roots.into_iter().flat_map(|r| members[r].clone()).collect())
}

/// Renumbers `dag` by [`tree_sort_order`].
pub fn tree_sort(dag: &Dag) -> Result<Dag> {
    let order = tree_sort_order(dag)?;
    dag.renumber(&order)
}

fn plan_outgoing(dag: &Dag, b: Vertex) -> Result<([Edge; 2], [Edge; 2])> {
    require_three_regular(dag)?;
    let n = dag.vertex_count();
    if b < 2 || b > n {
        return Err(Error::Precondition(format!("vertex {b} has no predecessor")));
    }
    let indeg = dag.indegrees();
    let outdeg = dag.outdegrees();
    if !is_outgoing(&indeg, &outdeg, b) {
        return Err(Error::Precondition(format!("vertex {b} is not outgoing")));
    }
    let p = b - 1;
    if dag.has_edge(p, b) {
        return Err(Error::Precondition(format!("vertex {b} already follows {p}")));
    }
    if !is_outgoing(&indeg, &outdeg, p) {
        return Err(Error::Precondition(format!(
            "predecessor {p} of {b} is not outgoing; graph is not tree-sorted"
        )));
    }
    let ell = dag.in_lists()[b][0];
    let u1 = dag.out_lists()[p].iter().copied().min().expect("outgoing vertex has out-edges");
    Ok(([(p, u1), (ell, b)], [(ell, u1), (p, b)]))
}

/// Joins outgoing vertex `b` to its predecessor `p = b - 1`: removes `(p,u1)`
/// and `(l,b)`, adds `(l,u1)` and `(p,b)`, where `u1` is the nearer
/// out-neighbour of `p` and `l` the tail of `b`'s in-edge.
pub fn outgoing_move(dag: &Dag, b: Vertex) -> Result<Dag> {
    let (del, add) = plan_outgoing(dag, b)?;
    dag.replace_edges(&del, &add)
}

fn plan_incoming(dag: &Dag, v: Vertex) -> Result<([Edge; 2], [Edge; 2])> {
    require_three_regular(dag)?;
    let n = dag.vertex_count();
    if v < 2 || v > n {
        return Err(Error::Precondition(format!("vertex {v} has no predecessor")));
    }
    let indeg = dag.indegrees();
    let outdeg = dag.outdegrees();
    if indeg[v] < 2 {
        return Err(Error::Precondition(format!("vertex {v} is not incoming")));
    }
    let q = v - 1;
    if dag.has_edge(q, v) {
        return Err(Error::Precondition(format!("vertex {v} already follows {q}")));
    }
    if let Some(w) = (2..=n).find(|&w| is_outgoing(&indeg, &outdeg, w) && !dag.has_edge(w - 1, w)) {
        return Err(Error::Precondition(format!(
            "outgoing vertex {w} does not follow its predecessor yet"
        )));
    }
    let ell2 = dag.in_lists()[v].iter().copied().max().expect("incoming vertex has in-edges");
    let u = dag
        .out_lists()[q]
        .iter()
        .copied()
        .min()
        .ok_or_else(|| Error::Precondition(format!("predecessor {q} of {v} has no out-edge")))?;
    Ok(([(ell2, v), (q, u)], [(ell2, u), (q, v)]))
}

/// Joins incoming vertex `v` to its predecessor `q = v - 1`: removes `(l2,v)`
/// and `(q,u)`, adds `(l2,u)` and `(q,v)`, where `l2` is the later in-neighbour
/// of `v` and `u` the nearest out-neighbour of `q`.
pub fn incoming_move(dag: &Dag, v: Vertex) -> Result<Dag> {
    let (del, add) = plan_incoming(dag, v)?;
    dag.replace_edges(&del, &add)
}

fn apply(dag: &Dag, kind: MoveKind, focus: Vertex, log: &mut MoveLog) -> Result<Dag> {
    let (del, add) = match kind {
        MoveKind::OutgoingMove => plan_outgoing(dag, focus)?,
        MoveKind::IncomingMove => plan_incoming(dag, focus)?,
    };
    let next = dag.replace_edges(&del, &add)?;
    next.ensure_valid()?;
    log.moves.push(MoveRecord {
        kind,
        focus,
        deleted: del,
        added: add,
        mu_before: mu_vector(dag)?,
        mu_after: mu_vector(&next)?,
    });
    Ok(next)
}

/// Tree-sorts `dag`, then joins every outgoing vertex (in increasing order) and
/// every incoming vertex (in increasing order) to its predecessor.
///
/// The result lives in the tree-sorted numbering recorded in the log, and its
/// path count at each position is at least that of the sorted input.
pub fn hamiltonize(dag: &Dag) -> Result<(Dag, MoveLog)> {
    let order = tree_sort_order(dag)?;
    let sorted = dag.renumber(&order)?;
    let mut log = MoveLog { order, moves: Vec::new() };
    let n = sorted.vertex_count();

    let indeg = sorted.indegrees();
    let outdeg = sorted.outdegrees();
    let outgoing: Vec<Vertex> = (2..=n)
        .filter(|&b| is_outgoing(&indeg, &outdeg, b) && !sorted.has_edge(b - 1, b))
        .collect();
    let mut current = sorted.clone();
    for b in outgoing {
        current = apply(&current, MoveKind::OutgoingMove, b, &mut log)?;
    }

    let incoming: Vec<Vertex> = (2..=n)
        .filter(|&v| indeg[v] >= 2 && !current.has_edge(v - 1, v))
        .collect();
    for v in incoming {
        current = apply(&current, MoveKind::IncomingMove, v, &mut log)?;
    }

    if !current.is_on_ham_path() {
        return Err(Error::Precondition(
            "moves did not produce a Hamiltonian path".into(),
        ));
    }
    let before: Vec<BigUint> = mu_vector(&sorted)?;
    let after: Vec<BigUint> = mu_vector(&current)?;
    if let Some(i) = (0..n).find(|&i| after[i] < before[i]) {
        return Err(Error::Precondition(format!(
            "path count decreased at position {}",
            i + 1
        )));
    }
    Ok((current, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{count_paths_as, kind_bits, vertex_kinds};
    use crate::fixtures;

    fn mu(d: &Dag) -> Vec<u64> {
        count_paths_as::<u64>(d).unwrap().mu
    }

    #[test]
    fn six_vertex_tree_sort() {
        let d = fixtures::six_vertex();
        assert_eq!(tree_sort_order(&d).unwrap(), vec![1, 3, 5, 2, 4, 6]);
        assert_eq!(mu(&tree_sort(&d).unwrap()), vec![1, 1, 1, 2, 3, 5]);
    }

    #[test]
    fn sorted_hamiltonian_graph_is_fixed() {
        let d = fixtures::truncated_tetrahedron();
        let sorted = tree_sort(&d).unwrap();
        assert!(mu(&sorted).windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*mu(&sorted).last().unwrap(), 21);
        let (out, log) = hamiltonize(&d).unwrap();
        assert!(log.moves.is_empty());
        assert_eq!(out, d);
    }

    #[test]
    fn six_vertex_incoming_move() {
        let sorted = tree_sort(&fixtures::six_vertex()).unwrap();
        // Original vertex 2 sits at position 4.
        let moved = incoming_move(&sorted, 4).unwrap();
        assert!(moved.is_on_ham_path());
        assert_eq!(mu(&moved), vec![1, 1, 1, 2, 3, 5]);
        let order = [1usize, 3, 5, 2, 4, 6];
        let back: Vec<Edge> = {
            let mut e: Vec<Edge> = moved.edges().iter().map(|&(u, v)| (order[u - 1], order[v - 1])).collect();
            e.sort_unstable();
            e
        };
        assert_eq!(back, vec![(1, 2), (1, 3), (1, 6), (2, 4), (3, 4), (3, 5), (4, 6), (5, 2), (5, 6)]);
        assert!(incoming_move(&moved, 4).is_err());
    }

    #[test]
    fn six_vertex_hamiltonize() {
        let (out, log) = hamiltonize(&fixtures::six_vertex()).unwrap();
        assert!(out.is_on_ham_path());
        assert_eq!(mu(&out), vec![1, 1, 1, 2, 3, 5]);
        assert!(log.moves.iter().all(|m| m.kind == MoveKind::IncomingMove));
        assert_eq!(log.moves.len(), 1);
    }

    #[test]
    fn outgoing_move_needs_gap() {
        let d = fixtures::truncated_tetrahedron();
        assert!(outgoing_move(&d, 2).is_err());
    }

    #[test]
    fn kinds_are_preserved() {
        let d = fixtures::six_vertex();
        let sorted = tree_sort(&d).unwrap();
        let (out, _) = hamiltonize(&d).unwrap();
        assert_eq!(
            kind_bits(&vertex_kinds(&sorted).unwrap()),
            kind_bits(&vertex_kinds(&out).unwrap())
        );
    }
}
