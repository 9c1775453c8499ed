//! Edge-connectivity checks: an exhaustive deletion oracle and the structural
//! characterisation for 3-regular graphs on a Hamiltonian path.

use serde::{Deserialize, Serialize};

use crate::dag::{Dag, DegreeProfile, Edge};
use crate::error::{Error, Result};

/// Whether the underlying undirected multigraph survives the deletion of any
/// `ell - 1` edges, for `ell` in `1..=3`.
///
/// Boundary-degree-2 graphs stand for a block cut out of a larger graph, so
/// they are closed with one virtual source–sink edge before testing: a proper
/// interval then needs three crossing edges, the virtual one included.
pub fn edge_connectivity_at_least(dag: &Dag, ell: usize) -> Result<bool> {
    if !(1..=3).contains(&ell) {
        return Err(Error::OutOfRange(format!("connectivity {ell} not in 1..=3")));
    }
    dag.ensure_valid()?;
    let n = dag.vertex_count();
    let mut edges: Vec<Edge> = dag.edges().to_vec();
    if dag.profile() == DegreeProfile::BoundaryDeg2 && n >= 2 {
        edges.push((1, n));
    }
    let m = edges.len();
    let ok = match ell {
        1 => connected_without(n, &edges, &[]),
        2 => (0..m).all(|a| connected_without(n, &edges, &[a])),
        _ => (0..m).all(|a| (a + 1..m).all(|b| connected_without(n, &edges, &[a, b]))),
    };
    Ok(ok)
}

fn connected_without(n: usize, edges: &[Edge], skip: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components <= 1
}

/// Structure certifying that a graph is not 3-edge connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutWitness {
    /// Vertices `1..=k` contain more indegree-two than outdegree-two vertices.
    InitialSegment(usize),
    /// Only the two path edges at its ends leave the interval `[i, j]`.
    Interval(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Outcome {
    pub three_edge_connected: bool,
    pub witness: Option<CutWitness>,
}

/// Decides 3-edge connectivity of a 3-regular graph on a Hamiltonian path from
/// its initial-segment balance and closed intervals alone.
pub fn prop1_is_3ec(dag: &Dag) -> Result<Prop1Outcome> {
    dag.ensure_valid()?;
    if dag.profile() != DegreeProfile::ThreeRegular {
        return Err(Error::Precondition("graph is not 3-regular".into()));
    }
    if !dag.is_on_ham_path() {
        return Err(Error::Precondition("graph is not on a Hamiltonian path".into()));
    }
    let witness = find_cut_structure(dag);
    Ok(Prop1Outcome {
        three_edge_connected: witness.is_none(),
        witness,
    })
}

fn find_cut_structure(dag: &Dag) -> Option<CutWitness> {
    let n = dag.vertex_count();
    let indeg = dag.indegrees();
    let outdeg = dag.outdegrees();
    let mut balance: i64 = 0;
    for k in 1..n {
        if indeg[k] == 2 {
            balance += 1;
        }
        if outdeg[k] == 2 {
            balance -= 1;
        }
        if balance > 0 {
            return Some(CutWitness::InitialSegment(k));
        }
    }
    for i in 2..n {
        for j in i..n {
            let crossing = dag
                .edges()
                .iter()
                .filter(|&&(u, v)| ((i..=j).contains(&u)) != ((i..=j).contains(&v)))
                .count();
            if crossing == 2 {
                return Some(CutWitness::Interval(i, j));
            }
        }
    }
    None
}
