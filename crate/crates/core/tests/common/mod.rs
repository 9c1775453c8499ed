//! Oracles shared by the integration tests. Nothing here calls the library's
//! own counting or connectivity code.

#![allow(dead_code)]

use cubic_paths::{Dag, DegreeProfile, RhoTuple, TupleClass};

/// Number of source-to-sink walks, found by following every edge instance.
pub fn enumerate_paths(dag: &Dag) -> u64 {
    let n = dag.vertex_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(u, v) in dag.edges() {
        out[u].push(v);
    }
    let mut count = 0u64;
    let mut stack = vec![1usize];
    while let Some(v) = stack.pop() {
        if v == n {
            count += 1;
        }
        stack.extend(out[v].iter().copied());
    }
    count
}

/// Paths from vertex 1 to each vertex, by a forward sweep over the numbering.
pub fn mu(dag: &Dag) -> Vec<u128> {
    let n = dag.vertex_count();
    let mut m = vec![0u128; n + 1];
    m[1] = 1;
    let mut edges = dag.edges().to_vec();
    edges.sort();
    for (u, v) in edges {
        m[v] += m[u];
    }
    m[1..].to_vec()
}

fn connected(n: usize, edges: &[(usize, usize)], skip: &[usize]) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !skip.contains(&i) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Whether the undirected multigraph survives deleting any `ell - 1` edges.
/// Boundary-degree-2 graphs get an extra edge between source and sink.
pub fn edge_connected(dag: &Dag, ell: usize) -> bool {
    let n = dag.vertex_count();
    let mut edges = dag.edges().to_vec();
    if dag.profile() == DegreeProfile::BoundaryDeg2 {
        edges.push((1, n));
    }
    let m = edges.len();
    match ell {
        1 => connected(n, &edges, &[]),
        2 => (0..m).all(|a| connected(n, &edges, &[a])),
        _ => (0..m).all(|a| (a + 1..m).all(|b| connected(n, &edges, &[a, b]))),
    }
}

pub fn is_simple(dag: &Dag) -> bool {
    let mut e = dag.edges().to_vec();
    e.sort();
    e.windows(2).all(|w| w[0] != w[1])
}

/// 0 for outdegree 2, 1 for indegree 2, per vertex.
pub fn kinds(dag: &Dag) -> Vec<u8> {
    let n = dag.vertex_count();
    let mut indeg = vec![0; n + 1];
    for &(_, v) in dag.edges() {
        indeg[v] += 1;
    }
    (1..=n).map(|v| u8::from(indeg[v] >= 2)).collect()
}

/// Every tuple with `i <= rho(i) <= len`, in lexicographic order.
pub fn all_tuples(len: usize, class: TupleClass, mut visit: impl FnMut(RhoTuple)) {
    let mut v: Vec<usize> = (1..=len).collect();
    loop {
        visit(RhoTuple::new(v.clone(), class));
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            if v[i - 1] < len {
                v[i - 1] += 1;
                for j in i..len {
                    v[j] = j + 1;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Tuple lengths whose graphs have at most `2 * max_n` vertices.
pub fn lengths(class: TupleClass, max_n: usize) -> std::ops::RangeInclusive<usize> {
    match class {
        TupleClass::BoundaryDeg2 => 1..=max_n,
        TupleClass::Merged3Regular => 2..=max_n + 1,
    }
}
