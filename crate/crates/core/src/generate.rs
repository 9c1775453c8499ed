//! Exhaustive enumeration of small ordered 3-regular graphs.

use crate::dag::{Dag, DegreeProfile, Edge};

/// Calls `visit` once for every 3-regular graph on vertices `1..=n` whose
/// numbering is a topological order (source `1`, sink `n`), parallel edges
/// included. Graphs are distinct as edge multisets.
pub fn for_each_three_regular(n: usize, mut visit: impl FnMut(&Dag)) {
    if n < 2 || n % 2 == 1 {
        return;
    }
    let mut open = vec![0usize; n + 1];
    open[1] = 3;
    let mut edges: Vec<Edge> = Vec::with_capacity(3 * n / 2);
    walk(n, 2, &mut open, &mut edges, &mut visit);
}

fn walk(n: usize, v: usize, open: &mut [usize], edges: &mut Vec<Edge>, visit: &mut impl FnMut(&Dag)) {
    let available: usize = open[..v].iter().sum();
    if v == n {
        if available == 3 {
            let base = edges.len();
            for u in 1..n {
                for _ in 0..open[u] {
                    edges.push((u, n));
                }
            }
            visit(&Dag::new_unchecked(n, edges.clone(), DegreeProfile::ThreeRegular));
            edges.truncate(base);
        }
        return;
    }
    // Each later middle vertex changes the open stub count by one and the
    // sink closes exactly three.
    let remaining_in = |in_here: usize| -> bool {
        let later = n - v - 1;
        let after = available - in_here + (3 - in_here);
        after <= later + 3 && after + later >= 3
    };
    for indeg in [1usize, 2] {
        if indeg > available || !remaining_in(indeg) {
            continue;
        }
        choose(n, v, indeg, 1, open, edges, visit);
    }
}

/// Picks `left` more in-neighbours of `v` with tails `>= from`, as a multiset.
fn choose(
    n: usize,
    v: usize,
    left: usize,
    from: usize,
    open: &mut [usize],
    edges: &mut Vec<Edge>,
    visit: &mut impl FnMut(&Dag),
) {
    if left == 0 {
        let indeg = edges.iter().filter(|e| e.1 == v).count();
        open[v] = 3 - indeg;
        walk(n, v + 1, open, edges, visit);
        open[v] = 0;
        return;
    }
    for u in from..v {
        if open[u] == 0 {
            continue;
        }
        open[u] -= 1;
        edges.push((u, v));
        choose(n, v, left - 1, u, open, edges, visit);
        edges.pop();
        open[u] += 1;
    }
}

/// Every ordered 3-regular graph on `n` vertices.
pub fn all_three_regular(n: usize) -> Vec<Dag> {
    let mut out = Vec::new();
    for_each_three_regular(n, |d| out.push(d.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts_and_validity() {
        let two = all_three_regular(2);
        assert_eq!(two.len(), 1);
        for n in [4, 6, 8] {
            let all = all_three_regular(n);
            assert!(!all.is_empty());
            assert!(all.iter().all(|d| d.is_valid()));
            let mut sorted: Vec<_> = all.iter().map(|d| d.edges().to_vec()).collect();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }
}
