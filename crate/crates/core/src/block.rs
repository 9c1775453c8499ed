//! Exact maximisation of path counts across a block of consecutive vertices.
//!
//! A block has real vertices `1..=k` on a Hamiltonian path plus two dummy
//! vertices: `0` stands for everything before the block and `k + 1` for
//! everything after it. Every real vertex has degree 3 (dummy edges count),
//! all edges point forward, and every interval `[i, j]` with `i < j` has at
//! least three edges crossing its boundary. The objective is `x_k`, the path
//! count at the last real vertex, with `x_0 = x_1 = 1`.
//!
//! Degree 3 plus the forced path edges means each real vertex carries exactly
//! one extra edge endpoint: it is either the tail of one arc (outgoing) or the
//! head of one arc (incoming). The solver assigns, vertex by vertex, which arc
//! ends there, and bounds the rest of the block with a table of optimal values
//! of strictly shorter *suffix* problems, solved first.

use num_bigint::BigUint;
use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest block accepted by the solver; path counts stay below `2^k`.
pub const MAX_BLOCK: usize = 60;
/// Largest block accepted by the exhaustive oracle.
pub const MAX_BRUTE_BLOCK: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockInstance {
    pub k: usize,
}

impl BlockInstance {
    pub fn new(k: usize) -> Result<BlockInstance> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("block length {k} < 2")));
        }
        if k > MAX_BLOCK {
            return Err(Error::OutOfRange(format!("block length {k} > {MAX_BLOCK}")));
        }
        Ok(BlockInstance { k })
    }
}

/// An edge assignment for a block, stored as the arc entering each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockAssignment {
    /// `feed[j - 1]` is `None` when vertex `j` is outgoing, otherwise the tail
    /// of its incoming arc (`0` for the dummy predecessor).
    feed: Vec<Option<usize>>,
}

impl BlockAssignment {
    pub fn from_feeds(feed: Vec<Option<usize>>) -> BlockAssignment {
        BlockAssignment { feed }
    }

    pub fn k(&self) -> usize {
        self.feed.len()
    }

    pub fn feeds(&self) -> &[Option<usize>] {
        &self.feed
    }

    /// All edges with `a[i][j] = 1`, path and dummy edges included, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut used = vec![false; k + 1];
        let mut edges: Vec<(usize, usize)> = (0..=k).map(|i| (i, i + 1)).collect();
        for (idx, f) in self.feed.iter().enumerate() {
            if let Some(t) = *f {
                edges.push((t, idx + 1));
                used[t] = true;
            }
        }
        for (idx, f) in self.feed.iter().enumerate() {
            let v = idx + 1;
            if f.is_none() && !used[v] {
                edges.push((v, k + 1));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Code used for the canonical ordering of witnesses: `0` for an outgoing
    /// vertex, `1 + tail` for an incoming one.
    pub fn codes(&self) -> Vec<usize> {
        self.feed
            .iter()
            .map(|f| f.map_or(0, |t| t + 1))
            .collect()
    }
}

/// Re-evaluates every model constraint from an explicit edge list over
/// vertices `0..=k+1` and returns `x_k`.
pub fn check_assignment(k: usize, edges: &[(usize, usize)]) -> Result<u64> {
    let size = k + 2;
    let mut a = vec![vec![false; size]; size];
    for &(i, j) in edges {
        if j >= size || i >= j {
            return Err(Error::Precondition(format!("edge ({i},{j}) is not forward within 0..={}", k + 1)));
        }
        if a[i][j] {
            return Err(Error::Precondition(format!("edge ({i},{j}) listed twice")));
        }
        a[i][j] = true;
    }
    for i in 0..=k {
        if !a[i][i + 1] {
            return Err(Error::Precondition(format!("path edge ({i},{}) missing", i + 1)));
        }
    }
    for i in 1..=k {
        let deg = (0..i).filter(|&j| a[j][i]).count() + (i + 1..size).filter(|&j| a[i][j]).count();
        if deg != 3 {
            return Err(Error::Precondition(format!("vertex {i} has degree {deg}")));
        }
    }
    for i in 1..k {
        for j in i + 1..=k {
            let crossing: usize = (i..=j)
                .map(|m| {
                    (j + 1..size).filter(|&l| a[m][l]).count() + (0..i).filter(|&l| a[l][m]).count()
                })
                .sum();
            if crossing < 3 {
                return Err(Error::Precondition(format!(
                    "interval [{i},{j}] has only {crossing} crossing edges"
                )));
            }
        }
    }
    let mut x = vec![0u64; k + 1];
    x[0] = 1;
    for i in 1..=k {
        x[i] = (0..i).filter(|&j| a[j][i]).map(|j| x[j]).sum();
    }
    if x[1] != 1 {
        return Err(Error::Precondition("x_1 must equal 1".into()));
    }
    Ok(x[k])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSolution {
    pub k: usize,
    /// Best `x_k` found; the maximum when `proven_optimal`.
    #[serde(with = "crate::decimal")]
    pub f: BigUint,
    pub assignment: BlockAssignment,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    /// Upper bound used at the root of the search.
    #[serde(with = "crate::decimal")]
    pub root_bound: BigUint,
}

/// Node limits for [`solve_block`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: u64::MAX };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::UNLIMITED
    }
}

/// Optimal values of the suffix relaxation, indexed by length.
///
/// A suffix of length `r` behaves like a block whose first vertex may also be
/// fed by the dummy predecessor; scaled by the path count entering it, its
/// optimum bounds how much any `r` trailing vertices can multiply the count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixTable {
    values: Vec<u64>,
    proven: bool,
}

impl SuffixTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry `r` (with `r = 0` equal to 1).
    pub fn get(&self, r: usize) -> u64 {
        self.values[r]
    }

    pub fn is_proven(&self) -> bool {
        self.proven
    }

    /// Builds the table up to and including length `max_len`.
    pub fn build(max_len: usize, budget: &mut u64) -> SuffixTable {
        let mut table = SuffixTable {
            values: vec![1],
            proven: true,
        };
        table.extend_to(max_len, budget);
        table
    }

    pub fn extend_to(&mut self, max_len: usize, budget: &mut u64) {
        while self.values.len() <= max_len {
            let r = self.values.len();
            let value = if self.proven { self.solve_next(r, budget) } else { None };
            match value {
                Some(v) => self.values.push(v),
                None => {
                    // An unproven entry would make every later bound unsound,
                    // so fall back to the trivial bound 2^r from here on.
                    self.proven = false;
                    self.values.push(1u64 << r.min(62));
                }
            }
        }
    }

    /// Entry `r` from a seeded search. Entries never decrease (prepend an
    /// outgoing vertex whose arc leaves the block), so entry `r - 1` is always
    /// a valid seed; a larger extrapolated seed is tried first and lowered
    /// whenever the search shows the optimum lies below it.
    fn solve_next(&self, r: usize, budget: &mut u64) -> Option<u64> {
        let prev = self.values[r - 1];
        let mut seed = if r >= 3 {
            let est = prev as u128 * prev as u128 / self.values[r - 2] as u128;
            ((est * 97 / 100) as u64).max(prev)
        } else {
            prev
        };
        loop {
            let mut s = Searcher::new(r, true, self, *budget);
            s.best = seed - 1;
            s.maximise();
            *budget = budget.saturating_sub(s.nodes);
            if s.exhausted {
                return None;
            }
            if s.best >= seed {
                return Some(s.best);
            }
            if seed == prev {
                unreachable!("seed {prev} is attained by construction");
            }
            seed = (seed - (seed - prev) / 2 - 1).max(prev);
        }
    }
}

struct Searcher<'a> {
    len: usize,
    head_first: bool,
    table: &'a SuffixTable,
    feed: Vec<Option<usize>>,
    x: Vec<u64>,
    open: Vec<usize>,
    best: u64,
    best_feed: Vec<Option<usize>>,
    target: Option<u64>,
    found: bool,
    fallback_best: u64,
    fallback_feed: Vec<Option<usize>>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl<'a> Searcher<'a> {
    fn new(len: usize, head_first: bool, table: &'a SuffixTable, max_nodes: u64) -> Self {
        Searcher {
            len,
            head_first,
            table,
            feed: vec![None; len + 1],
            x: vec![1; len + 1],
            open: Vec::with_capacity(len),
            best: 0,
            best_feed: Vec::new(),
            target: None,
            found: false,
            fallback_best: 0,
            fallback_feed: Vec::new(),
            nodes: 0,
            max_nodes,
            exhausted: false,
        }
    }

    fn maximise(&mut self) {
        self.dfs(1);
    }

    /// Finds the first assignment in canonical order reaching `target`.
    fn first_reaching(&mut self, target: u64) {
        self.target = Some(target);
        self.best = 0;
        self.found = false;
        self.dfs(1);
    }

    /// Whether some interval ending at `j` has become closed.
    fn closes_interval(&self, j: usize) -> bool {
        let max_open = self.open.last().copied().unwrap_or(0);
        let mut min_feed = usize::MAX;
        if let Some(t) = self.feed[j] {
            min_feed = t;
        }
        let mut i = j;
        while i > max_open + 1 {
            i -= 1;
            if let Some(t) = self.feed[i] {
                min_feed = min_feed.min(t);
            }
            if min_feed >= i {
                return true;
            }
        }
        false
    }

    fn bound(&self, j: usize) -> u128 {
        self.x[j] as u128 * self.table.get(self.len - j) as u128
    }

    fn prunes(&self, j: usize) -> bool {
        let b = self.bound(j);
        match self.target {
            Some(t) => b < t as u128,
            None => b <= self.best as u128,
        }
    }

    fn leaf(&mut self) {
        let v = self.x[self.len];
        match self.target {
            Some(t) => {
                if v > self.fallback_best {
                    self.fallback_best = v;
                    self.fallback_feed = self.feed[1..].to_vec();
                }
                if v == t {
                    self.found = true;
                    self.best = v;
                    self.best_feed = self.feed[1..].to_vec();
                }
            }
            None => {
                if v > self.best {
                    self.best = v;
                    self.best_feed = self.feed[1..].to_vec();
                }
            }
        }
    }

    fn done(&self) -> bool {
        self.found || self.exhausted
    }

    fn dfs(&mut self, j: usize) {
        if j > self.len {
            self.leaf();
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }
        let canonical = self.target.is_some();
        let can_tail = j < self.len;
        let can_head = j >= 2 || self.head_first;

        if canonical {
            if can_tail {
                self.try_tail(j);
            }
            if self.done() || !can_head {
                return;
            }
            self.try_head(j, 0);
            let limit = self.open.partition_point(|&p| p + 2 <= j);
            let mut idx = 0;
            while idx < limit && !self.done() {
                let p = self.open[idx];
                self.try_head(j, p);
                idx += 1;
            }
        } else {
            if can_head {
                // Most recent tails carry the largest counts; try them first.
                let limit = self.open.partition_point(|&p| p + 2 <= j);
                for idx in (0..limit).rev() {
                    let p = self.open[idx];
                    self.try_head(j, p);
                    if self.exhausted {
                        return;
                    }
                }
            }
            if can_tail {
                self.try_tail(j);
                if self.exhausted {
                    return;
                }
            }
            if can_head {
                self.try_head(j, 0);
            }
        }
    }

    fn try_tail(&mut self, j: usize) {
        self.x[j] = self.x[j - 1];
        self.feed[j] = None;
        self.open.push(j);
        if !self.closes_interval(j) && !self.prunes(j) {
            self.dfs(j + 1);
        }
        self.open.pop();
    }

    fn try_head(&mut self, j: usize, tail: usize) {
        let removed_at = if tail > 0 {
            let idx = self.open.binary_search(&tail).expect("tail is open");
            self.open.remove(idx);
            Some(idx)
        } else {
            None
        };
        let add = if tail == 0 { 1 } else { self.x[tail] };
        self.x[j] = self.x[j - 1] + add;
        self.feed[j] = Some(tail);
        if !self.closes_interval(j) && !self.prunes(j) {
            self.dfs(j + 1);
        }
        self.feed[j] = None;
        if let Some(idx) = removed_at {
            self.open.insert(idx, tail);
        }
    }
}

/// Solves one block exactly (within `budget`), returning the canonical witness:
/// the optimal assignment whose [`BlockAssignment::codes`] sequence is
/// lexicographically smallest.
pub fn solve_block(inst: BlockInstance, budget: Budget) -> BlockSolution {
    let mut remaining = budget.max_nodes;
    let table = SuffixTable::build(inst.k - 1, &mut remaining);
    solve_block_with_table(inst, &table, remaining)
}

/// As [`solve_block`], reusing a suffix table covering lengths below `k`.
pub fn solve_block_with_table(inst: BlockInstance, table: &SuffixTable, max_nodes: u64) -> BlockSolution {
    let k = inst.k;
    assert!(table.len() >= k, "suffix table too short");
    // With vertex 1 outgoing, the rest of the block is a suffix problem of
    // length k - 1 whose entry count is 1, so the table entry bounds f; and
    // any suffix solution extends to a block by sending vertex 1's arc out of
    // the block, so the bound is attained.
    let bound = table.get(k - 1);
    let mut c = Searcher::new(k, false, table, max_nodes);
    c.first_reaching(bound);
    let proven = c.found && table.is_proven();
    let (f, feed) = if c.found {
        (bound, c.best_feed)
    } else {
        (c.fallback_best, c.fallback_feed)
    };
    BlockSolution {
        k,
        f: BigUint::from(f),
        assignment: BlockAssignment::from_feeds(feed),
        proven_optimal: proven,
        nodes_explored: c.nodes,
        root_bound: BigUint::from(bound),
    }
}

/// Exhaustive oracle: enumerates every feasible assignment by choosing, for
/// each vertex in turn, where its extra edge goes, and evaluates each complete
/// assignment with [`check_assignment`].
pub fn brute_block(k: usize) -> Result<BlockSolution> {
    if !(2..=MAX_BRUTE_BLOCK).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "exhaustive block search supports 2..={MAX_BRUTE_BLOCK}, got {k}"
        )));
    }
    struct Walk {
        k: usize,
        partner: Vec<Option<usize>>,
        arcs: Vec<(usize, usize)>,
        best: Option<(u64, Vec<(usize, usize)>)>,
        leaves: u64,
    }
    impl Walk {
        fn go(&mut self, i: usize) {
            let k = self.k;
            if i > k {
                self.leaves += 1;
                let mut edges: Vec<(usize, usize)> = (0..=k).map(|v| (v, v + 1)).collect();
                edges.extend_from_slice(&self.arcs);
                if let Ok(x) = check_assignment(k, &edges) {
                    let better = match &self.best {
                        None => true,
                        Some((b, w)) => x > *b || (x == *b && codes_of(k, &edges) < codes_of(k, w)),
                    };
                    if better {
                        edges.sort_unstable();
                        self.best = Some((x, edges));
                    }
                }
                return;
            }
            if self.partner[i].is_some() {
                self.go(i + 1);
                return;
            }
            // Arc from the dummy predecessor.
            if i >= 2 {
                self.partner[i] = Some(0);
                self.arcs.push((0, i));
                self.go(i + 1);
                self.arcs.pop();
                self.partner[i] = None;
            }
            // Arc to a later real vertex or to the dummy successor.
            for j in i + 2..=k + 1 {
                if j <= k && self.partner[j].is_some() {
                    continue;
                }
                self.partner[i] = Some(j);
                if j <= k {
                    self.partner[j] = Some(i);
                }
                self.arcs.push((i, j));
                self.go(i + 1);
                self.arcs.pop();
                if j <= k {
                    self.partner[j] = None;
                }
                self.partner[i] = None;
            }
        }
    }
    let mut w = Walk {
        k,
        partner: vec![None; k + 2],
        arcs: Vec::new(),
        best: None,
        leaves: 0,
    };
    w.go(1);
    let (x, edges) = w
        .best
        .ok_or_else(|| Error::Precondition(format!("no feasible assignment for k = {k}")))?;
    Ok(BlockSolution {
        k,
        f: BigUint::from(x),
        assignment: assignment_from_edges(k, &edges),
        proven_optimal: true,
        nodes_explored: w.leaves,
        root_bound: BigUint::from(x),
    })
}

fn codes_of(k: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    assignment_from_edges(k, edges).codes()
}

/// Reads the feed representation off a full edge list.
pub fn assignment_from_edges(k: usize, edges: &[(usize, usize)]) -> BlockAssignment {
    let mut feed = vec![None; k];
    for &(i, j) in edges {
        if (1..=k).contains(&j) && j != i + 1 {
            feed[j - 1] = Some(i);
        }
    }
    BlockAssignment::from_feeds(feed)
}

/// Squared per-vertex growth `f^(2/k)`.
pub fn growth_factor<T: Float + FromPrimitive>(f: T, k: usize) -> T {
    let two_over_k = T::from_f64(2.0 / k as f64).expect("representable exponent");
    f.powf(two_over_k)
}

/// [`growth_factor`] for an exact count, evaluated in `f64`.
pub fn growth_factor_of(f: &BigUint, k: usize) -> f64 {
    growth_factor(f.to_f64().unwrap_or(f64::INFINITY), k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub k: usize,
    #[serde(with = "crate::decimal")]
    pub f: BigUint,
    pub g2: f64,
    pub proven: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub argmax_k: usize,
    /// Largest squared growth factor over the window; the base of the bound.
    pub bound_base: f64,
    /// Largest block optimum below the window, standing in for the constant
    /// absorbed by the final short block. `None` when those blocks were not
    /// evaluated.
    #[serde(with = "crate::decimal::option")]
    pub final_block_constant: Option<BigUint>,
    /// False when any row (or the constant) is not proven optimal.
    pub rigorous: bool,
}

impl GrowthReport {
    /// `k,f,g2` with six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,f,g2\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{:.6}\n", r.k, r.f, r.g2));
        }
        out
    }
}

/// Where block optima come from when assembling the bound.
pub enum BlockValues<'a> {
    /// Solve every block with the exact solver.
    Solve(Budget),
    /// Use previously established optima (e.g. a published table); blocks
    /// below the window are not evaluated.
    Known(&'a [(usize, BigUint)]),
}

/// Builds the growth table over `[k_lo, k_hi]` and the resulting bound base.
pub fn assemble_bound(k_lo: usize, k_hi: usize, values: BlockValues<'_>) -> Result<GrowthReport> {
    if k_hi < k_lo + 5 {
        return Err(Error::OutOfRange(format!(
            "window [{k_lo},{k_hi}] must cover at least six consecutive block lengths"
        )));
    }
    if k_lo < 2 {
        return Err(Error::OutOfRange("blocks need at least 2 vertices".into()));
    }
    let mut rows = Vec::new();
    let mut constant = None;
    let mut rigorous = true;
    match values {
        BlockValues::Known(known) => {
            for k in k_lo..=k_hi {
                let f = known
                    .iter()
                    .find(|(kk, _)| *kk == k)
                    .map(|(_, f)| f.clone())
                    .ok_or_else(|| Error::OutOfRange(format!("no value supplied for k = {k}")))?;
                rows.push(GrowthRow {
                    k,
                    g2: growth_factor_of(&f, k),
                    f,
                    proven: true,
                });
            }
            let below: Vec<&BigUint> = (2..k_lo)
                .filter_map(|k| known.iter().find(|(kk, _)| *kk == k).map(|(_, f)| f))
                .collect();
            if below.len() == k_lo - 2 {
                constant = below.into_iter().max().cloned();
            }
        }
        BlockValues::Solve(budget) => {
            let mut remaining = budget.max_nodes;
            let table = SuffixTable::build(k_hi - 1, &mut remaining);
            let mut best_below: Option<BigUint> = None;
            for k in 2..=k_hi {
                let sol = solve_block_with_table(BlockInstance::new(k)?, &table, remaining);
                remaining = remaining.saturating_sub(sol.nodes_explored);
                rigorous &= sol.proven_optimal;
                if k < k_lo {
                    best_below = Some(match best_below {
                        Some(b) if b >= sol.f => b,
                        _ => sol.f.clone(),
                    });
                } else {
                    rows.push(GrowthRow {
                        k,
                        g2: growth_factor_of(&sol.f, k),
                        f: sol.f,
                        proven: sol.proven_optimal,
                    });
                }
            }
            constant = best_below;
        }
    }
    let (argmax_k, bound_base) = rows
        .iter()
        .fold((0, f64::NEG_INFINITY), |acc, r| if r.g2 > acc.1 { (r.k, r.g2) } else { acc });
    Ok(GrowthReport {
        rows,
        argmax_k,
        bound_base,
        final_block_constant: constant,
        rigorous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_matches_exhaustive_oracle() {
        for k in 2..=11 {
            let exact = brute_block(k).unwrap();
            let sol = solve_block(BlockInstance::new(k).unwrap(), Budget::UNLIMITED);
            assert!(sol.proven_optimal);
            assert_eq!(sol.f, exact.f, "k = {k}");
            assert_eq!(sol.assignment, exact.assignment, "k = {k}");
            let x = check_assignment(k, &sol.assignment.edges()).unwrap();
            assert_eq!(BigUint::from(x), sol.f);
            assert!(sol.root_bound >= sol.f);
        }
    }

    #[test]
    fn checker_rejects_closed_interval() {
        // [2,5] is crossed only by the two path edges.
        let mut edges: Vec<(usize, usize)> = (0..=6).map(|i| (i, i + 1)).collect();
        edges.extend([(2, 4), (3, 5), (1, 7), (0, 6)]);
        let err = check_assignment(6, &edges).unwrap_err();
        assert!(err.to_string().contains("[2,5]"), "{err}");
    }

    #[test]
    fn growth_factor_matches_table_row() {
        let g: f64 = growth_factor(11117.0, 36);
        assert!((g - 1.6779).abs() < 5e-5);
        let g32: f32 = growth_factor(8233.0f32, 35);
        assert!((g32 - 1.6740).abs() < 5e-4);
    }

    #[test]
    fn csv_format() {
        let known: Vec<(usize, BigUint)> = (10..=15).map(|k| (k, BigUint::from(k as u32 * 3))).collect();
        let r = assemble_bound(10, 15, BlockValues::Known(&known)).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("k,f,g2\n10,30,"));
        assert_eq!(csv.lines().count(), 7);
        assert!(r.final_block_constant.is_none());
        assert!(assemble_bound(10, 14, BlockValues::Known(&known)).is_err());
    }
}
