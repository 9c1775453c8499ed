//! Tuple encoding of graphs on a directed Hamiltonian path.
//!
//! Every non-path edge (an *arc*) is labelled `1..=n` by the position of its
//! tail; `rho(i)` is the largest label whose tail precedes the head of arc `i`.
//! Heads sharing a value of `rho` are placed in increasing label order, which
//! makes decoding a function.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::count::{self, Count};
use crate::dag::{Dag, DegreeProfile, Edge};
use crate::error::{Error, Result};

/// Which graph family a tuple describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TupleClass {
    /// `n` entries, `2n` vertices, source and sink of degree 2.
    BoundaryDeg2,
    /// `n + 1` entries decoded on `2n + 2` vertices, after which the first two
    /// and the last two vertices are merged into a degree-3 source and sink.
    Merged3Regular,
}

impl FromStr for TupleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<TupleClass> {
        match s {
            "boundary" | "boundary-deg2" => Ok(TupleClass::BoundaryDeg2),
            "merged" | "merged-3regular" => Ok(TupleClass::Merged3Regular),
            other => Err(Error::OutOfRange(format!("unknown tuple class '{other}'"))),
        }
    }
}

impl fmt::Display for TupleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleClass::BoundaryDeg2 => "boundary",
            TupleClass::Merged3Regular => "merged",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RhoTuple {
    values: Vec<usize>,
    class: TupleClass,
}

impl RhoTuple {
    pub fn new(values: Vec<usize>, class: TupleClass) -> RhoTuple {
        RhoTuple { values, class }
    }

    pub fn boundary(values: &[usize]) -> RhoTuple {
        RhoTuple::new(values.to_vec(), TupleClass::BoundaryDeg2)
    }

    pub fn merged(values: &[usize]) -> RhoTuple {
        RhoTuple::new(values.to_vec(), TupleClass::Merged3Regular)
    }

    /// Parses the comma-separated text form, e.g. `"2,4,5,4,5"`.
    pub fn parse(text: &str, class: TupleClass) -> Result<RhoTuple> {
        let values = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidTuple(format!("'{}' is not a positive integer", s.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RhoTuple::new(values, class))
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn class(&self) -> TupleClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `n` in "a graph on `2n` vertices".
    pub fn half_vertex_count(&self) -> usize {
        match self.class {
            TupleClass::BoundaryDeg2 => self.values.len(),
            TupleClass::Merged3Regular => self.values.len().saturating_sub(1),
        }
    }

    /// Value of `rho` for the 1-based arc label `i`.
    pub fn rho(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Structural class invariants, ignoring connectivity.
    pub fn check_shape(&self) -> Result<()> {
        let len = self.values.len();
        match self.class {
            TupleClass::BoundaryDeg2 if len == 0 => {
                return Err(Error::InvalidTuple("tuple is empty".into()))
            }
            TupleClass::Merged3Regular if len < 2 => {
                return Err(Error::InvalidTuple("merged tuples need at least 2 entries".into()))
            }
            _ => {}
        }
        for (idx, &r) in self.values.iter().enumerate() {
            let i = idx + 1;
            if r < i {
                return Err(Error::InvalidTuple(format!("rho({i}) = {r} < {i}")));
            }
            if r > len {
                return Err(Error::InvalidTuple(format!("rho({i}) = {r} exceeds {len}")));
            }
        }
        if self.class == TupleClass::Merged3Regular {
            if self.values[0] < 2 {
                return Err(Error::InvalidTuple("rho(1) must be at least 2".into()));
            }
            if self.values.iter().filter(|&&r| r == len).count() < 2 {
                return Err(Error::InvalidTuple(format!("value {len} must appear at least twice")));
            }
        }
        Ok(())
    }

    /// Canonical representative: for merged tuples the two arcs leaving the
    /// merged source are interchangeable, so `rho(1) >= rho(2)` is enforced.
    pub fn is_canonical(&self) -> bool {
        self.class == TupleClass::BoundaryDeg2 || self.values[0] >= self.values[1]
    }
}

impl fmt::Display for RhoTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Positions of arc tails and heads in the unmerged `2 * len` vertex layout.
fn layout(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = values.len();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); len + 1];
    for (idx, &r) in values.iter().enumerate() {
        groups[r].push(idx);
    }
    let mut tail = vec![0; len];
    let mut head = vec![0; len];
    let mut pos = 0;
    for m in 1..=len {
        pos += 1;
        tail[m - 1] = pos;
        for &a in &groups[m] {
            pos += 1;
            head[a] = pos;
        }
    }
    (tail, head)
}

/// Builds the graph a tuple describes.
pub fn decode(t: &RhoTuple) -> Result<Dag> {
    t.check_shape()?;
    let len = t.values.len();
    let (tail, head) = layout(&t.values);
    let total = 2 * len;
    match t.class {
        TupleClass::BoundaryDeg2 => {
            let mut edges: Vec<Edge> = (1..total).map(|i| (i, i + 1)).collect();
            edges.extend(tail.iter().zip(&head).map(|(&u, &v)| (u, v)));
            Dag::new(total, edges, DegreeProfile::BoundaryDeg2)
        }
        TupleClass::Merged3Regular => {
            let merged = total - 2;
            let map = |v: usize| {
                if v <= 2 {
                    1
                } else if v >= total - 1 {
                    merged
                } else {
                    v - 1
                }
            };
            let mut edges: Vec<Edge> = (1..merged).map(|i| (i, i + 1)).collect();
            edges.extend(tail.iter().zip(&head).map(|(&u, &v)| (map(u), map(v))));
            Dag::new(merged, edges, DegreeProfile::ThreeRegular)
        }
    }
}

/// Reads the tuple off a graph on a directed Hamiltonian path.
pub fn encode(dag: &Dag) -> Result<RhoTuple> {
    dag.ensure_valid()?;
    if !dag.is_on_ham_path() {
        return Err(Error::Precondition("graph is not on a Hamiltonian path".into()));
    }
    let n = dag.vertex_count();
    let arcs = dag.replace_edges(&(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>(), &[])?;
    match dag.profile() {
        DegreeProfile::BoundaryDeg2 => Ok(RhoTuple::new(
            rho_from_arcs(n, arcs.edges())?,
            TupleClass::BoundaryDeg2,
        )),
        DegreeProfile::ThreeRegular => {
            // Split the source into two outgoing vertices and the sink into two
            // incoming ones, giving a boundary-degree-2 layout on n + 2 vertices.
            let mut next_sink = n;
            let mut unmerged = Vec::with_capacity(arcs.edges().len());
            let mut source_used = 0;
            for &(u, v) in arcs.edges() {
                let head = if v == n {
                    next_sink += 1;
                    next_sink
                } else {
                    v + 1
                };
                let tail = if u == 1 { 0 } else { u + 1 };
                unmerged.push((tail, head));
            }
            // The arc reaching further gets label 1, so rho(1) >= rho(2).
            let mut source_arcs: Vec<usize> = unmerged
                .iter()
                .enumerate()
                .filter(|(_, e)| e.0 == 0)
                .map(|(i, _)| i)
                .collect();
            source_arcs.sort_by(|&a, &b| unmerged[b].1.cmp(&unmerged[a].1));
            for &i in &source_arcs {
                source_used += 1;
                unmerged[i].0 = source_used;
            }
            if source_used != 2 || next_sink != n + 2 {
                return Err(Error::Precondition(
                    "source and sink must each carry exactly two arcs".into(),
                ));
            }
            Ok(RhoTuple::new(
                rho_from_arcs(n + 2, &unmerged)?,
                TupleClass::Merged3Regular,
            ))
        }
        DegreeProfile::Any => Err(Error::Precondition(
            "only boundary-degree-2 and 3-regular graphs have a tuple".into(),
        )),
    }
}

fn rho_from_arcs(vertices: usize, arcs: &[Edge]) -> Result<Vec<usize>> {
    let mut endpoint = vec![0u8; vertices + 1];
    for &(u, v) in arcs {
        endpoint[u] += 1;
        endpoint[v] += 1;
    }
    if endpoint[1..].iter().any(|&c| c != 1) {
        return Err(Error::Precondition(
            "every vertex must carry exactly one arc endpoint".into(),
        ));
    }
    let mut sorted = arcs.to_vec();
    sorted.sort_unstable();
    let tails: Vec<usize> = sorted.iter().map(|e| e.0).collect();
    Ok(sorted
        .iter()
        .map(|&(_, v)| tails.partition_point(|&t| t < v))
        .collect())
}

/// A named validity condition and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    /// Human-readable location of the first violation.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

/// Whether the tuple describes a graph of its class with the requested edge
/// connectivity (1, 2 or 3).
pub fn is_valid(t: &RhoTuple, connectivity: usize) -> bool {
    validity_report(t, connectivity).is_valid()
}

/// Evaluates every condition separately; used for diagnostics.
pub fn validity_report(t: &RhoTuple, connectivity: usize) -> ValidityReport {
    let mut checks = Vec::new();
    let shape = t.check_shape();
    checks.push(ConditionCheck {
        name: "shape".into(),
        holds: shape.is_ok(),
        witness: shape.err().map(|e| e.to_string()),
    });
    if !(1..=3).contains(&connectivity) {
        checks.push(ConditionCheck {
            name: "connectivity-level".into(),
            holds: false,
            witness: Some(format!("{connectivity} not in 1..=3")),
        });
        return ValidityReport { checks };
    }
    if !checks[0].holds {
        return ValidityReport { checks };
    }
    let v = &t.values;
    let n = t.half_vertex_count();
    match (t.class, connectivity) {
        (_, 1) | (TupleClass::BoundaryDeg2, 2) => {}
        (TupleClass::BoundaryDeg2, _) => {
            let w = closed_label_interval(v, 1, v.len(), true);
            checks.push(interval_check(w));
        }
        (TupleClass::Merged3Regular, level) => {
            let need = if level == 2 { 1 } else { 2 };
            let start = if level == 2 { 1 } else { 2 };
            let bad = (start..=n).find(|&k| open_arcs_after(v, k) < need);
            checks.push(ConditionCheck {
                name: if level == 2 { "no-bridge" } else { "segment-balance" }.into(),
                holds: bad.is_none(),
                witness: bad.map(|k| {
                    format!(
                        "only {} arc(s) leave the segment ending with label group {k}",
                        open_arcs_after(v, k)
                    )
                }),
            });
            if level == 3 {
                let w = closed_label_interval(v, 3, n, false);
                checks.push(interval_check(w));
            }
        }
    }
    ValidityReport { checks }
}

fn interval_check(w: Option<(usize, usize)>) -> ConditionCheck {
    ConditionCheck {
        name: "interval".into(),
        holds: w.is_none(),
        witness: w.map(|(i, k)| format!("[{i},{k}]")),
    }
}

/// Arcs whose tail lies in label groups `1..=k` and whose head lies beyond.
fn open_arcs_after(v: &[usize], k: usize) -> usize {
    k - v.iter().filter(|&&r| r <= k).count()
}

/// First `[i, k]` with `lo <= i <= k <= hi` such that the arcs whose heads
/// fall in label groups `i..=k` are exactly the arcs `i..=k`. When
/// `exclude_full` is set the interval `[1, len]` is skipped.
fn closed_label_interval(
    v: &[usize],
    lo: usize,
    hi: usize,
    exclude_full: bool,
) -> Option<(usize, usize)> {
    let len = v.len();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); len + 1];
    for (idx, &r) in v.iter().enumerate() {
        groups[r].push(idx + 1);
    }
    for i in lo..=hi {
        let (mut count, mut min_j, mut max_j) = (0usize, usize::MAX, 0usize);
        for k in i..=hi {
            for &j in &groups[k] {
                count += 1;
                min_j = min_j.min(j);
                max_j = max_j.max(j);
            }
            if exclude_full && i == 1 && k == len {
                continue;
            }
            if count == k - i + 1 && min_j >= i && max_j <= k {
                return Some((i, k));
            }
        }
    }
    None
}

/// Path counts at every arc's outgoing vertex plus the source-to-sink total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleMuOf<C> {
    pub arc_mu: Vec<C>,
    pub total: C,
}

/// Counts paths by the final arc used: the count at the outgoing vertex of
/// arc `i + 1` is one plus the counts of all arcs with `rho <= i`.
pub fn tuple_mu_as<C: Count>(t: &RhoTuple) -> Result<TupleMuOf<C>> {
    t.check_shape()?;
    let v = &t.values;
    let len = v.len();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); len + 1];
    for (idx, &r) in v.iter().enumerate() {
        groups[r].push(idx);
    }
    let mut arc_mu: Vec<C> = Vec::with_capacity(len);
    let mut running = C::one();
    for i in 0..len {
        arc_mu.push(running.clone());
        for &a in &groups[i + 1] {
            running = count::add(&running, &arc_mu[a]).ok_or(Error::Overflow)?;
        }
    }
    Ok(TupleMuOf {
        arc_mu,
        total: running,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::edge_connectivity_at_least;
    use crate::dag::count_paths_as;
    use crate::fixtures;

    fn arcs_of(d: &Dag) -> Vec<Edge> {
        let n = d.vertex_count();
        d.replace_edges(&(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>(), &[])
            .unwrap()
            .edges()
            .to_vec()
    }

    #[test]
    fn decode_first_example() {
        let d = decode(&RhoTuple::boundary(&[2, 4, 5, 4, 5])).unwrap();
        assert_eq!(d.vertex_count(), 10);
        assert_eq!(arcs_of(&d), vec![(1, 3), (2, 6), (4, 9), (5, 7), (8, 10)]);
        assert_eq!(d.profile(), DegreeProfile::BoundaryDeg2);
    }

    #[test]
    fn decode_constant_tuple() {
        let d = decode(&RhoTuple::boundary(&[4, 4, 4, 4])).unwrap();
        assert_eq!(arcs_of(&d), vec![(1, 5), (2, 6), (3, 7), (4, 8)]);
        assert_eq!(count_paths_as::<u64>(&d).unwrap().total, 5);
        assert_eq!(encode(&d).unwrap(), RhoTuple::boundary(&[4, 4, 4, 4]));
    }

    #[test]
    fn decode_merged_two_edge_extremum() {
        let d = decode(&RhoTuple::merged(&[5, 2, 3, 4, 5])).unwrap();
        assert_eq!(d.vertex_count(), 8);
        assert_eq!(d.multiplicity(1, 2), 2);
        assert_eq!(d.multiplicity(3, 4), 2);
        assert_eq!(d.multiplicity(7, 8), 2);
        assert!(d.has_edge(1, 8));
        assert_eq!(count_paths_as::<u64>(&d).unwrap().total, 17);
    }

    #[test]
    fn encode_roundtrips_examples() {
        let t = RhoTuple::boundary(&[2, 4, 5, 4, 5]);
        assert_eq!(encode(&decode(&t).unwrap()).unwrap(), t);
        for vals in [&[2, 2, 3, 4, 6, 6][..], &[5, 2, 3, 4, 5], &[5, 3, 3, 5, 5], &[2, 2]] {
            let t = RhoTuple::merged(vals);
            assert_eq!(encode(&decode(&t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn encode_wedge() {
        let t = encode(&fixtures::wedge12()).unwrap();
        assert_eq!(t, RhoTuple::merged(&[7, 3, 4, 5, 6, 7, 7]));
        let total = count_paths_as::<u64>(&decode(&t).unwrap()).unwrap().total;
        assert_eq!(total, 22);
        assert_eq!(tuple_mu_as::<u64>(&t).unwrap().total, 22);
    }

    #[test]
    fn encode_rejects_non_ham() {
        assert!(encode(&fixtures::six_vertex()).is_err());
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid(&RhoTuple::boundary(&[2, 4, 5, 4, 5]), 3));
        let r = validity_report(&RhoTuple::boundary(&[2, 2, 4, 4]), 3);
        assert!(!r.is_valid());
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "interval");
        assert_eq!(f.witness.as_deref(), Some("[1,2]"));
        for n in 2..8 {
            assert!(is_valid(&RhoTuple::boundary(&vec![n; n]), 3));
        }
        assert!(!is_valid(&RhoTuple::boundary(&[1, 3, 2]), 1));
        assert!(!is_valid(&RhoTuple::merged(&[1, 2]), 1));
        assert!(is_valid(&RhoTuple::merged(&[3, 2, 3]), 1));
        assert!(!is_valid(&RhoTuple::merged(&[2, 2, 3]), 1));
        assert!(!is_valid(&RhoTuple::boundary(&[1]), 4));
    }

    #[test]
    fn merged_bridge_condition() {
        assert!(is_valid(&RhoTuple::merged(&[5, 2, 3, 4, 5]), 2));
        assert!(!is_valid(&RhoTuple::merged(&[2, 2, 3, 4, 6, 6]), 2));
        assert!(is_valid(&RhoTuple::merged(&[2, 2, 3, 4, 6, 6]), 1));
    }

    #[test]
    fn boundary_interval_matches_oracle() {
        let d = decode(&RhoTuple::boundary(&[2, 2, 4, 4])).unwrap();
        assert!(!edge_connectivity_at_least(&d, 3).unwrap());
        let d = decode(&RhoTuple::boundary(&[2, 4, 5, 4, 5])).unwrap();
        assert!(edge_connectivity_at_least(&d, 3).unwrap());
    }

    #[test]
    fn tuple_mu_examples() {
        let m = tuple_mu_as::<u64>(&RhoTuple::boundary(&[2, 4, 5, 4, 5])).unwrap();
        assert_eq!(m.arc_mu, vec![1, 1, 2, 2, 5]);
        assert_eq!(m.total, 12);
        let m = tuple_mu_as::<u64>(&RhoTuple::boundary(&[4, 4, 4, 4])).unwrap();
        assert_eq!((m.arc_mu, m.total), (vec![1, 1, 1, 1], 5));
        let m = tuple_mu_as::<u64>(&RhoTuple::merged(&[2, 2, 3, 4, 6, 6])).unwrap();
        assert_eq!(m.total, 36);
    }

    #[test]
    fn text_form() {
        let t = RhoTuple::parse("2,4,5,4,5", TupleClass::BoundaryDeg2).unwrap();
        assert_eq!(t.to_string(), "2,4,5,4,5");
        assert!(RhoTuple::parse("2,x", TupleClass::BoundaryDeg2).is_err());
        assert_eq!("merged".parse::<TupleClass>().unwrap(), TupleClass::Merged3Regular);
    }
}
