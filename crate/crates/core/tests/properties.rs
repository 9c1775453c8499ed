mod common;

use cubic_paths::block::check_assignment;
use cubic_paths::dag::{vertex_kinds, VertexKind};
use cubic_paths::{
    count_paths, decode, encode, growth_factor, hamiltonize, is_valid, parse_graph, prop1_is_3ec,
    solve_block, tree_sort, tuple_mu, write_graph, BlockInstance, Budget, Dag, ReportDocument,
    RhoTuple, TupleClass,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Any tuple shape-valid for its class, built from free seeds.
fn tuple(class: TupleClass, max_len: usize) -> impl Strategy<Value = RhoTuple> {
    let min = if class == TupleClass::Merged3Regular { 2 } else { 1 };
    prop::collection::vec(any::<u32>(), min..=max_len).prop_filter_map("shape", move |seeds| {
        let len = seeds.len();
        let v = seeds
            .iter()
            .enumerate()
            .map(|(idx, s)| idx + 1 + (*s as usize) % (len - idx))
            .collect();
        let t = RhoTuple::new(v, class);
        is_valid(&t, 1).then_some(t)
    })
}

fn any_tuple(max_len: usize) -> impl Strategy<Value = RhoTuple> {
    prop_oneof![tuple(TupleClass::BoundaryDeg2, max_len), tuple(TupleClass::Merged3Regular, max_len)]
}

/// A 3-regular graph from a merged tuple, renumbered by a random topological
/// order and perturbed by forward-preserving edge swaps.
fn scrambled(max_len: usize) -> impl Strategy<Value = Dag> {
    (tuple(TupleClass::Merged3Regular, max_len), any::<u64>(), prop::collection::vec((any::<u16>(), any::<u16>()), 0..6))
        .prop_map(|(t, seed, swaps)| {
            let d = decode(&t).unwrap();
            let mut edges = d.edges().to_vec();
            for (a, b) in swaps {
                let (i, j) = (a as usize % edges.len(), b as usize % edges.len());
                let ((p, q), (r, s)) = (edges[i], edges[j]);
                if i != j && p < s && r < q {
                    edges[i] = (p, s);
                    edges[j] = (r, q);
                }
            }
            let swapped = Dag::new(d.vertex_count(), edges, d.profile()).unwrap_or(d);
            relabel(&swapped, seed)
        })
}

fn relabel(d: &Dag, mut seed: u64) -> Dag {
    let mut indeg = d.indegrees();
    let mut ready = vec![1];
    let mut order = Vec::new();
    while !ready.is_empty() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let v = ready.swap_remove((seed >> 33) as usize % ready.len());
        order.push(v);
        for &(u, w) in d.edges() {
            if u == v {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    d.renumber(&order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tuple_count_matches_graph_count(t in any_tuple(30)) {
        let d = decode(&t).unwrap();
        prop_assert_eq!(tuple_mu(&t).unwrap().total, count_paths(&d).unwrap().total);
    }

    #[test]
    fn codec_round_trip(t in any_tuple(25)) {
        prop_assume!(t.is_canonical());
        prop_assert_eq!(encode(&decode(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn reversal_is_an_involution_and_keeps_the_total(d in scrambled(9)) {
        let r = d.reverse();
        prop_assert!(r.is_valid());
        prop_assert_eq!(&r.reverse(), &d);
        prop_assert_eq!(count_paths(&r).unwrap().total, count_paths(&d).unwrap().total);
    }

    #[test]
    fn mu_is_positive_and_grows_along_edges(d in scrambled(9)) {
        let c = count_paths(&d).unwrap();
        let m: Vec<u128> = c.mu.iter().map(|x| x.to_u128().unwrap()).collect();
        prop_assert_eq!(&m, &common::mu(&d));
        prop_assert!(m.iter().all(|&x| x >= 1));
        for &(u, v) in d.edges() {
            prop_assert!(m[v - 1] >= m[u - 1]);
        }
    }

    #[test]
    fn total_is_three_plus_outgoing_counts(d in scrambled(9)) {
        let c = count_paths(&d).unwrap();
        let kinds = vertex_kinds(&d).unwrap();
        let sum: u128 = (2..=d.vertex_count())
            .filter(|&v| kinds[v - 1] == VertexKind::Outgoing)
            .map(|v| common::mu(&d)[v - 1])
            .sum();
        prop_assert_eq!(c.total.to_u128().unwrap(), 3 + sum);
    }

    #[test]
    fn graph_file_round_trip(d in scrambled(10)) {
        let text = write_graph(&d, &["generated".into()]);
        prop_assert_eq!(parse_graph(&text).unwrap(), d);
    }

    #[test]
    fn hamiltonize_on_scrambled_graphs(d in scrambled(8)) {
        let (out, _) = hamiltonize(&d).unwrap();
        let sorted = tree_sort(&d).unwrap();
        prop_assert!(out.is_on_ham_path());
        let (before, after) = (common::mu(&sorted), common::mu(&out));
        prop_assert!(before.iter().zip(&after).all(|(b, a)| a >= b));
        prop_assert_eq!(common::kinds(&sorted), common::kinds(&out));
        if common::edge_connected(&d, 3) {
            prop_assert!(common::edge_connected(&out, 3));
        }
    }

    #[test]
    fn structural_test_matches_deletions(t in tuple(TupleClass::Merged3Regular, 9)) {
        let d = decode(&t).unwrap();
        prop_assert_eq!(prop1_is_3ec(&d).unwrap().three_edge_connected, common::edge_connected(&d, 3));
    }

    #[test]
    fn validity_levels_match_deletions(t in any_tuple(8)) {
        let d = decode(&t).unwrap();
        for ell in 1..=3 {
            prop_assert_eq!(is_valid(&t, ell), common::edge_connected(&d, ell));
        }
    }

    #[test]
    fn growth_factor_precisions_agree(f in 1u32..1_000_000, k in 2usize..60) {
        let a = growth_factor(f as f64, k);
        let b = growth_factor(f as f32, k) as f64;
        prop_assert!((a - b).abs() < 1e-5 * a);
        prop_assert!((a.powf(k as f64 / 2.0) - f as f64).abs() < 1e-6 * f as f64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_witness_scores_its_value(k in 2usize..=20) {
        let s = solve_block(BlockInstance::new(k).unwrap(), Budget::UNLIMITED);
        prop_assert!(s.proven_optimal);
        let scored = check_assignment(k, &s.assignment.edges()).unwrap();
        prop_assert_eq!(s.f.to_u64(), Some(scored));
        prop_assert!(s.root_bound >= s.f);
    }

    #[test]
    fn report_json_round_trip(t in any_tuple(12)) {
        let m = tuple_mu(&t).unwrap();
        let doc = ReportDocument::new("tuple mu", t.to_string(), &m).unwrap();
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
    }
}
