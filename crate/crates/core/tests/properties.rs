// SPDX-License-Identifier: Apache-2.0

use eqrank::coverage::{best_order, sequence_distance_greedy, worst_order};
use eqrank::io::{parse_edge_list, write_graph, OutputFormat};
use eqrank::pareto::rank_table;
use eqrank::{
    coverage_report, dominates, equivalence_classes, equivalence_classes_fast, extract_kernel,
    hits, max_distance, ordinalize, pagerank, sequence_distance, EquivalenceClasses, Graph,
    ImportanceVector, RankedSequence, ScoreTable, Strategy as Layering,
};
use itertools::Itertools;
use proptest::prelude::*;

fn vectors(
    max_n: usize,
    max_m: usize,
    max_ord: u32,
) -> impl Strategy<Value = Vec<ImportanceVector>> {
    (1..=max_m).prop_flat_map(move |m| {
        prop::collection::vec(
            prop::collection::vec(1..=max_ord, m).prop_map(ImportanceVector),
            0..=max_n,
        )
    })
}

/// Layer index = 1 + number of rounds before a node survives a full all-pairs
/// scan of what is left; written independently of the library's loop.
fn layered_reference(vs: &[ImportanceVector]) -> Vec<usize> {
    let n = vs.len();
    let mut layer = vec![0usize; n];
    let mut current = 0;
    while layer.contains(&0) {
        current += 1;
        let alive: Vec<usize> = (0..n).filter(|&i| layer[i] == 0).collect();
        let mut front = Vec::new();
        for &i in &alive {
            let mut dominated = false;
            for &j in &alive {
                let le = vs[j].0.iter().zip(&vs[i].0).all(|(a, b)| a <= b);
                let lt = vs[j].0.iter().zip(&vs[i].0).any(|(a, b)| a < b);
                if le && lt {
                    dominated = true;
                }
            }
            if !dominated {
                front.push(i);
            }
        }
        for i in front {
            layer[i] = current;
        }
    }
    layer
}

fn classes_from_ranks(ranks: &[usize]) -> EquivalenceClasses {
    let k = ranks.iter().copied().max().unwrap_or(0);
    let mut classes = vec![Vec::new(); k];
    for (u, &r) in ranks.iter().enumerate() {
        classes[r - 1].push(u);
    }
    classes.retain(|c| !c.is_empty());
    EquivalenceClasses::from_classes(classes, ranks.len()).unwrap()
}

/// Adjacent-swap bubble sort on the rank sequence, counting swaps of
/// strictly descending neighbors.
fn bubble_swaps(order: &[usize], p: &EquivalenceClasses) -> u64 {
    let mut r: Vec<usize> = order.iter().map(|&u| p.rank_of(u)).collect();
    let mut swaps = 0;
    loop {
        let mut swapped = false;
        for i in 0..r.len().saturating_sub(1) {
            if r[i] > r[i + 1] {
                r.swap(i, i + 1);
                swaps += 1;
                swapped = true;
            }
        }
        if !swapped {
            return swaps;
        }
    }
}

fn instance(max_n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(1..=n, n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn normalize_ranks(raw: &[usize]) -> Vec<usize> {
    let distinct: Vec<usize> = raw.iter().copied().sorted().dedup().collect();
    raw.iter()
        .map(|r| distinct.binary_search(r).unwrap() + 1)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn dominance_is_strict_partial_order(
        (a, b, c) in (1usize..=4).prop_flat_map(|m| {
            let v = || prop::collection::vec(1u32..=3, m).prop_map(ImportanceVector);
            (v(), v(), v())
        })
    ) {
        prop_assert!(!dominates(&a, &a).unwrap());
        if dominates(&a, &b).unwrap() {
            prop_assert!(!dominates(&b, &a).unwrap());
        }
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn layering_matches_all_pairs_reference(vs in vectors(64, 4, 6)) {
        let expected = layered_reference(&vs);
        let reference = equivalence_classes(&vs).unwrap();
        let fast = equivalence_classes_fast(&vs).unwrap();
        prop_assert_eq!(reference.ranks(), expected.as_slice());
        prop_assert_eq!(&fast, &reference);
        reference.validate(&vs).unwrap();
    }

    #[test]
    fn fast_matches_reference_on_wide_ranges(vs in vectors(200, 4, 60)) {
        prop_assert_eq!(equivalence_classes_fast(&vs).unwrap(), equivalence_classes(&vs).unwrap());
    }

    #[test]
    fn dominated_newcomer_only_extends_the_tail(vs in vectors(30, 4, 5)) {
        prop_assume!(!vs.is_empty());
        let before = equivalence_classes(&vs).unwrap();
        let m = vs[0].len();
        let worst = vs.iter().flat_map(|v| v.0.iter().copied()).max().unwrap();
        let mut extended = vs.clone();
        extended.push(ImportanceVector(vec![worst + 1; m]));
        let after = equivalence_classes(&extended).unwrap();
        let k = before.len();
        prop_assert!(after.len() == k || after.len() == k + 1);
        for r in 1..k {
            prop_assert_eq!(after.class(r), before.class(r));
        }
        let newcomer = extended.len() - 1;
        prop_assert!(after.rank_of(newcomer) >= k);
    }

    #[test]
    fn distance_matches_bubble_sort((raw, order) in instance(8)) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        let d = sequence_distance(&order, &p).unwrap();
        prop_assert_eq!(d, bubble_swaps(&order, &p));
        prop_assert_eq!(d, sequence_distance_greedy(&order, &p).unwrap());
        prop_assert!(d <= max_distance(&p));
    }

    #[test]
    fn greedy_matches_merge_count((raw, order) in instance(60)) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        prop_assert_eq!(sequence_distance(&order, &p).unwrap(), sequence_distance_greedy(&order, &p).unwrap());
    }

    #[test]
    fn reversed_sorted_sequence_hits_max((raw, _order) in instance(40)) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        let mut sorted: Vec<usize> = (0..p.node_count()).collect();
        sorted.sort_by_key(|&u| p.rank_of(u));
        prop_assert_eq!(sequence_distance(&sorted, &p).unwrap(), 0);
        sorted.reverse();
        prop_assert_eq!(sequence_distance(&sorted, &p).unwrap(), max_distance(&p));
    }

    #[test]
    fn tie_free_sequences_have_zero_certratio((raw, order) in instance(30)) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        let s = RankedSequence::from_order(order, p.node_count()).unwrap();
        let r = coverage_report(&s, &p).unwrap();
        prop_assert_eq!(r.distance_best, r.distance_worst);
        prop_assert_eq!(r.certratio, 0.0);
        prop_assert!(r.best_coverage >= 0.0 && r.best_coverage <= 1.0);
    }

    #[test]
    fn best_and_worst_are_set_extremes(
        (raw, order, cuts) in (1usize..=6).prop_flat_map(|n| (
            prop::collection::vec(1..=n, n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), n),
        ))
    ) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &u) in order.iter().enumerate() {
            if i == 0 || cuts[i] {
                groups.push(vec![u]);
            } else {
                groups.last_mut().unwrap().push(u);
            }
        }
        let s = RankedSequence::from_groups(groups.clone(), p.node_count()).unwrap();
        let distances: Vec<u64> = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|parts| {
                let seq: Vec<usize> = parts.concat();
                sequence_distance(&seq, &p).unwrap()
            })
            .collect();
        let r = coverage_report(&s, &p).unwrap();
        prop_assert_eq!(r.distance_best, *distances.iter().min().unwrap());
        prop_assert_eq!(r.distance_worst, *distances.iter().max().unwrap());
        prop_assert_eq!(sequence_distance(&best_order(&s, &p), &p).unwrap(), r.distance_best);
        prop_assert_eq!(sequence_distance(&worst_order(&s, &p), &p).unwrap(), r.distance_worst);
        prop_assert!(r.distance_best <= r.distance_worst);
        prop_assert!((r.certratio - (r.best_coverage - r.worst_coverage)).abs() < 1e-15);
    }

    #[test]
    fn max_distance_is_exhaustive_max(raw in (1usize..=6).prop_flat_map(|n| prop::collection::vec(1..=n, n))) {
        let p = classes_from_ranks(&normalize_ranks(&raw));
        let exhaustive = (0..p.node_count())
            .permutations(p.node_count())
            .map(|perm| sequence_distance(&perm, &p).unwrap())
            .max()
            .unwrap();
        prop_assert_eq!(max_distance(&p), exhaustive);
    }
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..=14).prop_flat_map(|n| {
        (
            prop::collection::vec((0..n, 0..n), 0..40),
            prop::collection::vec(0..n, n - 1),
        )
            .prop_map(move |(extra, parents)| {
                let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
                // spanning tree keeps the graph connected
                let tree = (1..n).map(|v| (parents[v - 1] % v, v));
                Graph::from_edges(labels, tree.chain(extra)).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn monotone_transforms_keep_classes(
        g in random_graph(),
        transforms in prop::collection::vec((0usize..4, 0usize..4, 0.1f64..5.0), 20),
    ) {
        let table = eqrank::score_table(&g, 1.0).unwrap();
        let base = rank_table(&table, 1e-9, Layering::Reference).unwrap();
        for (column, kind, c) in transforms {
            let f: Box<dyn Fn(f64) -> f64> = match kind {
                0 => Box::new(move |x| c * x),
                1 => Box::new(move |x| (x + c).ln()),
                2 => Box::new(move |x| x * x * x + c),
                _ => Box::new(move |x| (c * x).exp() - 1.0),
            };
            let transformed = table.map_column(column, f).unwrap();
            prop_assert_eq!(&rank_table(&transformed, 1e-9, Layering::Reference).unwrap(), &base);
        }
        // doubling betweenness (ordered-pair convention) changes nothing
        let doubled = table.map_column(1, |x| 2.0 * x).unwrap();
        prop_assert_eq!(&ordinalize(&doubled, 1e-9), &ordinalize(&table, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_grow_with_top_k(g in random_graph()) {
        let p = rank_table(&eqrank::score_table(&g, 1.0).unwrap(), 1e-9, Layering::Reference).unwrap();
        let mut previous: Vec<String> = Vec::new();
        let mut previous_edges = 0;
        for k in 1..=p.len() {
            let kernel = extract_kernel(&g, &p, k).unwrap();
            let labels = kernel.kernel.labels().to_vec();
            prop_assert!(previous.iter().all(|l| labels.contains(l)));
            prop_assert!(kernel.stats.edge_count >= previous_edges);
            let expected: usize = (1..=k).map(|r| p.class(r).len()).sum();
            prop_assert_eq!(kernel.stats.node_count, expected);
            previous = labels;
            previous_edges = kernel.stats.edge_count;
        }
        prop_assert_eq!(previous_edges, g.edge_count());
    }

    #[test]
    fn link_analysis_normalization(g in random_graph()) {
        let pr = pagerank(&g, 0.15, 200).unwrap();
        prop_assert!((pr.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(pr.iter().all(|&x| x > 0.0));
        let h = hits(&g, 500, 1e-8).unwrap();
        prop_assert!((h.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-9);
        prop_assert!(h.iter().all(|&x| x >= 0.0));
    }
}

proptest! {
    #[test]
    fn edge_list_round_trip(
        pairs in prop::collection::vec(("[a-e][0-9]{0,2}", "[a-e][0-9]{0,2}"), 0..40)
    ) {
        let text: String = pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        let parsed = parse_edge_list(&text, &Default::default()).unwrap().graph;
        for u in 0..parsed.node_count() {
            prop_assert!(!parsed.neighbors(u).contains(&u));
            prop_assert!(parsed.neighbors(u).windows(2).all(|w| w[0] < w[1]));
            for &v in parsed.neighbors(u) {
                prop_assert!(parsed.neighbors(v).contains(&u));
            }
        }
        let degree_sum: usize = (0..parsed.node_count()).map(|u| parsed.degree(u)).sum();
        prop_assert_eq!(degree_sum, 2 * parsed.edge_count());

        let written = write_graph(&parsed, OutputFormat::EdgeList);
        let back = parse_edge_list(&written, &Default::default()).unwrap().graph;
        let edge_set = |g: &Graph| -> Vec<(String, String)> {
            g.edges()
                .map(|(u, v)| {
                    let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
                    if a < b { (a, b) } else { (b, a) }
                })
                .sorted()
                .collect()
        };
        prop_assert_eq!(edge_set(&back), edge_set(&parsed));
        // nodes that only appeared in self-loops have no edge to write back
        let connected: Vec<&String> = parsed.labels().iter().enumerate()
            .filter(|(u, _)| parsed.degree(*u) > 0).map(|(_, l)| l).sorted().collect();
        prop_assert_eq!(back.labels().iter().sorted().collect::<Vec<_>>(), connected);
        // same bytes, same indexing
        prop_assert_eq!(parse_edge_list(&text, &Default::default()).unwrap().graph, parsed);
    }
}

#[test]
fn illustration_through_score_table() {
    let t = ScoreTable::new(
        vec!["rule1".into(), "rule2".into()],
        vec![vec![3.0, 1.0, 2.0], vec![2.0, 1.0, 3.0]],
    )
    .unwrap();
    let p = rank_table(&t, 1e-9, Layering::Fast).unwrap();
    assert_eq!(p.classes(), &[vec![0, 2], vec![1]]);
}
