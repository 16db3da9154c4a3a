// SPDX-License-Identifier: Apache-2.0

//! Distance of a ranked sequence to the equivalence classes and the
//! coverage family built on it.
//!
//! The distance of a total order to the classes is the minimum number of
//! adjacent swaps that makes class ranks ascending, i.e. the number of
//! position pairs whose ranks are strictly inverted. Pairs within one
//! class never count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::link_analysis::RankedSequence;
use crate::pareto::EquivalenceClasses;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub distance_best: u64,
    pub distance_worst: u64,
    pub max_distance: u64,
    pub best_coverage: f64,
    pub worst_coverage: f64,
    pub certratio: f64,
    /// Set when the classes admit no inversion at all (a single class);
    /// both coverages are then reported as 1.
    pub degenerate: bool,
}

fn ranks_along(order: &[usize], classes: &EquivalenceClasses) -> Result<Vec<usize>> {
    let n = classes.node_count();
    if order.len() != n {
        return Err(Error::NodeSetMismatch(format!(
            "sequence has {} nodes, classes have {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    order
        .iter()
        .map(|&u| {
            if u >= n || std::mem::replace(&mut seen[u], true) {
                Err(Error::NodeSetMismatch(format!(
                    "sequence is not a permutation (node {u})"
                )))
            } else {
                Ok(classes.rank_of(u))
            }
        })
        .collect()
}

/// Minimum adjacent swaps turning `order` into one consistent with `classes`.
pub fn sequence_distance(order: &[usize], classes: &EquivalenceClasses) -> Result<u64> {
    let mut ranks = ranks_along(order, classes)?;
    let mut buffer = vec![0; ranks.len()];
    Ok(count_inversions(&mut ranks, &mut buffer))
}

/// Merge sort counting pairs `i < j` with `values[i] > values[j]`.
fn count_inversions(values: &mut [usize], buffer: &mut [usize]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left_buf, right_buf) = buffer.split_at_mut(mid);
    let mut count = {
        let (left, right) = values.split_at_mut(mid);
        count_inversions(left, left_buf) + count_inversions(right, right_buf)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if values[i] <= values[j] {
            buffer[k] = values[i];
            i += 1;
        } else {
            buffer[k] = values[j];
            j += 1;
            count += (mid - i) as u64;
        }
        k += 1;
    }
    buffer[k..k + (mid - i)].copy_from_slice(&values[i..mid]);
    k += mid - i;
    buffer[k..k + (n - j)].copy_from_slice(&values[j..n]);
    values.copy_from_slice(&buffer[..n]);
    count
}

/// The distance by the greedy difference-array procedure: keep an array of
/// rank differences between each position and its successor and repeatedly
/// swap the pair with the largest positive difference until none is left.
/// Quadratic or worse; kept as an independent check on [`sequence_distance`].
pub fn sequence_distance_greedy(order: &[usize], classes: &EquivalenceClasses) -> Result<u64> {
    let mut ranks: Vec<i64> = ranks_along(order, classes)?
        .into_iter()
        .map(|r| r as i64)
        .collect();
    if ranks.len() < 2 {
        return Ok(0);
    }
    let mut diff: Vec<i64> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut swaps = 0;
    loop {
        let (pos, &max) = diff
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("at least one difference");
        if max <= 0 {
            return Ok(swaps);
        }
        ranks.swap(pos, pos + 1);
        swaps += 1;
        for p in pos.saturating_sub(1)..=(pos + 1).min(diff.len() - 1) {
            diff[p] = ranks[p] - ranks[p + 1];
        }
    }
}

/// Largest distance any total order can have: all pairs minus the pairs
/// inside a class.
pub fn max_distance(classes: &EquivalenceClasses) -> u64 {
    let pairs = |k: usize| (k as u64) * (k as u64).saturating_sub(1) / 2;
    pairs(classes.node_count())
        - classes
            .classes()
            .iter()
            .map(|c| pairs(c.len()))
            .sum::<u64>()
}

/// Flattens `sequence`, ordering each tie group by ascending class rank.
pub fn best_order(sequence: &RankedSequence, classes: &EquivalenceClasses) -> Vec<usize> {
    flatten(sequence, |a, b| {
        classes.rank_of(a).cmp(&classes.rank_of(b)).then(a.cmp(&b))
    })
}

/// Flattens `sequence`, ordering each tie group by descending class rank.
pub fn worst_order(sequence: &RankedSequence, classes: &EquivalenceClasses) -> Vec<usize> {
    flatten(sequence, |a, b| {
        classes.rank_of(b).cmp(&classes.rank_of(a)).then(a.cmp(&b))
    })
}

fn flatten(
    sequence: &RankedSequence,
    cmp: impl Fn(usize, usize) -> std::cmp::Ordering,
) -> Vec<usize> {
    let mut out = Vec::with_capacity(sequence.node_count());
    for group in sequence.groups() {
        let start = out.len();
        out.extend_from_slice(group);
        out[start..].sort_by(|&a, &b| cmp(a, b));
    }
    out
}

pub fn coverage_report(
    sequence: &RankedSequence,
    classes: &EquivalenceClasses,
) -> Result<CoverageReport> {
    if sequence.node_count() != classes.node_count() {
        return Err(Error::NodeSetMismatch(format!(
            "sequence has {} nodes, classes have {}",
            sequence.node_count(),
            classes.node_count()
        )));
    }
    let distance_best = sequence_distance(&best_order(sequence, classes), classes)?;
    let distance_worst = sequence_distance(&worst_order(sequence, classes), classes)?;
    let max = max_distance(classes);
    let degenerate = max == 0;
    let coverage = |d: u64| {
        if degenerate {
            1.0
        } else {
            1.0 - d as f64 / max as f64
        }
    };
    let best_coverage = coverage(distance_best);
    let worst_coverage = coverage(distance_worst);
    Ok(CoverageReport {
        distance_best,
        distance_worst,
        max_distance: max,
        best_coverage,
        worst_coverage,
        certratio: best_coverage - worst_coverage,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Nodes 0..4 stand for the labels 1..4 of the worked example.
    fn pairs_example() -> EquivalenceClasses {
        EquivalenceClasses::from_classes(vec![vec![0, 1], vec![2, 3]], 4).unwrap()
    }

    fn singletons(n: usize) -> EquivalenceClasses {
        EquivalenceClasses::from_classes((0..n).map(|u| vec![u]).collect(), n).unwrap()
    }

    #[test]
    fn worked_example_distance() {
        let p = pairs_example();
        assert_eq!(sequence_distance(&[3, 2, 1, 0], &p).unwrap(), 4);
        assert_eq!(sequence_distance_greedy(&[3, 2, 1, 0], &p).unwrap(), 4);
        assert_eq!(max_distance(&p), 4);
        let s = RankedSequence::from_order(vec![3, 2, 1, 0], 4).unwrap();
        let r = coverage_report(&s, &p).unwrap();
        assert_eq!(r.best_coverage, 0.0);
        assert_eq!(r.certratio, 0.0);
    }

    #[test]
    fn sorted_sequence_has_zero_distance() {
        let p = pairs_example();
        assert_eq!(sequence_distance(&[1, 0, 3, 2], &p).unwrap(), 0);
        assert_eq!(sequence_distance(&[0, 1, 2, 3], &p).unwrap(), 0);
    }

    #[test]
    fn not_a_permutation() {
        let p = pairs_example();
        assert!(sequence_distance(&[0, 1, 2], &p).is_err());
        assert!(sequence_distance(&[0, 1, 2, 2], &p).is_err());
        assert!(sequence_distance(&[0, 1, 2, 7], &p).is_err());
    }

    #[test]
    fn max_distance_cases() {
        assert_eq!(
            max_distance(&EquivalenceClasses::from_classes(vec![vec![0, 1, 2, 3, 4]], 5).unwrap()),
            0
        );
        assert_eq!(max_distance(&singletons(5)), 10);
        assert_eq!(max_distance(&singletons(0)), 0);
    }

    #[test]
    fn worst_rewrites_tie_against_benchmark() {
        // ranks 1..4 on nodes 0..3; the sequence is {4, [2, 3], 1}
        let p = singletons(4);
        let s = RankedSequence::from_groups(vec![vec![3], vec![1, 2], vec![0]], 4).unwrap();
        assert_eq!(worst_order(&s, &p), vec![3, 2, 1, 0]);
        assert_eq!(best_order(&s, &p), vec![3, 1, 2, 0]);
        let r = coverage_report(&s, &p).unwrap();
        assert_eq!(
            (r.distance_best, r.distance_worst, r.max_distance),
            (5, 6, 6)
        );
    }

    #[test]
    fn exact_match_and_single_group() {
        let p = singletons(5);
        let exact = RankedSequence::from_order((0..5).collect(), 5).unwrap();
        let r = coverage_report(&exact, &p).unwrap();
        assert_eq!(
            (r.best_coverage, r.worst_coverage, r.certratio),
            (1.0, 1.0, 0.0)
        );

        let lump = RankedSequence::from_groups(vec![(0..5).collect()], 5).unwrap();
        let r = coverage_report(&lump, &p).unwrap();
        assert_eq!(
            (r.best_coverage, r.worst_coverage, r.certratio),
            (1.0, 0.0, 1.0)
        );
    }

    #[test]
    fn degenerate_single_class() {
        let p = EquivalenceClasses::from_classes(vec![vec![0, 1, 2]], 3).unwrap();
        let s = RankedSequence::from_order(vec![2, 1, 0], 3).unwrap();
        let r = coverage_report(&s, &p).unwrap();
        assert!(r.degenerate);
        assert_eq!((r.best_coverage, r.worst_coverage), (1.0, 1.0));
    }

    #[test]
    fn node_count_mismatch() {
        let s = RankedSequence::from_order(vec![0, 1], 2).unwrap();
        assert!(coverage_report(&s, &singletons(3)).is_err());
    }
}
