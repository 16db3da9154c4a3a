// SPDX-License-Identifier: Apache-2.0

//! Dominance over per-rule ordinals and layering of nodes into
//! equivalence classes by repeated extraction of the non-dominated set.

use std::cmp::Ordering;

use serde::Serialize;

use crate::centrality::ScoreTable;
use crate::error::{Error, Result};
use crate::link_analysis::check_partition;

pub const DEFAULT_SCORE_TOLERANCE: f64 = 1e-9;

/// One ordinal per rule; 1 is best.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ImportanceVector(pub Vec<u32>);

impl ImportanceVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Strict Pareto dominance: no coordinate worse and at least one better.
    pub fn dominates(&self, other: &ImportanceVector) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(dominates_unchecked(&self.0, &other.0))
    }
}

pub fn dominates(a: &ImportanceVector, b: &ImportanceVector) -> Result<bool> {
    a.dominates(b)
}

#[inline]
fn dominates_unchecked(a: &[u32], b: &[u32]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Greater => return false,
            Ordering::Less => strictly = true,
            Ordering::Equal => {}
        }
    }
    strictly
}

/// Dense ordinals per column: sort scores descending, chain consecutive
/// values whose relative difference is at most `score_tol` into one group,
/// and number the groups 1, 2, 3, ...
pub fn ordinalize(table: &ScoreTable, score_tol: f64) -> Vec<ImportanceVector> {
    let n = table.node_count();
    let mut ordinals = vec![Vec::with_capacity(table.columns().len()); n];
    let mut order: Vec<usize> = (0..n).collect();
    for column in table.columns() {
        order.sort_by(|&a, &b| column[b].total_cmp(&column[a]).then(a.cmp(&b)));
        let mut rank = 0u32;
        let mut prev: Option<f64> = None;
        for &u in &order {
            let x = column[u];
            let tied = prev.is_some_and(|p| (p - x).abs() <= score_tol * p.abs().max(x.abs()));
            if !tied {
                rank += 1;
            }
            ordinals[u].push(rank);
            prev = Some(x);
        }
    }
    ordinals.into_iter().map(ImportanceVector).collect()
}

/// Ordered partition of nodes into ranked classes; rank 1 is most important.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceClasses {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    rank_of: Vec<usize>,
}

impl EquivalenceClasses {
    /// Wraps explicit classes, which must partition `0..node_count`.
    /// Members of each class are sorted by index.
    pub fn from_classes(mut classes: Vec<Vec<usize>>, node_count: usize) -> Result<Self> {
        check_partition(&classes, node_count)?;
        let mut rank_of = vec![0; node_count];
        for (k, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            for &u in class.iter() {
                rank_of[u] = k + 1;
            }
        }
        Ok(EquivalenceClasses { classes, rank_of })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Members of the class with 1-based `rank`.
    pub fn class(&self, rank: usize) -> &[usize] {
        &self.classes[rank - 1]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.rank_of.len()
    }

    /// 1-based class index of `node`.
    pub fn rank_of(&self, node: usize) -> usize {
        self.rank_of[node]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    /// Checks the layering invariants against the vectors it was built from:
    /// members of a class are mutually non-dominating and every member of
    /// class k > 1 is dominated by some member of class k - 1.
    pub fn validate(&self, vectors: &[ImportanceVector]) -> Result<()> {
        if vectors.len() != self.node_count() {
            return Err(Error::LengthMismatch(vectors.len(), self.node_count()));
        }
        for (k, class) in self.classes.iter().enumerate() {
            for &a in class {
                for &b in class {
                    if dominates_unchecked(&vectors[a].0, &vectors[b].0) {
                        return Err(Error::InvalidParameter(format!(
                            "class {} holds node {a} dominating node {b}",
                            k + 1
                        )));
                    }
                }
                if k > 0
                    && !self.classes[k - 1]
                        .iter()
                        .any(|&p| dominates_unchecked(&vectors[p].0, &vectors[a].0))
                {
                    return Err(Error::InvalidParameter(format!(
                        "node {a} in class {} has no dominator in class {k}",
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Repeated full scans of the remaining set, quadratic per layer.
    #[default]
    Reference,
    /// Lexicographic presort with binary search over the fronts built so far.
    Fast,
}

fn check_lengths(vectors: &[ImportanceVector]) -> Result<()> {
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(Error::LengthMismatch(first.len(), bad.len()));
        }
    }
    Ok(())
}

/// Layers nodes by iterated non-dominated sets.
///
/// Each step moves the members of the remaining set `S` that no other
/// member dominates into `NDS` and the rest into `Extra`; `NDS` becomes the
/// next class and `Extra` the next `S`.
pub fn equivalence_classes(vectors: &[ImportanceVector]) -> Result<EquivalenceClasses> {
    check_lengths(vectors)?;
    let mut remaining: Vec<usize> = (0..vectors.len()).collect();
    let mut classes = Vec::new();
    while !remaining.is_empty() {
        let (nds, extra): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&u| {
            !remaining
                .iter()
                .any(|&v| dominates_unchecked(&vectors[v].0, &vectors[u].0))
        });
        classes.push(nds);
        remaining = extra;
    }
    EquivalenceClasses::from_classes(classes, vectors.len())
}

/// Same layering as [`equivalence_classes`], computed by efficient
/// non-dominated sorting.
///
/// After a lexicographic sort no node can be dominated by a later one, so
/// each node joins the first existing front holding none of its
/// dominators. Because every front member is dominated by someone in the
/// previous front, "some dominator in front k" is monotone in k and the
/// front can be found by binary search.
pub fn equivalence_classes_fast(vectors: &[ImportanceVector]) -> Result<EquivalenceClasses> {
    check_lengths(vectors)?;
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]).then(a.cmp(&b)));

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    for u in order {
        let target = &vectors[u].0;
        let dominated_in = |front: &Vec<usize>| {
            front
                .iter()
                .rev()
                .any(|&v| dominates_unchecked(&vectors[v].0, target))
        };
        let (mut lo, mut hi) = (0, fronts.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if dominated_in(&fronts[mid]) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo == fronts.len() {
            fronts.push(vec![u]);
        } else {
            fronts[lo].push(u);
        }
    }
    EquivalenceClasses::from_classes(fronts, vectors.len())
}

pub fn rank_vectors(
    vectors: &[ImportanceVector],
    strategy: Strategy,
) -> Result<EquivalenceClasses> {
    match strategy {
        Strategy::Reference => equivalence_classes(vectors),
        Strategy::Fast => equivalence_classes_fast(vectors),
    }
}

/// Ordinalizes `table` and layers the result.
pub fn rank_table(
    table: &ScoreTable,
    score_tol: f64,
    strategy: Strategy,
) -> Result<EquivalenceClasses> {
    let vectors = ordinalize(table, score_tol);
    rank_vectors(&vectors, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[u32]) -> ImportanceVector {
        ImportanceVector(x.to_vec())
    }

    #[test]
    fn dominance_cases() {
        assert!(dominates(&v(&[1, 2]), &v(&[3, 3])).unwrap());
        assert!(!dominates(&v(&[1, 2]), &v(&[2, 1])).unwrap());
        assert!(!dominates(&v(&[2, 1]), &v(&[1, 2])).unwrap());
        assert!(!dominates(&v(&[1, 1]), &v(&[1, 1])).unwrap());
        assert!(matches!(
            dominates(&v(&[1]), &v(&[1, 2])),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn dense_ordinals() {
        let t = ScoreTable::new(vec!["x".into()], vec![vec![10.0, 10.0, 5.0]]).unwrap();
        assert_eq!(ordinalize(&t, 1e-9), vec![v(&[1]), v(&[1]), v(&[2])]);
        let flat = ScoreTable::new(vec!["x".into()], vec![vec![3.0; 4]]).unwrap();
        assert!(ordinalize(&flat, 1e-9).iter().all(|o| o == &v(&[1])));
        // float noise below the relative tolerance does not split a tie
        let noisy = ScoreTable::new(vec!["x".into()], vec![vec![0.1 + 0.2, 0.3, 0.2]]).unwrap();
        assert_eq!(ordinalize(&noisy, 1e-9), vec![v(&[1]), v(&[1]), v(&[2])]);
    }

    #[test]
    fn two_rule_illustration() {
        // rule 1 orders a > c > b, rule 2 orders c > a > b
        let t = ScoreTable::new(
            vec!["r1".into(), "r2".into()],
            vec![vec![3.0, 1.0, 2.0], vec![2.0, 1.0, 3.0]],
        )
        .unwrap();
        let vs = ordinalize(&t, 1e-9);
        assert_eq!(vs, vec![v(&[1, 2]), v(&[3, 3]), v(&[2, 1])]);
        for classes in [
            equivalence_classes(&vs).unwrap(),
            equivalence_classes_fast(&vs).unwrap(),
        ] {
            assert_eq!(classes.classes(), &[vec![0, 2], vec![1]]);
            assert_eq!(classes.rank_of(1), 2);
            classes.validate(&vs).unwrap();
        }
    }

    #[test]
    fn identical_vectors_single_class() {
        let vs = vec![v(&[2, 2, 2]); 5];
        assert_eq!(equivalence_classes(&vs).unwrap().len(), 1);
        assert_eq!(equivalence_classes_fast(&vs).unwrap().len(), 1);
    }

    #[test]
    fn empty_input() {
        assert!(equivalence_classes(&[]).unwrap().is_empty());
        assert!(equivalence_classes_fast(&[]).unwrap().is_empty());
    }

    #[test]
    fn ragged_vectors_rejected() {
        let vs = vec![v(&[1, 2]), v(&[1])];
        assert!(equivalence_classes(&vs).is_err());
        assert!(equivalence_classes_fast(&vs).is_err());
    }

    #[test]
    fn validate_catches_bad_layering() {
        let vs = vec![v(&[1, 1]), v(&[2, 2])];
        let bad = EquivalenceClasses::from_classes(vec![vec![0, 1]], 2).unwrap();
        assert!(bad.validate(&vs).is_err());
        let flipped = EquivalenceClasses::from_classes(vec![vec![1], vec![0]], 2).unwrap();
        assert!(flipped.validate(&vs).is_err());
    }
}
