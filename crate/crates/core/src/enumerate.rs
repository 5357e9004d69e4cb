//! Enumeration of special data up to isomorphism.
//!
//! A datum is determined by its forest of members labeled with child weight
//! ratios (see [`crate::canon`]), so enumeration generates those forests
//! directly: trees with `k` leaves are a ratio in `[2, R]` over a multiset
//! of at least two smaller trees, and a forest is a multiset of trees.
//! Generating multisets in sorted order yields every class exactly once.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::canon::{datum_from_forest, forest, Shape};
use crate::datum::SpecialDatum;
use crate::multiplicity::OracleBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub n_max: usize,
    /// Bound on every parent→child weight ratio.
    pub max_ratio: u64,
    pub oracle: OracleBudget,
}

impl EnumerationBudget {
    pub fn new(n_max: usize, max_ratio: u64) -> Self {
        EnumerationBudget { n_max, max_ratio, oracle: OracleBudget::default() }
    }

    pub fn is_valid(&self) -> bool {
        self.n_max >= 1 && self.max_ratio >= 2 && self.oracle.k_max >= 1 && self.oracle.point_ceiling >= 1
    }
}

/// Trees indexed by leaf count, each list sorted.
struct TreeTable {
    by_size: Vec<Vec<Shape>>,
}

impl TreeTable {
    fn build(n: usize, max_ratio: u64) -> TreeTable {
        let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(); n + 1];
        if n >= 1 {
            by_size[1].push(Shape::Leaf);
        }
        for k in 2..=n {
            let mut found = BTreeSet::new();
            let mut parts = Vec::new();
            multisets(&by_size, k, 2, 0, 0, &mut parts, &mut |children: &[Shape]| {
                for r in 2..=max_ratio {
                    found.insert(Shape::Node { ratio: BigUint::from(r), children: children.to_vec() });
                }
            });
            by_size[k] = found.into_iter().collect();
        }
        TreeTable { by_size }
    }
}

// Pool position of a tree: (size, index in that size's list). Multisets are
// generated as nondecreasing sequences of positions so each appears once.
fn multisets(
    table: &[Vec<Shape>],
    remaining: usize,
    min_parts: usize,
    min_size: usize,
    min_index: usize,
    parts: &mut Vec<Shape>,
    emit: &mut dyn FnMut(&[Shape]),
) {
    if remaining == 0 {
        if parts.len() >= min_parts {
            let mut sorted = parts.clone();
            sorted.sort();
            emit(&sorted);
        }
        return;
    }
    for size in min_size.max(1)..=remaining {
        // A single part as large as the whole would not be a proper split.
        if size == remaining && parts.is_empty() && min_parts >= 2 {
            continue;
        }
        let start = if size == min_size { min_index } else { 0 };
        for idx in start..table[size].len() {
            parts.push(table[size][idx].clone());
            multisets(table, remaining - size, min_parts, size, idx, parts, emit);
            parts.pop();
        }
    }
}

/// One representative per isomorphism class with exactly `n` ground
/// elements and every ratio in `[2, max_ratio]`, sorted by canonical forest.
pub fn enumerate_dimension(n: usize, max_ratio: u64) -> Vec<SpecialDatum> {
    if n == 0 {
        return Vec::new();
    }
    let table = TreeTable::build(n, max_ratio);
    let mut forests: BTreeSet<Vec<Shape>> = BTreeSet::new();
    let mut parts = Vec::new();
    multisets(&table.by_size, n, 1, 0, 0, &mut parts, &mut |roots: &[Shape]| {
        forests.insert(roots.to_vec());
    });
    forests.into_iter().map(|f| datum_from_forest(&f)).collect()
}

/// All classes with `1 <= n <= n_max`, ordered by `n` and then by
/// canonical forest.
pub fn enumerate(budget: &EnumerationBudget) -> Vec<SpecialDatum> {
    (1..=budget.n_max).flat_map(|n| enumerate_dimension(n, budget.max_ratio)).collect()
}

/// Labeled special data on `{1..n}` with ratios in `[2, max_ratio]`, found
/// by brute force over all set systems. Exponential; intended for `n <= 3`
/// as an independent completeness check of [`enumerate_dimension`].
pub fn enumerate_labeled(n: usize, max_ratio: u64) -> Vec<SpecialDatum> {
    assert!(n <= 4, "brute force labeled enumeration is limited to n <= 4");
    // Candidate non-singleton subsets as bitmasks.
    let full = (1u32 << n) - 1;
    let big: Vec<u32> = (1..=full).filter(|s| s.count_ones() >= 2).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << big.len()) {
        let family: Vec<u32> = big.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &s)| s).collect();
        let laminar = family.iter().all(|&a| family.iter().all(|&b| a & b == 0 || a & b == a || a & b == b));
        if !laminar {
            continue;
        }
        let mut sets: Vec<u32> = family.clone();
        sets.extend((0..n).map(|i| 1u32 << i));
        // Internal members are those with children; children of J are the
        // maximal proper subsets of J in the family.
        let internal: Vec<u32> = family.clone();
        let mut ratios = vec![2u64; internal.len()];
        loop {
            if let Some(d) = labeled_datum(n, &sets, &internal, &ratios) {
                out.push(d);
            }
            // next ratio assignment
            let mut i = 0;
            while i < ratios.len() && ratios[i] == max_ratio {
                ratios[i] = 2;
                i += 1;
            }
            if i == ratios.len() {
                break;
            }
            ratios[i] += 1;
        }
    }
    out
}

fn labeled_datum(n: usize, sets: &[u32], internal: &[u32], ratios: &[u64]) -> Option<SpecialDatum> {
    let parent = |s: u32| -> Option<u32> {
        sets.iter().copied().filter(|&t| t != s && t & s == s).min_by_key(|t| t.count_ones())
    };
    fn weight(s: u32, parent: &dyn Fn(u32) -> Option<u32>, internal: &[u32], ratios: &[u64]) -> u64 {
        match parent(s) {
            None => 1,
            Some(p) => {
                let i = internal.iter().position(|&x| x == p).expect("parents are internal");
                ratios[i] * weight(p, parent, internal, ratios)
            }
        }
    }
    let members: Vec<(Vec<usize>, u64)> = sets
        .iter()
        .map(|&s| {
            let elems = (0..n).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect();
            (elems, weight(s, &parent, internal, ratios))
        })
        .collect();
    SpecialDatum::new(n, members).ok()
}

/// Canonical forests of the labeled enumeration, deduplicated.
pub fn labeled_classes(n: usize, max_ratio: u64) -> BTreeSet<Vec<Shape>> {
    enumerate_labeled(n, max_ratio).iter().map(forest).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::validate;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(&EnumerationBudget::new(1, 3)).len(), 1);
        assert_eq!(enumerate_dimension(2, 3).len(), 3);
        assert_eq!(enumerate_dimension(3, 2).len(), 4);
    }

    #[test]
    fn labeled_count_three() {
        assert_eq!(enumerate_labeled(3, 2).len(), 8);
    }

    #[test]
    fn classes_match_labeled_brute_force() {
        for n in 1..=3 {
            for r in 2..=3 {
                let emitted: BTreeSet<Vec<Shape>> = enumerate_dimension(n, r).iter().map(forest).collect();
                assert_eq!(emitted.len(), enumerate_dimension(n, r).len());
                assert_eq!(emitted, labeled_classes(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn every_emitted_datum_validates() {
        for d in enumerate(&EnumerationBudget::new(4, 3)) {
            assert!(validate(&d.to_raw()).is_valid());
        }
    }
}
