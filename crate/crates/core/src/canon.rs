//! Canonical forms and isomorphism of special data.
//!
//! Two data are isomorphic when a permutation of the ground set carries one
//! family onto the other with the same weights. Since maximal members have
//! weight 1 and children share a weight, a datum is determined up to
//! isomorphism by its forest of members labeled with child weight ratios.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::datum::{Member, NodeRef, SpecialDatum};

/// Isomorphism-invariant shape of the subtree below one member: a leaf for
/// a singleton, otherwise the ratio `w(child)/w(J)` and the sorted shapes
/// of the children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Leaf,
    Node { ratio: BigUint, children: Vec<Shape> },
}

impl Shape {
    pub fn of(d: &SpecialDatum, j: NodeRef) -> Shape {
        let kids = d.children(j);
        if kids.is_empty() {
            return Shape::Leaf;
        }
        let mut children: Vec<Shape> = kids.iter().map(|&c| Shape::of(d, c)).collect();
        children.sort();
        Shape::Node { ratio: d.child_ratio(j).expect("internal member"), children }
    }

    /// Number of ground elements below this node.
    pub fn size(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node { children, .. } => children.iter().map(Shape::size).sum(),
        }
    }

    /// Members contributed by this subtree.
    pub fn member_count(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node { children, .. } => 1 + children.iter().map(Shape::member_count).sum::<usize>(),
        }
    }

    // Emits members with leaves numbered from `next`; returns the ground
    // elements used, in order.
    fn emit(&self, weight: &BigUint, next: &mut usize, out: &mut Vec<Member>) -> Vec<usize> {
        match self {
            Shape::Leaf => {
                *next += 1;
                out.push(Member::new(alloc::vec![*next], weight.clone()));
                alloc::vec![*next]
            }
            Shape::Node { ratio, children } => {
                let cw = weight * ratio;
                let mut elems = Vec::new();
                for c in children {
                    elems.extend(c.emit(&cw, next, out));
                }
                out.push(Member::new(elems.clone(), weight.clone()));
                elems
            }
        }
    }
}

/// Sorted shapes of the maximal members. Equal forests ⇔ isomorphic data.
pub fn forest(d: &SpecialDatum) -> Vec<Shape> {
    let mut roots: Vec<Shape> = d.maximal_elements().into_iter().map(|r| Shape::of(d, r)).collect();
    roots.sort();
    roots
}

/// Builds the datum whose leaves are numbered in depth-first order of the
/// given forest. Roots get weight 1.
pub fn datum_from_forest(roots: &[Shape]) -> SpecialDatum {
    let mut next = 0;
    let mut members = Vec::new();
    for r in roots {
        r.emit(&BigUint::one(), &mut next, &mut members);
    }
    SpecialDatum::from_members(next, members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub datum: SpecialDatum,
    /// `permutation[i-1]` is the canonical label of original element `i`.
    pub permutation: Vec<usize>,
    pub forest: Vec<Shape>,
}

pub fn canonical_form(d: &SpecialDatum) -> CanonicalForm {
    // Walk the maximal members in forest order, children in shape order,
    // numbering leaves as they are reached.
    fn walk(d: &SpecialDatum, j: NodeRef, next: &mut usize, perm: &mut [usize]) {
        let kids = d.children(j);
        if kids.is_empty() {
            *next += 1;
            perm[d.member(j).elements()[0] - 1] = *next;
            return;
        }
        let mut order: Vec<(Shape, NodeRef)> = kids.iter().map(|&c| (Shape::of(d, c), c)).collect();
        order.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, c) in order {
            walk(d, c, next, perm);
        }
    }

    let mut roots: Vec<(Shape, NodeRef)> =
        d.maximal_elements().into_iter().map(|r| (Shape::of(d, r), r)).collect();
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let mut perm = alloc::vec![0; d.n()];
    let mut next = 0;
    for (_, r) in &roots {
        walk(d, *r, &mut next, &mut perm);
    }
    let forest: Vec<Shape> = roots.into_iter().map(|(s, _)| s).collect();
    CanonicalForm { datum: d.relabel(&perm), permutation: perm, forest }
}

pub fn is_isomorphic(a: &SpecialDatum, b: &SpecialDatum) -> bool {
    a.n() == b.n() && forest(a) == forest(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, sets: &[(&[usize], i64)]) -> SpecialDatum {
        SpecialDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w)).collect()).unwrap()
    }

    #[test]
    fn weight_distinguishes() {
        let a = d(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 2)]);
        let b = d(2, &[(&[1, 2], 1), (&[1], 3), (&[2], 3)]);
        assert!(!is_isomorphic(&a, &b));
    }

    #[test]
    fn transposition_is_isomorphism() {
        let a = d(3, &[(&[1, 2], 1), (&[1], 2), (&[2], 2), (&[3], 1)]);
        let b = d(3, &[(&[1, 3], 1), (&[1], 2), (&[3], 2), (&[2], 1)]);
        assert!(is_isomorphic(&a, &b));
        assert_eq!(canonical_form(&a).datum, canonical_form(&b).datum);
    }

    #[test]
    fn canonical_datum_matches_forest_rebuild() {
        let a = d(4, &[(&[3, 4, 1], 1), (&[1], 2), (&[3], 2), (&[4], 2), (&[2], 1)]);
        let cf = canonical_form(&a);
        assert_eq!(cf.datum, datum_from_forest(&cf.forest));
        assert_eq!(canonical_form(&cf.datum).datum, cf.datum);
    }
}
