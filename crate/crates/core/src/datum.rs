//! Special data: validation and structural operations.
//!
//! An `n`-dimensional special datum is a family `D` of nonempty subsets of
//! `{1, .., n}` with a weight `w(J) >= 1` on each member such that
//!
//! 1. every singleton `{i}` is a member,
//! 2. any two members are nested or disjoint,
//! 3. inclusion-maximal members have weight 1,
//! 4. `J ⊊ J'` implies `w(J) > w(J')` and `w(J') | w(J)`,
//! 5. children of a common parent share one weight.
//!
//! A child of `J` is a member `J' ⊊ J` with no member strictly between.
//! Ground elements are 1-based throughout.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ideal::MonomialIdeal;

/// Index of one member of a [`SpecialDatum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef(pub usize);

/// One member `J` together with its weight `w(J)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Member {
    elements: Vec<usize>,
    weight: BigUint,
}

impl Member {
    pub fn new(mut elements: Vec<usize>, weight: BigUint) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Member { elements, weight }
    }

    /// Sorted, 1-based ground elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn weight(&self) -> &BigUint {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min_element(&self) -> usize {
        self.elements[0]
    }

    pub fn is_singleton(&self) -> bool {
        self.elements.len() == 1
    }

    fn sort_key(&self) -> (usize, usize) {
        (self.elements[0], self.elements.len())
    }
}

/// An unvalidated datum as read from a file.
///
/// Signed integers so that out-of-range and nonpositive values can be
/// reported as violations instead of failing to parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDatum {
    pub n: i64,
    pub sets: Vec<RawSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSet {
    pub elements: Vec<i64>,
    pub weight: BigInt,
}

impl RawDatum {
    pub fn new<W: Into<BigInt>>(n: i64, sets: Vec<(Vec<i64>, W)>) -> Self {
        RawDatum {
            n,
            sets: sets
                .into_iter()
                .map(|(elements, weight)| RawSet { elements, weight: weight.into() })
                .collect(),
        }
    }
}

/// A single way in which a candidate fails to be a special datum.
///
/// Malformed entries (`set` is the position in the input list) are distinct
/// from axiom violations, which name the offending members by their elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionNotPositive { n: i64 },
    NoSets,
    EmptySet { set: usize },
    ElementOutOfRange { set: usize, element: i64 },
    RepeatedElement { set: usize, element: i64 },
    NonPositiveWeight { set: usize, weight: BigInt },
    DuplicateSet { elements: Vec<usize> },
    /// Axiom (1).
    MissingSingleton { element: usize },
    /// Axiom (2).
    NotLaminar { first: Vec<usize>, second: Vec<usize> },
    /// Axiom (3).
    MaximalWeightNotOne { elements: Vec<usize>, weight: BigUint },
    /// Axiom (4), strict decrease.
    WeightNotDecreasing { inner: Vec<usize>, outer: Vec<usize> },
    /// Axiom (4), divisibility.
    WeightNotDivisible { inner: Vec<usize>, outer: Vec<usize> },
    /// Axiom (5).
    UnequalSiblingWeights { parent: Vec<usize>, first: Vec<usize>, second: Vec<usize> },
    /// Children of a non-singleton member must partition it into at least two blocks.
    ChildrenNotPartition { elements: Vec<usize> },
}

impl Violation {
    /// Which axiom (1..=5) the violation breaks, if any.
    pub fn axiom(&self) -> Option<u8> {
        match self {
            Violation::MissingSingleton { .. } => Some(1),
            Violation::NotLaminar { .. } => Some(2),
            Violation::MaximalWeightNotOne { .. } => Some(3),
            Violation::WeightNotDecreasing { .. } | Violation::WeightNotDivisible { .. } => Some(4),
            Violation::UnequalSiblingWeights { .. } => Some(5),
            _ => None,
        }
    }
}

struct Set<'a>(&'a [usize]);

impl fmt::Display for Set<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionNotPositive { n } => write!(f, "dimension n = {n} is not positive"),
            Violation::NoSets => write!(f, "datum has no sets"),
            Violation::EmptySet { set } => write!(f, "set #{set} is empty"),
            Violation::ElementOutOfRange { set, element } => {
                write!(f, "set #{set}: element {element} is outside [1, n]")
            }
            Violation::RepeatedElement { set, element } => {
                write!(f, "set #{set}: element {element} is repeated")
            }
            Violation::NonPositiveWeight { set, weight } => {
                write!(f, "set #{set}: weight {weight} is not positive")
            }
            Violation::DuplicateSet { elements } => write!(f, "set {} appears more than once", Set(elements)),
            Violation::MissingSingleton { element } => {
                write!(f, "axiom (1): singleton {{{element}}} is missing")
            }
            Violation::NotLaminar { first, second } => write!(
                f,
                "axiom (2): {} and {} overlap without being nested",
                Set(first),
                Set(second)
            ),
            Violation::MaximalWeightNotOne { elements, weight } => write!(
                f,
                "axiom (3): maximal member {} has weight {weight}, expected 1",
                Set(elements)
            ),
            Violation::WeightNotDecreasing { inner, outer } => write!(
                f,
                "axiom (4): {} ⊊ {} but its weight is not larger",
                Set(inner),
                Set(outer)
            ),
            Violation::WeightNotDivisible { inner, outer } => write!(
                f,
                "axiom (4): weight of {} does not divide weight of {}",
                Set(outer),
                Set(inner)
            ),
            Violation::UnequalSiblingWeights { parent, first, second } => write!(
                f,
                "axiom (5): children {} and {} of {} have different weights",
                Set(first),
                Set(second),
                Set(parent)
            ),
            Violation::ChildrenNotPartition { elements } => write!(
                f,
                "children of {} do not partition it into at least two blocks",
                Set(elements)
            ),
        }
    }
}

/// Every violation found in a candidate. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates_axiom(&self, axiom: u8) -> bool {
        self.violations.iter().any(|v| v.axiom() == Some(axiom))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumError {
    Invalid(ValidationReport),
    NotMaximal { elements: Vec<usize> },
    SingletonReduction { elements: Vec<usize> },
    Disconnected,
    ZeroScale,
}

impl fmt::Display for DatumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumError::Invalid(report) => write!(f, "not a special datum:\n{report}"),
            DatumError::NotMaximal { elements } => {
                write!(f, "{} is not a maximal member", Set(elements))
            }
            DatumError::SingletonReduction { elements } => {
                write!(f, "cannot reduce along singleton {}", Set(elements))
            }
            DatumError::Disconnected => write!(f, "datum is not connected"),
            DatumError::ZeroScale => write!(f, "scale factor must be positive"),
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Checks all five axioms plus the structural invariants and reports every
/// violation found.
pub fn validate(raw: &RawDatum) -> ValidationReport {
    let mut out = Vec::new();
    if raw.n < 1 {
        out.push(Violation::DimensionNotPositive { n: raw.n });
    }
    if raw.sets.is_empty() {
        out.push(Violation::NoSets);
    }
    if raw.n < 1 {
        return ValidationReport { violations: out };
    }
    let n = raw.n as usize;

    // (elements, weight if positive)
    let mut sets: Vec<(Vec<usize>, Option<BigUint>)> = Vec::new();
    for (idx, s) in raw.sets.iter().enumerate() {
        let mut ok = true;
        if s.elements.is_empty() {
            out.push(Violation::EmptySet { set: idx });
            ok = false;
        }
        let mut seen = BTreeSet::new();
        for &e in &s.elements {
            if e < 1 || e > raw.n {
                out.push(Violation::ElementOutOfRange { set: idx, element: e });
                ok = false;
            } else if !seen.insert(e) {
                out.push(Violation::RepeatedElement { set: idx, element: e });
            }
        }
        let weight = if s.weight.is_positive() {
            s.weight.to_biguint()
        } else {
            out.push(Violation::NonPositiveWeight { set: idx, weight: s.weight.clone() });
            None
        };
        if ok {
            let elements: Vec<usize> = seen.into_iter().map(|e| e as usize).collect();
            sets.push((elements, weight));
        }
    }

    let mut unique: Vec<(Vec<usize>, Option<BigUint>)> = Vec::new();
    let mut reported_dup = BTreeSet::new();
    for (elements, weight) in sets {
        if unique.iter().any(|(e, _)| *e == elements) {
            if reported_dup.insert(elements.clone()) {
                out.push(Violation::DuplicateSet { elements });
            }
        } else {
            unique.push((elements, weight));
        }
    }
    unique.sort_by(|a, b| (a.0[0], a.0.len()).cmp(&(b.0[0], b.0.len())).then(a.0.cmp(&b.0)));

    let mut axiom1 = true;
    for i in 1..=n {
        if !unique.iter().any(|(e, _)| e.len() == 1 && e[0] == i) {
            out.push(Violation::MissingSingleton { element: i });
            axiom1 = false;
        }
    }

    let m = unique.len();
    let mut laminar = true;
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (&unique[a].0, &unique[b].0);
            if intersects(x, y) && !is_subset(x, y) && !is_subset(y, x) {
                out.push(Violation::NotLaminar { first: x.clone(), second: y.clone() });
                laminar = false;
            }
        }
    }

    let strict_subset = |a: usize, b: usize| -> bool {
        unique[a].0.len() < unique[b].0.len() && is_subset(&unique[a].0, &unique[b].0)
    };

    // Axiom (3).
    for a in 0..m {
        let maximal = !(0..m).any(|b| b != a && strict_subset(a, b));
        if maximal {
            if let Some(w) = &unique[a].1 {
                if !w.is_one() {
                    out.push(Violation::MaximalWeightNotOne {
                        elements: unique[a].0.clone(),
                        weight: w.clone(),
                    });
                }
            }
        }
    }

    // Axiom (4) over every strictly nested pair.
    for a in 0..m {
        for b in 0..m {
            if a == b || !strict_subset(a, b) {
                continue;
            }
            if let (Some(wa), Some(wb)) = (&unique[a].1, &unique[b].1) {
                if wa <= wb {
                    out.push(Violation::WeightNotDecreasing {
                        inner: unique[a].0.clone(),
                        outer: unique[b].0.clone(),
                    });
                }
                if !(wa % wb).is_zero() {
                    out.push(Violation::WeightNotDivisible {
                        inner: unique[a].0.clone(),
                        outer: unique[b].0.clone(),
                    });
                }
            }
        }
    }

    // Axiom (5): children of each member J, where J' ⊏ J means J' ⊊ J with
    // nothing strictly between.
    let is_child = |c: usize, p: usize| -> bool {
        strict_subset(c, p) && !(0..m).any(|k| k != c && k != p && strict_subset(c, k) && strict_subset(k, p))
    };
    for p in 0..m {
        let kids: Vec<usize> = (0..m).filter(|&c| c != p && is_child(c, p)).collect();
        if let Some((&first, rest)) = kids.split_first() {
            for &c in rest {
                if let (Some(w1), Some(w2)) = (&unique[first].1, &unique[c].1) {
                    if w1 != w2 {
                        out.push(Violation::UnequalSiblingWeights {
                            parent: unique[p].0.clone(),
                            first: unique[first].0.clone(),
                            second: unique[c].0.clone(),
                        });
                    }
                }
            }
        }
        if axiom1 && laminar && unique[p].0.len() >= 2 {
            let mut covered: Vec<usize> = kids.iter().flat_map(|&c| unique[c].0.iter().copied()).collect();
            let total = covered.len();
            covered.sort_unstable();
            covered.dedup();
            if kids.len() < 2 || covered.len() != total || covered != unique[p].0 {
                out.push(Violation::ChildrenNotPartition { elements: unique[p].0.clone() });
            }
        }
    }

    ValidationReport { violations: out }
}

/// A validated special datum.
///
/// Members are stored sorted by `(smallest element, size)`; a parent/child
/// index is derived once at construction and never mutated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecialDatum {
    n: usize,
    members: Vec<Member>,
    parent: Vec<Option<NodeRef>>,
    children: Vec<Vec<NodeRef>>,
}

impl SpecialDatum {
    /// Validates `raw` and builds the datum, or returns every violation.
    pub fn from_raw(raw: &RawDatum) -> Result<Self, ValidationReport> {
        let report = validate(raw);
        if !report.is_valid() {
            return Err(report);
        }
        let members = raw
            .sets
            .iter()
            .map(|s| {
                Member::new(
                    s.elements.iter().map(|&e| e as usize).collect(),
                    s.weight.to_biguint().expect("weight checked positive"),
                )
            })
            .collect();
        Ok(Self::from_members(raw.n as usize, members))
    }

    /// Convenience constructor from `(elements, weight)` pairs.
    pub fn new<W: Into<BigInt>>(n: usize, sets: Vec<(Vec<usize>, W)>) -> Result<Self, DatumError> {
        let raw = RawDatum::new(
            n as i64,
            sets.into_iter()
                .map(|(e, w)| (e.into_iter().map(|x| x as i64).collect(), w.into()))
                .collect::<Vec<(Vec<i64>, BigInt)>>(),
        );
        Self::from_raw(&raw).map_err(DatumError::Invalid)
    }

    /// Builds a datum from members already known to satisfy the axioms.
    pub(crate) fn from_members(n: usize, mut members: Vec<Member>) -> Self {
        members.sort_by_key(Member::sort_key);
        let m = members.len();
        let mut parent = vec![None; m];
        for (a, ma) in members.iter().enumerate() {
            let mut best: Option<usize> = None;
            for (b, mb) in members.iter().enumerate() {
                if a != b && mb.len() > ma.len() && is_subset(&ma.elements, &mb.elements) {
                    if best.map_or(true, |k| members[k].len() > mb.len()) {
                        best = Some(b);
                    }
                }
            }
            parent[a] = best.map(NodeRef);
        }
        let mut children = vec![Vec::new(); m];
        for (c, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[p.0].push(NodeRef(c));
            }
        }
        // members are sorted by smallest element already, so children are too
        SpecialDatum { n, members, parent, children }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// `|D|`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        (0..self.members.len()).map(NodeRef)
    }

    pub fn member(&self, j: NodeRef) -> &Member {
        &self.members[j.0]
    }

    pub fn weight(&self, j: NodeRef) -> &BigUint {
        &self.members[j.0].weight
    }

    pub fn find(&self, elements: &[usize]) -> Option<NodeRef> {
        let mut key: Vec<usize> = elements.to_vec();
        key.sort_unstable();
        self.members.iter().position(|m| m.elements == key).map(NodeRef)
    }

    pub fn singleton(&self, i: usize) -> NodeRef {
        self.find(&[i]).expect("every singleton is a member")
    }

    /// The members `J'` with `J' ⊏ J`, sorted by smallest element.
    pub fn children(&self, j: NodeRef) -> &[NodeRef] {
        &self.children[j.0]
    }

    pub fn parent(&self, j: NodeRef) -> Option<NodeRef> {
        self.parent[j.0]
    }

    pub fn maximal_elements(&self) -> Vec<NodeRef> {
        self.nodes().filter(|&j| self.parent[j.0].is_none()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.maximal_elements().len() == 1
    }

    /// The unique maximal member of a connected datum.
    pub fn root(&self) -> Option<NodeRef> {
        match self.maximal_elements().as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }

    /// `w(J') / w(J)` for the children `J'` of `J`; `None` for singletons.
    pub fn child_ratio(&self, j: NodeRef) -> Option<BigUint> {
        let c = *self.children(j).first()?;
        Some(self.weight(c) / self.weight(j))
    }

    /// Weight shared by the children of `J`; `None` for singletons.
    pub fn child_weight(&self, j: NodeRef) -> Option<&BigUint> {
        self.children(j).first().map(|&c| self.weight(c))
    }

    pub fn depth(&self, j: NodeRef) -> usize {
        let mut d = 0;
        let mut cur = j;
        while let Some(p) = self.parent(cur) {
            d += 1;
            cur = p;
        }
        d
    }

    /// The component `D_J`: members inside `J`, relabeled onto `1..=|J|`
    /// in order, weights divided by `w(J)`.
    pub fn restrict(&self, j: NodeRef) -> SpecialDatum {
        let ground = &self.members[j.0].elements;
        let w = &self.members[j.0].weight;
        let relabel = |e: usize| ground.binary_search(&e).expect("inside J") + 1;
        let members = self
            .members
            .iter()
            .filter(|m| is_subset(&m.elements, ground))
            .map(|m| Member::new(m.elements.iter().map(|&e| relabel(e)).collect(), &m.weight / w))
            .collect();
        SpecialDatum::from_members(ground.len(), members)
    }

    /// Connected components, one per maximal member, in member order.
    pub fn components(&self) -> Vec<SpecialDatum> {
        self.maximal_elements().into_iter().map(|j| self.restrict(j)).collect()
    }

    /// The datum `D ∖ J` for a maximal member `J` with `|J| >= 2`.
    ///
    /// Members inside a child `J_i` of `J` have their weight divided by
    /// `w(J_i)`; members outside `J` are unchanged.
    pub fn reduce(&self, j: NodeRef) -> Result<SpecialDatum, DatumError> {
        let mj = &self.members[j.0];
        if self.parent(j).is_some() {
            return Err(DatumError::NotMaximal { elements: mj.elements.clone() });
        }
        if mj.is_singleton() {
            return Err(DatumError::SingletonReduction { elements: mj.elements.clone() });
        }
        let mut members = Vec::with_capacity(self.members.len() - 1);
        for (k, m) in self.members.iter().enumerate() {
            if k == j.0 {
                continue;
            }
            if is_subset(&m.elements, &mj.elements) {
                let child = self
                    .children(j)
                    .iter()
                    .find(|c| is_subset(&m.elements, &self.members[c.0].elements))
                    .expect("children of J cover J");
                let wc = &self.members[child.0].weight;
                members.push(Member::new(m.elements.clone(), &m.weight / wc));
            } else {
                members.push(m.clone());
            }
        }
        Ok(SpecialDatum::from_members(self.n, members))
    }

    /// Reduction along the unique maximal member of a connected datum.
    pub fn reduce_root(&self) -> Option<SpecialDatum> {
        let r = self.root()?;
        self.reduce(r).ok()
    }

    /// The datum `D^a`: the maximal member keeps weight 1, every other
    /// weight is multiplied by `a`.
    pub fn scale(&self, a: &BigUint) -> Result<SpecialDatum, DatumError> {
        if a.is_zero() {
            return Err(DatumError::ZeroScale);
        }
        let root = self.root().ok_or(DatumError::Disconnected)?;
        let members = self
            .members
            .iter()
            .enumerate()
            .map(|(k, m)| {
                if k == root.0 {
                    m.clone()
                } else {
                    Member::new(m.elements.clone(), &m.weight * a)
                }
            })
            .collect();
        Ok(SpecialDatum::from_members(self.n, members))
    }

    /// The ideal `a_D`: one generator `w(J)·χ_J` per member.
    pub fn monomial_ideal(&self) -> MonomialIdeal {
        let gens = self
            .members
            .iter()
            .map(|m| {
                let mut v = vec![BigUint::zero(); self.n];
                for &e in &m.elements {
                    v[e - 1] = m.weight.clone();
                }
                v
            })
            .collect();
        MonomialIdeal::new(self.n, gens).expect("generators of a_D are nonzero")
    }

    /// Weights `w({1}), .., w({n})`.
    pub fn singleton_weights(&self) -> Vec<BigUint> {
        (1..=self.n).map(|i| self.weight(self.singleton(i)).clone()).collect()
    }

    /// Members with at least two elements.
    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.nodes().filter(|&j| !self.member(j).is_singleton())
    }

    pub fn to_raw(&self) -> RawDatum {
        RawDatum {
            n: self.n as i64,
            sets: self
                .members
                .iter()
                .map(|m| RawSet {
                    elements: m.elements.iter().map(|&e| e as i64).collect(),
                    weight: BigInt::from(m.weight.clone()),
                })
                .collect(),
        }
    }

    /// Weights as `u64`, if they all fit.
    pub fn small_weights(&self) -> Option<Vec<u64>> {
        self.members.iter().map(|m| m.weight.to_u64()).collect()
    }

    /// Disjoint union of data on consecutive ground blocks.
    pub fn disjoint_union(parts: &[SpecialDatum]) -> SpecialDatum {
        let mut offset = 0;
        let mut members = Vec::new();
        for p in parts {
            for m in &p.members {
                members.push(Member::new(m.elements.iter().map(|&e| e + offset).collect(), m.weight.clone()));
            }
            offset += p.n;
        }
        SpecialDatum::from_members(offset, members)
    }

    /// Applies a relabeling `perm[i-1] = image of i` of the ground set.
    pub fn relabel(&self, perm: &[usize]) -> SpecialDatum {
        assert_eq!(perm.len(), self.n);
        let members = self
            .members
            .iter()
            .map(|m| Member::new(m.elements.iter().map(|&e| perm[e - 1]).collect(), m.weight.clone()))
            .collect();
        SpecialDatum::from_members(self.n, members)
    }
}

/// Least common multiple of all weights.
pub fn weight_lcm(d: &SpecialDatum) -> BigUint {
    d.members().iter().fold(BigUint::one(), |acc, m| acc.lcm(m.weight()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, sets: &[(&[usize], u64)]) -> SpecialDatum {
        SpecialDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w as i64)).collect()).unwrap()
    }

    fn raw(n: i64, sets: &[(&[i64], i64)]) -> RawDatum {
        RawDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w)).collect())
    }

    pub(crate) fn nested4() -> SpecialDatum {
        d(4, &[(&[1, 2, 3, 4], 1), (&[1, 2], 2), (&[3, 4], 2), (&[1], 4), (&[2], 4), (&[3], 4), (&[4], 4)])
    }

    #[test]
    fn smallest_datum_is_valid() {
        assert!(validate(&raw(1, &[(&[1], 1)])).is_valid());
    }

    #[test]
    fn hypersurface_datum_is_valid() {
        assert!(validate(&raw(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 2)])).is_valid());
    }

    #[test]
    fn unequal_siblings_break_axiom_5() {
        let r = validate(&raw(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 3)]));
        assert!(r.violates_axiom(5));
        assert!(!r.violates_axiom(3));
    }

    #[test]
    fn heavy_maximal_member_breaks_axiom_3() {
        let r = validate(&raw(2, &[(&[1, 2], 2), (&[1], 4), (&[2], 4)]));
        assert!(r.violates_axiom(3));
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn malformed_entries_are_reported_not_panicked() {
        let r = validate(&raw(2, &[(&[1, 5], 1), (&[], 2), (&[2], 0), (&[1], -3)]));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::ElementOutOfRange { element: 5, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::EmptySet { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NonPositiveWeight { set: 2, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NonPositiveWeight { set: 3, .. })));
        assert!(!validate(&raw(0, &[])).is_valid());
    }

    #[test]
    fn reports_all_violations() {
        // missing {3}, overlapping {1,2},{2,3}, duplicate {1}
        let r = validate(&raw(3, &[(&[1, 2], 1), (&[2, 3], 1), (&[1], 2), (&[1], 2), (&[2], 2)]));
        assert!(r.violates_axiom(1));
        assert!(r.violates_axiom(2));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::DuplicateSet { .. })));
    }

    #[test]
    fn axiom_4_divisibility_and_order() {
        let r = validate(&raw(2, &[(&[1, 2], 1), (&[1], 1), (&[2], 1)]));
        assert!(r.violates_axiom(4));
        let r = validate(&raw(4, &[(&[1, 2, 3, 4], 1), (&[1, 2], 2), (&[3, 4], 2), (&[1], 3), (&[2], 3), (&[3], 3), (&[4], 3)]));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::WeightNotDivisible { .. })));
    }

    #[test]
    fn children_known_values() {
        let t = d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]);
        let top = t.find(&[1, 2, 3]).unwrap();
        let kids: Vec<&[usize]> = t.children(top).iter().map(|&c| t.member(c).elements()).collect();
        assert_eq!(kids, vec![&[1][..], &[2], &[3]]);
        assert!(t.children(t.singleton(1)).is_empty());

        let n4 = nested4();
        let top = n4.find(&[1, 2, 3, 4]).unwrap();
        let kids: Vec<&[usize]> = n4.children(top).iter().map(|&c| n4.member(c).elements()).collect();
        assert_eq!(kids, vec![&[1, 2][..], &[3, 4]]);
    }

    #[test]
    fn maximal_and_connected() {
        let two = d(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1], 2), (&[2], 2), (&[3], 2), (&[4], 2)]);
        let maxes: Vec<&[usize]> = two.maximal_elements().iter().map(|&j| two.member(j).elements()).collect();
        assert_eq!(maxes, vec![&[1, 2][..], &[3, 4]]);
        assert!(!two.is_connected());
        assert!(d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]).is_connected());
        let loose = d(2, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(loose.maximal_elements().len(), 2);
        assert!(!loose.is_connected());
    }

    #[test]
    fn restrict_known_values() {
        let n4 = nested4();
        let r = n4.restrict(n4.find(&[3, 4]).unwrap());
        assert_eq!(r, d(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 2)]));
        assert_eq!(n4.restrict(n4.find(&[1, 2, 3, 4]).unwrap()), n4);
        assert_eq!(n4.restrict(n4.singleton(3)), d(1, &[(&[1], 1)]));
    }

    #[test]
    fn reduce_known_values() {
        let t = d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]);
        let r = t.reduce(t.find(&[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r, d(3, &[(&[1], 1), (&[2], 1), (&[3], 1)]));

        let n4 = nested4();
        let r = n4.reduce(n4.find(&[1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(r, d(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1], 2), (&[2], 2), (&[3], 2), (&[4], 2)]));
        // components of the reduction are the former children
        let kids: Vec<Vec<usize>> = n4
            .children(n4.find(&[1, 2, 3, 4]).unwrap())
            .iter()
            .map(|&c| n4.member(c).elements().to_vec())
            .collect();
        let maxes: Vec<Vec<usize>> = r.maximal_elements().iter().map(|&j| r.member(j).elements().to_vec()).collect();
        assert_eq!(kids, maxes);
    }

    #[test]
    fn reduce_rejects_bad_members() {
        let n4 = nested4();
        assert!(matches!(n4.reduce(n4.find(&[1, 2]).unwrap()), Err(DatumError::NotMaximal { .. })));
        let one = d(1, &[(&[1], 1)]);
        assert!(matches!(one.reduce(NodeRef(0)), Err(DatumError::SingletonReduction { .. })));
    }

    #[test]
    fn scale_known_values() {
        let p = d(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 2)]);
        assert_eq!(p.scale(&BigUint::from(1u32)).unwrap(), p);
        assert_eq!(p.scale(&BigUint::from(3u32)).unwrap(), d(2, &[(&[1, 2], 1), (&[1], 6), (&[2], 6)]));
        let t = d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]);
        assert_eq!(t.scale(&BigUint::from(2u32)).unwrap(), d(3, &[(&[1, 2, 3], 1), (&[1], 4), (&[2], 4), (&[3], 4)]));
        let loose = d(2, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(loose.scale(&BigUint::from(2u32)), Err(DatumError::Disconnected));
    }

    #[test]
    fn monomial_ideal_known_values() {
        let p = d(2, &[(&[1, 2], 1), (&[1], 2), (&[2], 2)]);
        let gens: Vec<Vec<u64>> = p.monomial_ideal().small_generators().unwrap();
        assert_eq!(gens, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(d(1, &[(&[1], 1)]).monomial_ideal().small_generators().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn members_sorted_by_min_then_size() {
        let n4 = nested4();
        let keys: Vec<(usize, usize)> = n4.members().iter().map(|m| (m.min_element(), m.len())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
