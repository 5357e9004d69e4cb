//! Hilbert–Samuel multiplicity `e(R_D)`.
//!
//! [`mult_exact`] follows the reduction recursion and falls back to a
//! certified interval where no exact rule applies. [`mult_oracle`] counts
//! semigroup elements directly and never consults the recursion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::datum::SpecialDatum;
use crate::invariants::{alpha_product, group_order, m_of_d, main_bound, volume_bound, two_pow_n_minus_1};
use crate::lct::{lct_datum_cached, LctCache};
use crate::rational::{ceil, floor, from_uint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicityStatus {
    Exact,
    Interval,
}

/// Which rule produced (part of) a multiplicity value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `e = 1` in dimension one.
    Line,
    /// `e(R_D) = ∏ e(R_{D_J})` over connected components.
    Components,
    /// `e(R_D) = w(J_1)·e(R_{D∖J})` when `lct(m_{D∖J})/w(J_1) >= 1`.
    CyclicCover,
    /// `e = min{w(J_1), n}` when every child of the root is a singleton.
    Hypersurface,
    /// Interval from the upper and lower bounds.
    Bounds,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Line => "line",
            Rule::Components => "components",
            Rule::CyclicCover => "cyclic-cover",
            Rule::Hypersurface => "hypersurface",
            Rule::Bounds => "bounds",
        }
    }

    /// The identity or inequality the rule applies.
    pub fn statement(self) -> &'static str {
        match self {
            Rule::Line => "e(C[x]) = 1",
            Rule::Components => "e(R_D) = e(R_{D_J1})···e(R_{D_Jm})",
            Rule::CyclicCover => "e(R_D) = w(J_1)·e(R_{D\\J}) if lct(m_D) = lct(m_{D\\J})/w(J_1)",
            Rule::Hypersurface => "e(C[x_1..x_n, y]/(y^a - x_1···x_n)) = min{a, n}",
            Rule::Bounds => "max{prod alpha, lct(m_{D\\J})·e(R_{D\\J}), |G|^-1 (n/lct)^n} <= e <= min{w(J_1)·e(R_{D\\J}), m(D), 2^(n-ceil lct)}",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    /// Ground elements of the member the rule was applied at, in the
    /// labeling of the datum it was applied to.
    pub member: Vec<usize>,
    pub dimension: usize,
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}) at {:?}: {}", self.rule.name(), self.dimension, self.member, self.rule.statement())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub status: MultiplicityStatus,
    pub value: Option<BigUint>,
    pub lower: Rational,
    pub upper: Rational,
    pub trace: Vec<RuleApplication>,
}

impl MultiplicityResult {
    fn exact(value: BigUint, trace: Vec<RuleApplication>) -> Self {
        let r = from_uint(&value);
        MultiplicityResult { status: MultiplicityStatus::Exact, value: Some(value), lower: r.clone(), upper: r, trace }
    }

    // e is a positive integer: round the bounds inward and promote when they meet.
    fn interval(lower: Rational, upper: Rational, trace: Vec<RuleApplication>) -> Self {
        let lo = Rational::from_integer(ceil(&lower));
        let hi = Rational::from_integer(floor(&upper));
        if lo == hi {
            let v = lo.to_integer().to_biguint().expect("positive multiplicity");
            return MultiplicityResult::exact(v, trace);
        }
        MultiplicityResult { status: MultiplicityStatus::Interval, value: None, lower: lo, upper: hi, trace }
    }

    pub fn is_exact(&self) -> bool {
        self.status == MultiplicityStatus::Exact
    }

    pub fn contains(&self, e: &BigUint) -> bool {
        let r = from_uint(e);
        self.lower <= r && r <= self.upper
    }
}

fn rmin(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

fn rmax(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

fn root_elements(d: &SpecialDatum, labels: &[usize]) -> Vec<usize> {
    d.root().map(|r| d.member(r).elements().iter().map(|&e| labels[e - 1]).collect()).unwrap_or_default()
}

/// Upper bounds that hold for every datum: `m(D)`, `2^{n-1}` and
/// `2^{n-⌈lct⌉}`.
fn global_upper(d: &SpecialDatum, lct: &Rational) -> Rational {
    let m = from_uint(&m_of_d(d));
    let w = from_uint(&two_pow_n_minus_1(d.n()));
    rmin(rmin(m, w), main_bound(d.n(), lct))
}

/// Lower bounds that hold for every datum: `∏ α(D_J)` and
/// `(1/|G_D|)(n/lct)^n`.
fn global_lower(d: &SpecialDatum, lct: &Rational, cache: &mut LctCache) -> Rational {
    let a = alpha_product(d, cache);
    let v = volume_bound(d.n(), &group_order(d), lct);
    rmax(a, v)
}

/// `e(R_D)` by the reduction recursion, exact where a rule pins it.
pub fn mult_exact(d: &SpecialDatum) -> MultiplicityResult {
    mult_exact_cached(d, &mut LctCache::new())
}

pub fn mult_exact_cached(d: &SpecialDatum, cache: &mut LctCache) -> MultiplicityResult {
    let labels: Vec<usize> = (1..=d.n()).collect();
    exact_labeled(d, &labels, cache)
}

// `labels[i-1]` is the name of ground element `i` in the datum the caller
// started from, so trace entries refer to the original members.
fn exact_labeled(d: &SpecialDatum, labels: &[usize], cache: &mut LctCache) -> MultiplicityResult {
    if d.n() == 1 {
        let app = RuleApplication { rule: Rule::Line, member: labels.to_vec(), dimension: 1 };
        return MultiplicityResult::exact(BigUint::one(), vec![app]);
    }
    let lct = lct_datum_cached(d, cache);
    let Some(root) = d.root() else {
        let parts: Vec<MultiplicityResult> = d
            .maximal_elements()
            .into_iter()
            .map(|j| {
                let sub: Vec<usize> = d.member(j).elements().iter().map(|&e| labels[e - 1]).collect();
                exact_labeled(&d.restrict(j), &sub, cache)
            })
            .collect();
        let mut trace = vec![RuleApplication { rule: Rule::Components, member: labels.to_vec(), dimension: d.n() }];
        for p in &parts {
            trace.extend(p.trace.iter().cloned());
        }
        if parts.iter().all(MultiplicityResult::is_exact) {
            let v = parts.iter().map(|p| p.value.clone().expect("exact")).product();
            return MultiplicityResult::exact(v, trace);
        }
        let lower: Rational = parts.iter().map(|p| p.lower.clone()).product();
        let upper: Rational = parts.iter().map(|p| p.upper.clone()).product();
        let lower = rmax(lower, global_lower(d, &lct, cache));
        let upper = rmin(upper, global_upper(d, &lct));
        trace.push(RuleApplication { rule: Rule::Bounds, member: labels.to_vec(), dimension: d.n() });
        return MultiplicityResult::interval(lower, upper, trace);
    };

    let r_int = d.child_weight(root).expect("root has children").clone();
    let r = from_uint(&r_int);
    let reduced = d.reduce(root).expect("connected root");
    let l = lct_datum_cached(&reduced, cache);
    let sub = exact_labeled(&reduced, labels, cache);
    let here = root_elements(d, labels);

    if &l / &r >= Rational::one() {
        let mut trace = vec![RuleApplication { rule: Rule::CyclicCover, member: here.clone(), dimension: d.n() }];
        trace.extend(sub.trace.iter().cloned());
        if let Some(v) = &sub.value {
            return MultiplicityResult::exact(&r_int * v, trace);
        }
        let lower = rmax(&r * &sub.lower, global_lower(d, &lct, cache));
        let upper = rmin(&r * &sub.upper, global_upper(d, &lct));
        trace.push(RuleApplication { rule: Rule::Bounds, member: here, dimension: d.n() });
        return MultiplicityResult::interval(lower, upper, trace);
    }

    if d.children(root).iter().all(|&c| d.member(c).is_singleton()) {
        let n = BigUint::from(d.n());
        let v = if r_int < n { r_int } else { n };
        let trace = vec![RuleApplication { rule: Rule::Hypersurface, member: here, dimension: d.n() }];
        return MultiplicityResult::exact(v, trace);
    }

    let mut trace = vec![RuleApplication { rule: Rule::Bounds, member: here, dimension: d.n() }];
    trace.extend(sub.trace.iter().cloned());
    let lower = rmax(&l * &sub.lower, global_lower(d, &lct, cache));
    let upper = rmin(&r * &sub.upper, global_upper(d, &lct));
    MultiplicityResult::interval(lower, upper, trace)
}

/// Minimum of every applicable upper bound on `e(R_D)`.
pub fn mult_upper(d: &SpecialDatum) -> Rational {
    mult_upper_cached(d, &mut LctCache::new())
}

pub fn mult_upper_cached(d: &SpecialDatum, cache: &mut LctCache) -> Rational {
    if d.n() == 1 {
        return Rational::one();
    }
    let lct = lct_datum_cached(d, cache);
    let mut best = global_upper(d, &lct);
    match d.root() {
        Some(root) => {
            let r = from_uint(d.child_weight(root).expect("root has children"));
            let reduced = d.reduce(root).expect("connected root");
            best = rmin(best, r * mult_upper_cached(&reduced, cache));
        }
        None => {
            let prod: Rational = d.components().iter().map(|c| mult_upper_cached(c, cache)).product();
            best = rmin(best, prod);
        }
    }
    best
}

/// Maximum of every applicable lower bound on `e(R_D)`.
pub fn mult_lower(d: &SpecialDatum) -> Rational {
    mult_lower_cached(d, &mut LctCache::new())
}

pub fn mult_lower_cached(d: &SpecialDatum, cache: &mut LctCache) -> Rational {
    if d.n() == 1 {
        return Rational::one();
    }
    let lct = lct_datum_cached(d, cache);
    let mut best = global_lower(d, &lct, cache);
    match d.root() {
        Some(root) => {
            let r = from_uint(d.child_weight(root).expect("root has children"));
            let reduced = d.reduce(root).expect("connected root");
            let l = lct_datum_cached(&reduced, cache);
            let sub = mult_lower_cached(&reduced, cache);
            let factor = if &l / &r >= Rational::one() { r } else { l };
            best = rmax(best, factor * sub);
        }
        None => {
            let prod: Rational = d.components().iter().map(|c| mult_lower_cached(c, cache)).product();
            best = rmax(best, prod);
        }
    }
    best
}

/// Resource limits for [`mult_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest `k` for which `ℓ(R_D/m_D^k)` is tabulated.
    pub k_max: usize,
    /// Maximum number of lattice points the search may touch.
    pub point_ceiling: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { k_max: 12, point_ceiling: 5_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSamuelTable {
    pub n: usize,
    /// `values[k-1] = ℓ(R_D/m_D^k)` for `k = 1..=K`.
    pub values: Vec<u64>,
    /// `n`-th forward differences of `0, ℓ(1), .., ℓ(K)`.
    pub differences: Vec<i64>,
    pub stabilized: bool,
    pub e: Option<u64>,
    /// Lattice points touched.
    pub points: u64,
    /// Set when the point ceiling (or weight size) stopped the search.
    pub exhausted: bool,
}

impl HilbertSamuelTable {
    fn aborted(n: usize, points: u64) -> Self {
        HilbertSamuelTable {
            n,
            values: Vec::new(),
            differences: Vec::new(),
            stabilized: false,
            e: None,
            points,
            exhausted: true,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.stabilized {
            "stabilized"
        } else if self.exhausted {
            "exhausted"
        } else {
            "unstable"
        }
    }
}

/// `n`-th forward differences of a sequence.
pub fn forward_differences(seq: &[i64], order: usize) -> Vec<i64> {
    let mut cur: Vec<i64> = seq.to_vec();
    for _ in 0..order {
        if cur.len() < 2 {
            return Vec::new();
        }
        cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
    }
    cur
}

struct LengthSearch<'a> {
    gens: &'a [Vec<u32>],
    cap: i32,
    memo: BTreeMap<Vec<u32>, i32>,
    ceiling: u64,
    overflow: bool,
}

impl LengthSearch<'_> {
    /// `min(L(s), cap)` where `L(s)` is the largest number of generators
    /// summing to `s`, or `-1` when `s` is not in the semigroup.
    fn length(&mut self, s: &[u32]) -> i32 {
        if s.iter().all(|&x| x == 0) {
            return 0;
        }
        if let Some(&v) = self.memo.get(s) {
            return v;
        }
        if self.overflow {
            return -1;
        }
        let mut best = -1;
        let mut t = s.to_vec();
        for g in self.gens {
            if g.iter().zip(s).any(|(a, b)| a > b) {
                continue;
            }
            for ((x, a), b) in t.iter_mut().zip(g).zip(s) {
                *x = b - a;
            }
            let v = self.length(&t);
            if v >= 0 && v + 1 > best {
                best = v + 1;
                if best >= self.cap {
                    best = self.cap;
                    break;
                }
            }
        }
        self.memo.insert(s.to_vec(), best);
        if self.memo.len() as u64 > self.ceiling {
            self.overflow = true;
        }
        best
    }
}

/// Tabulates `ℓ(R_D/m_D^k)` for `k = 1..=k_max` by counting elements of the
/// semigroup `S` generated by `w(J)·χ_J`.
///
/// `m_D^k` is spanned by the monomials whose exponent has a representation
/// with at least `k` generators, so `ℓ(R_D/m_D^k) = #{s ∈ S : L(s) <= k-1}`
/// with `L(s)` the longest representation. `e` is read off as the `n`-th
/// difference once the last three agree.
pub fn mult_oracle(d: &SpecialDatum, budget: OracleBudget) -> HilbertSamuelTable {
    let n = d.n();
    let k_max = budget.k_max.max(1);
    let Some(weights) = d.small_weights() else {
        return HilbertSamuelTable::aborted(n, 0);
    };
    let mut gens: Vec<Vec<u32>> = Vec::with_capacity(d.len());
    for (m, &w) in d.members().iter().zip(&weights) {
        let Some(w) = w.to_u32() else {
            return HilbertSamuelTable::aborted(n, 0);
        };
        let mut g = vec![0u32; n];
        for &e in m.elements() {
            g[e - 1] = w;
        }
        gens.push(g);
    }
    // Cheap generators first so long chains are found before the cap.
    gens.sort_by_key(|g| (g.iter().map(|&x| u64::from(x)).sum::<u64>(), g.clone()));

    // Everything with L(s) <= k_max - 1 is a sum of at most k_max - 1 generators.
    let mut reach: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier: Vec<Vec<u32>> = vec![vec![0; n]];
    reach.insert(vec![0; n]);
    for _ in 1..k_max {
        let mut next = BTreeSet::new();
        for s in &frontier {
            for g in &gens {
                let Some(t) = s.iter().zip(g).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<u32>>>() else {
                    return HilbertSamuelTable::aborted(n, reach.len() as u64);
                };
                if !reach.contains(&t) {
                    next.insert(t);
                }
            }
        }
        if (reach.len() + next.len()) as u64 > budget.point_ceiling {
            return HilbertSamuelTable::aborted(n, (reach.len() + next.len()) as u64);
        }
        frontier = next.iter().cloned().collect();
        reach.extend(next);
    }

    let cap = k_max as i32;
    let mut search = LengthSearch {
        gens: &gens,
        cap,
        memo: BTreeMap::new(),
        ceiling: budget.point_ceiling.saturating_sub(reach.len() as u64),
        overflow: false,
    };
    let mut counts = vec![0u64; k_max];
    for s in &reach {
        let l = search.length(s);
        if search.overflow {
            return HilbertSamuelTable::aborted(n, reach.len() as u64 + search.memo.len() as u64);
        }
        debug_assert!(l >= 0, "reachable points lie in the semigroup");
        if (l as usize) < k_max {
            counts[l as usize] += 1;
        }
    }
    let points = reach.len() as u64 + search.memo.len() as u64;

    let mut values = Vec::with_capacity(k_max);
    let mut acc = 0u64;
    for c in &counts {
        acc += c;
        values.push(acc);
    }
    let mut seq = vec![0i64];
    seq.extend(values.iter().map(|&v| v as i64));
    let differences = forward_differences(&seq, n);
    let stabilized = differences.len() >= 3 && {
        let t = &differences[differences.len() - 3..];
        t[0] == t[1] && t[1] == t[2] && t[2] > 0
    };
    let e = if stabilized { differences.last().map(|&x| x as u64) } else { None };
    HilbertSamuelTable { n, values, differences, stabilized, e, points, exhausted: false }
}

/// Best known exact multiplicity: the oracle when it stabilized, otherwise
/// the recursion when it is exact.
pub fn known_multiplicity(table: &HilbertSamuelTable, exact: &MultiplicityResult) -> Option<BigUint> {
    table.e.map(BigUint::from).or_else(|| exact.value.clone())
}

pub fn describe(result: &MultiplicityResult) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    match &result.value {
        Some(v) => {
            let _ = write!(s, "{v} (exact)");
        }
        None => {
            let _ = write!(s, "[{}, {}] (interval)", result.lower, result.upper);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn d(n: usize, sets: &[(&[usize], i64)]) -> SpecialDatum {
        SpecialDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w)).collect()).unwrap()
    }

    fn hypersurface(n: usize, a: i64) -> SpecialDatum {
        let mut sets: Vec<(Vec<usize>, i64)> = vec![((1..=n).collect(), 1)];
        sets.extend((1..=n).map(|i| (vec![i], a)));
        SpecialDatum::new(n, sets).unwrap()
    }

    fn nested4() -> SpecialDatum {
        d(4, &[(&[1, 2, 3, 4], 1), (&[1, 2], 2), (&[3, 4], 2), (&[1], 4), (&[2], 4), (&[3], 4), (&[4], 4)])
    }

    fn exact_value(r: &MultiplicityResult) -> u64 {
        assert!(r.is_exact(), "{r:?}");
        r.value.as_ref().unwrap().to_u64().unwrap()
    }

    #[test]
    fn exact_known_values() {
        assert_eq!(exact_value(&mult_exact(&hypersurface(3, 2))), 2);
        let r = mult_exact(&hypersurface(3, 4));
        assert_eq!(exact_value(&r), 3);
        assert_eq!(r.trace[0].rule, Rule::Hypersurface);
        let pairs = d(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1], 2), (&[2], 2), (&[3], 2), (&[4], 2)]);
        assert_eq!(exact_value(&mult_exact(&pairs)), 4);
        assert_eq!(exact_value(&mult_exact(&nested4())), 8);
        assert_eq!(exact_value(&mult_exact(&d(1, &[(&[1], 1)]))), 1);
    }

    #[test]
    fn bound_known_values() {
        assert_eq!(mult_upper(&hypersurface(3, 4)), int(3));
        assert_eq!(mult_lower(&hypersurface(3, 4)), int(3));
        assert_eq!(mult_upper(&hypersurface(3, 2)), int(2));
        assert_eq!(mult_lower(&hypersurface(3, 2)), int(2));
        let one = d(1, &[(&[1], 1)]);
        assert_eq!(mult_upper(&one), int(1));
        assert_eq!(mult_lower(&one), int(1));
    }

    #[test]
    fn oracle_known_values() {
        let t = mult_oracle(&d(1, &[(&[1], 1)]), OracleBudget::default());
        assert_eq!(t.values, (1..=12).collect::<Vec<u64>>());
        assert_eq!(t.e, Some(1));
        assert_eq!(mult_oracle(&hypersurface(3, 2), OracleBudget::default()).e, Some(2));
        assert_eq!(mult_oracle(&hypersurface(3, 4), OracleBudget::default()).e, Some(3));
    }

    #[test]
    fn oracle_respects_ceiling() {
        let t = mult_oracle(&hypersurface(3, 4), OracleBudget { k_max: 12, point_ceiling: 50 });
        assert!(!t.stabilized);
        assert!(t.exhausted);
        assert_eq!(t.e, None);
    }

    #[test]
    fn oracle_table_is_increasing() {
        let t = mult_oracle(&nested4(), OracleBudget::default());
        assert!(t.values.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(t.e, Some(8));
    }

    #[test]
    fn differences() {
        // k^2: second differences are 2
        let seq: Vec<i64> = (0..6).map(|k| k * k).collect();
        assert_eq!(forward_differences(&seq, 2), vec![2, 2, 2, 2]);
    }
}
