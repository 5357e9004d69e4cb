//! Exhaustive checking of the bounds and identities over enumerated data.
//!
//! Each datum is first analyzed on its own ([`analyze`]); the checks then
//! compare the analysis against those of related data (reduction,
//! components), looked up by canonical forest. Both phases are pure, so a
//! caller may run them in parallel and merge with [`assemble`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::canon::{canonical_form, forest, Shape};
use crate::datum::SpecialDatum;
use crate::enumerate::{enumerate, EnumerationBudget};
use crate::invariants::{
    delta_sum_identity, group_order, group_order_oracle, main_bound, summarize, two_pow_n_minus_1, InvariantSummary,
};
use crate::lct::{lct_datum_cached, LctCache};
use crate::multiplicity::{
    mult_exact_cached, mult_lower_cached, mult_oracle, mult_upper_cached, HilbertSamuelTable, MultiplicityResult,
};
use crate::rational::{ceil, from_uint, pow, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The check needed a multiplicity the oracle did not deliver.
    Skip,
    /// The hypotheses of the check do not apply to this datum.
    NotApplicable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
            Outcome::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    /// lct by recursion equals lct by linear programming.
    C1,
    /// `|G_D|` by recursion equals the lattice index.
    C2,
    /// `|G_{D^a}| = a^{n-1}|G_D|` for `a = 2, 3`.
    C3,
    /// `emb <= 2n - ⌈lct⌉` and its refinement through the children.
    C4,
    /// `e <= m(D) <= 2^{n-1}`, equality iff `emb = 2n - 1`.
    C5,
    /// `e <= 2^{n-⌈lct⌉}`, equality iff `emb = 2n - ⌈lct⌉`.
    C6,
    /// `e >= ∏α >= (1/|G|)(n/lct)^n`.
    C7,
    /// `∏α = (1/|G|)(n/lct)^n` iff the closure of `a_D` is a power of the
    /// maximal ideal, and then `q = n/lct = w({i})`.
    C8,
    /// `α = β` everywhere implies `e = ∏α`.
    C9,
    /// `e <= r·e(R_{D∖J})`, equality when `lct = lct(m_{D∖J})/r`.
    C10,
    /// `e >= lct(m_{D∖J})·e(R_{D∖J})` when `lct(m_{D∖J})/r < 1`.
    C11,
    /// `e` is multiplicative over components.
    C12,
    /// The oracle value agrees with the recursion and lies within the bounds.
    Soundness,
    /// `Σ(δ(J) - 1) = n - #maximal` and `m(D) <= 2^{n-#maximal}`.
    DeltaSum,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::C1,
        CheckId::C2,
        CheckId::C3,
        CheckId::C4,
        CheckId::C5,
        CheckId::C6,
        CheckId::C7,
        CheckId::C8,
        CheckId::C9,
        CheckId::C10,
        CheckId::C11,
        CheckId::C12,
        CheckId::Soundness,
        CheckId::DeltaSum,
    ];

    pub fn code(self) -> &'static str {
        match self {
            CheckId::C1 => "C1",
            CheckId::C2 => "C2",
            CheckId::C3 => "C3",
            CheckId::C4 => "C4",
            CheckId::C5 => "C5",
            CheckId::C6 => "C6",
            CheckId::C7 => "C7",
            CheckId::C8 => "C8",
            CheckId::C9 => "C9",
            CheckId::C10 => "C10",
            CheckId::C11 => "C11",
            CheckId::C12 => "C12",
            CheckId::Soundness => "soundness",
            CheckId::DeltaSum => "delta-sum",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::C1 => "lct recursion = lct LP",
            CheckId::C2 => "|G| recursion = lattice index",
            CheckId::C3 => "|G_{D^a}| = a^(n-1)|G_D|, a = 2, 3",
            CheckId::C4 => "emb <= 2n - ceil(lct)",
            CheckId::C5 => "e <= m(D) <= 2^(n-1), equality iff emb = 2n-1",
            CheckId::C6 => "e <= 2^(n-ceil(lct)), equality iff emb = 2n-ceil(lct)",
            CheckId::C7 => "e >= prod alpha >= (1/|G|)(n/lct)^n",
            CheckId::C8 => "prod alpha = volume bound iff closure is a power of m",
            CheckId::C9 => "alpha = beta everywhere implies e = prod alpha",
            CheckId::C10 => "e <= r e(reduce), equality when lct = lct(reduce)/r",
            CheckId::C11 => "e >= lct(reduce) e(reduce) when lct(reduce) < r",
            CheckId::C12 => "e multiplicative over components",
            CheckId::Soundness => "oracle e agrees with recursion and bounds",
            CheckId::DeltaSum => "sum(delta-1) = n - #maximal, m(D) <= 2^(n-#maximal)",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: CheckId,
    pub outcome: Outcome,
    /// Named values on both sides of the compared relation.
    pub witness: Vec<(String, String)>,
}

impl CheckOutcome {
    fn new(id: CheckId, ok: bool, witness: Vec<(String, String)>) -> Self {
        CheckOutcome { id, outcome: if ok { Outcome::Pass } else { Outcome::Fail }, witness }
    }

    fn skip(id: CheckId, reason: &str) -> Self {
        CheckOutcome { id, outcome: Outcome::Skip, witness: alloc::vec![("reason".into(), reason.into())] }
    }

    fn not_applicable(id: CheckId) -> Self {
        CheckOutcome { id, outcome: Outcome::NotApplicable, witness: Vec::new() }
    }
}

fn w<T: ToString>(name: &str, value: T) -> (String, String) {
    (name.into(), value.to_string())
}

/// Per-datum values every check draws on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub datum: SpecialDatum,
    pub forest: Vec<Shape>,
    pub summary: InvariantSummary,
    pub multiplicity: MultiplicityResult,
    pub lower: Rational,
    pub upper: Rational,
    pub oracle: HilbertSamuelTable,
}

impl Analysis {
    pub fn oracle_e(&self) -> Option<BigUint> {
        self.oracle.e.map(BigUint::from)
    }
}

pub fn analyze(d: &SpecialDatum, budget: &EnumerationBudget) -> Analysis {
    let canon = canonical_form(d);
    let mut cache = LctCache::new();
    let datum = canon.datum;
    Analysis {
        summary: summarize(&datum, &mut cache),
        multiplicity: mult_exact_cached(&datum, &mut cache),
        lower: mult_lower_cached(&datum, &mut cache),
        upper: mult_upper_cached(&datum, &mut cache),
        oracle: mult_oracle(&datum, budget.oracle),
        forest: canon.forest,
        datum,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumRecord {
    pub analysis: Analysis,
    pub checks: Vec<CheckOutcome>,
    /// `e = ∏α` although `α ≠ β` at some member.
    pub alpha_product_without_equality: bool,
}

impl DatumRecord {
    pub fn has_fail(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Fail)
    }

    pub fn has_skip(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Skip)
    }
}

/// Looks up the analysis of the class with a given canonical forest.
pub trait AnalysisLookup {
    fn get(&self, forest: &[Shape]) -> Option<&Analysis>;
}

impl AnalysisLookup for BTreeMap<Vec<Shape>, Analysis> {
    fn get(&self, forest: &[Shape]) -> Option<&Analysis> {
        BTreeMap::get(self, forest)
    }
}

fn related_e(lookup: &dyn AnalysisLookup, d: &SpecialDatum) -> Option<BigUint> {
    lookup.get(&forest(d)).and_then(Analysis::oracle_e)
}

fn iff(a: bool, b: bool) -> bool {
    a == b
}

/// Runs every check on one analyzed datum.
pub fn check(a: &Analysis, lookup: &dyn AnalysisLookup) -> DatumRecord {
    let d = &a.datum;
    let s = &a.summary;
    let n = d.n();
    let mut cache = LctCache::new();
    let e = a.oracle_e();
    let e_r = e.as_ref().map(from_uint);
    let no_e = "oracle did not stabilize";
    let mut out = Vec::new();

    out.push(CheckOutcome::new(CheckId::C1, s.lct == s.lct_lp, alloc::vec![w("recursion", &s.lct), w("lp", &s.lct_lp)]));
    out.push(CheckOutcome::new(
        CheckId::C2,
        s.group_order == s.group_order_oracle,
        alloc::vec![w("recursion", &s.group_order), w("lattice", &s.group_order_oracle)],
    ));

    // C3
    if s.connected {
        let mut ok = true;
        let mut wit = Vec::new();
        for f in [2u32, 3] {
            let scaled = d.scale(&BigUint::from(f)).expect("nonzero factor");
            let expect = Pow::pow(BigUint::from(f), (n - 1) as u32) * &s.group_order;
            let rec = group_order(&scaled);
            let lat = group_order_oracle(&scaled);
            ok &= rec == expect && lat == expect;
            wit.push(w(&format!("a={f} expected"), &expect));
            wit.push(w(&format!("a={f} recursion"), &rec));
            wit.push(w(&format!("a={f} lattice"), &lat));
        }
        out.push(CheckOutcome::new(CheckId::C3, ok, wit));
    } else {
        out.push(CheckOutcome::not_applicable(CheckId::C3));
    }

    // C4
    {
        let bound = BigInt::from(2 * n) - &s.ceil_lct;
        let emb = BigInt::from(s.emb);
        let mut ok = emb <= bound;
        let mut wit = alloc::vec![w("emb", s.emb), w("2n-ceil(lct)", &bound)];
        if let (Some(root), true) = (d.root(), n >= 2) {
            let reduced = d.reduce(root).expect("connected root");
            let parts = reduced.components();
            let ceil_sum: BigInt = parts.iter().map(|c| ceil(&lct_datum_cached(c, &mut cache))).sum();
            let mid = BigInt::from(2 * n) - &ceil_sum + 1;
            ok &= emb <= mid && mid <= bound;
            let parts_tight = parts.iter().all(|c| {
                BigInt::from(c.len()) == BigInt::from(2 * c.n()) - ceil(&lct_datum_cached(c, &mut cache))
            });
            let cond2 = parts_tight && &ceil_sum - 1 == s.ceil_lct;
            ok &= iff(emb == bound, cond2);
            // When the reduction branch is tight the child weight is forced to 2.
            let r = from_uint(d.child_weight(root).expect("root has children"));
            let l = lct_datum_cached(&reduced, &mut cache);
            if s.lct == &l / &r && &ceil_sum - 1 == s.ceil_lct {
                ok &= r == Rational::from_integer(BigInt::from(2)) && ceil(&l) - &s.ceil_lct == BigInt::one();
            }
            wit.push(w("2n-sum ceil(lct(D_Ji))+1", &mid));
        }
        out.push(CheckOutcome::new(CheckId::C4, ok, wit));
    }

    let m = from_uint(&s.m_of_d);
    let wb = from_uint(&two_pow_n_minus_1(n));
    let mb = main_bound(n, &s.lct);
    match &e_r {
        Some(e) => {
            let ok = *e <= m && m <= wb && iff(*e == wb, s.emb == 2 * n - 1);
            out.push(CheckOutcome::new(
                CheckId::C5,
                ok,
                alloc::vec![w("e", e), w("m(D)", &m), w("2^(n-1)", &wb), w("emb", s.emb)],
            ));
            let tight = BigInt::from(s.emb) == BigInt::from(2 * n) - &s.ceil_lct;
            let ok = *e <= mb && iff(*e == mb, tight);
            out.push(CheckOutcome::new(CheckId::C6, ok, alloc::vec![w("e", e), w("2^(n-ceil(lct))", &mb), w("emb", s.emb)]));
        }
        None => {
            out.push(CheckOutcome::skip(CheckId::C5, no_e));
            out.push(CheckOutcome::skip(CheckId::C6, no_e));
        }
    }

    // C7
    let chain = s.alpha_product >= s.volume_bound;
    match &e_r {
        Some(e) => out.push(CheckOutcome::new(
            CheckId::C7,
            *e >= s.alpha_product && chain,
            alloc::vec![w("e", e), w("prod alpha", &s.alpha_product), w("volume", &s.volume_bound)],
        )),
        None if !chain => out.push(CheckOutcome::new(
            CheckId::C7,
            false,
            alloc::vec![w("prod alpha", &s.alpha_product), w("volume", &s.volume_bound)],
        )),
        None => out.push(CheckOutcome::skip(CheckId::C7, no_e)),
    }

    // C8
    match &s.closure_power {
        Err(err) => out.push(CheckOutcome::skip(CheckId::C8, &err.to_string())),
        Ok(q) => {
            let equal = s.alpha_product == s.volume_bound;
            let mut ok = iff(equal, q.is_some());
            let mut wit = alloc::vec![w("prod alpha", &s.alpha_product), w("volume", &s.volume_bound)];
            if let Some(q) = q {
                let qr = from_uint(q);
                ok &= &qr * &s.lct == Rational::from_integer(BigInt::from(n));
                ok &= d.singleton_weights().iter().all(|x| x == q);
                wit.push(w("q", q));
                wit.push(w("n/lct", Rational::from_integer(BigInt::from(n)) / &s.lct));
            } else {
                wit.push(w("q", "none"));
            }
            out.push(CheckOutcome::new(CheckId::C8, ok, wit));
        }
    }

    // C9
    let all_equal = s.members.iter().all(|mi| mi.alpha == mi.beta);
    let mut observed = false;
    match (&e_r, all_equal) {
        (Some(e), true) => {
            out.push(CheckOutcome::new(CheckId::C9, *e == s.alpha_product, alloc::vec![w("e", e), w("prod alpha", &s.alpha_product)]))
        }
        (None, true) => out.push(CheckOutcome::skip(CheckId::C9, no_e)),
        (Some(e), false) => {
            observed = *e == s.alpha_product;
            out.push(CheckOutcome::not_applicable(CheckId::C9));
        }
        (None, false) => out.push(CheckOutcome::not_applicable(CheckId::C9)),
    }

    // C10, C11
    match (d.root(), n >= 2) {
        (Some(root), true) => {
            let reduced = d.reduce(root).expect("connected root");
            let r = from_uint(d.child_weight(root).expect("root has children"));
            let l = lct_datum_cached(&reduced, &mut cache);
            let strict = &l / &r < Rational::one();
            match (&e_r, related_e(lookup, &reduced)) {
                (Some(e), Some(er)) => {
                    let er = from_uint(&er);
                    let upper = &r * &er;
                    let mut ok = *e <= upper;
                    if s.lct == &l / &r {
                        ok &= *e == upper;
                    }
                    out.push(CheckOutcome::new(
                        CheckId::C10,
                        ok,
                        alloc::vec![w("e", e), w("r e(reduce)", &upper), w("lct", &s.lct), w("lct(reduce)/r", &l / &r)],
                    ));
                    if strict {
                        let lower = &l * &er;
                        out.push(CheckOutcome::new(
                            CheckId::C11,
                            *e >= lower,
                            alloc::vec![w("e", e), w("lct(reduce) e(reduce)", &lower)],
                        ));
                    } else {
                        out.push(CheckOutcome::not_applicable(CheckId::C11));
                    }
                }
                _ => {
                    out.push(CheckOutcome::skip(CheckId::C10, no_e));
                    out.push(if strict {
                        CheckOutcome::skip(CheckId::C11, no_e)
                    } else {
                        CheckOutcome::not_applicable(CheckId::C11)
                    });
                }
            }
        }
        _ => {
            out.push(CheckOutcome::not_applicable(CheckId::C10));
            out.push(CheckOutcome::not_applicable(CheckId::C11));
        }
    }

    // C12
    if s.connected {
        out.push(CheckOutcome::not_applicable(CheckId::C12));
    } else {
        let parts: Option<Vec<BigUint>> = d.components().iter().map(|c| related_e(lookup, c)).collect();
        match (&e, parts) {
            (Some(e), Some(parts)) => {
                let prod: BigUint = parts.iter().product();
                out.push(CheckOutcome::new(CheckId::C12, *e == prod, alloc::vec![w("e", e), w("product", &prod)]));
            }
            _ => out.push(CheckOutcome::skip(CheckId::C12, no_e)),
        }
    }

    // soundness
    match &e {
        Some(ev) => {
            let er = from_uint(ev);
            let mut ok = a.lower <= er && er <= a.upper && a.multiplicity.contains(ev);
            if let Some(v) = &a.multiplicity.value {
                ok &= v == ev;
            }
            out.push(CheckOutcome::new(
                CheckId::Soundness,
                ok,
                alloc::vec![
                    w("oracle", ev),
                    w("recursion lower", &a.multiplicity.lower),
                    w("recursion upper", &a.multiplicity.upper),
                    w("lower", &a.lower),
                    w("upper", &a.upper)
                ],
            ));
        }
        None => out.push(CheckOutcome::skip(CheckId::Soundness, no_e)),
    }

    // delta sum
    {
        let (lhs, rhs) = delta_sum_identity(d);
        let mut ok = lhs == rhs;
        if s.connected {
            ok &= lhs == n - 1;
        }
        let cap = BigUint::one() << (n - s.maximal_count);
        ok &= s.m_of_d <= cap;
        out.push(CheckOutcome::new(
            CheckId::DeltaSum,
            ok,
            alloc::vec![w("sum(delta-1)", lhs), w("n-#maximal", rhs), w("m(D)", &s.m_of_d), w("2^(n-#maximal)", &cap)],
        ));
    }

    DatumRecord { analysis: a.clone(), checks: out, alpha_product_without_equality: observed }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tallies {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub not_applicable: usize,
}

impl Tallies {
    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Skip => self.skip += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
        }
    }
}

/// Result of checking a numeric lemma on a finite grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    pub points: usize,
    /// Equality cases met on the grid.
    pub equalities: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `a <= 2^{⌈b⌉-⌈b/a⌉}` for integers `2 <= a <= 12` and `b ∈ [a, 20]` in
/// steps of `1/4`, with equality exactly when `a = 2` and
/// `⌈b⌉ - ⌈b/a⌉ = 1`.
pub fn ceiling_lemma_grid() -> LemmaReport {
    let mut report = LemmaReport { name: "ceiling", points: 0, equalities: 0, failures: Vec::new() };
    for a in 2i64..=12 {
        for quarter in (4 * a)..=80 {
            let b = Rational::new(BigInt::from(quarter), BigInt::from(4));
            let ar = Rational::from_integer(BigInt::from(a));
            let k = ceil(&b) - ceil(&(&b / &ar));
            let rhs = crate::rational::pow2(&k);
            let equal = ar == rhs;
            let ok = ar <= rhs && iff(equal, a == 2 && k == BigInt::one());
            report.points += 1;
            if equal {
                report.equalities += 1;
            }
            if !ok {
                report.failures.push(format!("a={a} b={b}: 2^{k}={rhs}"));
            }
        }
    }
    report
}

// Raises the two sides of the concavity inequality to the common
// denominator of the exponents so both become rational integer powers.
fn concavity_holds(xs: &[Rational], cs: &[Rational]) -> (bool, bool) {
    let den = xs.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let int_exp = |x: &Rational| -> u32 {
        let v = x * Rational::from_integer(den.clone());
        u32::try_from(v.to_integer()).expect("small exponent")
    };
    let mut lhs = Rational::one();
    for (x, c) in xs.iter().zip(cs) {
        lhs *= pow(&(x / c), int_exp(x));
    }
    let sx: Rational = xs.iter().sum();
    let sc: Rational = cs.iter().sum();
    let rhs = pow(&(&sx / &sc), int_exp(&sx));
    (lhs >= rhs, lhs == rhs)
}

fn grid_points(values: &[Rational], len: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = alloc::vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// `∏(x_i/c_i)^{x_i} >= (Σx/Σc)^{Σx}` with equality iff the ratios
/// `x_i/c_i` agree, on all of `{1/2, 1, 3/2, 2, 3}^4` (two terms) and
/// `{1/2, 1, 2, 3}^6` (three terms).
pub fn concavity_lemma_grid() -> LemmaReport {
    let mut report = LemmaReport { name: "concavity", points: 0, equalities: 0, failures: Vec::new() };
    let r = |p: i64, q: i64| Rational::new(BigInt::from(p), BigInt::from(q));
    let grids = [
        (2usize, alloc::vec![r(1, 2), r(1, 1), r(3, 2), r(2, 1), r(3, 1)]),
        (3usize, alloc::vec![r(1, 2), r(1, 1), r(2, 1), r(3, 1)]),
    ];
    for (len, values) in grids {
        for p in grid_points(&values, 2 * len) {
            let (xs, cs) = p.split_at(len);
            let (holds, equal) = concavity_holds(xs, cs);
            let ratio0 = &xs[0] / &cs[0];
            let proportional = xs.iter().zip(cs).all(|(x, c)| x / c == ratio0);
            report.points += 1;
            if equal {
                report.equalities += 1;
            }
            if !holds || !iff(equal, proportional) {
                report.failures.push(format!("x={xs:?} c={cs:?}"));
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub budget: EnumerationBudget,
    /// Sorted by dimension, then canonical forest.
    pub records: Vec<DatumRecord>,
    pub tallies: BTreeMap<CheckId, Tallies>,
    pub lemmas: Vec<LemmaReport>,
    pub failing_records: usize,
    pub skipped_records: usize,
    /// Data with `e = ∏α` although `α ≠ β` somewhere.
    pub alpha_product_without_equality: usize,
    /// Data whose recursive multiplicity remained an interval.
    pub intervals: usize,
}

impl VerificationReport {
    pub fn total_fails(&self) -> usize {
        self.tallies.values().map(|t| t.fail).sum::<usize>() + self.lemmas.iter().map(|l| l.failures.len()).sum::<usize>()
    }

    pub fn all_pass(&self) -> bool {
        self.total_fails() == 0
    }

    /// Fraction of data with at least one skipped check.
    pub fn skip_rate(&self) -> Rational {
        if self.records.is_empty() {
            return Rational::zero();
        }
        Rational::new(BigInt::from(self.skipped_records), BigInt::from(self.records.len()))
    }
}

/// Orders records canonically and computes the tallies.
pub fn assemble(budget: EnumerationBudget, mut records: Vec<DatumRecord>, lemmas: Vec<LemmaReport>) -> VerificationReport {
    records.sort_by(|a, b| {
        (a.analysis.datum.n(), &a.analysis.forest).cmp(&(b.analysis.datum.n(), &b.analysis.forest))
    });
    let mut tallies: BTreeMap<CheckId, Tallies> = CheckId::ALL.iter().map(|&c| (c, Tallies::default())).collect();
    for r in &records {
        for c in &r.checks {
            tallies.entry(c.id).or_default().add(c.outcome);
        }
    }
    VerificationReport {
        budget,
        failing_records: records.iter().filter(|r| r.has_fail()).count(),
        skipped_records: records.iter().filter(|r| r.has_skip()).count(),
        alpha_product_without_equality: records.iter().filter(|r| r.alpha_product_without_equality).count(),
        intervals: records.iter().filter(|r| !r.analysis.multiplicity.is_exact()).count(),
        records,
        tallies,
        lemmas,
    }
}

pub fn lemma_reports() -> Vec<LemmaReport> {
    alloc::vec![ceiling_lemma_grid(), concavity_lemma_grid()]
}

/// Sequential run of the whole suite.
pub fn run_suite(budget: &EnumerationBudget) -> VerificationReport {
    let data = enumerate(budget);
    let analyses: BTreeMap<Vec<Shape>, Analysis> = data
        .iter()
        .map(|d| {
            let a = analyze(d, budget);
            (a.forest.clone(), a)
        })
        .collect();
    let records = analyses.values().map(|a| check(a, &analyses)).collect();
    assemble(*budget, records, lemma_reports())
}
