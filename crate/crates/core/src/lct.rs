//! Log canonical thresholds of monomial ideals and special data.
//!
//! For a monomial ideal `a`, `lct(a) = sup{t : (1,..,1) ∈ t·Newt(a)}` and
//! the multiplier ideal `J(a^t)` contains `x^m` iff `m + (1,..,1)` lies in
//! the interior of `t·Newt(a)`. Both are decided here by exact linear
//! programs over convex combinations of the generators. For a special
//! datum the threshold of `m_D` equals that of `a_D`, and it also follows a
//! structural recursion, computed independently by [`lct_datum`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon::{forest, Shape};
use crate::datum::SpecialDatum;
use crate::ideal::MonomialIdeal;
use crate::rational::{from_uint, int, Rational};
use crate::simplex::{LinearProgram, LpOutcome, Relation};

/// Default refusal threshold for lattice-point enumeration in
/// [`closure_is_power`].
pub const DEFAULT_LATTICE_CEILING: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LctError {
    DimensionMismatch { expected: usize, found: usize },
    NegativeCoordinate { index: usize },
    NonPositiveThreshold,
    TooManyLatticePoints { count: BigUint, ceiling: u64 },
}

impl fmt::Display for LctError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LctError::DimensionMismatch { expected, found } => {
                write!(f, "point has length {found}, ideal lives in {expected} variables")
            }
            LctError::NegativeCoordinate { index } => write!(f, "coordinate {index} is negative"),
            LctError::NonPositiveThreshold => write!(f, "threshold t must be positive"),
            LctError::TooManyLatticePoints { count, ceiling } => {
                write!(f, "{count} lattice points to test exceeds the ceiling {ceiling}")
            }
        }
    }
}

/// Convex-combination weights `λ` over the generators, with the optimal
/// value of the program that produced them (zero for pure feasibility).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpCertificate {
    pub value: Rational,
    /// `(generator index, λ_i)` for the nonzero weights.
    pub coefficients: Vec<(usize, Rational)>,
}

impl LpCertificate {
    fn from_point(value: Rational, lambda: &[Rational]) -> Self {
        let coefficients = lambda
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(i, l)| (i, l.clone()))
            .collect();
        LpCertificate { value, coefficients }
    }

    /// The combination `Σ λ_i v_i`.
    pub fn combination(&self, a: &MonomialIdeal) -> Vec<Rational> {
        let gens = a.rational_generators();
        let mut out = vec![Rational::zero(); a.n()];
        for (i, l) in &self.coefficients {
            for (o, g) in out.iter_mut().zip(&gens[*i]) {
                *o += l * g;
            }
        }
        out
    }

    /// Replays the certificate: `λ >= 0`, `Σλ = 1` and `Σ λ_i v_i <= p`.
    pub fn certifies(&self, a: &MonomialIdeal, p: &[Rational]) -> bool {
        let total: Rational = self.coefficients.iter().map(|(_, l)| l.clone()).sum();
        self.coefficients.iter().all(|(i, l)| !l.is_negative() && *i < a.generators().len())
            && total.is_one()
            && p.len() == a.n()
            && self.combination(a).iter().zip(p).all(|(c, x)| c <= x)
    }
}

fn check_point(a: &MonomialIdeal, p: &[Rational]) -> Result<(), LctError> {
    if p.len() != a.n() {
        return Err(LctError::DimensionMismatch { expected: a.n(), found: p.len() });
    }
    if let Some(index) = p.iter().position(|x| x.is_negative()) {
        return Err(LctError::NegativeCoordinate { index });
    }
    Ok(())
}

/// Base program over `λ` (first `m` variables) plus `extra` trailing
/// variables, with `Σλ = 1` already imposed.
fn combination_program(m: usize, extra: usize) -> LinearProgram {
    let mut lp = LinearProgram::new(m + extra);
    let mut ones = vec![Rational::one(); m];
    ones.extend(core::iter::repeat(Rational::zero()).take(extra));
    lp.constrain(ones, Relation::Eq, Rational::one());
    lp
}

/// Whether `p ∈ Newt(a)`, with a certificate when it is.
pub fn newton_contains(a: &MonomialIdeal, p: &[Rational]) -> Result<Option<LpCertificate>, LctError> {
    check_point(a, p)?;
    let gens = a.rational_generators();
    let m = gens.len();
    let mut lp = combination_program(m, 0);
    for (j, pj) in p.iter().enumerate() {
        lp.constrain(gens.iter().map(|g| g[j].clone()).collect(), Relation::Le, pj.clone());
    }
    Ok(match lp.maximize() {
        LpOutcome::Optimal { value, point } => Some(LpCertificate::from_point(value, &point)),
        _ => None,
    })
}

/// `lct(a) = 1/u*` with `u* = min{u : (u,..,u) ∈ Newt(a)}`, together with
/// the optimal combination (certificate value `u*`).
pub fn lct_lp_certified(a: &MonomialIdeal) -> (Rational, LpCertificate) {
    let gens = a.rational_generators();
    let m = gens.len();
    let mut lp = combination_program(m, 1);
    for j in 0..a.n() {
        let mut row: Vec<Rational> = gens.iter().map(|g| g[j].clone()).collect();
        row.push(-Rational::one());
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    lp.objective[m] = -Rational::one();
    match lp.maximize() {
        LpOutcome::Optimal { value, point } => {
            let u = -value;
            let cert = LpCertificate::from_point(u.clone(), &point[..m]);
            (u.recip(), cert)
        }
        // Σλ = 1 with a large u is always feasible and u >= 1/n bounds it.
        o => unreachable!("lct program always has an optimum, got {o:?}"),
    }
}

pub fn lct_lp(a: &MonomialIdeal) -> Rational {
    lct_lp_certified(a).0
}

/// Whether `x^m ∈ J(a^t)`, i.e. `m + (1,..,1)` is interior to `t·Newt(a)`.
///
/// Decided as `max{ε : m + (1-ε)(1,..,1) ∈ t·Newt(a)} > 0`, which suffices
/// because `Newt(a)` is closed upward under the orthant.
pub fn multiplier_membership(a: &MonomialIdeal, t: &Rational, m: &[BigUint]) -> Result<bool, LctError> {
    if m.len() != a.n() {
        return Err(LctError::DimensionMismatch { expected: a.n(), found: m.len() });
    }
    if !t.is_positive() {
        return Err(LctError::NonPositiveThreshold);
    }
    let gens = a.rational_generators();
    let k = gens.len();
    let mut lp = combination_program(k, 1);
    for (j, mj) in m.iter().enumerate() {
        let mut row: Vec<Rational> = gens.iter().map(|g| &g[j] * t).collect();
        row.push(Rational::one());
        lp.constrain(row, Relation::Le, from_uint(mj) + Rational::one());
    }
    lp.objective[k] = Rational::one();
    Ok(match lp.maximize() {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    })
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Calls `f` on every nonnegative integer vector of length `n` summing to `q`.
fn for_each_composition(n: usize, q: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    fn rec(v: &mut Vec<u64>, pos: usize, left: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if pos + 1 == v.len() {
            v[pos] = left;
            return f(v);
        }
        for x in (0..=left).rev() {
            v[pos] = x;
            if !rec(v, pos + 1, left - x, f) {
                return false;
            }
        }
        true
    }
    let mut v = vec![0; n];
    rec(&mut v, 0, q, f)
}

/// Whether the integral closure of `a` equals `(x_1,..,x_n)^q`.
pub fn closure_is_power(a: &MonomialIdeal, q: &BigUint) -> Result<bool, LctError> {
    closure_is_power_with_ceiling(a, q, DEFAULT_LATTICE_CEILING)
}

/// As [`closure_is_power`], refusing when more than `ceiling` lattice points
/// of degree `q` would need testing.
pub fn closure_is_power_with_ceiling(a: &MonomialIdeal, q: &BigUint, ceiling: u64) -> Result<bool, LctError> {
    // Newt(a) ⊆ {Σv >= q} iff every generator has degree >= q.
    if a.degrees().iter().any(|d| d < q) {
        return Ok(false);
    }
    let n = a.n() as u64;
    let count = match q.to_u64() {
        Some(qq) => binomial(qq + n - 1, n - 1),
        None => q.clone(),
    };
    if count > BigUint::from(ceiling) {
        return Err(LctError::TooManyLatticePoints { count, ceiling });
    }
    let q = q.to_u64().expect("bounded by the ceiling");
    let mut all = true;
    for_each_composition(a.n(), q, &mut |v| {
        let p: Vec<Rational> = v.iter().map(|&x| int(x as i64)).collect();
        all = newton_contains(a, &p).expect("valid point").is_some();
        all
    });
    Ok(all)
}

/// `Some(q)` when the closure of `a_D` is `(x_1,..,x_n)^q`. The only
/// candidate is the least generator degree, since `Newt(m^q)` is the
/// half-space `Σx >= q`.
pub fn find_closure_power(d: &SpecialDatum) -> Result<Option<BigUint>, LctError> {
    let a = d.monomial_ideal();
    let q = a.degrees().into_iter().min().expect("a_D has generators");
    Ok(if closure_is_power(&a, &q)? { Some(q) } else { None })
}

/// Memo table for [`lct_datum_cached`], keyed by isomorphism class.
#[derive(Clone, Debug, Default)]
pub struct LctCache {
    table: BTreeMap<Vec<Shape>, Rational>,
}

impl LctCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// `lct(m_D)` by the structural recursion:
/// `1` for `n = 1`, the sum over components when disconnected, and
/// `max{1, lct(D ∖ J)/r}` for a connected datum whose root `J` has child
/// weight `r`.
pub fn lct_datum(d: &SpecialDatum) -> Rational {
    lct_datum_cached(d, &mut LctCache::new())
}

pub fn lct_datum_cached(d: &SpecialDatum, cache: &mut LctCache) -> Rational {
    let key = forest(d);
    if let Some(v) = cache.table.get(&key) {
        return v.clone();
    }
    let value = if d.n() == 1 {
        Rational::one()
    } else if let Some(root) = d.root() {
        let reduced = d.reduce(root).expect("root of a connected datum with n >= 2");
        let r = from_uint(d.child_weight(root).expect("root has children"));
        let l = lct_datum_cached(&reduced, cache);
        let q = l / r;
        if q > Rational::one() {
            q
        } else {
            Rational::one()
        }
    } else {
        d.components().iter().map(|c| lct_datum_cached(c, cache)).sum()
    };
    cache.table.insert(key, value.clone());
    value
}

/// `lct(m_{D∖J})` for the root `J` of a connected datum with `n >= 2`.
pub fn lct_of_reduction(d: &SpecialDatum, cache: &mut LctCache) -> Option<Rational> {
    let reduced = d.reduce_root()?;
    Some(lct_datum_cached(&reduced, cache))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_small(n, gens).unwrap()
    }

    fn pt(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(p, q)| frac(p, q)).collect()
    }

    fn d(n: usize, sets: &[(&[usize], i64)]) -> SpecialDatum {
        SpecialDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w)).collect()).unwrap()
    }

    #[test]
    fn newton_midpoint() {
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        let p = pt(&[(1, 1), (1, 1)]);
        let cert = newton_contains(&a, &p).unwrap().expect("midpoint is inside");
        assert!(cert.certifies(&a, &p));
        assert_eq!(cert.coefficients, vec![(0, frac(1, 2)), (1, frac(1, 2))]);
    }

    #[test]
    fn newton_below_facet() {
        // x + y >= 2 is violated at (1/2, 1/2)
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(newton_contains(&a, &pt(&[(1, 2), (1, 2)])).unwrap().is_none());
    }

    #[test]
    fn newton_contains_generators() {
        let a = ideal(3, &[&[1, 1, 1], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        for g in a.rational_generators() {
            assert!(newton_contains(&a, &g).unwrap().unwrap().certifies(&a, &g));
        }
    }

    #[test]
    fn newton_errors() {
        let a = ideal(2, &[&[1, 0]]);
        assert!(matches!(newton_contains(&a, &pt(&[(1, 1)])), Err(LctError::DimensionMismatch { .. })));
        assert!(matches!(
            newton_contains(&a, &pt(&[(-1, 1), (0, 1)])),
            Err(LctError::NegativeCoordinate { index: 0 })
        ));
    }

    #[test]
    fn lct_lp_known_values() {
        assert_eq!(lct_lp(&ideal(3, &[&[1, 1, 1]])), int(1));
        assert_eq!(lct_lp(&ideal(2, &[&[1, 0], &[0, 1]])), int(2));
        assert_eq!(lct_lp(&ideal(2, &[&[2, 0], &[0, 3]])), frac(5, 6));
    }

    #[test]
    fn lct_lp_certificate_reaches_diagonal() {
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        let (lct, cert) = lct_lp_certified(&a);
        let u = lct.recip();
        assert_eq!(cert.value, u);
        assert!(cert.certifies(&a, &[u.clone(), u]));
    }

    #[test]
    fn lct_datum_known_values() {
        let hyp = d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]);
        assert_eq!(lct_datum(&hyp), frac(3, 2));
        assert_eq!(lct_lp(&hyp.monomial_ideal()), frac(3, 2));
        for (a, b) in [(2, 2), (2, 3), (3, 5)] {
            let pairs = d(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1], a), (&[2], a), (&[3], b), (&[4], b)]);
            assert_eq!(lct_datum(&pairs), int(2));
        }
        assert_eq!(lct_datum(&d(1, &[(&[1], 1)])), int(1));
    }

    #[test]
    fn membership_known_values() {
        let a = ideal(2, &[&[2, 0], &[0, 2]]);
        let m = |x: u64, y: u64| [BigUint::from(x), BigUint::from(y)];
        assert!(multiplier_membership(&a, &int(1), &m(1, 0)).unwrap());
        assert!(!multiplier_membership(&a, &int(1), &m(0, 0)).unwrap());
        assert!(multiplier_membership(&a, &frac(1, 2), &m(0, 0)).unwrap());
        assert_eq!(multiplier_membership(&a, &int(0), &m(0, 0)), Err(LctError::NonPositiveThreshold));
    }

    #[test]
    fn closure_known_values() {
        let a = ideal(3, &[&[1, 1, 1], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert!(closure_is_power(&a, &BigUint::from(2u32)).unwrap());
        let b = ideal(3, &[&[1, 1, 1], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        assert!(!closure_is_power(&b, &BigUint::from(4u32)).unwrap());
        let c = ideal(2, &[&[1, 0], &[0, 1]]);
        assert!(closure_is_power(&c, &BigUint::from(1u32)).unwrap());
    }

    #[test]
    fn closure_ceiling_refuses() {
        let a = ideal(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]]);
        assert!(matches!(
            closure_is_power_with_ceiling(&a, &BigUint::from(5u32), 10),
            Err(LctError::TooManyLatticePoints { .. })
        ));
    }

    #[test]
    fn find_closure_power_known_values() {
        let hyp = |a: i64| d(3, &[(&[1, 2, 3], 1), (&[1], a), (&[2], a), (&[3], a)]);
        assert_eq!(find_closure_power(&hyp(2)).unwrap(), Some(BigUint::from(2u32)));
        assert_eq!(find_closure_power(&hyp(4)).unwrap(), None);
        assert_eq!(find_closure_power(&d(1, &[(&[1], 1)])).unwrap(), Some(BigUint::one()));
    }

    #[test]
    fn cache_is_shared_across_calls() {
        let mut cache = LctCache::new();
        let hyp = d(3, &[(&[1, 2, 3], 1), (&[1], 2), (&[2], 2), (&[3], 2)]);
        let v1 = lct_datum_cached(&hyp, &mut cache);
        let size = cache.len();
        let v2 = lct_datum_cached(&hyp, &mut cache);
        assert_eq!(v1, v2);
        assert_eq!(cache.len(), size);
    }
}
