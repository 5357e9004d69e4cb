//! Discrete invariants of a special datum.
//!
//! The group `G_D` is kept additively: the diagonal matrix with entries
//! `exp(2πi·v_k)` is the vector `v ∈ (Q/Z)^n`, so the generator
//! `(ζ_w, ζ_w^{-1}; i, j)` becomes `(e_i - e_j)/w`. Its order is computed
//! both by the reduction recursion and as a lattice index.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::datum::{DatumError, NodeRef, SpecialDatum};
use crate::hnf::lattice_determinant;
use crate::lct::{find_closure_power, lct_datum_cached, lct_lp, LctCache, LctError};
use crate::rational::{ceil, from_uint, lcm_all, pow, Rational};

/// `emb(R_D) = |D|`.
pub fn embedding_dimension(d: &SpecialDatum) -> usize {
    d.len()
}

/// `δ(J)`: number of children of `J`.
pub fn delta(d: &SpecialDatum, j: NodeRef) -> usize {
    d.children(j).len()
}

/// `m(D) = ∏ δ(J)` over members with `|J| >= 2`.
pub fn m_of_d(d: &SpecialDatum) -> BigUint {
    d.internal_nodes().map(|j| BigUint::from(delta(d, j))).product()
}

/// `(Σ_{|J|>=2} (δ(J) - 1), n - #maximal)`. The two agree for every datum
/// (a forest with `n` leaves); for connected data both equal `n - 1`.
pub fn delta_sum_identity(d: &SpecialDatum) -> (usize, usize) {
    let lhs = d.internal_nodes().map(|j| delta(d, j) - 1).sum();
    (lhs, d.n() - d.maximal_elements().len())
}

/// `|G_D|` by recursion: products over components, and
/// `|G_D| = r^{n-1}·|G_{D∖J}|` for a connected datum with child weight `r`.
pub fn group_order(d: &SpecialDatum) -> BigUint {
    if d.n() == 1 {
        return BigUint::one();
    }
    match d.root() {
        Some(root) => {
            let r = d.child_weight(root).expect("root has children").clone();
            let reduced = d.reduce(root).expect("connected root");
            Pow::pow(r, (d.n() - 1) as u32) * group_order(&reduced)
        }
        None => d.components().iter().map(group_order).product(),
    }
}

/// Additive representative of a diagonal group element, one rational per
/// coordinate; the coordinate sum is an integer for elements of `SL_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupGeneratorVector(pub Vec<Rational>);

impl GroupGeneratorVector {
    pub fn has_integral_sum(&self) -> bool {
        let s: Rational = self.0.iter().cloned().sum();
        s.is_integer()
    }
}

/// `(e_i - e_j)/w(J_1)` for every internal `J`, every ordered pair of
/// distinct children `J_1 ≠ J_2` of `J`, and every `i ∈ J_1`, `j ∈ J_2`.
pub fn group_generators(d: &SpecialDatum) -> Vec<GroupGeneratorVector> {
    let mut out = Vec::new();
    for j in d.internal_nodes() {
        let kids = d.children(j);
        for &a in kids {
            for &b in kids {
                if a == b {
                    continue;
                }
                let w = from_uint(d.weight(a));
                let step = Rational::one() / w;
                for &i in d.member(a).elements() {
                    for &k in d.member(b).elements() {
                        let mut v = vec![Rational::zero(); d.n()];
                        v[i - 1] = step.clone();
                        v[k - 1] = -step.clone();
                        out.push(GroupGeneratorVector(v));
                    }
                }
            }
        }
    }
    out
}

/// `|G_D|` as the index `[L : Z^n]` of `L = Z^n + Σ Z·g` over the
/// generators, via the Hermite form of the scaled row lattice.
pub fn group_order_oracle(d: &SpecialDatum) -> BigUint {
    let gens = group_generators(d);
    let n = d.n();
    let denominators: Vec<BigInt> = gens.iter().flat_map(|g| g.0.iter().map(|x| x.denom().clone())).collect();
    let scale = lcm_all(denominators.iter());
    let mut rows = Vec::with_capacity(n + gens.len());
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = scale.clone();
        rows.push(row);
    }
    for g in &gens {
        rows.push(
            g.0.iter()
                .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
                .collect(),
        );
    }
    let det = lattice_determinant(rows, n).expect("contains scale·Z^n, so full rank");
    let index = Pow::pow(scale, n as u32) / det;
    index.to_biguint().expect("index is positive")
}

/// `α(D)` for a connected datum: `min{lct(m_{D∖J}), w(J')}` with `J'` a
/// child of the root, and `1` when `n = 1`.
pub fn alpha(d: &SpecialDatum, cache: &mut LctCache) -> Result<Rational, DatumError> {
    let root = d.root().ok_or(DatumError::Disconnected)?;
    if d.n() == 1 {
        return Ok(Rational::one());
    }
    let r = from_uint(d.child_weight(root).expect("root has children"));
    let reduced = d.reduce(root)?;
    let l = lct_datum_cached(&reduced, cache);
    Ok(if l < r { l } else { r })
}

/// `β(D)`: the child weight of the root of a connected datum, `1` when `n = 1`.
pub fn beta(d: &SpecialDatum) -> Result<Rational, DatumError> {
    let root = d.root().ok_or(DatumError::Disconnected)?;
    Ok(match d.child_weight(root) {
        Some(w) => from_uint(w),
        None => Rational::one(),
    })
}

/// `∏_{J ∈ D} α(D_J)`.
pub fn alpha_product(d: &SpecialDatum, cache: &mut LctCache) -> Rational {
    d.internal_nodes()
        .map(|j| alpha(&d.restrict(j), cache).expect("D_J is connected"))
        .product()
}

/// `(1/|G_D|)·(n/lct(m_D))^n`.
pub fn volume_bound(n: usize, group_order: &BigUint, lct: &Rational) -> Rational {
    let base = Rational::from_integer(BigInt::from(n)) / lct;
    pow(&base, n as u32) / from_uint(group_order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberInvariants {
    pub elements: Vec<usize>,
    pub weight: BigUint,
    /// `δ(J)`; zero for singletons.
    pub delta: usize,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Everything [`summarize`] computes for one datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSummary {
    pub n: usize,
    pub emb: usize,
    pub connected: bool,
    pub maximal_count: usize,
    pub members: Vec<MemberInvariants>,
    pub m_of_d: BigUint,
    pub alpha_product: Rational,
    pub group_order: BigUint,
    pub group_order_oracle: BigUint,
    pub lct: Rational,
    pub lct_lp: Rational,
    pub ceil_lct: BigInt,
    pub volume_bound: Rational,
    pub closure_power: Result<Option<BigUint>, LctError>,
}

pub fn summarize(d: &SpecialDatum, cache: &mut LctCache) -> InvariantSummary {
    let lct = lct_datum_cached(d, cache);
    let group = group_order(d);
    let members = d
        .nodes()
        .map(|j| {
            let local = d.restrict(j);
            MemberInvariants {
                elements: d.member(j).elements().to_vec(),
                weight: d.weight(j).clone(),
                delta: delta(d, j),
                alpha: alpha(&local, cache).expect("D_J is connected"),
                beta: beta(&local).expect("D_J is connected"),
            }
        })
        .collect();
    InvariantSummary {
        n: d.n(),
        emb: embedding_dimension(d),
        connected: d.is_connected(),
        maximal_count: d.maximal_elements().len(),
        members,
        m_of_d: m_of_d(d),
        alpha_product: alpha_product(d, cache),
        group_order_oracle: group_order_oracle(d),
        lct_lp: lct_lp(&d.monomial_ideal()),
        ceil_lct: ceil(&lct),
        volume_bound: volume_bound(d.n(), &group, &lct),
        closure_power: find_closure_power(d),
        group_order: group,
        lct,
    }
}

/// `2^{n - ⌈lct⌉}` as a rational (the exponent is never negative for a
/// special datum since `lct <= n`).
pub fn main_bound(n: usize, lct: &Rational) -> Rational {
    let e = BigInt::from(n) - ceil(lct);
    crate::rational::pow2(&e)
}

/// `2^{n-1}`.
pub fn two_pow_n_minus_1(n: usize) -> BigUint {
    BigUint::one() << (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn d(n: usize, sets: &[(&[usize], i64)]) -> SpecialDatum {
        SpecialDatum::new(n, sets.iter().map(|(e, w)| (e.to_vec(), *w)).collect()).unwrap()
    }

    fn hypersurface(n: usize, a: i64) -> SpecialDatum {
        let mut sets: Vec<(Vec<usize>, i64)> = vec![((1..=n).collect(), 1)];
        sets.extend((1..=n).map(|i| (vec![i], a)));
        SpecialDatum::new(n, sets).unwrap()
    }

    fn two_pairs(a: i64, b: i64) -> SpecialDatum {
        d(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1], a), (&[2], a), (&[3], b), (&[4], b)])
    }

    fn nested4() -> SpecialDatum {
        d(4, &[(&[1, 2, 3, 4], 1), (&[1, 2], 2), (&[3, 4], 2), (&[1], 4), (&[2], 4), (&[3], 4), (&[4], 4)])
    }

    fn loose(n: usize) -> SpecialDatum {
        SpecialDatum::new(n, (1..=n).map(|i| (vec![i], 1)).collect()).unwrap()
    }

    #[test]
    fn embedding_dimension_known_values() {
        for n in 2..6 {
            assert_eq!(embedding_dimension(&hypersurface(n, 2)), n + 1);
        }
        assert_eq!(embedding_dimension(&two_pairs(2, 3)), 6);
        assert_eq!(embedding_dimension(&loose(1)), 1);
    }

    #[test]
    fn delta_and_m_of_d() {
        let t = hypersurface(3, 2);
        assert_eq!(delta(&t, t.find(&[1, 2, 3]).unwrap()), 3);
        assert_eq!(m_of_d(&t), BigUint::from(3u32));
        assert_eq!(m_of_d(&nested4()), BigUint::from(8u32));
        assert_eq!(m_of_d(&loose(3)), BigUint::one());
    }

    #[test]
    fn delta_sums() {
        assert_eq!(delta_sum_identity(&nested4()), (3, 3));
        assert_eq!(delta_sum_identity(&hypersurface(5, 3)), (4, 4));
        assert_eq!(delta_sum_identity(&two_pairs(2, 2)), (2, 2));
        assert_eq!(delta_sum_identity(&loose(3)), (0, 0));
    }

    #[test]
    fn group_order_known_values() {
        for a in 2..6u32 {
            assert_eq!(group_order(&hypersurface(2, a as i64)), BigUint::from(a));
        }
        assert_eq!(group_order(&hypersurface(3, 2)), BigUint::from(4u32));
        assert_eq!(group_order(&nested4()), BigUint::from(32u32));
    }

    #[test]
    fn generators_known_values() {
        let g = group_generators(&hypersurface(2, 3));
        assert_eq!(
            g,
            vec![
                GroupGeneratorVector(vec![frac(1, 3), frac(-1, 3)]),
                GroupGeneratorVector(vec![frac(-1, 3), frac(1, 3)]),
            ]
        );
        assert!(group_generators(&loose(3)).is_empty());
        let g = group_generators(&hypersurface(3, 2));
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(GroupGeneratorVector::has_integral_sum));
    }

    #[test]
    fn oracle_known_values() {
        assert_eq!(group_order_oracle(&hypersurface(2, 3)), BigUint::from(3u32));
        assert_eq!(group_order_oracle(&loose(1)), BigUint::one());
        assert_eq!(group_order_oracle(&hypersurface(3, 2)), BigUint::from(4u32));
        assert_eq!(group_order_oracle(&nested4()), BigUint::from(32u32));
    }

    #[test]
    fn alpha_beta_known_values() {
        let mut cache = LctCache::new();
        let t2 = hypersurface(3, 2);
        assert_eq!(alpha(&t2, &mut cache).unwrap(), int(2));
        assert_eq!(beta(&t2).unwrap(), int(2));
        assert_eq!(alpha_product(&t2, &mut cache), int(2));
        let t4 = hypersurface(3, 4);
        assert_eq!(alpha(&t4, &mut cache).unwrap(), int(3));
        assert_eq!(beta(&t4).unwrap(), int(4));
        assert_eq!(alpha_product(&t4, &mut cache), int(3));
        assert_eq!(alpha(&loose(1), &mut cache).unwrap(), int(1));
        assert_eq!(beta(&loose(1)).unwrap(), int(1));
        assert_eq!(alpha(&two_pairs(2, 2), &mut cache), Err(DatumError::Disconnected));
    }

    #[test]
    fn volume_bound_hypersurface() {
        // |G| = 16, lct = 1, n = 3: 27/16
        assert_eq!(volume_bound(3, &BigUint::from(16u32), &int(1)), frac(27, 16));
    }
}
