//! Monomial ideals given by exponent vectors.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::rational::{from_uint, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealError {
    NoGenerators,
    ZeroGenerator { index: usize },
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::NoGenerators => write!(f, "ideal needs at least one generator"),
            IdealError::ZeroGenerator { index } => {
                write!(f, "generator #{index} is the zero vector (unit ideal)")
            }
            IdealError::DimensionMismatch { expected, found } => {
                write!(f, "expected vectors of length {expected}, found {found}")
            }
        }
    }
}

/// A proper monomial ideal in `n` variables, stored as its generators'
/// exponent vectors (deduplicated, none zero). `Newt(a)` is the convex hull
/// of the generators plus the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Vec<BigUint>>,
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: Vec<Vec<BigUint>>) -> Result<Self, IdealError> {
        if generators.is_empty() {
            return Err(IdealError::NoGenerators);
        }
        let mut uniq: Vec<Vec<BigUint>> = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if g.len() != n {
                return Err(IdealError::DimensionMismatch { expected: n, found: g.len() });
            }
            if g.iter().all(Zero::is_zero) {
                return Err(IdealError::ZeroGenerator { index });
            }
            if !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        Ok(MonomialIdeal { n, generators: uniq })
    }

    pub fn from_small(n: usize, generators: &[&[u64]]) -> Result<Self, IdealError> {
        Self::new(
            n,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigUint::from(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<BigUint>] {
        &self.generators
    }

    pub fn rational_generators(&self) -> Vec<Vec<Rational>> {
        self.generators
            .iter()
            .map(|g| g.iter().map(from_uint).collect())
            .collect()
    }

    pub fn small_generators(&self) -> Option<Vec<Vec<u64>>> {
        self.generators
            .iter()
            .map(|g| g.iter().map(|x| x.to_u64()).collect())
            .collect()
    }

    /// Total degree of each generator.
    pub fn degrees(&self) -> Vec<BigUint> {
        self.generators.iter().map(|g| g.iter().sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_mismatch() {
        assert_eq!(MonomialIdeal::from_small(2, &[&[0, 0]]), Err(IdealError::ZeroGenerator { index: 0 }));
        assert!(matches!(
            MonomialIdeal::from_small(2, &[&[1, 0, 0]]),
            Err(IdealError::DimensionMismatch { .. })
        ));
        assert_eq!(MonomialIdeal::from_small(2, &[]), Err(IdealError::NoGenerators));
    }

    #[test]
    fn deduplicates() {
        let a = MonomialIdeal::from_small(2, &[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        assert_eq!(a.generators().len(), 2);
    }
}
