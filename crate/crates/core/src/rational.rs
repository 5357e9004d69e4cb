//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact fraction with arbitrary-precision numerator and denominator, kept
/// in lowest terms with a positive denominator. `Display` renders `p/q`, or
/// `p` when `q = 1`.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_uint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Largest integer `<= r`.
pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// `r^e` for a nonnegative integer exponent.
pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

/// `2^e` for `e >= 0`, or `1/2^{-e}` when the exponent is negative.
pub fn pow2(e: &BigInt) -> Rational {
    let mag = e.magnitude();
    let exp = u32::try_from(mag.clone()).expect("exponent of 2 fits in u32");
    let p = BigInt::one() << exp;
    if e.is_negative() {
        Rational::new(BigInt::one(), p)
    } else {
        Rational::from_integer(p)
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| if v.is_zero() { acc } else { acc.lcm(v) })
}

pub fn min<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(frac(6, 4).to_string(), "3/2");
        assert_eq!(frac(4, 2).to_string(), "2");
        assert_eq!(frac(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn ceil_and_floor() {
        assert_eq!(ceil(&frac(3, 2)), BigInt::from(2));
        assert_eq!(ceil(&int(2)), BigInt::from(2));
        assert_eq!(floor(&frac(7, 3)), BigInt::from(2));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(&BigInt::from(3)), int(8));
        assert_eq!(pow2(&BigInt::from(-2)), frac(1, 4));
        assert_eq!(pow(&frac(3, 2), 3), frac(27, 8));
    }
}
