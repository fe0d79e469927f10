//! Exact integer and rational helpers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Binomial coefficient with `C(a, b) = 0` for `b < 0` or `b > a`.
///
/// Negative `a` never arises in the order-polynomial sums once the
/// summation range is clamped, so it is rejected.
pub fn binomial(a: i64, b: i64) -> BigInt {
    assert!(a >= 0, "binomial with negative upper argument {a}");
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for j in 0..b {
        acc *= a - j;
        acc /= j + 1;
    }
    BigInt::from(acc)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn pow(base: u64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Rounds `x` to `decimals` places, ties to even, and renders it with
/// exactly that many digits after the point.
pub fn round_half_even(x: &BigRational, decimals: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), decimals);
    let scaled = x * BigRational::from_integer(scale.clone());
    let negative = scaled.is_negative();
    let scaled = scaled.abs();
    let (q, r): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = r * 2;
    let rounded = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if negative && !rounded.is_zero() { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part, width = decimals)
    }
}

/// Nearest double; numerator and denominator may each exceed the `f64` range.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
