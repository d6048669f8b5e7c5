//! The integer scalar abstraction shared by every exact computation in the crate.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type.
///
/// Implemented for the machine integers and for [`num_bigint::BigInt`]. The
/// fixed-width types are faster but can overflow during Smith normal form
/// reduction on adversarial inputs; the crate-root aliases use `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts a count to the scalar type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Non-negative residue of `value` modulo `modulus` (`modulus > 0`).
pub(crate) fn residue<T: Scalar>(value: &T, modulus: &T) -> T {
    value.mod_floor(modulus)
}

/// Whether `n` is a perfect square (including 0 and 1).
pub fn is_perfect_square<T: Scalar>(n: &T) -> bool {
    if n.is_negative() {
        return false;
    }
    integer_sqrt(n).is_some_and(|r| r.clone() * r == *n)
}

/// Floor of the square root of a non-negative integer, by Newton iteration.
pub fn integer_sqrt<T: Scalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(T::zero());
    }
    let two = T::one() + T::one();
    let mut x = n.clone();
    let mut y = (x.clone() + T::one()) / two.clone();
    while y < x {
        x = y;
        y = (x.clone() + n.clone() / x.clone()) / two.clone();
    }
    Some(x)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing prime order. Intended for the small orders that appear in
/// enumerable groups.
pub fn factorize<T: Scalar>(n: &T) -> Vec<(T, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = T::one() + T::one();
    while p.clone() * p.clone() <= n {
        let mut e = 0;
        while (n.clone() % p.clone()).is_zero() {
            n = n / p.clone();
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = p + T::one();
    }
    if n > T::one() {
        out.push((n, 1));
    }
    out
}

/// Exponent of the prime `p` in `n` (`n != 0`).
pub(crate) fn valuation<T: Scalar>(n: &T, p: &T) -> u32 {
    let mut n = n.abs();
    let mut e = 0;
    while !n.is_zero() && (n.clone() % p.clone()).is_zero() {
        n = n / p.clone();
        e += 1;
    }
    e
}
