//! Exact elements of `ℚ/ℤ`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{input, Result};
use crate::scalar::{residue, Scalar};

/// A reduced fraction `n/d` with `0 ≤ n < d` and `gcd(n, d) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QmodZ<T> {
    num: T,
    den: T,
}

impl<T: Scalar> QmodZ<T> {
    /// Reduces `num/den` modulo 1. `den` must be nonzero; its sign is absorbed.
    pub fn new(num: T, den: T) -> Result<Self> {
        if den.is_zero() {
            return Err(input("zero denominator"));
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: T, den: T) -> Self {
        let num = residue(&num, &den);
        let g = num.gcd(&den);
        Self { num: num / g.clone(), den: den / g }
    }

    pub fn zero() -> Self {
        Self { num: T::zero(), den: T::one() }
    }

    /// `1/n`.
    pub fn unit_fraction(n: T) -> Result<Self> {
        Self::new(T::one(), n)
    }

    pub fn numerator(&self) -> &T {
        &self.num
    }

    pub fn denominator(&self) -> &T {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::reduced(self.num.clone() * k.clone(), self.den.clone())
    }

    /// The integer `self · m mod m`, provided the denominator divides `m`.
    pub fn over(&self, m: &T) -> Option<T> {
        (m.clone() % self.den.clone()).is_zero().then(|| self.num.clone() * (m.clone() / self.den.clone()))
    }
}

impl<T: Scalar> Default for QmodZ<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &QmodZ<T> {
    type Output = QmodZ<T>;
    fn add(self, rhs: Self) -> QmodZ<T> {
        let l = self.den.lcm(&rhs.den);
        let n = self.num.clone() * (l.clone() / self.den.clone()) + rhs.num.clone() * (l.clone() / rhs.den.clone());
        QmodZ::reduced(n, l)
    }
}

impl<T: Scalar> Add for QmodZ<T> {
    type Output = QmodZ<T>;
    fn add(self, rhs: Self) -> QmodZ<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Neg for &QmodZ<T> {
    type Output = QmodZ<T>;
    fn neg(self) -> QmodZ<T> {
        QmodZ::reduced(-self.num.clone(), self.den.clone())
    }
}

impl<T: Scalar> Neg for QmodZ<T> {
    type Output = QmodZ<T>;
    fn neg(self) -> QmodZ<T> {
        -&self
    }
}

impl<T: Scalar> Sub for &QmodZ<T> {
    type Output = QmodZ<T>;
    fn sub(self, rhs: Self) -> QmodZ<T> {
        self + &(-rhs)
    }
}

impl<T: fmt::Display + num_traits::Zero + num_traits::One + PartialEq> fmt::Display for QmodZ<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for QmodZ<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}
