//! Exact scalars for the simplex: a checked fixed-width fast path and an arbitrary-precision fallback.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Field operations that report overflow instead of wrapping.
pub trait Scalar: Clone + PartialOrd + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(x: &Q) -> Option<Self>;
    fn to_q(&self) -> Q;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(x.clone())
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

pub type Small = Ratio<i128>;

impl Scalar for Small {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(Small::new(x.numer().to_i128()?, x.denom().to_i128()?))
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn is_positive(&self) -> bool {
        *self.numer() > 0
    }
    fn is_negative(&self) -> bool {
        *self.numer() < 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_is_reported() {
        let big = Small::from_integer(i128::MAX / 2);
        assert!(Scalar::mul(&big, &Small::from_integer(4)).is_none());
        let third = Small::new(1, 3);
        assert_eq!(Scalar::add(&third, &third), Some(Small::new(2, 3)));
    }

    #[test]
    fn round_trip() {
        let x = q_frac(-7, 12);
        assert_eq!(Small::from_q(&x).unwrap().to_q(), x);
    }
}
