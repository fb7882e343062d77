//! Field-element abstraction used by the generic polynomial, series, matrix
//! and rational-function code.
//!
//! Elements carry their own context (a number-field element knows its field),
//! so the trait works with prototype-style constructors: `zero_like` returns
//! the zero of the same field as `self`.

use num::{BigRational, One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational, the base field everywhere.
pub type Rat = BigRational;

pub trait FieldElement: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    /// Integer scalar n·1 in the same field as `self`.
    fn from_i64_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }
}

impl FieldElement for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rat::from_integer(n.into())
    }
}

/// Pretty-printer for rationals used in reports: `a` or `a/b`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else if x.denom().is_negative() {
        format!("{}/{}", -x.numer(), -x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
