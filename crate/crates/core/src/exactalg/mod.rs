//! Exact arithmetic foundation: rationals, polynomials, matrices over Z and
//! over fields, Smith normal form, number fields, truncated power series and
//! rational-function reconstruction.

pub(crate) mod field;
mod matrix;
mod numfield;
pub(crate) mod poly;
mod ratfunc;
mod series;

pub use field::{FieldElement, Rat};
pub use matrix::{smith_normal_form, IntMat, Matrix, SmithNormalForm};
pub use numfield::{NfElem, NumberField};
pub use poly::{cyclotomic_polynomial, is_irreducible_over_q, Poly};
pub use ratfunc::{pade_reconstruct, RationalFunction};
pub use series::TruncatedSeries;

use num::BigInt;

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn padic_valuation(x: &Rat, p: u64) -> Option<i64> {
    if num::Zero::is_zero(x) {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().clone();
    while (&n % &p) == BigInt::from(0) {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p) == BigInt::from(0) {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigRational, One};

    #[test]
    fn valuation_basics() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(padic_valuation(&r(12, 1), 2), Some(2));
        assert_eq!(padic_valuation(&r(5, 8), 2), Some(-3));
        assert_eq!(padic_valuation(&r(0, 1), 3), None);
        assert_eq!(padic_valuation(&BigRational::one(), 7), Some(0));
    }
}
