//! Truncated power series. A series stores the known coefficients c_0..c_N;
//! the precision is N (the first unknown coefficient sits in degree N+1).
//! Arithmetic never reports coefficients beyond the minimum precision of the
//! operands.

use super::field::FieldElement;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T: FieldElement> {
    coeffs: Vec<T>,
}

impl<T: FieldElement> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn one_like(proto: &T, precision: usize) -> Self {
        let mut coeffs = vec![proto.zero_like(); precision + 1];
        coeffs[0] = proto.one_like();
        TruncatedSeries { coeffs }
    }

    pub fn from_poly(p: &Poly<T>, precision: usize) -> Self {
        let coeffs = (0..=precision).map(|i| p.coeff(i)).collect();
        TruncatedSeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn proto(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.precision());
        TruncatedSeries { coeffs: self.coeffs[..=precision].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..=n).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse at the same precision. Errors when the constant
    /// term is zero.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inv().ok_or(Error::NonInvertibleSeries)?;
        let n = self.precision();
        let mut out = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for k in 1..=n {
            // c_k of the inverse: -(1/c_0) * sum_{j=1..k} a_j * b_{k-j}
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(acc.mul(&c0_inv).neg());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Integer power, with negative exponents going through `inverse`.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = TruncatedSeries::one_like(&self.coeffs[0], self.precision());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn series(cs: &[i64]) -> TruncatedSeries<Rat> {
        TruncatedSeries::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn geometric_series_inverse() {
        // (1 - T) to precision 4 inverts to 1 + T + T^2 + T^3 + T^4
        let s = series(&[1, -1, 0, 0, 0]);
        assert_eq!(s.inverse().unwrap(), series(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn constant_series_inverse() {
        let s = TruncatedSeries::new(vec![q(2, 1), q(0, 1)]);
        assert_eq!(s.inverse().unwrap(), TruncatedSeries::new(vec![q(1, 2), q(0, 1)]));
    }

    #[test]
    fn inverse_is_two_sided() {
        let s = series(&[3, 1, -4, 2, 7, -1]);
        let inv = s.inverse().unwrap();
        let n = s.precision();
        assert_eq!(s.mul(&inv), TruncatedSeries::one_like(&q(0, 1), n));
        assert_eq!(inv.mul(&s), TruncatedSeries::one_like(&q(0, 1), n));
    }

    #[test]
    fn zero_constant_term_fails() {
        let s = series(&[0, 1]);
        assert!(matches!(s.inverse(), Err(Error::NonInvertibleSeries)));
    }

    #[test]
    fn mul_truncates_to_min_precision() {
        let a = series(&[1, 2, 3]);
        let b = series(&[1, 1, 1, 1, 1]);
        assert_eq!(a.mul(&b).precision(), 2);
    }
}
