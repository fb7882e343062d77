//! Rational functions regular at 0, and reconstruction of a rational
//! function from a truncated series (Padé with a verified guard band).

use super::field::FieldElement;
use super::matrix::Matrix;
use super::poly::Poly;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// numerator/denominator with gcd 1, denominator monic and nonzero at T = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<T: FieldElement> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: FieldElement> RationalFunction<T> {
    /// Normalizes and checks the denominator is invertible at 0.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        assert!(!den.is_zero(), "denominator is the zero polynomial");
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead_inv = den.leading().inv().unwrap();
        let den = den.scale(&lead_inv);
        let num = num.scale(&lead_inv);
        if den.coeff(0).is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn one_like(proto: &T) -> Self {
        RationalFunction { num: Poly::one_like(proto), den: Poly::one_like(proto) }
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        let one = Poly::one_like(p.proto());
        RationalFunction { num: p, den: one }
    }

    /// Alternating product of polynomial factors, exponents in Z. Every
    /// factor must be invertible at 0.
    pub fn from_factors(factors: &[(Poly<T>, i64)]) -> Result<Self> {
        assert!(!factors.is_empty());
        let proto = factors[0].0.proto();
        let mut num = Poly::one_like(proto);
        let mut den = Poly::one_like(proto);
        for (f, e) in factors {
            if *e >= 0 {
                num = num.mul(&f.pow(*e as u64));
            } else {
                den = den.mul(&f.pow((-e) as u64));
            }
        }
        RationalFunction::new(num, den)
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one_like(self.num.proto()) && self.den == Poly::one_like(self.num.proto())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("product of functions regular at 0 is regular at 0")
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn expand(&self, precision: usize) -> TruncatedSeries<T> {
        let n = TruncatedSeries::from_poly(&self.num, precision);
        let d = TruncatedSeries::from_poly(&self.den, precision);
        n.mul(&d.inverse().expect("denominator invertible at 0"))
    }

    /// Evaluate at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        let dinv = d.inv()?;
        Some(self.num.eval(x).mul(&dinv))
    }

    /// Order of vanishing at x: multiplicity in the numerator minus
    /// multiplicity in the denominator (negative for a pole).
    pub fn order_at(&self, x: &T) -> i64 {
        self.num.root_multiplicity(x) as i64 - self.den.root_multiplicity(x) as i64
    }

    /// Writes self = (x - T)^r · g with g(x) != 0 and returns (r, g(x)).
    /// This is the leading-coefficient convention used for special values.
    pub fn leading_at(&self, x: &T) -> (i64, T) {
        let lin = Poly::new(vec![x.clone(), x.one_like().neg()]); // x - T
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut r: i64 = 0;
        loop {
            let (q, rem) = num.div_rem(&lin);
            if rem.is_zero() && !num.is_zero() {
                num = q;
                r += 1;
            } else {
                break;
            }
        }
        loop {
            let (q, rem) = den.div_rem(&lin);
            if rem.is_zero() {
                den = q;
                r -= 1;
            } else {
                break;
            }
        }
        let value = num.eval(x).mul(&den.eval(x).inv().expect("stripped denominator nonzero at x"));
        (r, value)
    }
}

/// Reconstruct a rational function P/Q from a truncated series.
///
/// Requires `precision >= deg_num + deg_den + guard`. The denominator is
/// found as a nullspace element of the full coefficient system, including the
/// guard rows, so an answer that merely matches the low-order terms by
/// coincidence is rejected with `NoRationalFit`.
pub fn pade_reconstruct<T: FieldElement>(
    s: &TruncatedSeries<T>,
    deg_num: usize,
    deg_den: usize,
    guard: usize,
) -> Result<RationalFunction<T>> {
    let n = s.precision();
    let need = deg_num + deg_den + guard;
    if n < need {
        return Err(Error::InsufficientPrecision { have: n + 1, need: need + 1 });
    }
    let proto = s.proto();
    if n <= deg_num {
        // No constraints: the series itself is the (polynomial) answer.
        let p = Poly::new(s.coeffs().to_vec());
        return RationalFunction::new(p, Poly::one_like(proto));
    }
    // Rows k = deg_num+1 ..= n, unknowns q_0..q_{deg_den}:
    //   sum_j q_j c_{k-j} = 0.
    let rows: Vec<Vec<T>> = (deg_num + 1..=n)
        .map(|k| {
            (0..=deg_den)
                .map(|j| if j <= k { s.coeff(k - j).clone() } else { proto.zero_like() })
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(rows);
    let null = m.kernel_basis();
    let q_vec = null
        .iter()
        .find(|v| !v[0].is_zero())
        .ok_or(Error::NoRationalFit { num_bound: deg_num, den_bound: deg_den })?;
    let q_poly = Poly::new(q_vec.clone());
    // P = (Q * s) truncated below deg_num + 1; the higher products vanish by
    // construction of Q.
    let qs = TruncatedSeries::from_poly(&q_poly, n).mul(s);
    let p_poly = Poly::new(qs.coeffs()[..=deg_num].to_vec());
    let f = RationalFunction::new(p_poly, q_poly)?;
    debug_assert_eq!(f.expand(n), s.clone());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn qpoly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    fn series(cs: &[i64]) -> TruncatedSeries<Rat> {
        TruncatedSeries::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn geometric() {
        // 1,2,4,8,16 with bounds (0,1), guard 2 -> 1/(1-2T)
        let f = pade_reconstruct(&series(&[1, 2, 4, 8, 16]), 0, 1, 2).unwrap();
        // stored with a monic denominator: 1/(1-2T) = (-1/2)/(T - 1/2)
        let g = RationalFunction::new(qpoly(&[1]), qpoly(&[1, -2])).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.num(), &Poly::constant(q(-1, 2)));
        assert_eq!(f.den(), &Poly::new(vec![q(-1, 2), q(1, 1)]));
    }

    #[test]
    fn two_pole_example() {
        // 1/((1-T)(1-2T)) has coefficients 2^{k+1} - 1.
        let f = pade_reconstruct(&series(&[1, 3, 7, 15, 31, 63, 127]), 0, 2, 2).unwrap();
        let target = RationalFunction::new(qpoly(&[1]), qpoly(&[-1, 1]).mul(&qpoly(&[-1, 2]))).unwrap();
        assert_eq!(f, target);
        assert_eq!(f.expand(6), series(&[1, 3, 7, 15, 31, 63, 127]));
    }

    #[test]
    fn insufficient_precision() {
        let r = pade_reconstruct(&series(&[1, 1]), 0, 2, 2);
        assert!(matches!(r, Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn corrupted_coefficient_has_no_fit() {
        // Corrupt one guard coefficient of the geometric series.
        let r = pade_reconstruct(&series(&[1, 2, 4, 8, 17]), 0, 1, 2);
        assert!(matches!(r, Err(Error::NoRationalFit { .. })));
    }

    #[test]
    fn round_trip_exactly() {
        // f = (3 - T + 2T^2) / ((1 - T)(2 + T)) normalized; expand + rebuild.
        let f = RationalFunction::new(qpoly(&[3, -1, 2]), qpoly(&[-1, 1]).mul(&qpoly(&[2, 1]))).unwrap();
        let dn = f.num().degree().unwrap();
        let dd = f.den().degree().unwrap();
        let s = f.expand(dn + dd + 3);
        let g = pade_reconstruct(&s, dn, dd, 3).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn leading_at_examples() {
        // 1/(1-T^3) at x=1: order -1, value 1/3.
        let f = RationalFunction::new(qpoly(&[1]), qpoly(&[1, 0, 0, -1])).unwrap();
        let (r, v) = f.leading_at(&q(1, 1));
        assert_eq!(r, -1);
        assert_eq!(v, q(1, 3));
        // 1/((1-T)(1-2T)) at x=1: order -1, value -1; at x=2: order 0, value 1/3.
        let g = RationalFunction::new(qpoly(&[1]), qpoly(&[-1, 1]).mul(&qpoly(&[-1, 2]))).unwrap();
        let (r, v) = g.leading_at(&q(1, 1));
        assert_eq!((r, v), (-1, q(-1, 1)));
        let (r, v) = g.leading_at(&q(2, 1));
        assert_eq!((r, v), (0, q(1, 3)));
    }

    #[test]
    fn constant_series_reconstructs_to_one() {
        let f = pade_reconstruct(&series(&[1, 0, 0, 0, 0, 0]), 1, 1, 3).unwrap();
        assert!(f.is_one());
    }
}
