//! Univariate polynomials over a field, plus the handful of Q-specific
//! routines we need: cyclotomic polynomials and irreducibility over Q.

use super::field::{FieldElement, Rat};
use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Signed, Zero};

/// Dense univariate polynomial. `coeffs[i]` is the coefficient of x^i.
/// The vector is never empty; the zero polynomial stores a single zero, which
/// doubles as the prototype element for the coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: FieldElement> {
    coeffs: Vec<T>,
}

impl<T: FieldElement> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero_like(proto: &T) -> Self {
        Poly { coeffs: vec![proto.zero_like()] }
    }

    pub fn one_like(proto: &T) -> Self {
        Poly { coeffs: vec![proto.one_like()] }
    }

    /// The monomial x in the field of `proto`.
    pub fn x_like(proto: &T) -> Self {
        Poly { coeffs: vec![proto.zero_like(), proto.one_like()] }
    }

    pub fn constant(c: T) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        if i < self.coeffs.len() {
            self.coeffs[i].clone()
        } else {
            self.coeffs[0].zero_like()
        }
    }

    pub fn proto(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().unwrap().clone()
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading() == self.coeffs[0].one_like()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let z = self.coeffs[0].zero_like();
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero_like(&z);
        }
        let mut out = vec![z; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; k];
        out.extend(self.coeffs.iter().cloned());
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one_like(&self.coeffs[0]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.coeffs[0].zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Poly::zero_like(&self.coeffs[0]);
        }
        let out: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
            .collect();
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let z = self.coeffs[0].zero_like();
        let dd = match self.degree() {
            None => return (Poly::zero_like(&z), Poly::zero_like(&z)),
            Some(d) => d,
        };
        let dr = rhs.degree().unwrap();
        if dd < dr {
            return (Poly::zero_like(&z), self.clone());
        }
        let lead_inv = rhs.leading().inv().expect("leading coefficient must be invertible");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![z.clone(); dd - dr + 1];
        for k in (0..=dd - dr).rev() {
            let c = rem[k + dr].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (j, rc) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(rc));
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.div_rem(rhs).1
    }

    /// Monic normalization (zero polynomial is returned unchanged).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the root `x` (0 if not a root).
    pub fn root_multiplicity(&self, x: &T) -> usize {
        assert!(!self.is_zero());
        let lin = Poly::new(vec![x.neg(), x.one_like()]);
        let mut m = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_rem(&lin);
            if r.is_zero() {
                m += 1;
                f = q;
            } else {
                return m;
            }
        }
    }
}

/// The m-th cyclotomic polynomial over Q, computed by recursive division of
/// x^m − 1 by the proper cyclotomic divisors.
pub fn cyclotomic_polynomial(m: u64) -> Poly<Rat> {
    assert!(m >= 1);
    let one = Rat::one();
    let mut xm1 = vec![Rat::zero(); m as usize + 1];
    xm1[0] = -one.clone();
    xm1[m as usize] = one;
    let mut f = Poly::new(xm1);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = f.div_rem(&phi_d);
            debug_assert!(r.is_zero());
            f = q;
        }
    }
    f
}

// ---------------------------------------------------------------------------
// Irreducibility over Q.
//
// Strategy for a monic f in Q[x]: scale to a monic integer polynomial, check
// square-freeness, look for rational roots, then try to certify
// irreducibility by reduction mod several small primes. If every prime is
// inconclusive, fall back to a Kronecker factor search (exact, exhaustive in
// the divisor combinations), which at the degrees we construct is fast.
// ---------------------------------------------------------------------------

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.wrapping_mul(b) % p;
        }
        b = b.wrapping_mul(b) % p;
        e >>= 1;
    }
    acc
}

pub(crate) mod fp {
    //! Minimal F_p[x] arithmetic for the mod-p irreducibility certificate.
    pub fn trim(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        if dm == 0 {
            return vec![0];
        }
        let lead_inv = super::mod_pow(m[dm], p - 2, p);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = (r[r.len() - 1] as u128 * lead_inv as u128 % p as u128) as u64;
            if c != 0 {
                for j in 0..=dm {
                    let t = (c as u128 * m[j] as u128 % p as u128) as u64;
                    r[k + j] = (r[k + j] + p - t) % p;
                }
            }
            let new_len = r.len() - 1;
            r.truncate(new_len);
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !(y.len() == 1 && y[0] == 0) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn pow_mod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }
}

/// Irreducibility of a monic polynomial over F_p, by the Frobenius gcd test.
pub(crate) fn irreducible_mod_p(coeffs: &[u64], p: u64) -> bool {
    let n = coeffs.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) = x mod f, and gcd(x^(p^i) - x, f) = 1 for 0 < i < n.
    let x = vec![0u64, 1u64];
    let mut xp = x.clone();
    for i in 1..=n {
        xp = fp::pow_mod(&xp, p as u128, coeffs, p);
        let mut diff = xp.clone();
        while diff.len() < 2 {
            diff.push(0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp::trim(&mut diff);
        if i < n {
            let g = fp::gcd(coeffs, &diff, p);
            if !(g.len() == 1 && g[0] != 0) {
                return false;
            }
        } else {
            if !(diff.len() == 1 && diff[0] == 0) {
                return false;
            }
        }
    }
    true
}

fn all_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d2 = &d * &d;
        if d2 > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Lagrange interpolation through (points[i], values[i]) over Q.
fn lagrange(points: &[i64], values: &[Rat]) -> Poly<Rat> {
    let mut acc = Poly::zero_like(&Rat::zero());
    for (i, &xi) in points.iter().enumerate() {
        let mut term = Poly::constant(values[i].clone());
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // (x - xj) / (xi - xj)
            let denom = Rat::from_integer((xi - xj).into());
            let lin = Poly::new(vec![Rat::from_integer((-xj).into()), Rat::one()]);
            term = term.mul(&lin).scale(&denom.recip());
        }
        acc = acc.add(&term);
    }
    acc
}

/// Kronecker search for a nontrivial factor of a monic integer polynomial.
/// Returns a factor if one exists.
fn kronecker_factor(f: &Poly<Rat>) -> Option<Poly<Rat>> {
    let n = f.degree().unwrap();
    let max_deg = n / 2;
    // Evaluation points 0, 1, -1, 2, -2, ...
    let mut points = Vec::new();
    let mut k = 0i64;
    while points.len() < max_deg + 1 {
        points.push(k);
        if k > 0 {
            points.push(-k);
        }
        k += 1;
    }
    points.truncate(max_deg + 1);
    let values: Vec<Rat> = points.iter().map(|&x| f.eval(&Rat::from_integer(x.into()))).collect();
    // A rational root shows up as a zero value.
    for (i, v) in values.iter().enumerate() {
        if num::Zero::is_zero(v) {
            return Some(Poly::new(vec![
                Rat::from_integer((-points[i]).into()),
                Rat::one(),
            ]));
        }
    }
    for g_deg in 1..=max_deg {
        let pts = &points[..g_deg + 1];
        let divisor_lists: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, _)| all_divisors(values[i].numer()))
            .collect();
        // Iterate over all sign/divisor combinations.
        let mut idx = vec![0usize; g_deg + 1];
        let mut signs = vec![false; g_deg + 1];
        'outer: loop {
            let vals: Vec<Rat> = (0..=g_deg)
                .map(|i| {
                    let d = &divisor_lists[i][idx[i]];
                    let d = if signs[i] { -d.clone() } else { d.clone() };
                    Rat::from_integer(d)
                })
                .collect();
            let cand = lagrange(pts, &vals);
            if let Some(d) = cand.degree() {
                if d == g_deg {
                    let (_, r) = f.div_rem(&cand);
                    if r.is_zero() {
                        return Some(cand);
                    }
                }
            }
            // advance the odometer over (sign, divisor) pairs
            let mut i = 0;
            loop {
                if i > g_deg {
                    break 'outer;
                }
                if !signs[i] {
                    signs[i] = true;
                    break;
                }
                signs[i] = false;
                idx[i] += 1;
                if idx[i] < divisor_lists[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
    None
}

/// Irreducibility over Q of a monic rational polynomial of degree >= 1.
pub fn is_irreducible_over_q(f: &Poly<Rat>) -> Result<bool> {
    let n = match f.degree() {
        None => return Ok(false),
        Some(0) => return Ok(false),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 1 {
        return Ok(true);
    }
    // Substitute x = y/c so the polynomial becomes monic with integer
    // coefficients: with f = x^n + a_{n-1} x^{n-1} + ..., set c = lcm of the
    // denominators; g(y) = c^n f(y/c) is monic integral and f is irreducible
    // iff g is.
    let mut c = BigInt::one();
    for a in f.coeffs() {
        c = c.lcm(a.denom());
    }
    let cr = Rat::from_integer(c);
    let mut g_coeffs = Vec::with_capacity(n + 1);
    let mut pow = Rat::one();
    // g_i = a_i * c^(n-i); build from the top down.
    for i in (0..=n).rev() {
        g_coeffs.push((f.coeff(i) * pow.clone(), i));
        pow *= cr.clone();
    }
    g_coeffs.reverse();
    let g = Poly::new(g_coeffs.into_iter().map(|(v, _)| v).collect::<Vec<_>>());
    debug_assert!(g.is_monic());
    debug_assert!(g.coeffs().iter().all(|a| a.denom().is_one()));

    // Square-free check: gcd(g, g') must be constant.
    let d = g.gcd(&g.derivative());
    if d.degree() != Some(0) {
        return Ok(false);
    }

    // Mod-p certificate.
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73];
    for &p in &primes {
        let coeffs: Vec<u64> = g
            .coeffs()
            .iter()
            .map(|a| {
                let m = a.numer().mod_floor(&BigInt::from(p));
                let (_, digits) = m.to_u64_digits();
                *digits.first().unwrap_or(&0)
            })
            .collect();
        if *coeffs.last().unwrap() == 0 {
            continue;
        }
        // Skip p when g mod p is not square-free (the certificate only runs
        // one way: irreducible mod p implies irreducible over Q).
        if irreducible_mod_p(&coeffs, p) {
            return Ok(true);
        }
    }
    Ok(kronecker_factor(&g).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn qpoly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let f = qpoly(&[2, 0, -3, 1, 4]);
        let g = qpoly(&[1, 2, 1]);
        let (qq, r) = f.div_rem(&g);
        assert_eq!(qq.mul(&g).add(&r), f);
        assert!(r.degree().map_or(true, |d| d < 2));
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = qpoly(&[-1, 1]); // x - 1
        let b = qpoly(&[1, 1]); // x + 1
        let f = a.mul(&b);
        let g = a.mul(&qpoly(&[2, 1]));
        assert_eq!(f.gcd(&g), a.monic());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_polynomial(1), qpoly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), qpoly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), qpoly(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), qpoly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), qpoly(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), qpoly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_over_q(&qpoly(&[-5, 0, 1])).unwrap()); // x^2-5
        assert!(is_irreducible_over_q(&qpoly(&[1, 1, 1])).unwrap()); // Phi_3
        assert!(!is_irreducible_over_q(&qpoly(&[-1, 0, 1])).unwrap()); // (x-1)(x+1)
        assert!(!is_irreducible_over_q(&qpoly(&[0, 0, 1])).unwrap()); // x^2
        // x^4 + 1 is reducible mod every prime; exercises the Kronecker path.
        assert!(is_irreducible_over_q(&qpoly(&[1, 0, 0, 0, 1])).unwrap());
        // (x^2+1)(x^2+2)
        assert!(!is_irreducible_over_q(&qpoly(&[2, 0, 3, 0, 1])).unwrap());
        // non-monic rejected
        let f = Poly::new(vec![q(1, 1), q(2, 1)]);
        assert!(matches!(is_irreducible_over_q(&f), Err(Error::NotMonic)));
    }

    #[test]
    fn root_multiplicity_counts() {
        // (x-2)^3 (x+1)
        let f = qpoly(&[-2, 1]).pow(3).mul(&qpoly(&[1, 1]));
        assert_eq!(f.root_multiplicity(&q(2, 1)), 3);
        assert_eq!(f.root_multiplicity(&q(-1, 1)), 1);
        assert_eq!(f.root_multiplicity(&q(5, 1)), 0);
    }
}
