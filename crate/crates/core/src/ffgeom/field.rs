//! Finite fields as F_p[x]/(modulus) with small-prime coefficients in u64,
//! and embeddings between extensions computed by root finding.

use crate::error::{Error, Result};
use crate::exactalg::poly::{irreducible_mod_p, mod_pow};
use crate::exactalg::FieldElement;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic irreducible of degree k over F_p; modulus[i] is the x^i
    /// coefficient, modulus[k] = 1. For k = 1 this is x - c (usually x).
    modulus: Vec<u64>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Scenario(format!("{p} is not prime")));
        }
        Ok(Arc::new(FiniteField { p, k: 1, modulus: vec![0, 1] }))
    }

    /// F_{p^k} with the lexicographically smallest irreducible modulus of
    /// degree k: among monic x^k + sum a_i x^i, smallest sum a_i p^i.
    pub fn extension(p: u64, k: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Scenario(format!("{p} is not prime")));
        }
        assert!(k >= 1);
        if k == 1 {
            return Self::prime(p);
        }
        let total = p.checked_pow(k as u32).ok_or(Error::NoIrreducible(k))?;
        for a in 0..total {
            let mut coeffs = digits(a, p, k);
            coeffs.push(1);
            // The constant term of an irreducible (k >= 1) is nonzero.
            if coeffs[0] == 0 {
                continue;
            }
            if irreducible_mod_p(&coeffs, p) {
                return Ok(Arc::new(FiniteField { p, k, modulus: coeffs }));
            }
        }
        Err(Error::NoIrreducible(k))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree_over_prime(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// q = p^k as u128.
    pub fn cardinality(&self) -> u128 {
        (0..self.k).fold(1u128, |acc, _| acc * self.p as u128)
    }

    pub fn zero(self: &Arc<Self>) -> FfElem {
        FfElem { coeffs: vec![0; self.k], field: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> FfElem {
        self.from_u64(1)
    }

    pub fn from_u64(self: &Arc<Self>, n: u64) -> FfElem {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = n % self.p;
        FfElem { coeffs, field: Arc::clone(self) }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FfElem {
        let p = self.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// The class of x (zero in a prime field, where the modulus is x).
    pub fn generator(self: &Arc<Self>) -> FfElem {
        if self.k == 1 {
            let c = (self.p - self.modulus[0] % self.p) % self.p;
            return self.from_u64(c);
        }
        let mut coeffs = vec![0; self.k];
        coeffs[1] = 1;
        FfElem { coeffs, field: Arc::clone(self) }
    }

    /// Element with the given index in the enumeration order
    /// (coefficients are the base-p digits, constant digit least significant).
    pub fn element(self: &Arc<Self>, idx: u128) -> FfElem {
        let mut coeffs = vec![0u64; self.k];
        let mut n = idx;
        for c in coeffs.iter_mut() {
            *c = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        FfElem { coeffs, field: Arc::clone(self) }
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FfElem> + '_ {
        (0..self.cardinality()).map(move |i| self.element(i))
    }

    /// Multiplicative order of the smallest generator of mu_m, if m divides
    /// q - 1; used to fix a canonical primitive m-th root of unity.
    pub fn canonical_root_of_unity(self: &Arc<Self>, m: u64) -> Result<FfElem> {
        let q = self.cardinality();
        if m == 0 || (q - 1) % m as u128 != 0 {
            return Err(Error::Scenario(format!("mu_{m} is not contained in F_{q}")));
        }
        for i in 1..q {
            let e = self.element(i);
            if e.mult_order(q)? == m as u128 {
                return Ok(e);
            }
        }
        Err(Error::NotRootOfUnity)
    }
}

fn digits(mut a: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of F_{p^k}, a residue of degree < k.
#[derive(Clone)]
pub struct FfElem {
    coeffs: Vec<u64>,
    field: Arc<FiniteField>,
}

impl PartialEq for FfElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl Eq for FfElem {}

impl std::hash::Hash for FfElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl FfElem {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Enumeration index; doubles as a canonical total order on elements.
    pub fn encode(&self) -> u128 {
        let p = self.field.p as u128;
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn pow(&self, mut e: u128) -> FfElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
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

    /// x -> x^q for the base-field cardinality q; this generates the Galois
    /// group of any extension of the base field.
    pub fn frobenius(&self, q: u128) -> FfElem {
        self.pow(q)
    }

    /// Order in the multiplicative group; errors on zero.
    pub fn mult_order(&self, q: u128) -> Result<u128> {
        if FieldElement::is_zero(self) {
            return Err(Error::NotRootOfUnity);
        }
        let group = q - 1;
        let mut order = group;
        for d in divisors_u128(group) {
            if self.pow(d) == self.field.one() && d < order {
                order = d;
            }
        }
        Ok(order)
    }

    /// Absolute trace to F_p, as an integer in [0, p).
    pub fn abs_trace(&self) -> u64 {
        let p = self.field.p as u128;
        let mut acc = self.field.zero();
        let mut cur = self.clone();
        for _ in 0..self.field.k {
            acc = acc.add(&cur);
            cur = cur.pow(p);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }
}

fn divisors_u128(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

impl FieldElement for FfElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(*self.field, *rhs.field);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| (a + b) % p).collect();
        FfElem { coeffs, field: Arc::clone(&self.field) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(*self.field, *rhs.field);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| (a + p - b) % p).collect();
        FfElem { coeffs, field: Arc::clone(&self.field) }
    }

    fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FfElem { coeffs, field: Arc::clone(&self.field) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(*self.field, *rhs.field);
        let p = self.field.p;
        let k = self.field.k;
        if k == 1 {
            let v = (self.coeffs[0] as u128 * rhs.coeffs[0] as u128 % p as u128) as u64;
            return FfElem { coeffs: vec![v], field: Arc::clone(&self.field) };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                prod[i + j] = ((prod[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        // Reduce modulo the monic modulus.
        let m = &self.field.modulus;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let t = (c as u128 * m[j] as u128 % p as u128) as u64;
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
        prod.truncate(k);
        FfElem { coeffs: prod, field: Arc::clone(&self.field) }
    }

    fn inv(&self) -> Option<Self> {
        if FieldElement::is_zero(self) {
            return None;
        }
        let q = self.field.cardinality();
        Some(self.pow(q - 2))
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
}

/// Embedding of one finite field into an extension, sending the generator of
/// the source to a chosen root of its modulus.
pub struct Embedding {
    source: Arc<FiniteField>,
    target: Arc<FiniteField>,
    gen_image: FfElem,
}

impl Embedding {
    /// Identity embedding.
    pub fn identity(field: &Arc<FiniteField>) -> Self {
        Embedding { source: Arc::clone(field), target: Arc::clone(field), gen_image: field.generator() }
    }

    /// Finds the first root (in enumeration order) of the source modulus in
    /// the target field. The scan is linear in the target cardinality.
    pub fn new(source: &Arc<FiniteField>, target: &Arc<FiniteField>) -> Result<Self> {
        assert_eq!(source.p, target.p);
        if source.k == 1 {
            return Ok(Embedding {
                source: Arc::clone(source),
                target: Arc::clone(target),
                gen_image: target.from_u64(source.generator().coeffs[0]),
            });
        }
        if **source == **target {
            return Ok(Self::identity(source));
        }
        assert_eq!(target.k % source.k, 0, "no embedding between these fields");
        for i in 0..target.cardinality() {
            let e = target.element(i);
            // Evaluate the source modulus at e (coefficients in F_p).
            let mut acc = target.zero();
            for &c in source.modulus.iter().rev() {
                acc = acc.mul(&e).add(&target.from_u64(c));
            }
            if FieldElement::is_zero(&acc) {
                return Ok(Embedding {
                    source: Arc::clone(source),
                    target: Arc::clone(target),
                    gen_image: e,
                });
            }
        }
        unreachable!("an irreducible polynomial splits in the extension of matching degree")
    }

    pub fn source(&self) -> &Arc<FiniteField> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteField> {
        &self.target
    }

    pub fn map(&self, e: &FfElem) -> FfElem {
        debug_assert_eq!(*e.field, *self.source);
        let mut acc = self.target.zero();
        for &c in e.coeffs.iter().rev() {
            acc = acc.mul(&self.gen_image).add(&self.target.from_u64(c));
        }
        acc
    }
}

/// Lexicographically smallest monic irreducible of degree d over the given
/// field (irreducible over F_q, not just F_p). Coefficients are returned
/// low-to-high with the leading 1 included.
pub fn irreducible_poly_over(field: &Arc<FiniteField>, d: usize) -> Result<Vec<FfElem>> {
    use crate::exactalg::Poly;
    assert!(d >= 1);
    let q = field.cardinality();
    let total = q.checked_pow(d as u32).ok_or(Error::NoIrreducible(d))?;
    'cand: for a in 0..total {
        let mut coeffs: Vec<FfElem> = Vec::with_capacity(d + 1);
        let mut n = a;
        for _ in 0..d {
            coeffs.push(field.element(n % q));
            n /= q;
        }
        coeffs.push(field.one());
        if d > 1 && FieldElement::is_zero(&coeffs[0]) {
            continue;
        }
        let f = Poly::new(coeffs.clone());
        // gcd(x^(q^i) - x, f) must be 1 for i < d, and x^(q^d) = x mod f.
        let x = Poly::x_like(&field.zero());
        let mut xq = x.clone();
        for i in 1..=d {
            xq = poly_pow_mod(&xq, q, &f);
            let diff = xq.sub(&x);
            if i < d {
                let g = f.gcd(&diff);
                if g.degree() != Some(0) {
                    continue 'cand;
                }
            } else if !diff.is_zero() {
                continue 'cand;
            }
        }
        return Ok(coeffs);
    }
    Err(Error::NoIrreducible(d))
}

/// base^e mod m for univariate polynomials over any field.
pub(crate) fn poly_pow_mod<T: FieldElement>(
    base: &crate::exactalg::Poly<T>,
    mut e: u128,
    m: &crate::exactalg::Poly<T>,
) -> crate::exactalg::Poly<T> {
    use crate::exactalg::Poly;
    let mut acc = Poly::one_like(base.proto());
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(m);
        }
    }
    acc
}
