//! Number fields Q[x]/(f) with f monic irreducible, and their elements in
//! canonical reduced form (residues of degree < deg f).

use super::field::{FieldElement, Rat};
use super::matrix::Matrix;
use super::poly::{cyclotomic_polynomial, is_irreducible_over_q, Poly};
use crate::error::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::sync::Arc;

pub struct NumberField {
    min_poly: Poly<Rat>,
    degree: usize,
    /// Set when the field was built as Q(zeta_m); enables Galois conjugation.
    cyclotomic_order: Option<u64>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cyclotomic_order {
            Some(1) | Some(2) | None if self.degree == 1 => write!(f, "Q"),
            Some(m) => write!(f, "Q(zeta_{m})"),
            None => write!(f, "Q[x]/({:?})", self.min_poly.coeffs()),
        }
    }
}

impl NumberField {
    /// Builds a number field, checking the defining polynomial is monic and
    /// irreducible over Q by exact factorization.
    pub fn new(min_poly: Poly<Rat>) -> Result<Arc<Self>> {
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible_over_q(&min_poly)? {
            return Err(Error::ReduciblePolynomial(format!("{:?}", min_poly.coeffs())));
        }
        let degree = min_poly.degree().unwrap();
        Ok(Arc::new(NumberField { min_poly, degree, cyclotomic_order: None }))
    }

    /// The rationals, as the degree-1 field Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            min_poly: Poly::new(vec![Rat::zero(), Rat::one()]),
            degree: 1,
            cyclotomic_order: None,
        })
    }

    /// The cyclotomic field Q(zeta_m). Phi_m is irreducible by construction,
    /// so no factorization runs. For m <= 2 this degenerates to Q with the
    /// generator equal to 1 resp. -1.
    pub fn cyclotomic(m: u64) -> Arc<Self> {
        assert!(m >= 1);
        let min_poly = cyclotomic_polynomial(m);
        let degree = min_poly.degree().unwrap();
        Arc::new(NumberField { min_poly, degree, cyclotomic_order: Some(m) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &Poly<Rat> {
        &self.min_poly
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.cyclotomic_order
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }
}

/// Element of a number field, stored as the canonical residue of degree
/// < [K : Q].
#[derive(Clone)]
pub struct NfElem {
    coeffs: Vec<Rat>,
    field: Arc<NumberField>,
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElem{:?}", self.coeffs.iter().map(super::field::rat_to_string).collect::<Vec<_>>())
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl NfElem {
    pub fn new(mut coeffs: Vec<Rat>, field: Arc<NumberField>) -> Self {
        // Reduce modulo the defining polynomial, then pad to full length.
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        let p = Poly::new(coeffs);
        let r = p.rem(field.min_poly());
        let mut c: Vec<Rat> = r.coeffs().to_vec();
        c.resize(field.degree(), Rat::zero());
        NfElem { coeffs: c, field }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        NfElem { coeffs: vec![Rat::zero(); field.degree()], field: Arc::clone(field) }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rat(Rat::one(), field)
    }

    pub fn from_rat(r: Rat, field: &Arc<NumberField>) -> Self {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = r;
        NfElem { coeffs, field: Arc::clone(field) }
    }

    /// The class of x, i.e. the generator alpha of the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(vec![Rat::zero(), Rat::one()], Arc::clone(field))
    }

    /// zeta_m^j in a cyclotomic field (for m <= 2 this is a rational sign).
    pub fn zeta_power(field: &Arc<NumberField>, j: u64) -> Self {
        let m = field.cyclotomic_order.expect("zeta_power needs a cyclotomic field");
        let jm = (j % m) as usize;
        match m {
            1 => Self::one(field),
            2 => Self::from_rat(if jm == 0 { Rat::one() } else { -Rat::one() }, field),
            _ => {
                let mut coeffs = vec![Rat::zero(); jm + 1];
                coeffs[jm] = Rat::one();
                Self::new(coeffs, Arc::clone(field))
            }
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    /// The rational value when the element is rational (always, in degree 1).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| num::Zero::is_zero(c)) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_compatible(&self, rhs: &Self) {
        assert!(self.same_field(rhs), "operands live in different number fields");
    }

    /// Matrix of multiplication by self on the Q-basis 1, alpha, ...,
    /// alpha^(d-1); columns are the images of the basis vectors.
    pub fn mult_matrix(&self) -> Matrix<Rat> {
        let d = self.field.degree();
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        let alpha = Poly::new(self.coeffs.clone());
        let mut pow = Poly::one_like(&Rat::zero());
        for _ in 0..d {
            let prod = alpha.mul(&pow).rem(self.field.min_poly());
            let mut c: Vec<Rat> = prod.coeffs().to_vec();
            c.resize(d, Rat::zero());
            cols.push(c);
            pow = pow.mul(&Poly::x_like(&Rat::zero())).rem(self.field.min_poly());
        }
        let mut m = Matrix::zero_like(&Rat::zero(), d, d);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..d {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// Field norm N(self) = det of the multiplication matrix.
    pub fn norm(&self) -> Rat {
        self.mult_matrix().det()
    }

    /// Minimal polynomial over Q, found as the first linear dependency among
    /// the powers of the element.
    pub fn minimal_polynomial(&self) -> Poly<Rat> {
        let d = self.field.degree();
        let mut powers: Vec<Vec<Rat>> = Vec::new();
        let mut cur = NfElem::one(&self.field);
        powers.push(cur.coeffs.clone());
        for k in 1..=d {
            cur = cur.mul(self);
            // Try to express cur as a combination of the previous powers.
            let rows: Vec<Vec<Rat>> = (0..d)
                .map(|i| (0..k).map(|j| powers[j][i].clone()).collect())
                .collect();
            let m = Matrix::from_rows(rows);
            if let Some(sol) = m.solve(&cur.coeffs) {
                // alpha^k = sum sol_j alpha^j  =>  min poly x^k - sum sol_j x^j
                let mut coeffs: Vec<Rat> = sol.iter().map(|c| -c.clone()).collect();
                coeffs.push(Rat::one());
                return Poly::new(coeffs);
            }
            powers.push(cur.coeffs.clone());
        }
        unreachable!("an element of a degree-d field satisfies a degree-d relation")
    }

    /// True when the minimal polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().coeffs().iter().all(|c| c.denom().is_one())
    }

    /// Galois conjugation zeta -> zeta^t on a cyclotomic field. `t` must be
    /// coprime to the conductor.
    pub fn cyclotomic_conjugate(&self, t: u64) -> Self {
        let m = self.field.cyclotomic_order.expect("conjugation needs a cyclotomic field");
        assert_eq!(num::integer::gcd(t, m), 1, "conjugation exponent must be a unit mod m");
        if self.field.degree == 1 {
            return self.clone();
        }
        let mut acc = NfElem::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            if num::Zero::is_zero(c) {
                continue;
            }
            let term = NfElem::zeta_power(&self.field, (j as u64 * t) % m);
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    fn scale(&self, c: &Rat) -> Self {
        NfElem { coeffs: self.coeffs.iter().map(|a| a * c).collect(), field: Arc::clone(&self.field) }
    }
}

impl FieldElement for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        NfElem::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| num::Zero::is_zero(c))
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        NfElem {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            field: Arc::clone(&self.field),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        NfElem {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
            field: Arc::clone(&self.field),
        }
    }

    fn neg(&self) -> Self {
        NfElem { coeffs: self.coeffs.iter().map(|a| -a).collect(), field: Arc::clone(&self.field) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        let p = Poly::new(self.coeffs.clone()).mul(&Poly::new(rhs.coeffs.clone()));
        NfElem::new(p.coeffs().to_vec(), Arc::clone(&self.field))
    }

    fn inv(&self) -> Option<Self> {
        if FieldElement::is_zero(self) {
            return None;
        }
        // Extended Euclid: a(x) u(x) + f(x) v(x) = gcd = 1 since f irreducible.
        let f = self.field.min_poly().clone();
        let a = Poly::new(self.coeffs.clone());
        let (mut r0, mut r1) = (f, a);
        let zero = Poly::zero_like(&Rat::zero());
        let one = Poly::one_like(&Rat::zero());
        let (mut s0, mut s1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant), s0 the cofactor of a.
        let c = r0.coeff(0).inv().expect("gcd with an irreducible modulus is a nonzero constant");
        Some(NfElem::new(s0.scale(&c).coeffs().to_vec(), Arc::clone(&self.field)))
    }

    fn from_i64_like(&self, n: i64) -> Self {
        NfElem::from_rat(Rat::from_integer(n.into()), &self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn quadratic_field_arithmetic() {
        // Q(sqrt 5) = Q[x]/(x^2 - 5)
        let k = NumberField::new(Poly::new(vec![q(-5, 1), q(0, 1), q(1, 1)])).unwrap();
        let s = NfElem::generator(&k);
        assert_eq!(s.mul(&s), NfElem::from_rat(q(5, 1), &k));
        let golden = NfElem::new(vec![q(1, 2), q(1, 2)], Arc::clone(&k)); // (1+sqrt5)/2
        // minimal polynomial x^2 - x - 1
        assert_eq!(golden.minimal_polynomial(), Poly::new(vec![q(-1, 1), q(-1, 1), q(1, 1)]));
        assert!(golden.is_algebraic_integer());
        let inv = golden.inv().unwrap();
        assert_eq!(golden.mul(&inv), NfElem::one(&k));
    }

    #[test]
    fn rational_integrality() {
        let k = NumberField::rationals();
        assert!(!NfElem::from_rat(q(1, 2), &k).is_algebraic_integer());
        assert!(NfElem::from_rat(q(7, 1), &k).is_algebraic_integer());
    }

    #[test]
    fn cyclotomic_cube_root() {
        let k = NumberField::cyclotomic(3);
        assert_eq!(k.degree(), 2);
        let z = NfElem::generator(&k);
        // zeta_3 is an algebraic integer with minimal polynomial x^2 + x + 1
        assert_eq!(z.minimal_polynomial(), Poly::new(vec![q(1, 1), q(1, 1), q(1, 1)]));
        assert!(z.is_algebraic_integer());
        // zeta^3 = 1
        assert_eq!(z.mul(&z).mul(&z), NfElem::one(&k));
        // norm of 1 + zeta: (1+zeta)(1+zeta^2) = 1
        let a = NfElem::one(&k).add(&z);
        assert_eq!(a.norm(), q(1, 1));
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let k = NumberField::cyclotomic(5);
        let z = NfElem::generator(&k);
        let a = z.add(&NfElem::from_rat(q(3, 1), &k));
        let b = z.mul(&z).sub(&NfElem::one(&k));
        for t in [2u64, 3, 4] {
            let lhs = a.mul(&b).cyclotomic_conjugate(t);
            let rhs = a.cyclotomic_conjugate(t).mul(&b.cyclotomic_conjugate(t));
            assert_eq!(lhs, rhs);
        }
        // Product over all conjugates lands in Q and equals the norm.
        let mut prod = a.clone();
        for t in [2u64, 3, 4] {
            prod = prod.mul(&a.cyclotomic_conjugate(t));
        }
        assert_eq!(prod.as_rational().unwrap(), a.norm());
    }

    #[test]
    fn mult_matrices_commute() {
        let k = NumberField::cyclotomic(5);
        let a = NfElem::generator(&k).add(&NfElem::from_rat(q(2, 1), &k));
        let b = NfElem::generator(&k).mul(&NfElem::generator(&k)).sub(&NfElem::from_rat(q(1, 3), &k));
        let ma = a.mult_matrix();
        let mb = b.mult_matrix();
        assert_eq!(ma.mul(&mb), mb.mul(&ma));
        // mult matrix of the product is the product of mult matrices
        assert_eq!(a.mul(&b).mult_matrix(), ma.mul(&mb));
    }

    #[test]
    fn reducible_polynomial_rejected() {
        let r = NumberField::new(Poly::new(vec![q(-1, 1), q(0, 1), q(1, 1)]));
        assert!(matches!(r, Err(Error::ReduciblePolynomial(_))));
    }
}
