//! Varieties over F_q cut out by polynomial systems, exhaustive point
//! counting, and closed points as Frobenius orbits.
//!
//! Counting never enumerates full coordinate tuples: projective space is
//! split into the disjoint charts "last nonzero coordinate = 1", and inside
//! a chart all variables but one are enumerated while the root count in the
//! last variable is read off a gcd (with a closed form for degree <= 2).

use super::field::{poly_pow_mod, Embedding, FfElem, FiniteField};
use super::mpoly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, Poly};
use sha2::{Digest, Sha256};
use std::collections::HashSet;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Affine n-space (n variables).
    Affine(usize),
    /// Projective n-space (n + 1 homogeneous variables).
    Projective(usize),
}

impl Ambient {
    pub fn nvars(&self) -> usize {
        match *self {
            Ambient::Affine(n) => n,
            Ambient::Projective(n) => n + 1,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_candidates: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: 10_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Variety {
    base: Arc<FiniteField>,
    ambient: Ambient,
    var_names: Vec<String>,
    equations: Vec<MultiPoly>,
    /// Points where all of these vanish are removed (open complement);
    /// an empty list removes nothing.
    excluded: Vec<MultiPoly>,
}

impl Variety {
    pub fn new(
        base: Arc<FiniteField>,
        ambient: Ambient,
        var_names: Vec<String>,
        equations: Vec<MultiPoly>,
        excluded: Vec<MultiPoly>,
    ) -> Result<Self> {
        let nv = ambient.nvars();
        if var_names.len() != nv {
            return Err(Error::Scenario(format!(
                "expected {nv} variables for this ambient space, got {}",
                var_names.len()
            )));
        }
        for p in equations.iter().chain(&excluded) {
            if p.nvars() != nv {
                return Err(Error::Scenario("equation variable count mismatch".into()));
            }
            if matches!(ambient, Ambient::Projective(_)) && !p.is_homogeneous() {
                return Err(Error::Scenario("projective equations must be homogeneous".into()));
            }
        }
        Ok(Variety { base, ambient, var_names, equations, excluded })
    }

    /// Spec of F_{q^d} as a closed point of the affine line: the vanishing
    /// locus of the smallest irreducible degree-d polynomial over F_q.
    pub fn spec_extension(base: Arc<FiniteField>, d: usize) -> Result<Self> {
        let coeffs = super::field::irreducible_poly_over(&base, d)?;
        let mut poly = MultiPoly::zero(&base, 1);
        let x = MultiPoly::variable(&base, 0, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let term = MultiPoly::constant(&base, c.clone(), 1).mul(&x.pow(i as u32));
            poly = poly.add(&term);
        }
        Variety::new(base, Ambient::Affine(1), vec!["x".into()], vec![poly], vec![])
    }

    pub fn base_field(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn excluded(&self) -> &[MultiPoly] {
        &self.excluded
    }

    pub fn has_excluded(&self) -> bool {
        !self.excluded.is_empty()
    }

    /// Extend the excluded locus by extra equations.
    pub fn with_extra_excluded(mut self, extra: Vec<MultiPoly>) -> Self {
        self.excluded.extend(extra);
        self
    }

    /// Stable content hash of the variety over its base field.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "p={};k={};mod={:?};amb={:?};",
            self.base.characteristic(),
            self.base.degree_over_prime(),
            self.base.modulus(),
            self.ambient
        ));
        for e in &self.equations {
            h.update("eq:");
            h.update(e.canonical_string());
        }
        for e in &self.excluded {
            h.update("ex:");
            h.update(e.canonical_string());
        }
        hex_prefix(&h.finalize())
    }

    /// Charts covering the ambient space disjointly. Each chart fixes some
    /// variables to 0/1 and leaves `free` to enumerate.
    fn charts(&self) -> Vec<Chart> {
        let nv = self.ambient.nvars();
        match self.ambient {
            Ambient::Affine(_) => vec![Chart { fixed: vec![], free: (0..nv).collect() }],
            Ambient::Projective(_) => (0..nv)
                .map(|j| {
                    // last nonzero coordinate = 1: x_j = 1, x_i = 0 for i > j
                    let mut fixed = vec![(j, 1u64)];
                    for i in j + 1..nv {
                        fixed.push((i, 0));
                    }
                    Chart { fixed, free: (0..j).collect() }
                })
                .collect(),
        }
    }
}

struct Chart {
    fixed: Vec<(usize, u64)>,
    free: Vec<usize>,
}

fn hex_prefix(bytes: &[u8]) -> String {
    bytes.iter().take(16).map(|b| format!("{b:02x}")).collect()
}

/// One point of the variety over an extension, with full ambient coordinates
/// (projective points normalized so the last nonzero coordinate is 1).
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    degree: u64,
    coords: Vec<FfElem>,
    projective: bool,
}

impl ClosedPoint {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn coords(&self) -> &[FfElem] {
        &self.coords
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// Field the representative lives in (degree * [base : F_p] over F_p).
    pub fn coordinate_field(&self) -> &Arc<FiniteField> {
        self.coords[0].field()
    }

    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        let f = self.coordinate_field();
        h.update(format!(
            "p={};k={};mod={:?};deg={};proj={};",
            f.characteristic(),
            f.degree_over_prime(),
            f.modulus(),
            self.degree,
            self.projective
        ));
        for c in &self.coords {
            h.update(format!("{:?};", c.coeffs()));
        }
        hex_prefix(&h.finalize())
    }
}

/// Extension of the variety's base field of relative degree d, together with
/// the embedding of the base.
pub fn extension_with_embedding(base: &Arc<FiniteField>, d: u64) -> Result<(Arc<FiniteField>, Embedding)> {
    let p = base.characteristic();
    let k = base.degree_over_prime();
    let kd = k * d as usize;
    if kd == k {
        return Ok((Arc::clone(base), Embedding::identity(base)));
    }
    let ext = FiniteField::extension(p, kd)?;
    let emb = Embedding::new(base, &ext)?;
    Ok((ext, emb))
}

/// Number of F_{q^d}-rational points (projective points counted once,
/// excluded locus removed).
pub fn count_points(v: &Variety, d: u64, budget: &Budget) -> Result<u64> {
    assert!(d >= 1);
    let (ext, emb) = extension_with_embedding(v.base_field(), d)?;
    let q_ext = ext.cardinality();
    let charts = v.charts();

    // Budget: one slot per enumerated tuple of the outer variables.
    let mut slots: u128 = 0;
    for ch in &charts {
        let outer = ch.free.len().saturating_sub(1) as u32;
        slots = slots.saturating_add(q_ext.saturating_pow(outer));
    }
    if slots > budget.max_candidates {
        return Err(Error::BudgetExceeded { candidates: slots, budget: budget.max_candidates });
    }

    let mut total: u64 = 0;
    for ch in &charts {
        let eqs: Vec<MultiPoly> = v
            .equations
            .iter()
            .map(|e| ch.fixed.iter().fold(e.clone(), |acc, &(var, val)| acc.specialize_const(var, val)))
            .collect();
        let exc: Vec<MultiPoly> = v
            .excluded
            .iter()
            .map(|e| ch.fixed.iter().fold(e.clone(), |acc, &(var, val)| acc.specialize_const(var, val)))
            .collect();
        if ch.free.is_empty() {
            let pt: Vec<FfElem> = fixed_point(&ext, v.ambient.nvars(), &ch.fixed);
            let on = eqs.iter().all(|e| FieldElement::is_zero(&e.eval(&pt, &emb)));
            if on && !is_excluded_at(&exc, &pt, &emb) {
                total += 1;
            }
            continue;
        }
        // Choose the variable kept symbolic: minimize the worst degree.
        let keep = *ch
            .free
            .iter()
            .min_by_key(|&&u| {
                eqs.iter()
                    .chain(&exc)
                    .map(|e| e.degree_in(u))
                    .max()
                    .unwrap_or(0)
            })
            .unwrap();
        let outer: Vec<usize> = ch.free.iter().copied().filter(|&u| u != keep).collect();

        let mut point = fixed_point(&ext, v.ambient.nvars(), &ch.fixed);
        let mut odometer = vec![0u128; outer.len()];
        loop {
            for (slot, &var) in odometer.iter().zip(&outer) {
                point[var] = ext.element(*slot);
            }
            let n_on = count_roots_of_system(&eqs, &point, keep, &emb, q_ext)?;
            if n_on > 0 && !exc.is_empty() {
                let mut all: Vec<&MultiPoly> = eqs.iter().collect();
                all.extend(exc.iter());
                let n_exc = count_roots_of_refs(&all, &point, keep, &emb, q_ext)?;
                total += n_on - n_exc;
            } else {
                total += n_on;
            }
            if !advance(&mut odometer, q_ext) {
                break;
            }
        }
    }
    Ok(total)
}

fn fixed_point(ext: &Arc<FiniteField>, nvars: usize, fixed: &[(usize, u64)]) -> Vec<FfElem> {
    let mut pt = vec![ext.zero(); nvars];
    for &(var, val) in fixed {
        pt[var] = ext.from_u64(val);
    }
    pt
}

fn advance(odometer: &mut [u128], limit: u128) -> bool {
    for slot in odometer.iter_mut() {
        *slot += 1;
        if *slot < limit {
            return true;
        }
        *slot = 0;
    }
    false
}

fn is_excluded_at(exc: &[MultiPoly], pt: &[FfElem], emb: &Embedding) -> bool {
    !exc.is_empty() && exc.iter().all(|e| FieldElement::is_zero(&e.eval(pt, emb)))
}

fn count_roots_of_system(
    eqs: &[MultiPoly],
    point: &[FfElem],
    keep: usize,
    emb: &Embedding,
    q_ext: u128,
) -> Result<u64> {
    let refs: Vec<&MultiPoly> = eqs.iter().collect();
    count_roots_of_refs(&refs, point, keep, emb, q_ext)
}

/// Count the values of variable `keep` at which every polynomial vanishes.
fn count_roots_of_refs(
    eqs: &[&MultiPoly],
    point: &[FfElem],
    keep: usize,
    emb: &Embedding,
    q_ext: u128,
) -> Result<u64> {
    let ext = emb.target();
    let mut gcd_poly: Option<Poly<FfElem>> = None;
    for e in eqs {
        let uni = e.eval_except(point, keep, emb);
        let p = Poly::new(if uni.is_empty() { vec![ext.zero()] } else { uni });
        if p.is_zero() {
            continue;
        }
        gcd_poly = Some(match gcd_poly {
            None => p,
            Some(g) => g.gcd(&p),
        });
        if gcd_poly.as_ref().unwrap().degree() == Some(0) {
            return Ok(0);
        }
    }
    match gcd_poly {
        // Empty system (or all equations vanished identically): every value.
        None => Ok(q_ext as u64),
        Some(g) => distinct_roots(&g, q_ext),
    }
}

/// Number of distinct roots of a nonzero univariate polynomial over F_Q.
fn distinct_roots(g: &Poly<FfElem>, q_ext: u128) -> Result<u64> {
    let ext = g.proto().field().clone();
    match g.degree() {
        None => unreachable!("zero polynomial handled by the caller"),
        Some(0) => Ok(0),
        Some(1) => Ok(1),
        Some(2) => {
            let a = g.coeff(2);
            let b = g.coeff(1);
            let c = g.coeff(0);
            let p = ext.characteristic();
            if p != 2 {
                // discriminant b^2 - 4ac; root count 1 + chi(D) with chi(0)=0
                let four = a.from_i64_like(4);
                let disc = b.mul(&b).sub(&four.mul(&a).mul(&c));
                if FieldElement::is_zero(&disc) {
                    return Ok(1);
                }
                let chi = disc.pow((q_ext - 1) / 2);
                Ok(if chi == ext.one() { 2 } else { 0 })
            } else {
                if FieldElement::is_zero(&b) {
                    // y^2 = c/a: the Frobenius is bijective
                    return Ok(1);
                }
                // Artin-Schreier: y = (b/a) z turns it into z^2 + z + ac/b^2
                let binv = b.inv().unwrap();
                let t = a.mul(&c).mul(&binv).mul(&binv);
                Ok(if t.abs_trace() == 0 { 2 } else { 0 })
            }
        }
        Some(_) => {
            // deg gcd(x^Q - x, g)
            let x = Poly::x_like(&ext.zero());
            let xq = poly_pow_mod(&x, q_ext, g);
            let diff = xq.sub(&x);
            if diff.is_zero() {
                return Ok(g.degree().unwrap() as u64);
            }
            let d = g.gcd(&diff);
            Ok(d.degree().unwrap_or(0) as u64)
        }
    }
}

/// One representative per Frobenius orbit of degree <= max_degree.
/// Representatives are the lexicographically least points of their orbits,
/// sorted per degree, so the output is deterministic.
pub fn closed_points_up_to(v: &Variety, max_degree: u64, budget: &Budget) -> Result<Vec<ClosedPoint>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(closed_points_of_degree(v, d, budget)?);
    }
    Ok(out)
}

/// Closed points of exactly the given degree.
pub fn closed_points_of_degree(v: &Variety, d: u64, budget: &Budget) -> Result<Vec<ClosedPoint>> {
    let (ext, emb) = extension_with_embedding(v.base_field(), d)?;
    let q_base = v.base_field().cardinality();
    let q_ext = ext.cardinality();
    let nv = v.ambient.nvars();
    let projective = matches!(v.ambient, Ambient::Projective(_));
    let charts = v.charts();

    let mut slots: u128 = 0;
    for ch in &charts {
        slots = slots.saturating_add(q_ext.saturating_pow(ch.free.len() as u32));
    }
    if slots > budget.max_candidates {
        return Err(Error::BudgetExceeded { candidates: slots, budget: budget.max_candidates });
    }

    let mut seen: HashSet<Vec<u128>> = HashSet::new();
    let mut reps: Vec<(Vec<u128>, ClosedPoint)> = Vec::new();

    for ch in &charts {
        let mut point = fixed_point(&ext, nv, &ch.fixed);
        let mut odometer = vec![0u128; ch.free.len()];
        loop {
            for (slot, &var) in odometer.iter().zip(&ch.free) {
                point[var] = ext.element(*slot);
            }
            if v.equations.iter().all(|e| FieldElement::is_zero(&e.eval(&point, &emb)))
                && !is_excluded_at(&v.excluded, &point, &emb)
            {
                let key = encode_point(&point);
                if !seen.contains(&key) {
                    // Walk the orbit under x -> x^q.
                    let mut orbit = vec![point.clone()];
                    loop {
                        let next: Vec<FfElem> =
                            orbit.last().unwrap().iter().map(|c| c.frobenius(q_base)).collect();
                        if encode_point(&next) == key {
                            break;
                        }
                        orbit.push(next);
                    }
                    let orbit_keys: Vec<Vec<u128>> = orbit.iter().map(|p| encode_point(p)).collect();
                    for k in &orbit_keys {
                        seen.insert(k.clone());
                    }
                    if orbit.len() as u64 == d {
                        let (min_idx, min_key) = orbit_keys
                            .iter()
                            .enumerate()
                            .min_by(|a, b| a.1.cmp(b.1))
                            .map(|(i, k)| (i, k.clone()))
                            .unwrap();
                        reps.push((
                            min_key,
                            ClosedPoint { degree: d, coords: orbit[min_idx].clone(), projective },
                        ));
                    }
                }
            }
            if odometer.is_empty() || !advance(&mut odometer, q_ext) {
                break;
            }
        }
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(reps.into_iter().map(|(_, p)| p).collect())
}

fn encode_point(coords: &[FfElem]) -> Vec<u128> {
    coords.iter().map(|c| c.encode()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgeom::mpoly::parse_poly;

    fn budget() -> Budget {
        Budget::default()
    }

    fn p1_over(p: u64) -> Variety {
        let f = FiniteField::prime(p).unwrap();
        Variety::new(f, Ambient::Projective(1), vec!["x0".into(), "x1".into()], vec![], vec![]).unwrap()
    }

    fn a1_over(p: u64) -> Variety {
        let f = FiniteField::prime(p).unwrap();
        Variety::new(f, Ambient::Affine(1), vec!["x".into()], vec![], vec![]).unwrap()
    }

    #[test]
    fn projective_line_counts() {
        let v = p1_over(2);
        assert_eq!(count_points(&v, 3, &budget()).unwrap(), 9); // q^d + 1
        let v5 = p1_over(5);
        for d in 1..=4 {
            let q_d = 5u64.pow(d);
            assert_eq!(count_points(&v5, d as u64, &budget()).unwrap(), q_d + 1);
        }
    }

    #[test]
    fn affine_line_counts() {
        let v = a1_over(3);
        assert_eq!(count_points(&v, 2, &budget()).unwrap(), 9); // q^d
    }

    #[test]
    fn projective_space_formula() {
        // P^2 over F_3: N_d = (q^(3d) - 1)/(q^d - 1)
        let f = FiniteField::prime(3).unwrap();
        let v = Variety::new(
            f,
            Ambient::Projective(2),
            vec!["x".into(), "y".into(), "z".into()],
            vec![],
            vec![],
        )
        .unwrap();
        for d in 1..=2u64 {
            let q = 3u64.pow(d as u32);
            assert_eq!(count_points(&v, d, &budget()).unwrap(), (q * q * q - 1) / (q - 1));
        }
    }

    /// Brute-force oracle: enumerate normalized projective triples directly.
    fn brute_force_projective_plane(v: &Variety, d: u64) -> u64 {
        let (ext, emb) = extension_with_embedding(v.base_field(), d).unwrap();
        let q = ext.cardinality();
        let mut count = 0;
        // last nonzero = 1 normalization, all 3 shapes
        let mut candidates: Vec<Vec<FfElem>> = Vec::new();
        for i in 0..q {
            for j in 0..q {
                candidates.push(vec![ext.element(i), ext.element(j), ext.one()]);
            }
        }
        for i in 0..q {
            candidates.push(vec![ext.element(i), ext.one(), ext.zero()]);
        }
        candidates.push(vec![ext.one(), ext.zero(), ext.zero()]);
        for c in candidates {
            if v.equations.iter().all(|e| FieldElement::is_zero(&e.eval(&c, &emb))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn elliptic_curve_over_f5_matches_brute_force() {
        let f = FiniteField::prime(5).unwrap();
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let eq = parse_poly("y^2*z - x^3 - x*z^2 - z^3", &names, &f).unwrap();
        let v = Variety::new(f, Ambient::Projective(2), names, vec![eq], vec![]).unwrap();
        let oracle = brute_force_projective_plane(&v, 1);
        assert_eq!(count_points(&v, 1, &budget()).unwrap(), oracle);
        let oracle2 = brute_force_projective_plane(&v, 2);
        assert_eq!(count_points(&v, 2, &budget()).unwrap(), oracle2);
    }

    #[test]
    fn closed_points_p1_f2() {
        let v = p1_over(2);
        let pts = closed_points_up_to(&v, 2, &budget()).unwrap();
        let deg1 = pts.iter().filter(|p| p.degree() == 1).count();
        let deg2 = pts.iter().filter(|p| p.degree() == 2).count();
        assert_eq!(deg1, 3);
        assert_eq!(deg2, 1);
    }

    #[test]
    fn closed_points_a1_f2_necklace() {
        let v = a1_over(2);
        let pts = closed_points_up_to(&v, 3, &budget()).unwrap();
        let by_deg = |d: u64| pts.iter().filter(|p| p.degree() == d).count();
        assert_eq!(by_deg(1), 2);
        assert_eq!(by_deg(2), 1);
        assert_eq!(by_deg(3), 2); // (2^3 - 2)/3
    }

    #[test]
    fn spec_extension_has_single_point() {
        let f = FiniteField::prime(3).unwrap();
        let v = Variety::spec_extension(f, 3).unwrap();
        let pts = closed_points_up_to(&v, 6, &budget()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].degree(), 3);
    }

    #[test]
    fn count_consistency_with_closed_points() {
        // N_e = sum_{d | e} d * (number of closed points of degree d)
        let f = FiniteField::prime(3).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let eq = parse_poly("y^2 - x^3 - x - 1", &names, &f).unwrap();
        let v = Variety::new(f, Ambient::Affine(2), names, vec![eq], vec![]).unwrap();
        let pts = closed_points_up_to(&v, 4, &budget()).unwrap();
        for e in 1..=4u64 {
            let n_e = count_points(&v, e, &budget()).unwrap();
            let sum: u64 = pts
                .iter()
                .filter(|p| e % p.degree() == 0)
                .map(|p| p.degree())
                .sum();
            assert_eq!(n_e, sum, "degree {e}");
        }
    }

    #[test]
    fn frobenius_orbit_closure() {
        let v = p1_over(3);
        let pts = closed_points_up_to(&v, 3, &budget()).unwrap();
        for p in &pts {
            let q = v.base_field().cardinality();
            let mut cur: Vec<FfElem> = p.coords().to_vec();
            for _ in 0..p.degree() {
                cur = cur.iter().map(|c| c.frobenius(q)).collect();
            }
            assert_eq!(encode_point(&cur), encode_point(p.coords()));
            // no smaller power fixes it
            let mut cur2: Vec<FfElem> = p.coords().to_vec();
            for i in 1..p.degree() {
                cur2 = cur2.iter().map(|c| c.frobenius(q)).collect();
                assert_ne!(encode_point(&cur2), encode_point(p.coords()), "power {i}");
            }
        }
    }

    #[test]
    fn excluded_locus_removes_points() {
        let f = FiniteField::prime(5).unwrap();
        let names = vec!["x".to_string()];
        let ex = parse_poly("x^3 - x", &names, &f).unwrap(); // 0, 1, -1
        let v = Variety::new(f, Ambient::Affine(1), names, vec![], vec![ex]).unwrap();
        assert_eq!(count_points(&v, 1, &budget()).unwrap(), 2);
        let pts = closed_points_up_to(&v, 1, &budget()).unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn empty_variety_has_no_points() {
        let f = FiniteField::prime(2).unwrap();
        let names = vec!["x".to_string()];
        let one = parse_poly("1", &names, &f).unwrap();
        let v = Variety::new(f, Ambient::Affine(1), names, vec![one], vec![]).unwrap();
        assert_eq!(count_points(&v, 1, &budget()).unwrap(), 0);
        assert!(closed_points_up_to(&v, 3, &budget()).unwrap().is_empty());
    }

    #[test]
    fn budget_guard_fails_loudly() {
        let v = a1_over(5);
        let tiny = Budget { max_candidates: 10 };
        assert!(matches!(
            closed_points_of_degree(&v, 4, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
