//! Multivariate polynomials over a finite base field, plus a small
//! expression parser for scenario files ("y^2*z - x^3 - x*z^2 - z^3").

use super::field::{Embedding, FfElem, FiniteField};
use crate::error::{Error, Result};
use crate::exactalg::FieldElement;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Sparse multivariate polynomial; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FfElem>,
    field: Arc<FiniteField>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<FiniteField>, nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new(), field: Arc::clone(field) }
    }

    pub fn constant(field: &Arc<FiniteField>, c: FfElem, nvars: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(c, vec![0; nvars]);
        p
    }

    pub fn variable(field: &Arc<FiniteField>, v: usize, nvars: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[v] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(field.one(), e);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FfElem)> {
        self.terms.iter()
    }

    fn add_term(&mut self, c: FfElem, exps: Vec<u32>) {
        if FieldElement::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if FieldElement::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c.clone(), e.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(c.neg(), e.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(&self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(ca.mul(cb), e);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.field, self.field.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Substitute 0 or 1 (base-field constants) for one variable. The
    /// variable stays in place with exponent 0, keeping indices stable.
    pub fn specialize_const(&self, v: usize, value: u64) -> Self {
        let c = self.field.from_u64(value);
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, coeff) in &self.terms {
            let mut coeff = coeff.clone();
            if e[v] > 0 {
                let mut pw = self.field.one();
                for _ in 0..e[v] {
                    pw = pw.mul(&c);
                }
                coeff = coeff.mul(&pw);
            }
            let mut e2 = e.clone();
            e2[v] = 0;
            out.add_term(coeff, e2);
        }
        out
    }

    /// Full evaluation at a point with coordinates in an extension field.
    pub fn eval(&self, point: &[FfElem], emb: &Embedding) -> FfElem {
        let target = emb.target();
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut t = emb.map(c);
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    t = t.mul(&point[v].pow(ev as u128));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial evaluation: all variables get extension-field values except
    /// `keep`, producing a univariate coefficient vector (low-to-high) over
    /// the extension. `point[keep]` is ignored.
    pub fn eval_except(&self, point: &[FfElem], keep: usize, emb: &Embedding) -> Vec<FfElem> {
        let target = emb.target();
        let d = self.degree_in(keep) as usize;
        let mut out = vec![target.zero(); d + 1];
        for (e, c) in &self.terms {
            let mut t = emb.map(c);
            for (v, &ev) in e.iter().enumerate() {
                if v != keep && ev > 0 {
                    t = t.mul(&point[v].pow(ev as u128));
                }
            }
            let k = e[keep] as usize;
            out[k] = out[k].add(&t);
        }
        out
    }

    /// Canonical text form used for content hashing.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            s.push_str(&format!("{:?}*{:?};", e, c.coeffs()));
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    field: &'a Arc<FiniteField>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}' at position {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let mut neg = false;
        while let Some(c) = self.peek() {
            match c {
                '-' => {
                    neg = !neg;
                    self.pos += 1;
                    self.skip_ws();
                }
                '+' => {
                    self.pos += 1;
                    self.skip_ws();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // implicit multiplication: "2x", "x y", "x(x+1)"
                Some(c) if c.is_alphabetic() || c == '(' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if e < 0 {
                return Err(Error::Parse("negative exponents are not allowed".into()));
            }
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.field, self.field.from_i64(n), self.vars.len()))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(ch) if ch.is_alphanumeric() || ch == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                Ok(MultiPoly::variable(self.field, idx, self.vars.len()))
            }
            other => Err(Error::Parse(format!("unexpected input {:?} at {}", other, self.pos))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at {}", self.pos)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let n: i64 = s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))?;
        Ok(if neg { -n } else { n })
    }
}

/// Parse a polynomial expression in the named variables over the base field.
pub fn parse_poly(src: &str, vars: &[String], field: &Arc<FiniteField>) -> Result<MultiPoly> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, vars, field };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("trailing input at position {}", p.pos)));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FiniteField> {
        FiniteField::prime(5).unwrap()
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_eval() {
        let f = f5();
        let vs = vars(&["x", "y"]);
        let p = parse_poly("y^2 - x^3 - x - 1", &vs, &f).unwrap();
        let emb = Embedding::identity(&f);
        // (2, 1): 1 - 8 - 2 - 1 = -10 = 0 mod 5
        let pt = vec![f.from_u64(2), f.from_u64(1)];
        assert!(FieldElement::is_zero(&p.eval(&pt, &emb)));
        let pt2 = vec![f.from_u64(0), f.from_u64(1)];
        assert_eq!(p.eval(&pt2, &emb), f.from_u64(0)); // 1 - 1 = 0
        let pt3 = vec![f.from_u64(1), f.from_u64(0)];
        assert_eq!(p.eval(&pt3, &emb), f.from_i64(-3));
    }

    #[test]
    fn homogeneous_check() {
        let f = f5();
        let vs = vars(&["x", "y", "z"]);
        let p = parse_poly("y^2*z - x^3 - x*z^2 - z^3", &vs, &f).unwrap();
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), 3);
        let q = parse_poly("x^2 + y", &vs, &f).unwrap();
        assert!(!q.is_homogeneous());
    }

    #[test]
    fn partial_evaluation() {
        let f = f5();
        let vs = vars(&["x", "y"]);
        let p = parse_poly("y^2 - x^3 - x", &vs, &f).unwrap();
        let emb = Embedding::identity(&f);
        let pt = vec![f.from_u64(2), f.zero()];
        let uni = p.eval_except(&pt, 1, &emb);
        // y^2 - 10 = y^2 mod 5
        assert_eq!(uni.len(), 3);
        assert!(FieldElement::is_zero(&uni[0]));
        assert!(FieldElement::is_zero(&uni[1]));
        assert_eq!(uni[2], f.one());
    }

    #[test]
    fn implicit_multiplication_and_parens() {
        let f = f5();
        let vs = vars(&["x"]);
        let a = parse_poly("x(x-1)(x+1)", &vs, &f).unwrap();
        let b = parse_poly("x^3 - x", &vs, &f).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("2x^2 - 3", &vs, &f).unwrap();
        let d = parse_poly("2*x^2 + 2", &vs, &f).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn parse_errors() {
        let f = f5();
        let vs = vars(&["x"]);
        assert!(parse_poly("x + w", &vs, &f).is_err());
        assert!(parse_poly("x +", &vs, &f).is_err());
        assert!(parse_poly("(x", &vs, &f).is_err());
    }
}
