//! Orders R in semisimple Q-algebras A: the center decomposition
//! Z(A) = prod K_i, reduced norms through splitting representations,
//! reduced ranks, and unit-class comparisons.
//!
//! Supported orders: Z, group rings Z[G] for finite abelian G, matrix orders
//! M_n over another order, and explicit Wedderburn data (a list of
//! components (K_i, k_i) together with the representation of each basis
//! element). Everything is compiled down to one uniform structure: a Z-basis
//! with rational structure constants plus, per component, the images of the
//! basis elements.

use crate::error::{Error, Result};
use crate::exactalg::{padic_valuation, FieldElement, Matrix, NfElem, NumberField, Poly, Rat};
use num::One;

fn rat_zero() -> Rat {
    num::Zero::zero()
}
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Order specifications
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum OrderSpec {
    /// R = Z inside A = Q.
    Integers,
    /// R = Z[G] for G = prod Z/m_j, given by its cycle type.
    GroupRing { cycle_type: Vec<u64> },
    /// M_n over a base order.
    MatrixOrder { n: usize, base: Box<OrderSpec> },
    /// Explicit components with a splitting representation per basis element.
    Wedderburn { components: Vec<WedderburnComponent>, dim: usize },
}

#[derive(Clone, Debug)]
pub struct WedderburnComponent {
    pub field: Arc<NumberField>,
    pub k: usize,
    /// images[b] is the k x k matrix over `field` representing basis element b.
    pub images: Vec<Matrix<NfElem>>,
}

/// A compiled order: Z-basis of rank `dim`, structure constants, and the
/// Wedderburn component data used for reduced norms.
pub struct CompiledOrder {
    pub dim: usize,
    one_coords: Vec<Rat>,
    /// struct_consts[b][c] = coordinates of e_b * e_c.
    struct_consts: Vec<Vec<Vec<Rat>>>,
    components: Vec<Component>,
    label: String,
}

pub struct Component {
    pub field: Arc<NumberField>,
    pub k: usize,
    /// Image of each basis element under the splitting representation.
    pub images: Vec<Matrix<NfElem>>,
}

impl std::fmt::Debug for CompiledOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CompiledOrder({}, dim {})", self.label, self.dim)
    }
}

impl CompiledOrder {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// The center decomposition of A as a list of (K_i, k_i).
pub fn center_decomposition(order: &CompiledOrder) -> Vec<(Arc<NumberField>, usize)> {
    order.components.iter().map(|c| (Arc::clone(&c.field), c.k)).collect()
}

impl OrderSpec {
    pub fn compile(&self) -> Result<Arc<CompiledOrder>> {
        match self {
            OrderSpec::Integers => {
                let q = NumberField::rationals();
                let images = vec![Matrix::identity_like(&NfElem::one(&q), 1)];
                Ok(Arc::new(CompiledOrder {
                    dim: 1,
                    one_coords: vec![Rat::one()],
                    struct_consts: vec![vec![vec![Rat::one()]]],
                    components: vec![Component { field: q, k: 1, images }],
                    label: "Z".into(),
                }))
            }
            OrderSpec::GroupRing { cycle_type } => compile_group_ring(cycle_type),
            OrderSpec::MatrixOrder { n, base } => {
                let base = base.compile()?;
                compile_matrix_order(*n, &base)
            }
            OrderSpec::Wedderburn { components, dim } => compile_wedderburn(components, *dim),
        }
    }
}

// ---------------------------------------------------------------------------
// Group rings of finite abelian groups
// ---------------------------------------------------------------------------

/// Mixed-radix enumeration of G = prod Z/m_j.
fn group_elements(cycle_type: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in cycle_type {
        let mut next = Vec::new();
        for prefix in &out {
            for a in 0..m {
                let mut v = prefix.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / num::integer::gcd(a, b) * b
}

fn compile_group_ring(cycle_type: &[u64]) -> Result<Arc<CompiledOrder>> {
    if cycle_type.is_empty() || cycle_type.iter().any(|&m| m == 0) {
        return Err(Error::Scenario("group cycle type must be nonempty and positive".into()));
    }
    let elems = group_elements(cycle_type);
    let n = elems.len();
    let index_of = |g: &[u64]| -> usize {
        let mut idx = 0usize;
        for (j, &a) in g.iter().enumerate() {
            idx = idx * cycle_type[j] as usize + a as usize;
        }
        idx
    };
    // e_a e_b = e_{a+b}
    let mut struct_consts = vec![vec![vec![rat_zero(); n]; n]; n];
    for (a, ga) in elems.iter().enumerate() {
        for (b, gb) in elems.iter().enumerate() {
            let sum: Vec<u64> =
                ga.iter().zip(gb).zip(cycle_type).map(|((x, y), m)| (x + y) % m).collect();
            struct_consts[a][b][index_of(&sum)] = Rat::one();
        }
    }
    let mut one_coords = vec![rat_zero(); n];
    one_coords[0] = Rat::one();

    // Characters are indexed by exponent vectors; the Galois group of
    // Q(zeta_m) permutes them by scalar multiplication. One component per
    // orbit, represented by the lexicographically smallest vector.
    let m = cycle_type.iter().fold(1u64, |acc, &x| lcm_u64(acc, x));
    let units: Vec<u64> = (1..=m).filter(|&u| num::integer::gcd(u, m) == 1).collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for (t_idx, t) in elems.iter().enumerate() {
        if seen[t_idx] {
            continue;
        }
        for &u in &units {
            let tu: Vec<u64> = t.iter().zip(cycle_type).map(|(&x, &mj)| (x * u) % mj).collect();
            seen[index_of(&tu)] = true;
        }
        // order of the character chi_t
        let o = t
            .iter()
            .zip(cycle_type)
            .map(|(&x, &mj)| mj / num::integer::gcd(x, mj))
            .fold(1u64, lcm_u64);
        let field = NumberField::cyclotomic(o);
        let images = elems
            .iter()
            .map(|g| {
                // chi_t(g) = zeta_m ^ (sum t_j g_j m/m_j) = zeta_o ^ (e/(m/o))
                let e: u64 = t
                    .iter()
                    .zip(g)
                    .zip(cycle_type)
                    .map(|((&tj, &gj), &mj)| tj * gj % m * (m / mj) % m)
                    .fold(0u64, |acc, x| (acc + x) % m);
                debug_assert_eq!(e % (m / o), 0);
                let val = NfElem::zeta_power(&field, e / (m / o));
                Matrix::from_rows(vec![vec![val]])
            })
            .collect();
        components.push(Component { field, k: 1, images });
    }
    let label = format!(
        "Z[{}]",
        cycle_type.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" x ")
    );
    Ok(Arc::new(CompiledOrder { dim: n, one_coords, struct_consts, components, label }))
}

// ---------------------------------------------------------------------------
// Matrix orders
// ---------------------------------------------------------------------------

fn compile_matrix_order(n: usize, base: &Arc<CompiledOrder>) -> Result<Arc<CompiledOrder>> {
    assert!(n >= 1);
    let nb = base.dim;
    let dim = n * n * nb;
    // basis element index: cell (s, t), base index j -> (s*n + t)*nb + j
    let idx = |s: usize, t: usize, j: usize| (s * n + t) * nb + j;
    let mut struct_consts = vec![vec![vec![rat_zero(); dim]; dim]; dim];
    for s in 0..n {
        for t in 0..n {
            for j in 0..nb {
                for v in 0..n {
                    for l in 0..nb {
                        // E_st b_j * E_tv b_l = E_sv (b_j b_l)
                        let prod = &base.struct_consts[j][l];
                        for (w, cw) in prod.iter().enumerate() {
                            if !cw.is_zero() {
                                struct_consts[idx(s, t, j)][idx(t, v, l)][idx(s, v, w)] = cw.clone();
                            }
                        }
                    }
                }
            }
        }
    }
    let mut one_coords = vec![rat_zero(); dim];
    for s in 0..n {
        for (j, c) in base.one_coords.iter().enumerate() {
            one_coords[idx(s, s, j)] = c.clone();
        }
    }
    let components = base
        .components
        .iter()
        .map(|bc| {
            let k = n * bc.k;
            let zero = NfElem::zero(&bc.field);
            let images = (0..dim)
                .map(|bi| {
                    let j = bi % nb;
                    let t = (bi / nb) % n;
                    let s = bi / (nb * n);
                    let mut m = Matrix::zero_like(&zero, k, k);
                    let img = &bc.images[j];
                    for r in 0..bc.k {
                        for c in 0..bc.k {
                            m[(s * bc.k + r, t * bc.k + c)] = img[(r, c)].clone();
                        }
                    }
                    m
                })
                .collect();
            Component { field: Arc::clone(&bc.field), k, images }
        })
        .collect();
    let label = format!("M_{n}({})", base.label);
    Ok(Arc::new(CompiledOrder { dim, one_coords, struct_consts, components, label }))
}

// ---------------------------------------------------------------------------
// Explicit Wedderburn data
// ---------------------------------------------------------------------------

/// Flatten a tuple of component matrices into one long rational vector.
fn flatten(components: &[WedderburnComponent], mats: &[Matrix<NfElem>]) -> Vec<Rat> {
    let mut out = Vec::new();
    for (comp, m) in components.iter().zip(mats) {
        let deg = comp.field.degree();
        for i in 0..comp.k {
            for j in 0..comp.k {
                let coeffs = m[(i, j)].coeffs();
                for d in 0..deg {
                    out.push(coeffs[d].clone());
                }
            }
        }
    }
    out
}

fn compile_wedderburn(components: &[WedderburnComponent], dim: usize) -> Result<Arc<CompiledOrder>> {
    if components.is_empty() || dim == 0 {
        return Err(Error::MalformedWedderburn("need at least one component and a positive rank".into()));
    }
    for comp in components {
        if comp.images.len() != dim {
            return Err(Error::MalformedWedderburn(format!(
                "component over {:?} has {} images, expected {}",
                comp.field,
                comp.images.len(),
                dim
            )));
        }
        for img in &comp.images {
            if img.rows != comp.k || img.cols != comp.k {
                return Err(Error::MalformedWedderburn("image size mismatch".into()));
            }
        }
    }
    // Stack the basis images as rows of S; solving S^T x = v expresses a
    // tuple v in basis coordinates.
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|b| {
            let mats: Vec<Matrix<NfElem>> = components.iter().map(|c| c.images[b].clone()).collect();
            flatten(components, &mats)
        })
        .collect();
    let s = Matrix::from_rows(rows);
    let st = transpose(&s);
    if s.rank() != dim {
        return Err(Error::MalformedWedderburn(
            "basis images are linearly dependent (representation not faithful on the basis)".into(),
        ));
    }
    let solve_coords = |mats: &[Matrix<NfElem>]| -> Result<Vec<Rat>> {
        let v = flatten(components, mats);
        st.solve(&v).ok_or_else(|| {
            Error::MalformedWedderburn("a product of basis elements leaves the span of the basis".into())
        })
    };
    let id_mats: Vec<Matrix<NfElem>> = components
        .iter()
        .map(|c| Matrix::identity_like(&NfElem::one(&c.field), c.k))
        .collect();
    let one_coords = solve_coords(&id_mats).map_err(|_| {
        Error::MalformedWedderburn("the identity does not lie in the span of the basis".into())
    })?;
    // Closure under products, with integral structure constants.
    let mut struct_consts = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let prods: Vec<Matrix<NfElem>> =
                components.iter().map(|c| c.images[a].mul(&c.images[b])).collect();
            let coords = solve_coords(&prods)?;
            if coords.iter().any(|c| !c.denom().is_one()) {
                return Err(Error::MalformedWedderburn(format!(
                    "structure constants of e_{a} e_{b} are not integral (not an order)"
                )));
            }
            struct_consts[a][b] = coords;
        }
    }
    let comps = components
        .iter()
        .map(|c| Component { field: Arc::clone(&c.field), k: c.k, images: c.images.clone() })
        .collect();
    Ok(Arc::new(CompiledOrder {
        dim,
        one_coords,
        struct_consts,
        components: comps,
        label: "wedderburn".into(),
    }))
}

fn transpose(m: &Matrix<Rat>) -> Matrix<Rat> {
    let mut out = Matrix::zero_like(&rat_zero(), m.cols, m.rows);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[(j, i)] = m[(i, j)].clone();
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Algebra elements and matrices over the algebra
// ---------------------------------------------------------------------------

/// Element of A in basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    pub coords: Vec<Rat>,
}

impl AlgElem {
    pub fn zero(order: &CompiledOrder) -> Self {
        AlgElem { coords: vec![rat_zero(); order.dim] }
    }

    pub fn one(order: &CompiledOrder) -> Self {
        AlgElem { coords: order.one_coords.clone() }
    }

    pub fn from_i64(order: &CompiledOrder, n: i64) -> Self {
        Self::one(order).scaled(&Rat::from_integer(n.into()))
    }

    pub fn from_rat(order: &CompiledOrder, r: &Rat) -> Self {
        Self::one(order).scaled(r)
    }

    /// Basis element e_b (for group rings, the group element with index b).
    pub fn basis(order: &CompiledOrder, b: usize) -> Self {
        let mut coords = vec![rat_zero(); order.dim];
        coords[b] = Rat::one();
        AlgElem { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        AlgElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        AlgElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        AlgElem { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, rhs: &Self, order: &CompiledOrder) -> Self {
        let mut out = vec![rat_zero(); order.dim];
        for (b, cb) in self.coords.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            for (c, cc) in rhs.coords.iter().enumerate() {
                if cc.is_zero() {
                    continue;
                }
                let f = cb * cc;
                for (w, s) in order.struct_consts[b][c].iter().enumerate() {
                    if !s.is_zero() {
                        out[w] += &f * s;
                    }
                }
            }
        }
        AlgElem { coords: out }
    }

    /// Image in component i: a k x k matrix over K_i.
    pub fn component(&self, order: &CompiledOrder, i: usize) -> Matrix<NfElem> {
        let comp = &order.components[i];
        let zero = NfElem::zero(&comp.field);
        let mut m = Matrix::zero_like(&zero, comp.k, comp.k);
        for (b, cb) in self.coords.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let img = &comp.images[b];
            for r in 0..comp.k {
                for c in 0..comp.k {
                    if !FieldElement::is_zero(&img[(r, c)]) {
                        m[(r, c)] = m[(r, c)].add(&img[(r, c)].scale_rat(cb));
                    }
                }
            }
        }
        m
    }

    /// Matrix of left multiplication on the Z-basis (rational entries).
    pub fn regular_rep(&self, order: &CompiledOrder) -> Matrix<Rat> {
        let n = order.dim;
        let mut m = Matrix::zero_like(&rat_zero(), n, n);
        for c in 0..n {
            let col = self.mul(&AlgElem::basis(order, c), order);
            for r in 0..n {
                m[(r, c)] = col.coords[r].clone();
            }
        }
        m
    }
}

/// Matrix with entries in the algebra A.
#[derive(Clone, Debug, PartialEq)]
pub struct AMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<AlgElem>,
}

impl AMat {
    pub fn zero(order: &CompiledOrder, rows: usize, cols: usize) -> Self {
        AMat { rows, cols, entries: vec![AlgElem::zero(order); rows * cols] }
    }

    pub fn identity(order: &CompiledOrder, n: usize) -> Self {
        let mut m = Self::zero(order, n, n);
        for i in 0..n {
            m.set(i, i, AlgElem::one(order));
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<AlgElem>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        AMat { rows, cols, entries }
    }

    /// Integer matrix interpreted over any order via n -> n·1.
    pub fn from_int_rows(order: &CompiledOrder, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&n| AlgElem::from_i64(order, n)))
            .collect();
        AMat { rows: r, cols: c, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        AMat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub(b)).collect();
        AMat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        AMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scaled(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self, order: &CompiledOrder) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero(order, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.mul(rhs.get(k, j), order);
                    let s = out.get(i, j).add(&t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integral())
    }

    /// Block-substitute component i: an (rows·k) x (cols·k) matrix over K_i.
    pub fn component(&self, order: &CompiledOrder, i: usize) -> Matrix<NfElem> {
        let comp = &order.components[i];
        let k = comp.k;
        let zero = NfElem::zero(&comp.field);
        let mut m = Matrix::zero_like(&zero, self.rows * k, self.cols * k);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let block = self.get(r, c).component(order, i);
                for x in 0..k {
                    for y in 0..k {
                        m[(r * k + x, c * k + y)] = block[(x, y)].clone();
                    }
                }
            }
        }
        m
    }

    /// Z-level expansion: each entry replaced by its regular representation.
    pub fn regular_rep(&self, order: &CompiledOrder) -> Matrix<Rat> {
        let n = order.dim;
        let mut m = Matrix::zero_like(&rat_zero(), self.rows * n, self.cols * n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let block = self.get(r, c).regular_rep(order);
                for x in 0..n {
                    for y in 0..n {
                        m[(r * n + x, c * n + y)] = block[(x, y)].clone();
                    }
                }
            }
        }
        m
    }
}

// ---------------------------------------------------------------------------
// Center elements
// ---------------------------------------------------------------------------

/// A value in Z(A) = prod K_i.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterElement {
    pub components: Vec<NfElem>,
}

impl CenterElement {
    pub fn one(order: &CompiledOrder) -> Self {
        CenterElement {
            components: order.components.iter().map(|c| NfElem::one(&c.field)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        CenterElement {
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            out.push(c.inv().ok_or(Error::ZeroComponent(i))?);
        }
        Ok(CenterElement { components: out })
    }

    pub fn has_zero_component(&self) -> Option<usize> {
        self.components.iter().position(|c| FieldElement::is_zero(c))
    }
}

// ---------------------------------------------------------------------------
// Center-level operations
// ---------------------------------------------------------------------------

/// Componentwise reduced norm of a square matrix over A.
pub fn reduced_norm(m: &AMat, order: &CompiledOrder) -> CenterElement {
    assert_eq!(m.rows, m.cols, "reduced norm needs a square matrix");
    let components = (0..order.components.len())
        .map(|i| m.component(order, i).det())
        .collect();
    CenterElement { components }
}

/// Reduced rank of a module given by its K_i-dimensions per component.
pub fn reduced_rank(module_dims: &[usize], order: &CompiledOrder) -> Result<Vec<i64>> {
    assert_eq!(module_dims.len(), order.components.len());
    module_dims
        .iter()
        .zip(&order.components)
        .map(|(&dim, comp)| {
            if dim % comp.k != 0 {
                Err(Error::NonDivisibleRank { dim, k: comp.k })
            } else {
                Ok((dim / comp.k) as i64)
            }
        })
        .collect()
}

/// True iff alpha and beta agree up to a unit of the ring of integers of the
/// center: every component of alpha/beta and beta/alpha is an algebraic
/// integer.
pub fn unit_modulo_integers(alpha: &CenterElement, beta: &CenterElement) -> Result<bool> {
    if let Some(i) = alpha.has_zero_component() {
        return Err(Error::ZeroComponent(i));
    }
    if let Some(i) = beta.has_zero_component() {
        return Err(Error::ZeroComponent(i));
    }
    for (a, b) in alpha.components.iter().zip(&beta.components) {
        let r = a.mul(&b.inv().unwrap());
        if !r.is_algebraic_integer() || !r.inv().unwrap().is_algebraic_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every component and its inverse are l-integral: the minimal
/// polynomial has no denominator divisible by l and its constant term is an
/// l-unit.
pub fn is_l_adic_unit(alpha: &CenterElement, l: u64) -> Result<bool> {
    if let Some(i) = alpha.has_zero_component() {
        return Err(Error::ZeroComponent(i));
    }
    for a in &alpha.components {
        let mp = a.minimal_polynomial();
        for c in mp.coeffs() {
            if let Some(v) = padic_valuation(c, l) {
                if v < 0 {
                    return Ok(false);
                }
            }
        }
        let c0 = mp.coeff(0);
        match padic_valuation(&c0, l) {
            Some(0) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

impl NfElem {
    /// Scale by a rational.
    pub fn scale_rat(&self, c: &Rat) -> NfElem {
        let mut coeffs = self.coeffs().to_vec();
        for a in coeffs.iter_mut() {
            *a = &*a * c;
        }
        NfElem::new(coeffs, Arc::clone(self.field()))
    }
}

/// det(1 - M·S) as a polynomial in S, via Faddeev-LeVerrier on the
/// characteristic polynomial (valid over any field of characteristic 0).
pub fn inverse_charpoly<T: FieldElement>(m: &Matrix<T>) -> Poly<T> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let proto = m.proto();
    // charpoly det(lambda I - M) = lambda^n + c_{n-1} lambda^{n-1} + ... + c_0
    let mut coeffs = vec![proto.zero_like(); n + 1];
    coeffs[n] = proto.one_like();
    let mut mk = m.clone();
    for k in 1..=n {
        let mut tr = proto.zero_like();
        for i in 0..n {
            tr = tr.add(&mk[(i, i)]);
        }
        let c = tr.div(&proto.from_i64_like(k as i64)).neg();
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = mk.clone();
            for i in 0..n {
                shifted[(i, i)] = shifted[(i, i)].add(&c);
            }
            mk = m.mul(&shifted);
        }
    }
    // det(1 - M S) = S^n charpoly(1/S): reverse the coefficients
    let rev: Vec<T> = (0..=n).map(|i| coeffs[n - i].clone()).collect();
    Poly::new(rev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn center_of_z() {
        let order = OrderSpec::Integers.compile().unwrap();
        let dec = center_decomposition(&order);
        assert_eq!(dec.len(), 1);
        assert!(dec[0].0.is_rationals());
        assert_eq!(dec[0].1, 1);
    }

    #[test]
    fn center_of_z_mod_2() {
        let order = OrderSpec::GroupRing { cycle_type: vec![2] }.compile().unwrap();
        let dec = center_decomposition(&order);
        assert_eq!(dec.len(), 2);
        assert!(dec.iter().all(|(f, k)| f.degree() == 1 && *k == 1));
    }

    #[test]
    fn center_of_z_mod_3() {
        let order = OrderSpec::GroupRing { cycle_type: vec![3] }.compile().unwrap();
        let dec = center_decomposition(&order);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0].0.degree(), 1);
        assert_eq!(dec[1].0.degree(), 2);
        assert_eq!(dec[1].0.cyclotomic_order(), Some(3));
    }

    #[test]
    fn matrix_order_scales_k() {
        let order = OrderSpec::MatrixOrder { n: 2, base: Box::new(OrderSpec::Integers) }
            .compile()
            .unwrap();
        let dec = center_decomposition(&order);
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 2);
        assert_eq!(order.dim, 4);
    }

    #[test]
    fn nrd_over_z_is_det() {
        let order = OrderSpec::Integers.compile().unwrap();
        let m = AMat::from_int_rows(&order, &[vec![2, 1], vec![3, 4]]);
        let nrd = reduced_norm(&m, &order);
        assert_eq!(nrd.components[0].as_rational().unwrap(), q(5, 1));
    }

    #[test]
    fn nrd_of_group_element_pair() {
        // (a + b sigma) in Z[Z/2]: components (a+b, a-b)
        let order = OrderSpec::GroupRing { cycle_type: vec![2] }.compile().unwrap();
        let (a, b) = (3i64, 5i64);
        let elem = AlgElem::basis(&order, 0)
            .scaled(&q(a, 1))
            .add(&AlgElem::basis(&order, 1).scaled(&q(b, 1)));
        let m = AMat::from_entries(1, 1, vec![elem]);
        let nrd = reduced_norm(&m, &order);
        assert_eq!(nrd.components[0].as_rational().unwrap(), q(a + b, 1));
        assert_eq!(nrd.components[1].as_rational().unwrap(), q(a - b, 1));
    }

    #[test]
    fn nrd_morita_scalar() {
        // c Id_2 in M_2(Z): Nrd = c^2
        let order = OrderSpec::MatrixOrder { n: 2, base: Box::new(OrderSpec::Integers) }
            .compile()
            .unwrap();
        let c = q(7, 1);
        let mut coords = vec![rat_zero(); 4];
        coords[0] = c.clone(); // E_00
        coords[3] = c; // E_11
        let m = AMat::from_entries(1, 1, vec![AlgElem { coords }]);
        let nrd = reduced_norm(&m, &order);
        assert_eq!(nrd.components[0].as_rational().unwrap(), q(49, 1));
    }

    #[test]
    fn nrd_multiplicative() {
        let order = OrderSpec::GroupRing { cycle_type: vec![3] }.compile().unwrap();
        let x = AMat::from_int_rows(&order, &[vec![1, 2], vec![0, 1]]);
        let mut y = AMat::identity(&order, 2);
        y.set(0, 0, AlgElem::basis(&order, 1)); // the group generator
        y.set(1, 0, AlgElem::from_i64(&order, -1));
        let xy = x.mul(&y, &order);
        assert_eq!(reduced_norm(&xy, &order), reduced_norm(&x, &order).mul(&reduced_norm(&y, &order)));
        let id = AMat::identity(&order, 2);
        assert_eq!(reduced_norm(&id, &order), CenterElement::one(&order));
    }

    #[test]
    fn nrd_of_block_diagonal_is_product() {
        let order = OrderSpec::GroupRing { cycle_type: vec![2] }.compile().unwrap();
        let a = AMat::from_int_rows(&order, &[vec![2]]);
        let b = AMat::from_int_rows(&order, &[vec![3]]);
        let mut blk = AMat::zero(&order, 2, 2);
        blk.set(0, 0, a.get(0, 0).clone());
        blk.set(1, 1, b.get(0, 0).clone());
        assert_eq!(
            reduced_norm(&blk, &order),
            reduced_norm(&a, &order).mul(&reduced_norm(&b, &order))
        );
    }

    #[test]
    fn group_algebra_determinant_identity() {
        // product over all characters (field norms of the orbit components)
        // equals det of the regular representation over Q.
        for cycle in [vec![2u64], vec![3], vec![2, 3], vec![4], vec![2, 2]] {
            let order = OrderSpec::GroupRing { cycle_type: cycle.clone() }.compile().unwrap();
            let mut elem = AlgElem::one(&order);
            for b in 1..order.dim {
                elem = elem.add(&AlgElem::basis(&order, b).scaled(&q(b as i64 + 1, 1)));
            }
            let m = AMat::from_entries(1, 1, vec![elem.clone()]);
            let nrd = reduced_norm(&m, &order);
            let prod: Rat = nrd.components.iter().map(|c| c.norm()).product();
            let det = elem.regular_rep(&order).det();
            assert_eq!(prod, det, "cycle type {cycle:?}");
        }
    }

    #[test]
    fn reduced_rank_divides() {
        let order = OrderSpec::MatrixOrder { n: 2, base: Box::new(OrderSpec::Integers) }
            .compile()
            .unwrap();
        assert_eq!(reduced_rank(&[2], &order).unwrap(), vec![1]);
        assert!(matches!(reduced_rank(&[3], &order), Err(Error::NonDivisibleRank { .. })));
        let z = OrderSpec::Integers.compile().unwrap();
        assert_eq!(reduced_rank(&[3], &z).unwrap(), vec![3]);
        let zg = OrderSpec::GroupRing { cycle_type: vec![2] }.compile().unwrap();
        assert_eq!(reduced_rank(&[1, 1], &zg).unwrap(), vec![1, 1]);
    }

    fn center_rat(order: &CompiledOrder, vals: &[Rat]) -> CenterElement {
        CenterElement {
            components: order
                .components
                .iter()
                .zip(vals)
                .map(|(c, v)| NfElem::from_rat(v.clone(), &c.field))
                .collect(),
        }
    }

    #[test]
    fn unit_comparison() {
        let z = OrderSpec::Integers.compile().unwrap();
        let a = center_rat(&z, &[q(1, 3)]);
        let b = center_rat(&z, &[q(1, 1)]);
        assert!(!unit_modulo_integers(&a, &b).unwrap());
        let c = center_rat(&z, &[q(-1, 2)]);
        let d = center_rat(&z, &[q(1, 2)]);
        assert!(unit_modulo_integers(&c, &d).unwrap());
        assert!(unit_modulo_integers(&a, &a).unwrap());
        let zero = center_rat(&z, &[q(0, 1)]);
        assert!(matches!(unit_modulo_integers(&zero, &b), Err(Error::ZeroComponent(0))));
    }

    #[test]
    fn unit_comparison_is_transitive_on_samples() {
        let z = OrderSpec::Integers.compile().unwrap();
        let vals = [q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2), q(3, 1), q(2, 3)];
        let elems: Vec<CenterElement> = vals.iter().map(|v| center_rat(&z, &[v.clone()])).collect();
        for a in &elems {
            assert!(unit_modulo_integers(a, a).unwrap());
            for b in &elems {
                assert_eq!(
                    unit_modulo_integers(a, b).unwrap(),
                    unit_modulo_integers(b, a).unwrap()
                );
                for c in &elems {
                    if unit_modulo_integers(a, b).unwrap() && unit_modulo_integers(b, c).unwrap() {
                        assert!(unit_modulo_integers(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn l_adic_units() {
        let z = OrderSpec::Integers.compile().unwrap();
        assert!(is_l_adic_unit(&center_rat(&z, &[q(3, 1)]), 2).unwrap());
        assert!(!is_l_adic_unit(&center_rat(&z, &[q(2, 1)]), 2).unwrap());
        assert!(!is_l_adic_unit(&center_rat(&z, &[q(1, 2)]), 2).unwrap());
        // 1 + zeta_3 has minimal polynomial x^2 - x + 1: a 2-adic unit
        let k3 = NumberField::cyclotomic(3);
        let a = NfElem::one(&k3).add(&NfElem::generator(&k3));
        assert_eq!(a.minimal_polynomial(), Poly::new(vec![q(1, 1), q(-1, 1), q(1, 1)]));
        let ce = CenterElement { components: vec![a] };
        assert!(is_l_adic_unit(&ce, 2).unwrap());
    }

    #[test]
    fn inverse_charpoly_small() {
        // M = [[0,-5],[1,2]]: det(1 - MT) = 1 - 2T + 5T^2
        let m = Matrix::from_rows(vec![vec![q(0, 1), q(-5, 1)], vec![q(1, 1), q(2, 1)]]);
        let p = inverse_charpoly(&m);
        assert_eq!(p, Poly::new(vec![q(1, 1), q(-2, 1), q(5, 1)]));
        let id = Matrix::identity_like(&q(0, 1), 2);
        assert_eq!(inverse_charpoly(&id), Poly::new(vec![q(1, 1), q(-2, 1), q(1, 1)]));
    }

    #[test]
    fn wedderburn_explicit_z_mod_2() {
        let qf = NumberField::rationals();
        let one = NfElem::one(&qf);
        let neg = NfElem::from_rat(q(-1, 1), &qf);
        let mk = |v: &NfElem| Matrix::from_rows(vec![vec![v.clone()]]);
        let comp_triv =
            WedderburnComponent { field: Arc::clone(&qf), k: 1, images: vec![mk(&one), mk(&one)] };
        let comp_sign =
            WedderburnComponent { field: Arc::clone(&qf), k: 1, images: vec![mk(&one), mk(&neg)] };
        let spec = OrderSpec::Wedderburn { components: vec![comp_triv, comp_sign], dim: 2 };
        let order = spec.compile().unwrap();
        let sigma = AlgElem::basis(&order, 1);
        assert_eq!(sigma.mul(&sigma, &order), AlgElem::one(&order));
        let m = AMat::from_entries(1, 1, vec![AlgElem::basis(&order, 0).add(&sigma.scaled(&q(2, 1)))]);
        let nrd = reduced_norm(&m, &order);
        assert_eq!(nrd.components[0].as_rational().unwrap(), q(3, 1));
        assert_eq!(nrd.components[1].as_rational().unwrap(), q(-1, 1));
    }

    #[test]
    fn wedderburn_rejects_bad_data() {
        let qf = NumberField::rationals();
        let mk = |v: Rat| Matrix::from_rows(vec![vec![NfElem::from_rat(v, &qf)]]);
        // e_1 represented by 1/2: products stay in the span but the
        // structure constants are not integral, so this is not an order.
        let comp = WedderburnComponent {
            field: Arc::clone(&qf),
            k: 1,
            images: vec![mk(q(1, 1)), mk(q(1, 2))],
        };
        let spec = OrderSpec::Wedderburn { components: vec![comp], dim: 2 };
        assert!(matches!(spec.compile(), Err(Error::MalformedWedderburn(_))));
    }

    #[test]
    fn regular_rep_of_group_generator_is_permutation() {
        let order = OrderSpec::GroupRing { cycle_type: vec![2] }.compile().unwrap();
        let sigma = AlgElem::basis(&order, 1);
        let m = sigma.regular_rep(&order);
        assert_eq!(m[(0, 0)], q(0, 1));
        assert_eq!(m[(0, 1)], q(1, 1));
        assert_eq!(m[(1, 0)], q(1, 1));
        assert_eq!(m[(1, 1)], q(0, 1));
    }
}
