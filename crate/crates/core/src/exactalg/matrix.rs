//! Dense matrices: generic exact linear algebra over a field, and integer
//! matrices with fraction-free determinants, Smith normal form and lattice
//! bases.

use super::field::FieldElement;
use num::{BigInt, Integer, One, Signed, Zero};

// ---------------------------------------------------------------------------
// Matrices over a field
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: FieldElement> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: FieldElement> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn zero_like(proto: &T, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Matrix { rows, cols, data: vec![proto.zero_like(); rows * cols] }
    }

    pub fn identity_like(proto: &T, n: usize) -> Self {
        let mut m = Self::zero_like(proto, n, n);
        for i in 0..n {
            m[(i, i)] = proto.one_like();
        }
        m
    }

    pub fn proto(&self) -> &T {
        &self.data[0]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero_like(self.proto(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].add(&a.mul(&rhs[(k, j)]));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn apply_to(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.proto().zero_like();
                for j in 0..self.cols {
                    acc = acc.add(&self[(i, j)].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| !m[(i, c)].is_zero());
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = f.mul(&m[(r, j)]);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = m.proto().one_like();
        for c in 0..m.cols {
            let pivot_row = (c..m.rows).find(|&i| !m[(i, c)].is_zero());
            let Some(pr) = pivot_row else { return m.proto().zero_like() };
            if pr != c {
                m.swap_rows(c, pr);
                det = det.neg();
            }
            let pivot = m[(c, c)].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul(&inv);
                for j in c..m.cols {
                    let t = f.mul(&m[(c, j)]);
                    m[(i, j)] = m[(i, j)].sub(&t);
                }
            }
        }
        det
    }

    /// Basis of the right kernel { v : Mv = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![self.proto().zero_like(); self.cols];
            v[free] = self.proto().one_like();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = r[(ri, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b; `None` if inconsistent. Returns one solution.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero_like(self.proto(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.proto().zero_like(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(ri, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: FieldElement> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: FieldElement> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMat { rows: rows.len(), cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        IntMat { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn to_rat(&self) -> Matrix<super::field::Rat> {
        let data: Vec<super::field::Rat> =
            self.data.iter().map(|a| super::field::Rat::from_integer(a.clone())).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = t / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Basis of the kernel lattice { v in Z^cols : Mv = 0 }, as columns.
    /// The basis spans a saturated sublattice (a direct summand of Z^cols).
    pub fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        let snf = smith_normal_form(self);
        let rank = snf.rank();
        let mut out = Vec::new();
        for j in rank..self.cols {
            out.push((0..self.cols).map(|i| snf.v[(i, j)].clone()).collect());
        }
        out
    }

    /// Basis of the lattice spanned by the rows, via integer row reduction.
    pub fn row_lattice_basis(&self) -> Vec<Vec<BigInt>> {
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            loop {
                let pivot = (row..m.rows)
                    .filter(|&i| !m[(i, col)].is_zero())
                    .min_by_key(|&i| m[(i, col)].abs());
                let Some(p) = pivot else { break };
                m.swap_rows(row, p);
                let mut done = true;
                for i in row + 1..m.rows {
                    if m[(i, col)].is_zero() {
                        continue;
                    }
                    let q = div_round(&m[(i, col)], &m[(row, col)]);
                    for j in 0..m.cols {
                        let t = &q * &m[(row, j)];
                        m[(i, j)] -= t;
                    }
                    if !m[(i, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !m[(row, col)].is_zero() {
                row += 1;
            }
        }
        (0..row).map(|i| m.row_vec(i)).collect()
    }

    fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Quotient rounding to nearest, which keeps remainders small during
/// elimination.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = &r + &r;
    if two_r.abs() > b.abs() {
        if (r.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

pub struct SmithNormalForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form U·M·V = D with U, V unimodular, D diagonal with
/// d_1 | d_2 | ... and d_i >= 0.
pub fn smith_normal_form(m: &IntMat) -> SmithNormalForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let min_dim = rows.min(cols);
    for k in 0..min_dim {
        'pivot: loop {
            // Find the entry of least absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d[(i, j)].abs() < d[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(i, k)], &d[(k, k)]);
                for j in 0..cols {
                    let t = &q * &d[(k, j)];
                    d[(i, j)] -= t;
                }
                for j in 0..rows {
                    let t = &q * &u[(k, j)];
                    u[(i, j)] -= t;
                }
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(k, j)], &d[(k, k)]);
                for i in 0..rows {
                    let t = &q * &d[(i, k)];
                    d[(i, j)] -= t;
                }
                for i in 0..cols {
                    let t = &q * &v[(i, k)];
                    v[(i, j)] -= t;
                }
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Enforce divisibility: fold any non-multiple into the pivot
            // position and restart the pivot step.
            let mut fixed = true;
            'find: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        for jj in 0..cols {
                            let t = d[(i, jj)].clone();
                            d[(k, jj)] += t;
                        }
                        for jj in 0..rows {
                            let t = u[(i, jj)].clone();
                            u[(k, jj)] += t;
                        }
                        fixed = false;
                        break 'find;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
    }
    // Make the diagonal nonnegative.
    for k in 0..min_dim {
        if d[(k, k)].is_negative() {
            for j in 0..cols {
                let t = -d[(k, j)].clone();
                d[(k, j)] = t;
            }
            for j in 0..rows {
                let t = -u[(k, j)].clone();
                u[(k, j)] = t;
            }
        }
    }
    SmithNormalForm { u, d, v }
}
