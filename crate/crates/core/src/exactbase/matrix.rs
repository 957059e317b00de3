use crate::error::{Error, Result};

use super::field::Elem;
use super::ring::BaseRing;

/// Dense row-major matrix over a [`BaseRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Outcome of [`solve_linear`]. An inconsistent system is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Solution {
        x: Vec<Elem>,
        /// Basis of the kernel; over `F_q[h]/(h^k)` this is an `F_q`-basis.
        nullspace: Vec<Vec<Elem>>,
    },
    Inconsistent,
}

impl Solve {
    pub fn solution(&self) -> Option<&[Elem]> {
        match self {
            Solve::Solution { x, .. } => Some(x),
            Solve::Inconsistent => None,
        }
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ExactMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Elem>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, ring: &BaseRing, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, ring: &BaseRing, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, ring.add(cur, ring.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

/// Gauss-Jordan elimination over a field with the fixed pivot rule:
/// columns left to right, pivot row the lowest-index remaining row with a
/// nonzero entry. Returns the pivot columns.
fn rref_in_place(ring: &BaseRing, m: &mut ExactMatrix, aug: Option<&mut Vec<Elem>>) -> Vec<usize> {
    let mut aug = aug;
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..m.cols {
        if prow == m.rows {
            break;
        }
        let Some(r) = (prow..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if r != prow {
            for j in 0..m.cols {
                let tmp = m.get(r, j);
                m.set(r, j, m.get(prow, j));
                m.set(prow, j, tmp);
            }
            if let Some(b) = aug.as_deref_mut() {
                b.swap(r, prow);
            }
        }
        let inv = ring.inv(m.get(prow, col)).expect("nonzero pivot in field");
        for j in col..m.cols {
            m.set(prow, j, ring.mul(inv, m.get(prow, j)));
        }
        if let Some(b) = aug.as_deref_mut() {
            b[prow] = ring.mul(inv, b[prow]);
        }
        for r2 in 0..m.rows {
            if r2 == prow {
                continue;
            }
            let factor = m.get(r2, col);
            if factor == 0 {
                continue;
            }
            let nf = ring.neg(factor);
            for j in col..m.cols {
                let v = ring.add(m.get(r2, j), ring.mul(nf, m.get(prow, j)));
                m.set(r2, j, v);
            }
            if let Some(b) = aug.as_deref_mut() {
                b[r2] = ring.add(b[r2], ring.mul(nf, b[prow]));
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}

fn solve_field(ring: &BaseRing, m: &ExactMatrix, b: &[Elem]) -> Solve {
    let mut a = m.clone();
    let mut rhs = b.to_vec();
    let pivots = rref_in_place(ring, &mut a, Some(&mut rhs));
    if rhs[pivots.len()..].iter().any(|&v| v != 0) {
        return Solve::Inconsistent;
    }
    let mut x = vec![0; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rhs[r];
    }
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut nullspace = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = ring.neg(a.get(r, free));
        }
        nullspace.push(v);
    }
    Solve::Solution { x, nullspace }
}

/// Writes a matrix over `F_q[h]/(h^k)` as an `F_q`-linear map on `F_q^{k cols}`.
fn linearize(ring: &BaseRing, m: &ExactMatrix) -> (BaseRing, ExactMatrix) {
    let k = ring.h_trunc() as usize;
    let field = BaseRing::field_ring(ring.field().clone());
    let mut big = ExactMatrix::zeros(m.rows * k, m.cols * k);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let a = ring.digits(m.get(i, j));
            for t in 0..k {
                for s in 0..=t {
                    if a[t - s] != 0 {
                        big.set(i * k + t, j * k + s, a[t - s]);
                    }
                }
            }
        }
    }
    (field, big)
}

/// Solves `M x = b` exactly.
///
/// Over a field the pivot rule is deterministic (leftmost column, lowest row),
/// free variables are set to zero, and the nullspace basis has one vector per
/// free column. Over `F_q[h]/(h^k)` the system is solved as the equivalent
/// `F_q`-linear system on `h`-coefficients.
pub fn solve_linear(ring: &BaseRing, m: &ExactMatrix, b: &[Elem]) -> Solve {
    assert_eq!(b.len(), m.rows, "rhs length must equal row count");
    if ring.is_field() {
        return solve_field(ring, m, b);
    }
    let k = ring.h_trunc() as usize;
    let (field, big) = linearize(ring, m);
    let big_b: Vec<Elem> = b.iter().flat_map(|&v| ring.digits(v)).collect();
    match solve_field(&field, &big, &big_b) {
        Solve::Inconsistent => Solve::Inconsistent,
        Solve::Solution { x, nullspace } => {
            let pack = |v: &[Elem]| -> Vec<Elem> { v.chunks(k).map(|c| ring.from_digits(c)).collect() };
            Solve::Solution {
                x: pack(&x),
                nullspace: nullspace.iter().map(|v| pack(v)).collect(),
            }
        }
    }
}

/// Rank over a field; over `F_q[h]/(h^k)` the `F_q`-rank of the linearized map.
pub fn rank(ring: &BaseRing, m: &ExactMatrix) -> usize {
    if ring.is_field() {
        let mut a = m.clone();
        rref_in_place(ring, &mut a, None).len()
    } else {
        let (field, mut big) = linearize(ring, m);
        rref_in_place(&field, &mut big, None).len()
    }
}

pub fn nullspace(ring: &BaseRing, m: &ExactMatrix) -> Vec<Vec<Elem>> {
    match solve_linear(ring, m, &vec![0; m.rows]) {
        Solve::Solution { nullspace, .. } => nullspace,
        Solve::Inconsistent => unreachable!("homogeneous systems are consistent"),
    }
}

/// Inverse of a square matrix over a field.
pub fn invert(ring: &BaseRing, m: &ExactMatrix) -> Result<ExactMatrix> {
    if m.rows != m.cols {
        return Err(Error::invalid("only square matrices are invertible"));
    }
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        match solve_linear(ring, m, &e) {
            Solve::Solution { x, nullspace } if nullspace.is_empty() => cols.push(x),
            _ => return Err(Error::NotInvertible("singular matrix".into())),
        }
    }
    Ok(ExactMatrix::from_cols(&cols, n))
}

/// Incrementally maintained reduced echelon basis of a subspace of `F_q^n`.
#[derive(Debug, Clone)]
pub struct Echelon {
    ring: BaseRing,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ring: &BaseRing, dim: usize) -> Self {
        assert!(ring.is_field(), "echelon bases require a field");
        Echelon {
            ring: ring.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(ring: &BaseRing, dim: usize, vs: impl IntoIterator<Item = &'a Vec<Elem>>) -> Self {
        let mut e = Self::new(ring, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Remainder of `v` after reducing against the basis.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                let nc = r.neg(c);
                for (wj, &rj) in w.iter_mut().zip(row) {
                    if rj != 0 {
                        *wj = r.add(*wj, r.mul(nc, rj));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let r = self.ring.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = r.inv(w[p]).expect("field");
        for x in w.iter_mut() {
            *x = r.mul(inv, *x);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let nc = r.neg(c);
                for (xj, &wj) in row.iter_mut().zip(&w) {
                    if wj != 0 {
                        *xj = r.add(*xj, r.mul(nc, wj));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }
}
