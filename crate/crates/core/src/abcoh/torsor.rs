use crate::error::{Error, Result};
use crate::exactbase::{nullspace, rank, BaseRing, Elem, ExactMatrix, FieldSpec};

use super::group::AbelianPGroup;
use super::units::{is_normalized_twist, GroupAlgebra};

/// Largest `q^s` enumerated when searching the split part for idempotents.
const MAX_SPLIT: u64 = 1 << 20;

/// Commutative algebra on `Fun(A, K)` given by structure constants.
struct TwistedDual {
    field: FieldSpec,
    n: usize,
    /// `table[u * n + v]` = coordinates of `δ_u ∗ δ_v`.
    table: Vec<Vec<Elem>>,
}

impl TwistedDual {
    /// `δ_u ∗ δ_v = Σ_a J(u − a, v − a) δ_a`, the dual of `Δ(a) J`.
    fn new(ga: &GroupAlgebra, j: &[Elem]) -> Self {
        let n = ga.size();
        let mut table = vec![vec![0; n]; n * n];
        for u in 0..n {
            for v in 0..n {
                for a in 0..n {
                    let na = ga.neg(a);
                    table[u * n + v][a] = j[ga.add(u, na) * n + ga.add(v, na)];
                }
            }
        }
        TwistedDual { field: ga.field().clone(), n, table }
    }

    fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (u, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (v, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &t) in out.iter_mut().zip(&self.table[u * self.n + v]) {
                    *o = f.add(*o, f.mul(ab, t));
                }
            }
        }
        out
    }

    fn pow(&self, x: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut acc = vec![1; self.n];
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn basis(&self, k: usize) -> Vec<Elem> {
        let mut v = vec![0; self.n];
        v[k] = 1;
        v
    }

    fn is_commutative(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.table[u * self.n + v] == self.table[v * self.n + u]))
    }
}

/// Degrees of the field factors of the dual of the `J`-twisted `K[A]`.
///
/// Sorted ascending; they sum to `|A|`.
pub fn torsor_decompose(a: &AbelianPGroup, field: &FieldSpec, j: &[Elem]) -> Result<Vec<u32>> {
    if !is_normalized_twist(a, field, j)? {
        return Err(Error::invalid("J is not a counit-normalized twist of K[A]"));
    }
    let ga = GroupAlgebra::new(a, field)?;
    let alg = TwistedDual::new(&ga, j);
    if !alg.is_commutative() {
        return Err(Error::Internal("twisted dual algebra is not commutative".into()));
    }
    let n = alg.n;
    let ring = BaseRing::field_ring(field.clone());
    let q = field.q() as u64;
    // Fixed points of z ↦ z^q form the split subalgebra K^s.
    let mut m = ExactMatrix::zeros(n, n);
    for k in 0..n {
        let img = alg.pow(&alg.basis(k), q);
        for r in 0..n {
            let v = if r == k { field.sub(img[r], 1) } else { img[r] };
            m.set(r, k, v);
        }
    }
    let fixed = nullspace(&ring, &m);
    let s = fixed.len() as u32;
    let count = q
        .checked_pow(s)
        .filter(|&c| c <= MAX_SPLIT)
        .ok_or_else(|| Error::capacity(format!("split subalgebra of size {q}^{s} is too large")))?;
    let mut idempotents = Vec::new();
    for code in 1..count {
        let mut c = code;
        let mut z = vec![0; n];
        for b in &fixed {
            let coef = (c % q) as Elem;
            c /= q;
            for (zi, &bi) in z.iter_mut().zip(b) {
                *zi = field.add(*zi, field.mul(coef, bi));
            }
        }
        if alg.mul(&z, &z) == z {
            idempotents.push(z);
        }
    }
    let primitive: Vec<&Vec<Elem>> = idempotents
        .iter()
        .filter(|e| !idempotents.iter().any(|f| f != *e && alg.mul(f, e) == *f))
        .collect();
    let mut degrees: Vec<u32> = primitive
        .iter()
        .map(|e| {
            let cols: Vec<Vec<Elem>> = (0..n).map(|k| alg.mul(e, &alg.basis(k))).collect();
            rank(&ring, &ExactMatrix::from_cols(&cols, n)) as u32
        })
        .collect();
    degrees.sort_unstable();
    if degrees.iter().sum::<u32>() as usize != n {
        return Err(Error::Internal(format!("torsor degrees {degrees:?} do not sum to {n}")));
    }
    Ok(degrees)
}
