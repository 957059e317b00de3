use crate::error::{Error, Result};
use crate::exactbase::{nullspace, solve_linear, Echelon, Elem, ExactMatrix, Solve};

use super::structure::{divided_power_structure, Structure};
use super::tensor::{split_index, TensorElement};

/// Largest `rows × cols` of a differential matrix built by [`cochain_cohomology`].
pub const MAX_MATRIX_ENTRIES: usize = 1 << 20;

/// `d(x) = 1⊗x + Σ_j (−1)^j Δ_j(x) + (−1)^{i+1} x⊗1` without the
/// normalization check.
pub fn cartier_d_unchecked(h: &Structure, x: &TensorElement) -> TensorElement {
    let i = x.arity();
    let one = h.element(h.unit());
    let mut out = one.tensor(x);
    for j in 0..i {
        let term = h.delta_leg(x, j);
        out = if j % 2 == 0 { out.sub(&term) } else { out.add(&term) };
    }
    let last = x.tensor(&one);
    if i % 2 == 1 {
        out.add(&last)
    } else {
        out.sub(&last)
    }
}

/// Cobar differential on normalized cochains.
pub fn cartier_d(h: &Structure, x: &TensorElement) -> Result<TensorElement> {
    for j in 0..x.arity() {
        if !h.counit_leg(x, j).is_zero() {
            return Err(Error::invalid(format!("cochain is not normalized: ε on leg {} is nonzero", j + 1)));
        }
    }
    Ok(cartier_d_unchecked(h, x))
}

/// Basis of `ker ε`, chosen by the deterministic pivot rule.
pub fn counit_kernel_basis(h: &Structure) -> Vec<Vec<Elem>> {
    let m = ExactMatrix::from_rows(&[h.counit().to_vec()]);
    nullspace(h.ring(), &m)
}

/// Basis `k_{a_1}⊗...⊗k_{a_i}` of normalized `i`-cochains.
pub fn normalized_cochain_basis(h: &Structure, i: usize) -> Vec<TensorElement> {
    let kb: Vec<TensorElement> = counit_kernel_basis(h).iter().map(|v| h.element(v)).collect();
    let m = kb.len();
    if i == 0 {
        return Vec::new();
    }
    (0..m.pow(i as u32))
        .map(|t| {
            let legs = split_index(m, i, t);
            let mut acc = kb[legs[0]].clone();
            for &l in &legs[1..] {
                acc = acc.tensor(&kb[l]);
            }
            acc
        })
        .collect()
}

/// Ranks of the normalized complex in degree `i`.
#[derive(Debug, Clone)]
pub struct CohomologyInfo {
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// Cocycles completing a basis of `B^i` to one of `Z^i`.
    pub representatives: Vec<TensorElement>,
}

fn differential_matrix(h: &Structure, basis: &[TensorElement], i: usize) -> Result<ExactMatrix> {
    let rows = h.dim().pow(i as u32 + 1);
    if rows.saturating_mul(basis.len()) > MAX_MATRIX_ENTRIES {
        return Err(Error::capacity(format!(
            "differential in degree {i} needs a {rows}x{} matrix",
            basis.len()
        )));
    }
    let cols: Vec<Vec<Elem>> = basis.iter().map(|b| cartier_d_unchecked(h, b).into_coeffs()).collect();
    Ok(ExactMatrix::from_cols(&cols, rows))
}

pub fn cochain_cohomology(h: &Structure, i: usize) -> Result<CohomologyInfo> {
    if !h.ring().is_field() {
        return Err(Error::invalid("cohomology ranks need a field"));
    }
    if i == 0 {
        return Err(Error::invalid("cohomology degree must be at least 1"));
    }
    let ring = h.ring();
    let basis = normalized_cochain_basis(h, i);
    let di = differential_matrix(h, &basis, i)?;
    let z: Vec<TensorElement> = nullspace(ring, &di)
        .iter()
        .map(|c| {
            c.iter()
                .zip(&basis)
                .filter(|(&a, _)| a != 0)
                .fold(h.zero(i), |acc, (&a, b)| acc.add(&b.scale(a)))
        })
        .collect();
    let mut ech = Echelon::new(ring, h.dim().pow(i as u32));
    if i > 1 {
        let prev = normalized_cochain_basis(h, i - 1);
        let dprev = differential_matrix(h, &prev, i - 1)?;
        for c in 0..dprev.cols() {
            ech.insert(&dprev.col(c));
        }
    }
    let dim_b = ech.rank();
    let mut representatives = Vec::new();
    for zv in &z {
        if ech.insert(zv.coeffs()) {
            representatives.push(zv.clone());
        }
    }
    Ok(CohomologyInfo {
        degree: i,
        dim_cocycles: z.len(),
        dim_coboundaries: dim_b,
        dim_cohomology: z.len() - dim_b,
        representatives,
    })
}

/// Solves `Σ c_k d(candidates[k]) = target`; `None` if `target` is outside the span.
pub fn solve_coboundary(h: &Structure, target: &TensorElement, candidates: &[TensorElement]) -> Option<Vec<Elem>> {
    let rows = target.coeffs().len();
    let cols: Vec<Vec<Elem>> = candidates.iter().map(|b| cartier_d_unchecked(h, b).into_coeffs()).collect();
    let m = ExactMatrix::from_cols(&cols, rows);
    match solve_linear(h.ring(), &m, target.coeffs()) {
        Solve::Solution { x, .. } => Some(x),
        Solve::Inconsistent => None,
    }
}

/// `D_r` together with `β = Σ_{l=1}^{2^r−1} y^(l) ⊗ y^(2^r−l)`.
pub fn beta_cocycle(r: u32) -> Result<(Structure, TensorElement)> {
    let h = divided_power_structure(r)?;
    let n = 1usize << r;
    let mut beta = h.zero(2);
    for l in 1..n {
        beta.set(&[l, n - l], 1);
    }
    Ok((h, beta))
}
