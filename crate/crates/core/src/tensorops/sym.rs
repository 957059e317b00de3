use crate::error::{Error, Result};
use crate::exactbase::{BaseRing, Elem};

use super::tensor::TensorElement;

/// `∧²V ⊆ Γ²V ⊆ V⊗V` in characteristic 2 and the quotient map `π` to `V^(1)`.
///
/// `V^(1)` is given the basis `π(e_i⊗e_i)`, so `π(x)` has coordinates `x_{ii}`.
#[derive(Debug, Clone)]
pub struct SymDecomposition {
    ring: BaseRing,
    dim: usize,
    wedge: Vec<TensorElement>,
    gamma: Vec<TensorElement>,
}

impl SymDecomposition {
    pub fn new(ring: &BaseRing, dim: usize) -> Result<Self> {
        if ring.characteristic() != 2 || !ring.is_field() {
            return Err(Error::invalid("the Frobenius twist decomposition needs a field of characteristic 2"));
        }
        let mut wedge = Vec::new();
        let mut gamma = Vec::new();
        for i in 0..dim {
            gamma.push(TensorElement::basis(ring, dim, &[i, i]));
            for j in i + 1..dim {
                let t = TensorElement::basis(ring, dim, &[i, j]).add(&TensorElement::basis(ring, dim, &[j, i]));
                wedge.push(t.clone());
                gamma.push(t);
            }
        }
        Ok(SymDecomposition { ring: ring.clone(), dim, wedge, gamma })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis of `Im(id+τ)`.
    pub fn wedge_basis(&self) -> &[TensorElement] {
        &self.wedge
    }

    /// Basis of `Ker(id+τ)`.
    pub fn gamma_basis(&self) -> &[TensorElement] {
        &self.gamma
    }

    /// `dim V^(1)`.
    pub fn twist_dim(&self) -> usize {
        self.gamma.len() - self.wedge.len()
    }

    /// `π(x)` for `x ∈ Γ²V`; otherwise the error carries `(id+τ)(x)`.
    pub fn pi_apply(&self, x: &TensorElement) -> Result<Vec<Elem>> {
        let residual = symmetry_residual(x)?;
        if !residual.is_zero() {
            return Err(Error::invalid(format!("tensor is not in Γ²: (id+τ)(x) = {residual:?}")));
        }
        Ok((0..self.dim).map(|i| x.get(&[i, i])).collect())
    }

    /// The vector `v` with `π(v⊗v) = w`: coordinatewise square roots.
    pub fn untwist(&self, w: &[Elem]) -> Vec<Elem> {
        let f = self.ring.field();
        w.iter().map(|&c| f.frobenius_inv(c)).collect()
    }

    /// `Ψ = π ⊗ id` on a 3-tensor symmetric in its first two legs; the result
    /// is a 2-tensor over `V^(1) ⊗ V`.
    pub fn psi_apply(&self, x: &TensorElement) -> Result<TensorElement> {
        if x.arity() != 3 {
            return Err(Error::invalid("Ψ needs a 3-tensor"));
        }
        let sw = x.permute_legs(&[1, 0, 2])?;
        if sw != *x {
            return Err(Error::invalid(format!(
                "first two legs are not symmetric: residual {:?}",
                x.add(&sw)
            )));
        }
        let mut out = TensorElement::zeros(&self.ring, self.dim, 2);
        for i in 0..self.dim {
            for k in 0..self.dim {
                out.set(&[i, k], x.get(&[i, i, k]));
            }
        }
        Ok(out)
    }

    /// Strictly upper-triangular part `u` of `x`, so that `x = u + τ(u)` when
    /// `x ∈ ∧²V`.
    pub fn upper_part(&self, x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zeros(&self.ring, self.dim, 2);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.set(&[i, j], x.get(&[i, j]));
            }
        }
        out
    }
}

/// `(id+τ)(x)` for a 2-tensor.
pub fn symmetry_residual(x: &TensorElement) -> Result<TensorElement> {
    if x.arity() != 2 {
        return Err(Error::invalid(format!("expected a 2-tensor, got arity {}", x.arity())));
    }
    Ok(x.add(&x.flip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactbase::{rank, ExactMatrix, FieldSpec};

    fn e(r: &BaseRing, d: usize, legs: &[usize]) -> TensorElement {
        TensorElement::basis(r, d, legs)
    }

    #[test]
    fn dimensions() {
        let r = BaseRing::f2();
        let sd = SymDecomposition::new(&r, 2).unwrap();
        assert_eq!((sd.wedge_basis().len(), sd.gamma_basis().len(), sd.twist_dim()), (1, 3, 2));
        for n in 1..5 {
            let sd = SymDecomposition::new(&r, n).unwrap();
            assert_eq!(sd.wedge_basis().len(), n * (n - 1) / 2);
            assert_eq!(sd.gamma_basis().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn id_plus_tau_squares_to_zero() {
        let r = BaseRing::f2();
        for n in 1..5 {
            let cols: Vec<Vec<Elem>> = (0..n * n)
                .map(|t| symmetry_residual(&e(&r, n, &[t / n, t % n])).unwrap().into_coeffs())
                .collect();
            let m = ExactMatrix::from_cols(&cols, n * n);
            let m2 = m.mul(&r, &m);
            assert!((0..n * n).all(|i| m2.row(i).iter().all(|&c| c == 0)));
            // dim Ker − dim Im = n
            let rk = rank(&r, &m);
            assert_eq!((n * n - rk) - rk, n);
        }
    }

    #[test]
    fn pi_examples() {
        let r = BaseRing::f2();
        let sd = SymDecomposition::new(&r, 2).unwrap();
        let w = e(&r, 2, &[0, 1]).add(&e(&r, 2, &[1, 0]));
        assert_eq!(sd.pi_apply(&w).unwrap(), vec![0, 0]);
        let x = w.add(&e(&r, 2, &[0, 0]));
        assert_eq!(sd.pi_apply(&x).unwrap(), vec![1, 0]);
        assert!(sd.pi_apply(&e(&r, 2, &[0, 1])).is_err());
    }

    #[test]
    fn pi_is_semilinear() {
        let f = FieldSpec::with_order(4).unwrap();
        let r = BaseRing::field_ring(f.clone());
        let sd = SymDecomposition::new(&r, 3).unwrap();
        let v = TensorElement::vector(&r, &[1, 2, 3]);
        for lam in 1..4 {
            let lv = v.scale(lam);
            let lhs = sd.pi_apply(&lv.tensor(&lv)).unwrap();
            let base = sd.pi_apply(&v.tensor(&v)).unwrap();
            let l2 = f.mul(lam, lam);
            assert_eq!(lhs, base.iter().map(|&c| f.mul(l2, c)).collect::<Vec<_>>());
            assert_eq!(sd.untwist(&base), v.coeffs());
        }
    }

    #[test]
    fn psi_examples() {
        let r = BaseRing::f2();
        let sd = SymDecomposition::new(&r, 2).unwrap();
        let v = TensorElement::vector(&r, &[1, 1]);
        let w = TensorElement::vector(&r, &[0, 1]);
        let x = v.tensor(&v).tensor(&w);
        let pv = TensorElement::vector(&r, &sd.pi_apply(&v.tensor(&v)).unwrap());
        assert_eq!(sd.psi_apply(&x).unwrap(), pv.tensor(&w));
        let t = e(&r, 2, &[0, 1]).add(&e(&r, 2, &[1, 0])).tensor(&w);
        assert!(sd.psi_apply(&t).unwrap().is_zero());
        assert!(sd.psi_apply(&e(&r, 2, &[0, 1, 1])).is_err());
    }
}
