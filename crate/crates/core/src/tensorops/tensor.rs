use std::fmt;

use crate::error::{Error, Result};
use crate::exactbase::{BaseRing, Elem, ExactMatrix};

/// Element of `V^{⊗arity}` for `dim V = dim`, stored densely.
///
/// Row-major with leg 1 slowest: the coefficient of `e_{t_1}⊗...⊗e_{t_k}` sits
/// at `t_1 d^{k-1} + ... + t_k`. Shape mismatches between operands are caller
/// bugs and panic.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    ring: BaseRing,
    dim: usize,
    arity: usize,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("e{i}")).collect();
        write!(f, "{}", self.format_with(&names))
    }
}

/// Leg indices of a flat position.
pub fn split_index(dim: usize, arity: usize, mut t: usize) -> Vec<usize> {
    let mut legs = vec![0; arity];
    for l in legs.iter_mut().rev() {
        *l = t % dim;
        t /= dim;
    }
    legs
}

pub fn join_index(dim: usize, legs: &[usize]) -> usize {
    legs.iter().fold(0, |acc, &l| acc * dim + l)
}

fn check_permutation(sigma: &[usize], arity: usize) -> Result<()> {
    if sigma.len() != arity {
        return Err(Error::invalid(format!(
            "permutation of length {} applied to a tensor of arity {arity}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; arity];
    for &s in sigma {
        if s >= arity || seen[s] {
            return Err(Error::invalid(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Parses one-based digit notation such as `"312"` into a zero-based permutation.
pub fn parse_permutation(s: &str) -> Result<Vec<usize>> {
    let sigma: Vec<usize> = s
        .chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|&d| d >= 1)
                .map(|d| d as usize - 1)
                .ok_or_else(|| Error::invalid(format!("bad permutation {s:?}")))
        })
        .collect::<Result<_>>()?;
    check_permutation(&sigma, sigma.len())?;
    Ok(sigma)
}

impl TensorElement {
    pub fn zeros(ring: &BaseRing, dim: usize, arity: usize) -> Self {
        TensorElement {
            ring: ring.clone(),
            dim,
            arity,
            coeffs: vec![0; dim.pow(arity as u32)],
        }
    }

    pub fn from_coeffs(ring: &BaseRing, dim: usize, arity: usize, coeffs: Vec<Elem>) -> Result<Self> {
        let expect = dim.pow(arity as u32);
        if coeffs.len() != expect {
            return Err(Error::invalid(format!(
                "tensor of arity {arity} over dimension {dim} needs {expect} coefficients, got {}",
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= ring.size()) {
            return Err(Error::invalid(format!("coefficient {c} is not a ring element")));
        }
        Ok(TensorElement { ring: ring.clone(), dim, arity, coeffs })
    }

    /// `e_{legs[0]} ⊗ ... ⊗ e_{legs[k-1]}`.
    pub fn basis(ring: &BaseRing, dim: usize, legs: &[usize]) -> Self {
        let mut t = Self::zeros(ring, dim, legs.len());
        t.coeffs[join_index(dim, legs)] = 1;
        t
    }

    /// Arity-1 tensor with the given coordinates.
    pub fn vector(ring: &BaseRing, v: &[Elem]) -> Self {
        TensorElement { ring: ring.clone(), dim: v.len(), arity: 1, coeffs: v.to_vec() }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn get(&self, legs: &[usize]) -> Elem {
        self.coeffs[join_index(self.dim, legs)]
    }

    pub fn set(&mut self, legs: &[usize], c: Elem) {
        let i = join_index(self.dim, legs);
        self.coeffs[i] = c;
    }

    pub fn add_at(&mut self, idx: usize, c: Elem) {
        self.coeffs[idx] = self.ring.add(self.coeffs[idx], c);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero entries as `(flat index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.dim == other.dim && self.arity == other.arity && self.ring == other.ring,
            "tensor shape mismatch: ({}, {}) vs ({}, {})",
            self.dim,
            self.arity,
            other.dim,
            other.arity
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| r.add(a, b)).collect();
        TensorElement { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| r.sub(a, b)).collect();
        TensorElement { coeffs, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        TensorElement { coeffs: self.coeffs.iter().map(|&a| r.neg(a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: Elem) -> Self {
        let r = &self.ring;
        TensorElement { coeffs: self.coeffs.iter().map(|&a| r.mul(c, a)).collect(), ..self.clone() }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert!(self.dim == other.dim && self.ring == other.ring, "tensor factor mismatch");
        let r = &self.ring;
        let n = other.coeffs.len();
        let mut out = Self::zeros(&self.ring, self.dim, self.arity + other.arity);
        for (i, a) in self.support() {
            for (j, b) in other.support() {
                out.coeffs[i * n + j] = r.mul(a, b);
            }
        }
        out
    }

    /// Slot `j` of the result receives leg `sigma[j]` of `self` (zero-based).
    pub fn permute_legs(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.arity)?;
        let mut out = Self::zeros(&self.ring, self.dim, self.arity);
        let mut src = vec![0; self.arity];
        for (t, c) in self.support() {
            let legs = split_index(self.dim, self.arity, t);
            for (j, &s) in sigma.iter().enumerate() {
                src[j] = legs[s];
            }
            out.coeffs[join_index(self.dim, &src)] = c;
        }
        Ok(out)
    }

    /// Leg `j` of `self` moves to slot `tau[j]`; the inverse convention of
    /// [`permute_legs`](Self::permute_legs).
    pub fn place_legs(&self, tau: &[usize]) -> Result<Self> {
        check_permutation(tau, self.arity)?;
        let mut inv = vec![0; tau.len()];
        for (j, &t) in tau.iter().enumerate() {
            inv[t] = j;
        }
        self.permute_legs(&inv)
    }

    /// `τ(x)` for a 2-tensor.
    pub fn flip(&self) -> Self {
        self.permute_legs(&[1, 0]).expect("flip needs arity 2")
    }

    /// Applies the same linear map (columns = images of basis vectors) on every leg.
    pub fn map_each_leg(&self, m: &ExactMatrix) -> Self {
        assert_eq!(m.cols(), self.dim, "leg map has wrong source dimension");
        let r = &self.ring;
        let new_dim = m.rows();
        let mut cur = self.coeffs.clone();
        // leg k: [outer][d][inner] -> [outer][new_dim][inner]
        for k in 0..self.arity {
            let outer = new_dim.pow(k as u32);
            let inner = self.dim.pow((self.arity - k - 1) as u32);
            let mut next = vec![0; outer * new_dim * inner];
            for o in 0..outer {
                for a in 0..self.dim {
                    for i in 0..inner {
                        let c = cur[(o * self.dim + a) * inner + i];
                        if c == 0 {
                            continue;
                        }
                        for b in 0..new_dim {
                            let mba = m.get(b, a);
                            if mba != 0 {
                                let idx = (o * new_dim + b) * inner + i;
                                next[idx] = r.add(next[idx], r.mul(mba, c));
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        TensorElement { ring: self.ring.clone(), dim: new_dim, arity: self.arity, coeffs: cur }
    }

    /// `Σ_{σ ∈ S_3} x_σ`, unsigned.
    pub fn alt3(&self) -> Self {
        assert_eq!(self.arity, 3, "alt3 needs arity 3");
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        PERMS
            .iter()
            .map(|p| self.permute_legs(p).expect("valid"))
            .fold(Self::zeros(&self.ring, self.dim, 3), |acc, t| acc.add(&t))
    }

    /// Sum over the cyclic permutations of three legs.
    pub fn cyc3(&self) -> Self {
        assert_eq!(self.arity, 3, "cyc3 needs arity 3");
        const PERMS: [[usize; 3]; 3] = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
        PERMS
            .iter()
            .map(|p| self.permute_legs(p).expect("valid"))
            .fold(Self::zeros(&self.ring, self.dim, 3), |acc, t| acc.add(&t))
    }

    /// Human-readable sum of basis tensors, e.g. `1⊗1 + d⊗d`.
    pub fn format_with(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .support()
            .map(|(t, c)| {
                let legs = split_index(self.dim, self.arity, t);
                let mono = if self.arity == 0 {
                    "1".to_string()
                } else {
                    legs.iter().map(|&l| names[l].as_str()).collect::<Vec<_>>().join("⊗")
                };
                if c == 1 {
                    mono
                } else {
                    format!("({})·{mono}", self.ring.format_elem(c))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> BaseRing {
        BaseRing::f2()
    }

    #[test]
    fn permutation_convention() {
        let r = f2();
        let abc = TensorElement::basis(&r, 3, &[0, 1, 2]);
        let sigma = parse_permutation("312").unwrap();
        assert_eq!(abc.permute_legs(&sigma).unwrap(), TensorElement::basis(&r, 3, &[2, 0, 1]));
        assert_eq!(abc.place_legs(&parse_permutation("231").unwrap()).unwrap(), abc.permute_legs(&sigma).unwrap());
        let ab = TensorElement::basis(&r, 2, &[0, 1]);
        assert_eq!(ab.flip(), TensorElement::basis(&r, 2, &[1, 0]));
        assert!(abc.permute_legs(&[0, 0, 1]).is_err());
        assert!(abc.permute_legs(&[0, 1]).is_err());
    }

    #[test]
    fn alt_and_cyc() {
        let r = f2();
        let aaa = TensorElement::basis(&r, 2, &[0, 0, 0]);
        assert!(aaa.alt3().is_zero());
        let abc = TensorElement::basis(&r, 3, &[0, 1, 2]);
        let expect = abc
            .add(&TensorElement::basis(&r, 3, &[2, 0, 1]))
            .add(&TensorElement::basis(&r, 3, &[1, 2, 0]));
        assert_eq!(abc.cyc3(), expect);
        let swapped = abc.cyc3().permute_legs(&[1, 0, 2]).unwrap();
        assert_eq!(abc.alt3(), abc.cyc3().add(&swapped));
    }

    #[test]
    fn leg_map_matches_tensor_of_images() {
        let r = BaseRing::field_ring(crate::exactbase::FieldSpec::prime(3).unwrap());
        let m = ExactMatrix::from_rows(&[vec![1, 2], vec![0, 1], vec![2, 2]]);
        let x = TensorElement::basis(&r, 2, &[0, 1]).add(&TensorElement::basis(&r, 2, &[1, 1]).scale(2));
        let img = |i: usize| TensorElement::vector(&r, &m.col(i));
        let expect = img(0).tensor(&img(1)).add(&img(1).tensor(&img(1)).scale(2));
        assert_eq!(x.map_each_leg(&m), expect);
    }

    #[test]
    fn formatting() {
        let r = f2();
        let names = vec!["1".to_string(), "d".to_string()];
        let x = TensorElement::basis(&r, 2, &[0, 0]).add(&TensorElement::basis(&r, 2, &[1, 1]));
        assert_eq!(x.format_with(&names), "1⊗1 + d⊗d");
    }
}
