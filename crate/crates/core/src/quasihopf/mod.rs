//! Finite-dimensional quasi-Hopf data `(H, Δ, ε, Φ, R)`: named examples,
//! axiom residuals, the radical filtration, and the (pseudo)twist action.

mod axioms;
mod radical;
mod twist;

use crate::error::{Error, Result};
use crate::exactbase::{BaseRing, Elem, FieldSpec};
use crate::tensorops::{divided_power_structure, Structure, TensorElement};

pub use axioms::{check_axioms, AxiomCheck, AxiomReport};
pub use radical::{jacobson_radical, RadicalFiltration};
pub use twist::{apply_twist, coboundary_twist, primitives, random_pseudotwist, TwistKind};

/// Quasi-Hopf datum with unit constraints.
///
/// `unit_left = λ` and `unit_right = ρ` record how far a pseudotwisted datum is
/// from counit-normalized: `(ε⊗id)Δ(h) = λhλ⁻¹`, `(id⊗ε)Δ(h) = ρhρ⁻¹`,
/// `(id⊗ε⊗id)Φ = ρ⁻¹⊗λ`, `(ε⊗id)R = ρλ⁻¹`, `(id⊗ε)R = λρ⁻¹`. Both are `1`
/// for a genuine quasi-Hopf algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHopfDatum {
    structure: Structure,
    phi: TensorElement,
    r: TensorElement,
    unit_left: TensorElement,
    unit_right: TensorElement,
}

impl QuasiHopfDatum {
    /// Checks shapes and the unit laws; the remaining axioms are reported by
    /// [`check_axioms`].
    pub fn new(
        structure: Structure,
        phi: TensorElement,
        r: TensorElement,
        unit_left: TensorElement,
        unit_right: TensorElement,
    ) -> Result<Self> {
        let d = structure.dim();
        for (name, t, arity) in [("phi", &phi, 3), ("r", &r, 2), ("unit_left", &unit_left, 1), ("unit_right", &unit_right, 1)] {
            if t.dim() != d || t.arity() != arity || t.ring() != structure.ring() {
                return Err(Error::invalid(format!("{name} must be a {arity}-tensor over the datum's ring and basis")));
            }
        }
        let one = structure.one(1);
        for a in 0..d {
            let e = structure.basis_vector(a);
            if structure.mul(&one, &e) != e || structure.mul(&e, &one) != e {
                return Err(Error::invalid(format!("unit law fails for basis element {}", structure.names()[a])));
            }
        }
        Ok(QuasiHopfDatum { structure, phi, r, unit_left, unit_right })
    }

    /// Datum with `Φ = 1`, trivial unit constraints and the given `R`.
    pub fn hopf(structure: Structure, r: TensorElement) -> Result<Self> {
        let phi = structure.one(3);
        let one = structure.one(1);
        Self::new(structure, phi, r, one.clone(), one)
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn ring(&self) -> &BaseRing {
        self.structure.ring()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn names(&self) -> &[String] {
        self.structure.names()
    }

    pub fn phi(&self) -> &TensorElement {
        &self.phi
    }

    pub fn r(&self) -> &TensorElement {
        &self.r
    }

    pub fn unit_left(&self) -> &TensorElement {
        &self.unit_left
    }

    pub fn unit_right(&self) -> &TensorElement {
        &self.unit_right
    }

    pub fn with_r(&self, r: TensorElement) -> Result<Self> {
        Self::new(self.structure.clone(), self.phi.clone(), r, self.unit_left.clone(), self.unit_right.clone())
    }

    /// `Δ(x)` for an element given by coordinates.
    pub fn delta(&self, x: &TensorElement) -> TensorElement {
        self.structure.delta(x)
    }

    pub fn mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        self.structure.mul(x, y)
    }

    pub fn one(&self, arity: usize) -> TensorElement {
        self.structure.one(arity)
    }

    pub fn basis_vector(&self, i: usize) -> TensorElement {
        self.structure.basis_vector(i)
    }

    /// Whether `Φ = 1` and `λ = ρ = 1`.
    pub fn is_hopf(&self) -> bool {
        self.phi == self.one(3) && self.unit_left == self.one(1) && self.unit_right == self.one(1)
    }

    pub fn format(&self, x: &TensorElement) -> String {
        x.format_with(self.names())
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `F_2[d]/(d²)` with `d` primitive.
fn alpha2_structure() -> Structure {
    let r = BaseRing::f2();
    Structure::new(
        &r,
        names(&["1", "d"]),
        vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]],
        vec![1, 0],
        vec![1, 0],
        vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]],
    )
    .expect("alpha2 tables")
}

fn group_elements(orders: &[u64]) -> Result<(usize, Vec<Vec<u64>>)> {
    if orders.contains(&0) {
        return Err(Error::invalid("cyclic orders must be positive"));
    }
    let n: u64 = orders.iter().product();
    if n > 64 {
        return Err(Error::capacity(format!("group of order {n} is too large")));
    }
    let elems = (0..n)
        .map(|mut i| {
            let mut d = vec![0; orders.len()];
            for (k, &o) in orders.iter().enumerate().rev() {
                d[k] = i % o;
                i /= o;
            }
            d
        })
        .collect();
    Ok((n as usize, elems))
}

fn group_index(orders: &[u64], digits: &[u64]) -> usize {
    digits.iter().zip(orders).fold(0, |acc, (&x, &o)| acc * o as usize + (x % o) as usize)
}

fn group_names(orders: &[u64], elems: &[Vec<u64>]) -> Vec<String> {
    elems
        .iter()
        .map(|g| {
            let parts: Vec<String> = g
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    let base = if orders.len() == 1 { "g".to_string() } else { format!("g{}", k + 1) };
                    if e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("")
            }
        })
        .collect()
}

fn add_digits(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).zip(orders).map(|((&x, &y), &o)| (x + y) % o).collect()
}

/// `K[A]` for `A = ⊕ Z/orders[i]`, group-like basis, `R = 1`.
pub fn group_algebra(orders: &[u64], field: &FieldSpec) -> Result<QuasiHopfDatum> {
    let (n, elems) = group_elements(orders)?;
    let ring = BaseRing::field_ring(field.clone());
    let mut mul = vec![vec![0; n]; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b][group_index(orders, &add_digits(orders, &elems[a], &elems[b]))] = 1;
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let delta = (0..n)
        .map(|a| {
            let mut v = vec![0; n * n];
            v[a * n + a] = 1;
            v
        })
        .collect();
    let s = Structure::new(&ring, group_names(orders, &elems), mul, unit, vec![1; n], delta)?;
    let r = s.one(2);
    QuasiHopfDatum::hopf(s, r)
}

/// `Fun(A, K)` with basis of point indicators `δ_a`, `R = 1`.
pub fn function_algebra(orders: &[u64], field: &FieldSpec) -> Result<QuasiHopfDatum> {
    let (n, elems) = group_elements(orders)?;
    let ring = BaseRing::field_ring(field.clone());
    let mut mul = vec![vec![0; n]; n * n];
    for a in 0..n {
        mul[a * n + a][a] = 1;
    }
    let mut delta = vec![vec![0; n * n]; n];
    for b in 0..n {
        for c in 0..n {
            let a = group_index(orders, &add_digits(orders, &elems[b], &elems[c]));
            delta[a][b * n + c] = 1;
        }
    }
    let mut counit = vec![0; n];
    counit[0] = 1;
    let names = group_names(orders, &elems).into_iter().map(|g| format!("δ[{g}]")).collect();
    let s = Structure::new(&ring, names, mul, vec![1; n], counit, delta)?;
    let r = s.one(2);
    QuasiHopfDatum::hopf(s, r)
}

/// `kα₂ = F_2[d]/(d²)`, `d` primitive, `R = 1`.
pub fn alpha2() -> QuasiHopfDatum {
    let s = alpha2_structure();
    let r = s.one(2);
    QuasiHopfDatum::hopf(s, r).expect("alpha2")
}

/// `F_2[d]/(d²)`, `d` primitive, `R = 1 + d⊗d`.
pub fn category_d() -> QuasiHopfDatum {
    let s = alpha2_structure();
    let dd = TensorElement::basis(s.ring(), 2, &[1, 1]);
    let r = s.one(2).add(&dd);
    QuasiHopfDatum::hopf(s, r).expect("category D")
}

/// Divided-power Hopf algebra `D_r`, `R = 1`.
pub fn divided_power(r: u32) -> Result<QuasiHopfDatum> {
    let s = divided_power_structure(r)?;
    let rm = s.one(2);
    QuasiHopfDatum::hopf(s, rm)
}

/// `F_2[a,b]/(a², b²)` with `a, b` primitive and `R = 1 + a⊗a`; basis `1, a, b, ab`.
pub fn alpha2_squared() -> QuasiHopfDatum {
    let ring = BaseRing::f2();
    // monomials a^i b^j indexed by i + 2j
    let mut mul = vec![vec![0; 4]; 16];
    for x in 0..4usize {
        for y in 0..4usize {
            if x & y == 0 {
                mul[x * 4 + y][x | y] = 1;
            }
        }
    }
    let mut delta = vec![vec![0; 16]; 4];
    for x in 0..4usize {
        // Δ(a^i b^j) = Σ over splittings of the set of generators
        for s in 0..4usize {
            if s & !x == 0 {
                delta[x][s * 4 + (x & !s)] = 1;
            }
        }
    }
    let s = Structure::new(&ring, names(&["1", "a", "b", "ab"]), mul, vec![1, 0, 0, 0], vec![1, 0, 0, 0], delta)
        .expect("alpha2 squared tables");
    let r = s.one(2).add(&TensorElement::basis(&ring, 4, &[1, 1]));
    QuasiHopfDatum::hopf(s, r).expect("alpha2 squared")
}

/// First-order deformation of `𝒟` over `F_2[h]/(h^k)`: `Δ(d) = d⊗1 + 1⊗d + h d⊗d`,
/// `Φ = 1 + h d⊗d⊗d`, `R = 1 + d⊗d`.
pub fn deformed_d(h_trunc: u32) -> Result<QuasiHopfDatum> {
    if h_trunc < 2 {
        return Err(Error::invalid("deformed D needs h_trunc ≥ 2"));
    }
    let ring = BaseRing::new(FieldSpec::prime(2)?, h_trunc)?;
    let h: Elem = ring.h();
    let s = Structure::new(
        &ring,
        names(&["1", "d"]),
        vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]],
        vec![1, 0],
        vec![1, 0],
        vec![vec![1, 0, 0, 0], vec![0, 1, 1, h]],
    )?;
    let phi = s.one(3).add(&TensorElement::basis(&ring, 2, &[1, 1, 1]).scale(h));
    let r = s.one(2).add(&TensorElement::basis(&ring, 2, &[1, 1]));
    let one = s.one(1);
    QuasiHopfDatum::new(s, phi, r, one.clone(), one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_shapes() {
        let d = category_d();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.format(d.r()), "1⊗1 + d⊗d");
        assert_eq!(d.format(&d.delta(&d.basis_vector(1))), "1⊗d + d⊗1");
        assert_eq!(alpha2().format(alpha2().r()), "1⊗1");
        let g = group_algebra(&[2, 2], &FieldSpec::prime(2).unwrap()).unwrap();
        assert_eq!(g.names(), ["1", "g2", "g1", "g1g2"]);
        assert!(deformed_d(1).is_err());
        assert_eq!(alpha2_squared().format(&alpha2_squared().delta(&alpha2_squared().basis_vector(3))), "1⊗ab + a⊗b + b⊗a + ab⊗1");
    }
}
