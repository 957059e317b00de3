use crate::error::{Error, Result};
use crate::exactbase::{solve_linear, BaseRing, Elem, ExactMatrix, Solve};

use super::tensor::{join_index, split_index, TensorElement};

type Sparse = Vec<(usize, Elem)>;

fn sparse(v: &[Elem]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

/// Algebra and coalgebra structure constants on a basis `e_0..e_{d-1}`.
///
/// No axioms are checked here; see the quasi-Hopf checker.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    ring: BaseRing,
    names: Vec<String>,
    mul: Vec<Vec<Elem>>,
    unit: Vec<Elem>,
    counit: Vec<Elem>,
    delta: Vec<Vec<Elem>>,
    mul_sparse: Vec<Sparse>,
    delta_sparse: Vec<Sparse>,
}

impl Structure {
    /// `mul[a*d + b]` is `e_a e_b`; `delta[a]` is `Δ(e_a)` as a flat `d^2` vector.
    pub fn new(
        ring: &BaseRing,
        names: Vec<String>,
        mul: Vec<Vec<Elem>>,
        unit: Vec<Elem>,
        counit: Vec<Elem>,
        delta: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let d = names.len();
        if d == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if mul.len() != d * d || mul.iter().any(|v| v.len() != d) {
            return Err(Error::invalid(format!("mul must be {d}x{d} vectors of length {d}")));
        }
        if unit.len() != d || counit.len() != d {
            return Err(Error::invalid(format!("unit and counit must have length {d}")));
        }
        if delta.len() != d || delta.iter().any(|v| v.len() != d * d) {
            return Err(Error::invalid(format!("delta must be {d} vectors of length {}", d * d)));
        }
        let all = mul.iter().flatten().chain(&unit).chain(&counit).chain(delta.iter().flatten());
        if let Some(&c) = all.into_iter().find(|&&c| c as u64 >= ring.size()) {
            return Err(Error::invalid(format!("coefficient {c} is not a ring element")));
        }
        let mul_sparse = mul.iter().map(|v| sparse(v)).collect();
        let delta_sparse = delta.iter().map(|v| sparse(v)).collect();
        Ok(Structure { ring: ring.clone(), names, mul, unit, counit, delta, mul_sparse, delta_sparse })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul_table(&self) -> &[Vec<Elem>] {
        &self.mul
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn counit(&self) -> &[Elem] {
        &self.counit
    }

    pub fn delta_table(&self) -> &[Vec<Elem>] {
        &self.delta
    }

    /// Same structure with a different comultiplication.
    pub fn with_delta(&self, delta: Vec<Vec<Elem>>) -> Result<Self> {
        Self::new(&self.ring, self.names.clone(), self.mul.clone(), self.unit.clone(), self.counit.clone(), delta)
    }

    pub fn zero(&self, arity: usize) -> TensorElement {
        TensorElement::zeros(&self.ring, self.dim(), arity)
    }

    /// `1^{⊗arity}`.
    pub fn one(&self, arity: usize) -> TensorElement {
        let u = TensorElement::vector(&self.ring, &self.unit);
        let mut out = TensorElement::from_coeffs(&self.ring, self.dim(), 0, vec![1]).expect("scalar");
        for _ in 0..arity {
            out = out.tensor(&u);
        }
        out
    }

    pub fn element(&self, v: &[Elem]) -> TensorElement {
        assert_eq!(v.len(), self.dim());
        TensorElement::vector(&self.ring, v)
    }

    pub fn basis_vector(&self, i: usize) -> TensorElement {
        TensorElement::basis(&self.ring, self.dim(), &[i])
    }

    fn check(&self, x: &TensorElement) {
        assert!(x.dim() == self.dim() && x.ring() == &self.ring, "tensor does not belong to this structure");
    }

    /// Product in `H^{⊗k}`, legwise.
    pub fn mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        self.check(x);
        self.check(y);
        assert_eq!(x.arity(), y.arity(), "arity mismatch in product");
        let d = self.dim();
        let k = x.arity();
        let r = &self.ring;
        let mut out = self.zero(k);
        let ys: Vec<(Vec<usize>, Elem)> = y.support().map(|(t, c)| (split_index(d, k, t), c)).collect();
        let mut stack: Vec<(usize, usize, Elem)> = Vec::new();
        for (s, a) in x.support() {
            let ls = split_index(d, k, s);
            for (lt, b) in &ys {
                stack.clear();
                stack.push((0, 0, r.mul(a, *b)));
                while let Some((leg, idx, c)) = stack.pop() {
                    if leg == k {
                        out.add_at(idx, c);
                        continue;
                    }
                    for &(e, m) in &self.mul_sparse[ls[leg] * d + lt[leg]] {
                        let cm = r.mul(c, m);
                        if cm != 0 {
                            stack.push((leg + 1, idx * d + e, cm));
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of `z ↦ x·z` on `H^{⊗k}`.
    pub fn left_mul_matrix(&self, x: &TensorElement) -> ExactMatrix {
        let n = x.coeffs().len();
        let cols: Vec<Vec<Elem>> = (0..n)
            .map(|t| {
                let e = TensorElement::basis(&self.ring, self.dim(), &split_index(self.dim(), x.arity(), t));
                self.mul(x, &e).into_coeffs()
            })
            .collect();
        ExactMatrix::from_cols(&cols, n)
    }

    /// Two-sided inverse in `H^{⊗k}`.
    ///
    /// Uses the geometric series when `1 − x` is nilpotent, otherwise a linear solve.
    pub fn inverse(&self, x: &TensorElement) -> Result<TensorElement> {
        let k = x.arity();
        let one = self.one(k);
        let u = one.sub(x);
        let mut acc = one.clone();
        let mut term = one.clone();
        for _ in 0..64 {
            term = self.mul(&term, &u);
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term);
        }
        let m = self.left_mul_matrix(x);
        match solve_linear(&self.ring, &m, one.coeffs()) {
            Solve::Solution { x: z, .. } => {
                let z = TensorElement::from_coeffs(&self.ring, self.dim(), k, z)?;
                if self.mul(&z, x) != one {
                    return Err(Error::NotInvertible("element has only a one-sided inverse".into()));
                }
                Ok(z)
            }
            Solve::Inconsistent => Err(Error::NotInvertible("tensor is not invertible".into())),
        }
    }

    /// `Δ` applied to leg `j` (zero-based); arity grows by one.
    pub fn delta_leg(&self, x: &TensorElement, j: usize) -> TensorElement {
        self.check(x);
        let (d, k) = (self.dim(), x.arity());
        assert!(j < k, "leg {j} out of range for arity {k}");
        let r = &self.ring;
        let mut out = self.zero(k + 1);
        for (t, c) in x.support() {
            let legs = split_index(d, k, t);
            for &(pair, m) in &self.delta_sparse[legs[j]] {
                let mut new = Vec::with_capacity(k + 1);
                new.extend_from_slice(&legs[..j]);
                new.push(pair / d);
                new.push(pair % d);
                new.extend_from_slice(&legs[j + 1..]);
                out.add_at(join_index(d, &new), r.mul(c, m));
            }
        }
        out
    }

    /// `ε` applied to leg `j`; arity drops by one.
    pub fn counit_leg(&self, x: &TensorElement, j: usize) -> TensorElement {
        self.check(x);
        let (d, k) = (self.dim(), x.arity());
        assert!(j < k, "leg {j} out of range for arity {k}");
        let r = &self.ring;
        let mut out = TensorElement::zeros(&self.ring, d, k - 1);
        for (t, c) in x.support() {
            let legs = split_index(d, k, t);
            let e = self.counit[legs[j]];
            if e == 0 {
                continue;
            }
            let mut new = legs.clone();
            new.remove(j);
            out.add_at(join_index(d, &new), r.mul(c, e));
        }
        out
    }

    /// `Δ(x)` for an arity-1 element.
    pub fn delta(&self, x: &TensorElement) -> TensorElement {
        assert_eq!(x.arity(), 1);
        self.delta_leg(x, 0)
    }

    /// Places the legs of `x` in `slots` of an arity-`arity` tensor, `1` elsewhere.
    pub fn embed(&self, x: &TensorElement, slots: &[usize], arity: usize) -> TensorElement {
        assert_eq!(slots.len(), x.arity());
        let mut full = x.clone();
        for _ in x.arity()..arity {
            full = full.tensor(&self.element(&self.unit));
        }
        // full has x in slots 0..k; leg j must move to slots[j], the rest fill the gaps in order
        let mut tau = vec![usize::MAX; arity];
        tau[..slots.len()].copy_from_slice(slots);
        let mut free = (0..arity).filter(|s| !slots.contains(s));
        for t in tau.iter_mut().skip(slots.len()) {
            *t = free.next().expect("enough slots");
        }
        full.place_legs(&tau).expect("valid placement")
    }

    /// Coordinates of `ε` applied to every leg (a scalar).
    pub fn counit_all(&self, x: &TensorElement) -> Elem {
        let mut y = x.clone();
        while y.arity() > 0 {
            y = self.counit_leg(&y, 0);
        }
        y.coeffs()[0]
    }

    /// The same structure after the change of basis whose columns are `basis`
    /// in old coordinates; `inverse` maps old coordinates to new ones.
    pub fn change_basis(&self, basis: &ExactMatrix, inverse: &ExactMatrix, names: Vec<String>) -> Result<Self> {
        let d = self.dim();
        let r = &self.ring;
        let cols: Vec<TensorElement> = (0..d).map(|i| self.element(&basis.col(i))).collect();
        let mut mul = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let prod = self.mul(&cols[a], &cols[b]).map_each_leg(inverse);
                mul.push(prod.into_coeffs());
            }
        }
        let unit = inverse.mul_vec(r, &self.unit);
        let counit = (0..d)
            .map(|i| {
                let col = basis.col(i);
                col.iter().zip(&self.counit).fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b)))
            })
            .collect();
        let delta = cols.iter().map(|c| self.delta(c).map_each_leg(inverse).into_coeffs()).collect();
        Self::new(r, names, mul, unit, counit, delta)
    }
}

fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (k & !n) == 0
}

/// Divided-power Hopf algebra `D_r` over `F_2`: the dual of `F_2[x]/(x^{2^r})`.
pub fn divided_power_structure(r: u32) -> Result<Structure> {
    if !(1..=4).contains(&r) {
        return Err(Error::invalid(format!("divided power level r = {r} must be in 1..=4")));
    }
    let ring = BaseRing::f2();
    let d = 1usize << r;
    let names = (0..d).map(|l| if l == 0 { "1".into() } else { format!("y{l}") }).collect();
    let mut mul = vec![vec![0; d]; d * d];
    for a in 0..d {
        for b in 0..d {
            if a + b < d && binom_mod2(a + b, a) {
                mul[a * d + b][a + b] = 1;
            }
        }
    }
    let mut unit = vec![0; d];
    unit[0] = 1;
    let counit = unit.clone();
    let delta = (0..d)
        .map(|l| {
            let mut v = vec![0; d * d];
            for a in 0..=l {
                v[a * d + (l - a)] = 1;
            }
            v
        })
        .collect();
    Structure::new(&ring, names, mul, unit, counit, delta)
}
