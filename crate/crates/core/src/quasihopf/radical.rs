use crate::error::{Error, Result};
use crate::exactbase::{invert, nullspace, BaseRing, Echelon, Elem, ExactMatrix};
use crate::tensorops::{split_index, Structure, TensorElement};

use super::QuasiHopfDatum;

/// Largest `dim_{F_p} H` for the trace-functional radical computation.
pub const MAX_RADICAL_DIM: usize = 128;

/// `Rad(H) ⊇ Rad² ⊇ … ⊇ Rad^N = 0` with an adapted basis.
///
/// The adapted basis is `b₀ = 1`, then a complement of `Rad` inside `ker ε`
/// (degree 0), then for each `a ≥ 1` a complement of `Rad^{a+1}` in `Rad^a`
/// (degree `a`). The degree of a tensor is the least summed leg degree over its
/// nonzero adapted coordinates.
#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    ring: BaseRing,
    dim: usize,
    powers: Vec<Vec<Vec<Elem>>>,
    basis: ExactMatrix,
    inverse: ExactMatrix,
    degrees: Vec<u32>,
    names: Vec<String>,
    fiber: bool,
}

impl RadicalFiltration {
    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the filtration was computed on the `h = 0` fiber.
    pub fn is_fiber(&self) -> bool {
        self.fiber
    }

    pub fn radical_basis(&self) -> &[Vec<Elem>] {
        self.powers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Echelon basis of `Rad^a`, `a ≥ 1`.
    pub fn power_basis(&self, a: usize) -> &[Vec<Elem>] {
        assert!(a >= 1);
        self.powers.get(a - 1).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Least `N` with `Rad^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.powers.len() + 1
    }

    /// `dim Rad^a/Rad^{a+1}` for `a = 0..N`, with `Rad⁰ = H`.
    pub fn gr_dims(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut dims = vec![0; top.max(self.powers.len()) + 1];
        for &g in &self.degrees {
            dims[g as usize] += 1;
        }
        dims
    }

    /// Columns are the adapted basis in original coordinates.
    pub fn adapted_basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn adapted_inverse(&self) -> &ExactMatrix {
        &self.inverse
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn adapted_names(&self) -> &[String] {
        &self.names
    }

    pub fn to_adapted(&self, x: &TensorElement) -> TensorElement {
        x.map_each_leg(&self.inverse)
    }

    pub fn from_adapted(&self, x: &TensorElement) -> TensorElement {
        x.map_each_leg(&self.basis)
    }

    fn leg_degree(&self, x: &TensorElement, t: usize) -> u32 {
        split_index(self.dim, x.arity(), t).iter().map(|&i| self.degrees[i]).sum()
    }

    /// Filtration degree of a tensor in original coordinates; `None` for zero.
    pub fn degree(&self, x: &TensorElement) -> Option<u32> {
        let a = self.to_adapted(x);
        a.support().map(|(t, _)| self.leg_degree(&a, t)).min()
    }

    /// Degree-`n` component of a tensor given in adapted coordinates.
    pub fn homogeneous(&self, adapted: &TensorElement, n: u32) -> TensorElement {
        let mut out = TensorElement::zeros(adapted.ring(), self.dim, adapted.arity());
        for (t, c) in adapted.support() {
            if self.leg_degree(adapted, t) == n {
                out.add_at(t, c);
            }
        }
        out
    }

    /// `(deg x, image of x in gr)`, the latter in adapted coordinates.
    pub fn leading_part(&self, x: &TensorElement) -> Option<(u32, TensorElement)> {
        let n = self.degree(x)?;
        Some((n, self.homogeneous(&self.to_adapted(x), n)))
    }

    /// The structure tables rewritten in the adapted basis.
    pub fn adapted_structure(&self, s: &Structure) -> Result<Structure> {
        s.change_basis(&self.basis, &self.inverse, self.names.clone())
    }

    /// `gr(H)`: the adapted tables with every degree-changing constant dropped.
    pub fn gr_structure(&self, s: &Structure) -> Result<Structure> {
        let a = self.adapted_structure(s)?;
        let d = self.dim;
        let deg = &self.degrees;
        let mut mul = a.mul_table().to_vec();
        for x in 0..d {
            for y in 0..d {
                for (z, c) in mul[x * d + y].iter_mut().enumerate() {
                    if deg[z] != deg[x] + deg[y] {
                        *c = 0;
                    }
                }
            }
        }
        let mut delta = a.delta_table().to_vec();
        for (x, v) in delta.iter_mut().enumerate() {
            for (t, c) in v.iter_mut().enumerate() {
                if deg[t / d] + deg[t % d] != deg[x] {
                    *c = 0;
                }
            }
        }
        let counit = a.counit().iter().zip(deg).map(|(&c, &g)| if g == 0 { c } else { 0 }).collect();
        Structure::new(a.ring(), self.names.clone(), mul, a.unit().to_vec(), counit, delta)
    }
}

/// `M^e mod m` for an integer matrix.
fn int_matrix_pow(m: &[Vec<u64>], mut e: u64, modulus: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mul = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        let mut c = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i][k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] = (c[i][j] + aik * b[k][j]) % modulus;
                }
            }
        }
        c
    };
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// `H` viewed over the prime field: basis `x^k e_j`, index `j*m + k`.
struct PrimeFieldView<'a> {
    s: &'a Structure,
    m: usize,
    p: u32,
}

impl PrimeFieldView<'_> {
    fn n(&self) -> usize {
        self.s.dim() * self.m
    }

    fn to_field(&self, v: &[u32]) -> TensorElement {
        let f = self.s.ring().field();
        let coeffs: Vec<Elem> =
            v.chunks(self.m).map(|c| f.from_coords(c).expect("prime-field digits")).collect();
        TensorElement::vector(self.s.ring(), &coeffs)
    }

    fn to_prime(&self, x: &TensorElement) -> Vec<u32> {
        let f = self.s.ring().field();
        x.coeffs().iter().flat_map(|&c| f.coords(c)).collect()
    }

    fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n()];
        v[i] = 1;
        v
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.to_prime(&self.s.mul(&self.to_field(a), &self.to_field(b)))
    }

    /// `(Tr(Z^{p^i}) mod p^{i+1}) / p^i` for the integer lift `Z` of left multiplication by `z`.
    fn trace_functional(&self, z: &[u32], i: u32) -> Result<u32> {
        let n = self.n();
        let cols: Vec<Vec<u32>> = (0..n).map(|j| self.mul(z, &self.basis(j))).collect();
        let m: Vec<Vec<u64>> = (0..n).map(|r| (0..n).map(|c| u64::from(cols[c][r])).collect()).collect();
        let p = u64::from(self.p);
        let modulus = p.pow(i + 1);
        let pw = int_matrix_pow(&m, p.pow(i), modulus);
        let tr = (0..n).map(|k| pw[k][k]).sum::<u64>() % modulus;
        let pi = p.pow(i);
        if tr % pi != 0 {
            return Err(Error::internal(format!("trace functional g_{i} is not integral")));
        }
        Ok((tr / pi) as u32)
    }
}

fn fiber_structure(s: &Structure) -> Result<Structure> {
    let r = s.ring();
    let f = BaseRing::field_ring(r.field().clone());
    let low = |v: &[Elem]| -> Vec<Elem> { v.iter().map(|&c| r.digits(c)[0]).collect() };
    Structure::new(
        &f,
        s.names().to_vec(),
        s.mul_table().iter().map(|v| low(v)).collect(),
        low(s.unit()),
        low(s.counit()),
        s.delta_table().iter().map(|v| low(v)).collect(),
    )
}

/// Radical filtration of `H`, via the p-power trace functionals of Cohen,
/// Ivanyos and Wales over `F_p`.
///
/// Over `F_q[h]/(h^k)` the filtration is that of the `h = 0` fiber.
pub fn jacobson_radical(qh: &QuasiHopfDatum) -> Result<RadicalFiltration> {
    let fiber = !qh.ring().is_field();
    let s = if fiber { fiber_structure(qh.structure())? } else { qh.structure().clone() };
    radical_of_structure(&s, fiber)
}

pub(crate) fn radical_of_structure(s: &Structure, fiber: bool) -> Result<RadicalFiltration> {
    let ring = s.ring().clone();
    let f = ring.field();
    let d = s.dim();
    let view = PrimeFieldView { s, m: f.m() as usize, p: f.p() };
    let n = view.n();
    if n > MAX_RADICAL_DIM {
        return Err(Error::capacity(format!("radical computation limited to dim over F_p ≤ {MAX_RADICAL_DIM}, got {n}")));
    }
    let prime = BaseRing::field_ring(crate::exactbase::FieldSpec::prime(f.p())?);
    let mut current: Vec<Vec<u32>> = (0..n).map(|i| view.basis(i)).collect();
    let mut i = 0u32;
    while !current.is_empty() && (view.p as u64).pow(i) <= n as u64 {
        let mut g = ExactMatrix::zeros(n, current.len());
        for (bi, b) in current.iter().enumerate() {
            for y in 0..n {
                g.set(y, bi, view.trace_functional(&view.mul(b, &view.basis(y)), i)?);
            }
        }
        current = nullspace(&prime, &g)
            .into_iter()
            .map(|c| {
                let mut v = vec![0; n];
                for (cb, b) in c.iter().zip(&current) {
                    for (vk, &bk) in v.iter_mut().zip(b) {
                        *vk = prime.add(*vk, prime.mul(*cb, bk));
                    }
                }
                v
            })
            .collect();
        i += 1;
    }
    let rad_vecs: Vec<Vec<Elem>> = current.iter().map(|v| view.to_field(v).into_coeffs()).collect();
    let rad = Echelon::from_vectors(&ring, d, &rad_vecs);
    if rad.rank() * view.m != current.len() {
        return Err(Error::internal("radical over F_p is not an F_q-subspace"));
    }
    from_radical(s, rad.basis().to_vec(), fiber)
}

fn from_radical(s: &Structure, rad: Vec<Vec<Elem>>, fiber: bool) -> Result<RadicalFiltration> {
    let ring = s.ring().clone();
    let d = s.dim();
    let mut powers = Vec::new();
    let mut cur = rad.clone();
    while !cur.is_empty() {
        powers.push(cur.clone());
        let mut next = Echelon::new(&ring, d);
        for x in &cur {
            for y in &rad {
                next.insert(s.mul(&TensorElement::vector(&ring, x), &TensorElement::vector(&ring, y)).coeffs());
            }
        }
        if next.rank() == cur.len() {
            return Err(Error::internal("radical is not nilpotent"));
        }
        cur = next.basis().to_vec();
    }

    let mut cols: Vec<Vec<Elem>> = vec![s.unit().to_vec()];
    let mut degrees = vec![0u32];
    let counit_row = ExactMatrix::from_rows(&[s.counit().to_vec()]);
    let mut span = Echelon::from_vectors(&ring, d, &rad);
    for v in nullspace(&ring, &counit_row) {
        if span.insert(&v) {
            cols.push(v);
            degrees.push(0);
        }
    }
    for a in 0..powers.len() {
        let mut span = match powers.get(a + 1) {
            Some(b) => Echelon::from_vectors(&ring, d, b),
            None => Echelon::new(&ring, d),
        };
        for v in &powers[a] {
            if span.insert(v) {
                cols.push(v.clone());
                degrees.push(a as u32 + 1);
            }
        }
    }
    if cols.len() != d {
        return Err(Error::internal(format!("adapted basis has {} vectors, expected {d}", cols.len())));
    }
    let basis = ExactMatrix::from_cols(&cols, d);
    let inverse = invert(&ring, &basis)?;
    let names = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let support: Vec<usize> = (0..d).filter(|&j| c[j] != 0).collect();
            match support.as_slice() {
                [j] if c[*j] == 1 => s.names()[*j].clone(),
                _ => format!("b{i}"),
            }
        })
        .collect();
    Ok(RadicalFiltration { ring, dim: d, powers, basis, inverse, degrees, names, fiber })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactbase::FieldSpec;
    use crate::quasihopf::{alpha2_squared, category_d, deformed_d, divided_power, group_algebra};

    fn p_part(orders: &[u64], p: u64) -> u64 {
        orders.iter().map(|&o| {
            let mut x = o;
            let mut pp = 1;
            while x % p == 0 {
                x /= p;
                pp *= p;
            }
            pp
        }).product()
    }

    #[test]
    fn group_algebra_radicals_match_maschke() {
        // dim Rad K[P × Q] = |P||Q| − |Q| for the p-part P.
        let cases: &[(&[u64], u32)] =
            &[(&[2], 2), (&[3], 2), (&[4], 2), (&[2, 3], 2), (&[2, 2], 4), (&[3], 4), (&[9], 3), (&[3, 2], 3), (&[2], 8)];
        for &(orders, q) in cases {
            let f = FieldSpec::with_order(q).unwrap();
            let qh = group_algebra(orders, &f).unwrap();
            let filt = jacobson_radical(&qh).unwrap();
            let n: u64 = orders.iter().product();
            let pp = p_part(orders, u64::from(f.p()));
            assert_eq!(filt.radical_basis().len() as u64, n - n / pp, "{orders:?} over F_{q}");
        }
    }

    #[test]
    fn spec_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let z2 = jacobson_radical(&group_algebra(&[2], &f2).unwrap()).unwrap();
        assert_eq!(z2.radical_basis(), &[vec![1, 1]]);
        assert_eq!(z2.nilpotency(), 2);
        let z3 = jacobson_radical(&group_algebra(&[3], &f2).unwrap()).unwrap();
        assert!(z3.radical_basis().is_empty());
        assert_eq!(z3.nilpotency(), 1);
        assert_eq!(z3.gr_dims(), vec![3]);
        let d2 = jacobson_radical(&divided_power(2).unwrap()).unwrap();
        assert_eq!(d2.radical_basis().len(), 3);
        assert_eq!(d2.gr_dims(), vec![1, 2, 1]);
        assert_eq!(d2.adapted_names(), ["1", "y1", "y2", "y3"]);
        let d = jacobson_radical(&category_d()).unwrap();
        let dv = category_d().basis_vector(1);
        let (n, lead) = d.leading_part(&dv).unwrap();
        assert_eq!((n, lead.coeffs()), (1, &[0, 1][..]));
    }

    #[test]
    fn degrees_and_gr() {
        let qh = alpha2_squared();
        let filt = jacobson_radical(&qh).unwrap();
        assert_eq!(filt.gr_dims(), vec![1, 2, 1]);
        let r = qh.r().sub(&qh.one(2));
        assert_eq!(filt.degree(&r), Some(2));
        assert_eq!(filt.degree(&qh.one(3)), Some(0));
        assert_eq!(filt.degree(&TensorElement::zeros(qh.ring(), 4, 2)), None);
        // alpha2² is already graded
        assert_eq!(filt.gr_structure(qh.structure()).unwrap(), filt.adapted_structure(qh.structure()).unwrap());
        let z2 = group_algebra(&[2], &FieldSpec::prime(2).unwrap()).unwrap();
        let f = jacobson_radical(&z2).unwrap();
        let gr = f.gr_structure(z2.structure()).unwrap();
        // gr F₂[Z/2] ≅ F₂[x]/(x²) with x primitive
        assert_eq!(gr.delta_table()[1], vec![0, 1, 1, 0]);
        assert_eq!(gr.mul_table()[3], vec![0, 0]);
    }

    #[test]
    fn deformation_uses_the_fiber() {
        let filt = jacobson_radical(&deformed_d(3).unwrap()).unwrap();
        assert!(filt.is_fiber());
        assert_eq!(filt.gr_dims(), vec![1, 1]);
    }
}
