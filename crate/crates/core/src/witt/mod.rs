//! Truncated Witt vectors `W_n(F_q)`: structure polynomials, Frobenius,
//! the Artin–Schreier map `𝒫 = F − id`, and its kernel and cokernel.

mod cokernel;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exactbase::{is_prime, Elem, FieldSpec};

pub use cokernel::{coker_p, doubling_identity_check, ker_p, CokerP, DoublingReport, KerP, MAX_ENUMERATION};
pub use poly::ModPoly;

/// Longest supported Witt length.
pub const MAX_LENGTH: usize = 4;
/// For `n ≥ 3` the structure polynomials have degree `p^{n-1}`; this caps it.
pub const MAX_TOP_DEGREE: u32 = 27;

/// Sum, product and negation polynomials of `W_n` over `F_p`.
///
/// Variables: `x_i` has index `i`, `y_i` has index `n + i`.
#[derive(Clone)]
pub struct WittContext {
    inner: Arc<ContextInner>,
}

struct ContextInner {
    p: u32,
    n: usize,
    sum: Vec<ModPoly>,
    prod: Vec<ModPoly>,
    neg: Vec<ModPoly>,
}

impl PartialEq for WittContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.n == other.inner.n
    }
}

impl Eq for WittContext {}

impl fmt::Debug for WittContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittContext(p={}, n={})", self.inner.p, self.inner.n)
    }
}

fn cache() -> &'static Mutex<HashMap<(u32, usize), WittContext>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), WittContext>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl WittContext {
    /// Structure polynomials for `(p, n)`, computed once and cached.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::invalid("Witt length must be at least 1"));
        }
        if n > MAX_LENGTH {
            return Err(Error::capacity(format!("Witt length {n} exceeds {MAX_LENGTH}")));
        }
        if n >= 3 && (p as u64).pow(n as u32 - 1) > MAX_TOP_DEGREE as u64 {
            return Err(Error::capacity(format!(
                "W_{n} over characteristic {p}: degree p^(n-1) exceeds {MAX_TOP_DEGREE}"
            )));
        }
        if let Some(ctx) = cache().lock().expect("witt cache").get(&(p, n)) {
            return Ok(ctx.clone());
        }
        let [sum, prod, neg] = poly::structure_polys(p, n)?;
        let nv = 2 * n;
        let ctx = WittContext {
            inner: Arc::new(ContextInner {
                p,
                n,
                sum: sum.iter().map(|q| q.reduce_mod(p, nv).paired()).collect(),
                prod: prod.iter().map(|q| q.reduce_mod(p, nv).paired()).collect(),
                neg: neg.iter().map(|q| q.reduce_mod(p, n)).collect(),
            }),
        };
        cache()
            .lock()
            .expect("witt cache")
            .entry((p, n))
            .or_insert(ctx.clone());
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn sum_polys(&self) -> &[ModPoly] {
        &self.inner.sum
    }

    pub fn prod_polys(&self) -> &[ModPoly] {
        &self.inner.prod
    }

    /// Polynomials in `x_0..x_{n-1}` only.
    pub fn neg_polys(&self) -> &[ModPoly] {
        &self.inner.neg
    }
}

fn eval(field: &FieldSpec, poly: &ModPoly, vals: &[Elem]) -> Elem {
    let mut acc = 0;
    for (exps, c) in poly.terms() {
        let mut t = field.from_int(*c as i64);
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                t = field.mul(t, field.pow(vals[v], e as u64));
                if t == 0 {
                    break;
                }
            }
        }
        acc = field.add(acc, t);
    }
    acc
}

/// `W_n(F_q)` for a fixed context and field.
#[derive(Clone)]
pub struct WittRing {
    inner: Arc<(WittContext, FieldSpec)>,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl Eq for WittRing {}

impl fmt::Debug for WittRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}(F_{})", self.n(), self.field().q())
    }
}

impl WittRing {
    pub fn new(ctx: WittContext, field: FieldSpec) -> Result<Self> {
        if ctx.p() != field.p() {
            return Err(Error::invalid(format!(
                "Witt context has p = {} but the field has characteristic {}",
                ctx.p(),
                field.p()
            )));
        }
        Ok(WittRing { inner: Arc::new((ctx, field)) })
    }

    /// `W_n(field)` with the cached context for `(char field, n)`.
    pub fn over(field: &FieldSpec, n: usize) -> Result<Self> {
        Self::new(WittContext::new(field.p(), n)?, field.clone())
    }

    pub fn context(&self) -> &WittContext {
        &self.inner.0
    }

    pub fn field(&self) -> &FieldSpec {
        &self.inner.1
    }

    pub fn n(&self) -> usize {
        self.inner.0.n()
    }

    pub fn p(&self) -> u32 {
        self.inner.0.p()
    }

    /// `q^n`, or `None` if it overflows `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.field().q() as u64).checked_pow(self.n() as u32)
    }

    pub fn element(&self, coords: Vec<Elem>) -> Result<WittVector> {
        if coords.len() != self.n() {
            return Err(Error::invalid(format!(
                "Witt vector needs {} coordinates, got {}",
                self.n(),
                coords.len()
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.field().q()) {
            return Err(Error::invalid(format!("{c} is not an element of F_{}", self.field().q())));
        }
        Ok(WittVector { ring: self.clone(), coords })
    }

    pub fn zero(&self) -> WittVector {
        WittVector { ring: self.clone(), coords: vec![0; self.n()] }
    }

    pub fn one(&self) -> WittVector {
        let mut coords = vec![0; self.n()];
        coords[0] = 1;
        WittVector { ring: self.clone(), coords }
    }

    /// Element with lexicographic index `x_0 q^{n-1} + ... + x_{n-1}`.
    pub fn from_index(&self, mut idx: u64) -> WittVector {
        let q = self.field().q() as u64;
        let mut coords = vec![0; self.n()];
        for c in coords.iter_mut().rev() {
            *c = (idx % q) as Elem;
            idx /= q;
        }
        WittVector { ring: self.clone(), coords }
    }

    /// `k · (1, 0, ..., 0)`.
    pub fn from_int(&self, k: i64) -> WittVector {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add_raw(&acc, &base);
            }
            base = self.add_raw(&base, &base);
            e >>= 1;
        }
        if k < 0 {
            self.neg_raw(&acc)
        } else {
            acc
        }
    }

    fn binary(&self, polys: &[ModPoly], x: &WittVector, y: &WittVector) -> WittVector {
        let vals: Vec<Elem> = x.coords.iter().chain(&y.coords).copied().collect();
        let coords = polys.iter().map(|q| eval(self.field(), q, &vals)).collect();
        WittVector { ring: self.clone(), coords }
    }

    fn add_raw(&self, x: &WittVector, y: &WittVector) -> WittVector {
        self.binary(self.context().sum_polys(), x, y)
    }

    fn neg_raw(&self, x: &WittVector) -> WittVector {
        let coords = self
            .context()
            .neg_polys()
            .iter()
            .map(|q| eval(self.field(), q, &x.coords))
            .collect();
        WittVector { ring: self.clone(), coords }
    }
}

/// Element of `W_n(F_q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    ring: WittRing,
    coords: Vec<Elem>,
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring.field();
        let parts: Vec<String> = self.coords.iter().map(|&c| field.format_elem(c)).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl WittVector {
    pub fn ring(&self) -> &WittRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Lexicographic index, inverse of [`WittRing::from_index`].
    pub fn index(&self) -> u64 {
        let q = self.ring.field().q() as u64;
        self.coords.iter().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &WittVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::invalid(format!(
                "Witt vectors from different rings: {:?} and {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        Ok(self.ring.add_raw(self, other))
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.check(other)?;
        Ok(self.ring.binary(self.ring.context().prod_polys(), self, other))
    }

    pub fn neg(&self) -> WittVector {
        self.ring.neg_raw(self)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// `k · self` by double-and-add.
    pub fn scalar(&self, k: i64) -> WittVector {
        let r = &self.ring;
        let mut acc = r.zero();
        let mut base = self.clone();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = r.add_raw(&acc, &base);
            }
            base = r.add_raw(&base, &base);
            e >>= 1;
        }
        if k < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// `F(x) = (x_0^p, ..., x_{n-1}^p)`.
    pub fn frobenius(&self) -> WittVector {
        let f = self.ring.field();
        WittVector {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|&c| f.frobenius(c)).collect(),
        }
    }

    /// `𝒫(x) = F(x) − x`.
    pub fn artin_schreier(&self) -> WittVector {
        self.ring.add_raw(&self.frobenius(), &self.neg())
    }

    /// Additive order, a power of `p` dividing `p^n`.
    pub fn additive_order(&self) -> u64 {
        let mut x = self.clone();
        let mut order = 1u64;
        while !x.is_zero() {
            x = x.scalar(self.ring.p() as i64);
            order *= self.ring.p() as u64;
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32, n: usize) -> WittRing {
        WittRing::over(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    fn all(r: &WittRing) -> Vec<WittVector> {
        (0..r.size().unwrap()).map(|i| r.from_index(i)).collect()
    }

    #[test]
    fn length_two_formulas() {
        let c = WittContext::new(2, 2).unwrap();
        assert_eq!(c.sum_polys()[0].to_string(), "x0+y0");
        assert_eq!(c.sum_polys()[1].to_string(), "x1+y1+x0y0");
        assert_eq!(c.prod_polys()[0].to_string(), "x0y0");
        assert_eq!(c.prod_polys()[1].to_string(), "x0^2y1+x1y0^2");
    }

    #[test]
    fn length_one_is_the_field() {
        for p in [2, 3, 5, 7] {
            let c = WittContext::new(p, 1).unwrap();
            assert_eq!(c.sum_polys()[0].to_string(), "x0+y0");
            assert_eq!(c.prod_polys()[0].to_string(), "x0y0");
        }
    }

    /// The closed form with `+` sign is the ghost law transported along `x_1 ↦ −x_1`.
    #[test]
    fn closed_form_up_to_sign_convention() {
        for p in [2u32, 3, 5, 7] {
            let c = WittContext::new(p, 2).unwrap();
            let s1 = &c.sum_polys()[1];
            // binom(p-1, i-1) / i mod p
            let mut binom = 1u64;
            for i in 1..p {
                if i > 1 {
                    binom = binom * (p - i + 1) as u64 / (i - 1) as u64;
                }
                let f = FieldSpec::prime(p).unwrap();
                let closed = f.mul(f.from_int((binom % p as u64) as i64), f.inv(i).unwrap());
                let coef = s1.coefficient(&[i, 0, p - i, 0]);
                assert_eq!(f.add(coef, closed), 0, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn capacity_bound() {
        assert!(matches!(WittContext::new(2, 5), Err(Error::Capacity(_))));
        assert!(matches!(WittContext::new(7, 3), Err(Error::Capacity(_))));
        assert!(WittContext::new(3, 3).is_ok());
    }

    #[test]
    fn spec_arithmetic() {
        let r = ring(2, 2);
        let e = |a, b| r.element(vec![a, b]).unwrap();
        assert_eq!(e(1, 0).add(&e(1, 0)).unwrap(), e(0, 1));
        assert_eq!(e(0, 1).mul(&e(1, 1)).unwrap(), e(0, 1));
        assert_eq!(e(1, 0).neg(), e(1, 1));
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for (q, n) in [(2, 2), (4, 2), (2, 3), (3, 2)] {
            let r = ring(q, n);
            let els = all(&r);
            let zero = r.zero();
            let one = r.one();
            for a in &els {
                assert_eq!(a.add(&a.neg()).unwrap(), zero);
                assert_eq!(a.mul(&one).unwrap(), *a);
                for b in &els {
                    let ab = a.add(b).unwrap();
                    assert_eq!(ab, b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &els {
                        assert_eq!(ab.add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
                        assert_eq!(
                            a.mul(b).unwrap().mul(c).unwrap(),
                            a.mul(&b.mul(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(&b.add(c).unwrap()).unwrap(),
                            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn integers_embed_as_z_mod_pn() {
        for (p, n) in [(2u32, 2usize), (2, 3), (3, 2), (2, 4), (3, 3), (3, 4), (5, 2), (5, 3)] {
            let r = WittRing::over(&FieldSpec::prime(p).unwrap(), n).unwrap();
            let m = (p as i64).pow(n as u32);
            let imgs: Vec<_> = (0..m).map(|k| r.from_int(k)).collect();
            assert_eq!(r.from_int(m), r.zero());
            for a in 0..m {
                assert!(a == 0 || !imgs[a as usize].is_zero());
                for b in 0..m {
                    let (x, y) = (&imgs[a as usize], &imgs[b as usize]);
                    assert_eq!(x.add(y).unwrap(), imgs[((a + b) % m) as usize]);
                    assert_eq!(x.mul(y).unwrap(), imgs[((a * b) % m) as usize]);
                }
            }
        }
    }

    #[test]
    fn frobenius_properties() {
        for (q, n) in [(4, 2), (8, 2), (9, 2), (2, 3)] {
            let r = ring(q, n);
            let m = r.field().m();
            let els = all(&r);
            for a in &els {
                let mut x = a.clone();
                for _ in 0..m {
                    x = x.frobenius();
                }
                assert_eq!(&x, a);
            }
            for a in els.iter().step_by(3) {
                for b in els.iter().step_by(5) {
                    let s = a.add(b).unwrap();
                    assert_eq!(s.frobenius(), a.frobenius().add(&b.frobenius()).unwrap());
                    assert_eq!(
                        a.mul(b).unwrap().frobenius(),
                        a.frobenius().mul(&b.frobenius()).unwrap()
                    );
                    assert_eq!(
                        s.artin_schreier(),
                        a.artin_schreier().add(&b.artin_schreier()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let r = ring(2, 2);
        assert!(all(&r).iter().all(|x| x.artin_schreier().is_zero()));
        let r = ring(4, 1);
        // ω has code 2
        assert_eq!(r.element(vec![2]).unwrap().artin_schreier(), r.one());
        let r = ring(4, 2);
        assert!(r.one().artin_schreier().is_zero());
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = ring(2, 2).one();
        let b = ring(4, 2).one();
        assert!(matches!(a.add(&b), Err(Error::InvalidInput(_))));
    }
}
