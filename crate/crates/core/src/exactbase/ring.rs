use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::{Elem, FieldSpec, RingSpecFile};

/// Rings with at most this many elements get full operation tables.
const TABLE_BOUND: u64 = 256;

/// `F_q[h]/(h^h_trunc)`; `h_trunc = 1` is the field itself.
///
/// An element `a_0 + a_1 h + ...` is encoded as `a_0 + a_1 q + a_2 q^2 + ...`
/// with each `a_j` a field element code.
#[derive(Clone)]
pub struct BaseRing {
    inner: Arc<RingInner>,
}

struct RingInner {
    field: FieldSpec,
    h_trunc: u32,
    size: u64,
    tables: Option<(Vec<Elem>, Vec<Elem>)>,
}

impl PartialEq for BaseRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field && self.inner.h_trunc == other.inner.h_trunc)
    }
}

impl Eq for BaseRing {}

impl fmt::Debug for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.h_trunc == 1 {
            write!(f, "{:?}", self.inner.field)
        } else {
            write!(f, "{:?}[h]/(h^{})", self.inner.field, self.inner.h_trunc)
        }
    }
}

impl BaseRing {
    pub fn new(field: FieldSpec, h_trunc: u32) -> Result<Self> {
        if h_trunc == 0 {
            return Err(Error::invalid("h_trunc must be at least 1"));
        }
        let size = (field.q() as u64)
            .checked_pow(h_trunc)
            .filter(|&s| s <= u32::MAX as u64)
            .ok_or_else(|| Error::capacity("ring too large for 32-bit element codes"))?;
        let mut ring = BaseRing {
            inner: Arc::new(RingInner {
                field,
                h_trunc,
                size,
                tables: None,
            }),
        };
        if h_trunc > 1 && size <= TABLE_BOUND {
            let n = size as u32;
            let mut add = Vec::with_capacity((size * size) as usize);
            let mut mul = Vec::with_capacity((size * size) as usize);
            for a in 0..n {
                for b in 0..n {
                    add.push(ring.add_slow(a, b));
                    mul.push(ring.mul_slow(a, b));
                }
            }
            let inner = Arc::get_mut(&mut ring.inner).expect("fresh Arc");
            inner.tables = Some((add, mul));
        }
        Ok(ring)
    }

    pub fn field_ring(field: FieldSpec) -> Self {
        Self::new(field, 1).expect("field ring")
    }

    /// `F_2`.
    pub fn f2() -> Self {
        Self::field_ring(FieldSpec::prime(2).expect("F2"))
    }

    pub fn from_file(spec: &RingSpecFile) -> Result<Self> {
        Self::new(FieldSpec::from_file(spec)?, spec.h_trunc)
    }

    pub fn to_file(&self) -> RingSpecFile {
        let f = self.field();
        RingSpecFile {
            p: f.p(),
            m: f.m(),
            modulus: f.modulus().to_vec(),
            h_trunc: self.h_trunc(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.inner.field
    }

    pub fn h_trunc(&self) -> u32 {
        self.inner.h_trunc
    }

    pub fn is_field(&self) -> bool {
        self.inner.h_trunc == 1
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.field.p()
    }

    pub fn size(&self) -> u64 {
        self.inner.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The element `h` (zero when `h_trunc = 1`).
    pub fn h(&self) -> Elem {
        if self.inner.h_trunc > 1 {
            self.inner.field.q()
        } else {
            0
        }
    }

    /// Splits an element into its `h`-coefficients.
    pub fn digits(&self, a: Elem) -> Vec<Elem> {
        let q = self.inner.field.q();
        let mut c = a;
        (0..self.inner.h_trunc)
            .map(|_| {
                let d = c % q;
                c /= q;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[Elem]) -> Elem {
        let q = self.inner.field.q();
        digits
            .iter()
            .take(self.inner.h_trunc as usize)
            .rev()
            .fold(0, |acc, &d| acc * q + d)
    }

    /// Embeds a field element as a constant.
    pub fn from_field(&self, a: Elem) -> Elem {
        a
    }

    pub fn from_int(&self, k: i64) -> Elem {
        self.inner.field.from_int(k)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.inner.h_trunc == 1 {
            return self.inner.field.add(a, b);
        }
        if let Some((add, _)) = &self.inner.tables {
            return add[(a as u64 * self.inner.size + b as u64) as usize];
        }
        self.add_slow(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.inner.h_trunc == 1 {
            return self.inner.field.mul(a, b);
        }
        if let Some((_, mul)) = &self.inner.tables {
            return mul[(a as u64 * self.inner.size + b as u64) as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.inner.h_trunc == 1 {
            return self.inner.field.neg(a);
        }
        let f = &self.inner.field;
        let d: Vec<Elem> = self.digits(a).into_iter().map(|x| f.neg(x)).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Units are exactly the elements with nonzero constant term.
    pub fn is_unit(&self, a: Elem) -> bool {
        a % self.inner.field.q() != 0
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        let f = &self.inner.field;
        if self.inner.h_trunc == 1 {
            return f.inv(a);
        }
        let ad = self.digits(a);
        if ad[0] == 0 {
            return Err(Error::NotInvertible(format!(
                "ring element {} has zero constant term",
                self.format_elem(a)
            )));
        }
        let a0_inv = f.inv(ad[0])?;
        let n = self.inner.h_trunc as usize;
        let mut b = vec![0; n];
        b[0] = a0_inv;
        for k in 1..n {
            let mut s = 0;
            for i in 1..=k {
                s = f.add(s, f.mul(ad[i], b[k - i]));
            }
            b[k] = f.neg(f.mul(a0_inv, s));
        }
        Ok(self.from_digits(&b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        if self.characteristic() == 2 {
            self.mul(a, a)
        } else {
            self.pow(a, self.characteristic() as u64)
        }
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let f = &self.inner.field;
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<Elem> = x.iter().zip(&y).map(|(&u, &v)| f.add(u, v)).collect();
        self.from_digits(&s)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let f = &self.inner.field;
        let (x, y) = (self.digits(a), self.digits(b));
        let n = x.len();
        let mut out = vec![0; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n - i {
                out[i + j] = f.add(out[i + j], f.mul(x[i], y[j]));
            }
        }
        self.from_digits(&out)
    }

    /// Little-endian `F_p` coordinates: field coordinates of `h^0`, then `h^1`, ...
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.digits(a)
            .into_iter()
            .flat_map(|d| self.inner.field.coords(d))
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        let m = self.inner.field.m() as usize;
        let expect = m * self.inner.h_trunc as usize;
        if coords.len() != expect {
            return Err(Error::invalid(format!(
                "ring element needs {expect} coordinates, got {}",
                coords.len()
            )));
        }
        let digits = coords
            .chunks(m)
            .map(|c| self.inner.field.from_coords(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_digits(&digits))
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.inner.h_trunc == 1 {
            return self.inner.field.format_elem(a);
        }
        let mut parts = Vec::new();
        for (k, d) in self.digits(a).into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            let c = self.inner.field.format_elem(d);
            let c = if c.contains('+') { format!("({c})") } else { c };
            parts.push(match (k, c.as_str()) {
                (0, _) => c,
                (1, "1") => "h".to_string(),
                (1, _) => format!("{c}h"),
                (_, "1") => format!("h^{k}"),
                _ => format!("{c}h^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}
