use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a finite field or truncated ring, encoded as an integer.
///
/// For `F_q` with `q = p^m` the element `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`
/// is stored as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
pub type Elem = u32;

/// Largest field order for which the arithmetic tables are built.
pub const MAX_FIELD_ORDER: u32 = 256;

/// A finite field `F_p[t]/(modulus)` with precomputed tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldTables>,
}

struct FieldTables {
    p: u32,
    m: u32,
    /// Monic modulus, little-endian, length `m + 1`.
    modulus: Vec<u32>,
    q: u32,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[t]/({})",
            self.inner.p,
            format_poly(&self.inner.modulus)
        )
    }
}

/// Serialized form of a field or ring: `{p, m, modulus, h_trunc}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpecFile {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub h_trunc: u32,
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Formats a little-endian polynomial in `t`, highest degree first.
pub(crate) fn format_poly(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let s = if mono.is_empty() {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}{mono}")
        };
        parts.push(s);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    let p64 = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` divided by the monic or non-monic `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                let sub = (c as u64 * b[i] as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![0];
    }
    let mut quot = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        quot[dr - db] = c;
        for i in 0..=db {
            let idx = dr - db + i;
            let sub = (c as u64 * b[i] as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        r = trim(r);
    }
    trim(quot)
}

fn is_zero_poly(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Finds a monic factor of degree `1..=deg/2`, returning it with its multiplicity.
fn find_factor(modulus: &[u32], p: u32) -> Option<(Vec<u32>, u32)> {
    let m = modulus.len() - 1;
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if is_zero_poly(&poly_rem(modulus, &cand, p)) {
                let mut mult = 0;
                let mut cur = modulus.to_vec();
                while cur.len() > 1 && is_zero_poly(&poly_rem(&cur, &cand, p)) {
                    cur = poly_div(&cur, &cand, p);
                    mult += 1;
                }
                return Some((cand, mult));
            }
        }
    }
    None
}

impl FieldSpec {
    /// Builds `F_{p^m}` as `F_p[t]/(modulus)`.
    ///
    /// `modulus` is little-endian and may include the leading `1` (length
    /// `m + 1`) or omit it (length `m`).
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("p = {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::invalid("extension degree m must be at least 1"));
        }
        let mut full: Vec<u32> = match modulus.len() {
            l if l == m as usize => {
                let mut v = modulus.to_vec();
                v.push(1);
                v
            }
            l if l == m as usize + 1 => modulus.to_vec(),
            l => {
                return Err(Error::invalid(format!(
                    "modulus has {l} coefficients, expected {m} or {}",
                    m + 1
                )))
            }
        };
        if full.iter().any(|&c| c >= p) {
            return Err(Error::invalid("modulus coefficients must lie in 0..p"));
        }
        if full[m as usize] != 1 {
            return Err(Error::invalid("modulus must be monic of degree m"));
        }
        if let Some((factor, mult)) = find_factor(&full, p) {
            let f = format_poly(&factor);
            let shown = if factor.len() > 2 || factor[0] != 0 {
                format!("({f})")
            } else {
                f
            };
            let msg = if mult > 1 {
                format!("reducible: {shown}^{mult}")
            } else {
                format!("reducible: factor {shown}")
            };
            return Err(Error::invalid(msg));
        }
        let q64 = (p as u64).pow(m);
        if q64 > MAX_FIELD_ORDER as u64 {
            return Err(Error::capacity(format!(
                "field order {q64} exceeds table bound {MAX_FIELD_ORDER}"
            )));
        }
        let q = q64 as u32;
        full.truncate(m as usize + 1);
        let tables = build_tables(p, m, &full, q);
        let field = FieldSpec {
            inner: Arc::new(tables),
        };
        // a^(q-1) = 1 for every nonzero a
        for a in 1..q {
            if field.pow(a, (q - 1) as u64) != 1 {
                return Err(Error::Internal(format!(
                    "multiplicative group check failed at element {a}"
                )));
            }
        }
        Ok(field)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, &[0, 1])
    }

    /// `F_q` with the smallest irreducible modulus under the integer encoding
    /// of its lower coefficients.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
        if m == 1 {
            return Self::prime(p);
        }
        let count = (p as u64).pow(m);
        for code in 0..count {
            let mut cand = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if cand[0] != 0 && find_factor(&cand, p).is_none() {
                return Self::new(p, m, &cand);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial found for q = {q}")))
    }

    pub fn from_file(spec: &RingSpecFile) -> Result<Self> {
        Self::new(spec.p, spec.m, &spec.modulus)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.inner.add[(a * self.inner.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.mul[(a * self.inner.q + b) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::NotInvertible("zero has no inverse".into()));
        }
        Ok(self.inner.inv[a as usize])
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

    /// `a -> a^p`, by squaring when `p = 2`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        if self.inner.p == 2 {
            self.mul(a, a)
        } else {
            self.pow(a, self.inner.p as u64)
        }
    }

    /// Inverse of the Frobenius: the unique `b` with `b^p = a`.
    pub fn frobenius_inv(&self, a: Elem) -> Elem {
        // a^(q/p) since a^q = a
        self.pow(a, (self.inner.q / self.inner.p) as u64)
    }

    /// Image of the integer `k` in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.inner.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }

    /// Little-endian `F_p` coordinates of `a`.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let p = self.inner.p;
        let mut c = a;
        (0..self.inner.m)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.inner.m as usize {
            return Err(Error::invalid(format!(
                "field element needs {} coordinates, got {}",
                self.inner.m,
                coords.len()
            )));
        }
        let p = self.inner.p;
        let mut acc = 0u32;
        for &c in coords.iter().rev() {
            if c >= p {
                return Err(Error::invalid(format!("coordinate {c} out of range for p = {p}")));
            }
            acc = acc * p + c;
        }
        Ok(acc)
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.inner.m == 1 {
            return a.to_string();
        }
        format_poly(&self.coords(a))
    }
}

pub(crate) fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

fn build_tables(p: u32, m: u32, modulus: &[u32], q: u32) -> FieldTables {
    let coords = |a: u32| -> Vec<u32> {
        let mut c = a;
        (0..m)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    };
    let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let all: Vec<Vec<u32>> = (0..q).map(coords).collect();
    let qs = q as usize;
    let mut add = vec![0; qs * qs];
    let mut mul = vec![0; qs * qs];
    let mut neg = vec![0; qs];
    for a in 0..qs {
        neg[a] = encode(&all[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>());
        for b in 0..qs {
            let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = encode(&s);
            let mut prod = vec![0u32; 2 * m as usize];
            for (i, &x) in all[a].iter().enumerate() {
                for (j, &y) in all[b].iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(&prod, modulus, p);
            r.resize(m as usize, 0);
            mul[a * qs + b] = encode(&r);
        }
    }
    let mut inv = vec![0; qs];
    for a in 1..qs {
        for b in 1..qs {
            if mul[a * qs + b] == 1 {
                inv[a] = b as u32;
                break;
            }
        }
    }
    FieldTables {
        p,
        m,
        modulus: modulus.to_vec(),
        q,
        add,
        mul,
        neg,
        inv,
    }
}
