use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vectors are packed 8 bits per variable, at most 8 variables.
const BITS: u32 = 8;
pub(crate) const MAX_VARS: usize = 8;

/// Integer polynomial in at most eight variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct IntPoly {
    terms: HashMap<u64, BigInt>,
}

fn key_var(var: usize, e: u32) -> u64 {
    (e as u64) << (BITS * var as u32)
}

fn key_exp(key: u64, var: usize) -> u32 {
    ((key >> (BITS * var as u32)) & 0xff) as u32
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(key_var(v, 1), BigInt::one());
        p
    }

    fn add_term(&mut self, key: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&k1, c1) in &self.terms {
            for (&k2, c2) in &other.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; fails if any coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            if !(c % d).is_zero() {
                return Err(Error::Internal(format!(
                    "Witt polynomial coefficient {c} not divisible by {d}"
                )));
            }
            out.add_term(k, c / d);
        }
        Ok(out)
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|&k| (0..MAX_VARS).map(move |v| key_exp(k, v)))
            .max()
            .unwrap_or(0)
    }

    /// Reduces coefficients mod `p` into a sorted term list.
    pub fn reduce_mod(&self, p: u32, nvars: usize) -> ModPoly {
        let pb = BigInt::from(p);
        let mut terms: Vec<(Vec<u32>, u32)> = self
            .terms
            .iter()
            .filter_map(|(&k, c)| {
                let mut r = c % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                let r = r.to_u32().expect("residue fits");
                (r != 0).then(|| ((0..nvars).map(|v| key_exp(k, v)).collect(), r))
            })
            .collect();
        terms.sort_by(|a, b| term_order(&a.0, &b.0));
        ModPoly { p, nvars, paired: false, terms }
    }
}

/// Total degree ascending, then exponent vectors lexicographically descending.
fn term_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// Polynomial over `F_p` in `nvars` variables; coefficients in `1..p`.
///
/// Variables print as `x_0..x_{nvars-1}`; a paired polynomial prints the
/// second half of its variables as `y_0..y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u32,
    nvars: usize,
    paired: bool,
    terms: Vec<(Vec<u32>, u32)>,
}

impl ModPoly {
    pub fn p(&self) -> u32 {
        self.p
    }

    /// `(exponents, coefficient)` pairs in display order.
    pub fn terms(&self) -> &[(Vec<u32>, u32)] {
        &self.terms
    }

    /// Coefficient of the monomial with the given exponents (0 if absent).
    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms
            .iter()
            .find(|(e, _)| e.as_slice() == exps)
            .map_or(0, |(_, c)| *c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Marks the variables as two blocks `x`, `y` of equal length.
    pub fn paired(mut self) -> Self {
        self.paired = true;
        self
    }

    fn var_name(&self, v: usize) -> String {
        let n = self.nvars / 2;
        if self.paired && v >= n {
            format!("y{}", v - n)
        } else {
            format!("x{v}")
        }
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let mono: String = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.var_name(v)
                    } else {
                        format!("{}^{e}", self.var_name(v))
                    }
                })
                .collect();
            match (*c, mono.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (c, false) => write!(f, "{c}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Ghost component `w_k = Σ_{i≤k} p^i v_{off+i}^{p^{k-i}}`.
fn ghost(p: u32, k: usize, offset: usize) -> IntPoly {
    let mut w = IntPoly::zero();
    for i in 0..=k {
        let term = IntPoly::var(offset + i).pow(p.pow((k - i) as u32));
        w = w.add(&term.scale(&BigInt::from(p).pow(i as u32)));
    }
    w
}

/// Solves `Σ_{i≤k} p^i Q_i^{p^{k-i}} = target_k` for each `k`, with exact division.
fn from_ghost(p: u32, n: usize, target: impl Fn(usize) -> IntPoly) -> Result<Vec<IntPoly>> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = target(k);
        for (i, q) in out.iter().enumerate() {
            let t = q.pow(p.pow((k - i) as u32)).scale(&BigInt::from(p).pow(i as u32));
            rhs = rhs.sub(&t);
        }
        let qk = rhs.div_exact(&BigInt::from(p).pow(k as u32))?;
        if qk.max_exponent() > 0xff {
            return Err(Error::capacity("Witt polynomial exponent exceeds packing bound"));
        }
        out.push(qk);
    }
    Ok(out)
}

/// Integer sum, product and negation polynomials of length `n`.
pub(crate) fn structure_polys(p: u32, n: usize) -> Result<[Vec<IntPoly>; 3]> {
    let sum = from_ghost(p, n, |k| ghost(p, k, 0).add(&ghost(p, k, n)))?;
    let prod = from_ghost(p, n, |k| ghost(p, k, 0).mul(&ghost(p, k, n)))?;
    let neg = from_ghost(p, n, |k| ghost(p, k, 0).scale(&BigInt::from(-1)))?;
    Ok([sum, prod, neg])
}
