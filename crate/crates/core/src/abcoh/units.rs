use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exactbase::{Elem, FieldSpec};

use super::group::{AbelianPGroup, GroupPresentation};

/// Largest number of normalized cochains enumerated in one degree.
pub const MAX_COCHAINS: u64 = 1 << 24;

/// `K[A^i]` in the group basis, `A^i` indexed with leg 1 slowest.
///
/// Group elements of `A` use mixed radix over the cyclic orders (largest
/// first); index 0 is the identity.
#[derive(Debug, Clone)]
pub(crate) struct GroupAlgebra {
    group: AbelianPGroup,
    field: FieldSpec,
    orders: Vec<u64>,
    size: usize,
}

impl GroupAlgebra {
    pub fn new(group: &AbelianPGroup, field: &FieldSpec) -> Result<Self> {
        if group.p() != field.p() {
            return Err(Error::invalid(format!(
                "group prime {} differs from field characteristic {}",
                group.p(),
                field.p()
            )));
        }
        let orders = group.cyclic_orders();
        let size = orders.iter().product::<u64>() as usize;
        Ok(GroupAlgebra { group: group.clone(), field: field.clone(), orders, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn group(&self) -> &AbelianPGroup {
        &self.group
    }

    fn digits(&self, mut a: usize) -> Vec<u64> {
        let mut d = vec![0; self.orders.len()];
        for (k, &o) in self.orders.iter().enumerate().rev() {
            d[k] = a as u64 % o;
            a /= o as usize;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> usize {
        d.iter().zip(&self.orders).fold(0, |acc, (&x, &o)| acc * o as usize + x as usize)
    }

    /// Group law on `A`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((&u, &v), &o)| (u + v) % o).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<u64> = self.digits(a).iter().zip(&self.orders).map(|(&u, &o)| (o - u) % o).collect();
        self.undigits(&s)
    }

    /// Dimension of `K[A^i]`.
    pub fn dim(&self, i: usize) -> usize {
        self.size.pow(i as u32)
    }

    pub fn legs(&self, i: usize, mut t: usize) -> Vec<usize> {
        let mut out = vec![0; i];
        for l in out.iter_mut().rev() {
            *l = t % self.size;
            t /= self.size;
        }
        out
    }

    pub fn tuple(&self, legs: &[usize]) -> usize {
        legs.iter().fold(0, |acc, &l| acc * self.size + l)
    }

    pub fn one(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim(i)];
        v[0] = 1;
        v
    }

    /// Product in the commutative algebra `K[A^i]`.
    pub fn mul(&self, i: usize, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let table: Vec<usize> = (0..self.size * self.size).map(|k| self.add(k / self.size, k % self.size)).collect();
        let ys: Vec<(Vec<usize>, Elem)> =
            y.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, &c)| (self.legs(i, v), c)).collect();
        let mut out = vec![0; x.len()];
        for (u, &cx) in x.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            let lu = self.legs(i, u);
            for (lv, cy) in &ys {
                let w = lu.iter().zip(lv).fold(0, |acc, (&a, &b)| acc * self.size + table[a * self.size + b]);
                out[w] = f.add(out[w], f.mul(cx, *cy));
            }
        }
        out
    }

    /// Inverse of an element with augmentation 1; `x − 1` is nilpotent since
    /// `A` is a `p`-group in characteristic `p`.
    pub fn inv_normalized(&self, i: usize, x: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let one = self.one(i);
        let neg_u: Vec<Elem> = x.iter().zip(&one).map(|(&a, &b)| f.sub(b, a)).collect();
        let mut acc = one.clone();
        let mut term = one;
        loop {
            term = self.mul(i, &term, &neg_u);
            if term.iter().all(|&c| c == 0) {
                return acc;
            }
            acc = acc.iter().zip(&term).map(|(&a, &b)| f.add(a, b)).collect();
        }
    }

    pub fn pow(&self, i: usize, x: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut base = x.to_vec();
        let mut acc = self.one(i);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(i, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(i, &base, &base);
            }
        }
        acc
    }

    /// `j`-th coface `K[A^i] → K[A^{i+1}]`: `1⊗x`, `Δ` on leg `j`, `x⊗1`.
    pub fn coface(&self, i: usize, j: usize, x: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.dim(i + 1)];
        for (t, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let legs = self.legs(i, t);
            let mut new = Vec::with_capacity(i + 1);
            if j == 0 {
                new.push(0);
                new.extend_from_slice(&legs);
            } else if j == i + 1 {
                new.extend_from_slice(&legs);
                new.push(0);
            } else {
                new.extend_from_slice(&legs[..j]);
                new.extend_from_slice(&legs[j - 1..]);
            }
            out[self.tuple(&new)] = c;
        }
        out
    }

    /// Multiplicative coboundary `Π_j ∂_j(x)^{(−1)^j}` of a normalized unit.
    pub fn differential(&self, i: usize, x: &[Elem]) -> Vec<Elem> {
        let mut num = self.one(i + 1);
        let mut den = self.one(i + 1);
        for j in 0..=i + 1 {
            let c = self.coface(i, j, x);
            if j % 2 == 0 {
                num = self.mul(i + 1, &num, &c);
            } else {
                den = self.mul(i + 1, &den, &c);
            }
        }
        self.mul(i + 1, &num, &self.inv_normalized(i + 1, &den))
    }

    /// Number of normalized units `1 + I^{⊗i}` in `K[A^i]`.
    pub fn normalized_count(&self, i: usize) -> Option<u64> {
        (self.field.q() as u64).checked_pow(((self.size - 1) as u32).checked_pow(i as u32)?)
    }

    fn free_tuples(&self, i: usize) -> Vec<usize> {
        (0..self.dim(i)).filter(|&t| self.legs(i, t).iter().all(|&l| l != 0)).collect()
    }

    /// The normalized unit `1 + Σ c_t Π_j (t_j − e)` with `c` read from `code`.
    pub fn decode(&self, i: usize, mut code: u64) -> Vec<Elem> {
        let f = &self.field;
        let q = f.q() as u64;
        let mut x = self.one(i);
        let free = self.free_tuples(i);
        for &t in free.iter().rev() {
            let c = (code % q) as Elem;
            code /= q;
            if c == 0 {
                continue;
            }
            let legs = self.legs(i, t);
            for mask in 0u32..(1 << i) {
                let mut b = legs.clone();
                for (k, l) in b.iter_mut().enumerate() {
                    if mask >> k & 1 == 1 {
                        *l = 0;
                    }
                }
                let s = self.tuple(&b);
                let term = if mask.count_ones() % 2 == 1 { f.neg(c) } else { c };
                x[s] = f.add(x[s], term);
            }
        }
        x
    }

    /// Inverse of [`decode`](Self::decode): values on tuples with no identity leg.
    pub fn encode(&self, i: usize, x: &[Elem]) -> u64 {
        let q = self.field.q() as u64;
        self.free_tuples(i).iter().fold(0, |acc, &t| acc * q + x[t] as u64)
    }
}

/// `Z^i / B^i` for the multiplicative complex of normalized units.
#[derive(Debug, Clone)]
pub struct UnitCohomology {
    pub degree: usize,
    pub cocycles: u64,
    pub coboundaries: u64,
    pub presentation: GroupPresentation,
    /// One normalized cocycle per class (group-basis coefficients on `A^i`),
    /// the first enumerated member of its class.
    pub representatives: Vec<Vec<Elem>>,
    /// Order of each representative's class.
    pub class_orders: Vec<u64>,
}

impl UnitCohomology {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

fn check_count(ga: &GroupAlgebra, i: usize) -> Result<u64> {
    match ga.normalized_count(i) {
        Some(c) if c <= MAX_COCHAINS => Ok(c),
        _ => Err(Error::capacity(format!(
            "normalized {i}-cochains over F_{} for a group of order {} exceed {MAX_COCHAINS}",
            ga.field().q(),
            ga.size()
        ))),
    }
}

pub(crate) fn unit_cohomology(ga: &GroupAlgebra, i: usize) -> Result<UnitCohomology> {
    if i == 0 {
        return Err(Error::invalid("cohomology degree must be at least 1"));
    }
    let count = check_count(ga, i)?;
    let mut boundaries: HashSet<u64> = HashSet::new();
    if i == 1 {
        boundaries.insert(0);
    } else {
        for code in 0..check_count(ga, i - 1)? {
            let y = ga.decode(i - 1, code);
            boundaries.insert(ga.encode(i, &ga.differential(i - 1, &y)));
        }
    }
    let one = ga.one(i + 1);
    let cocycles: Vec<u64> = (0..count).filter(|&c| ga.differential(i, &ga.decode(i, c)) == one).collect();
    let bvec: Vec<Vec<Elem>> = {
        let mut b: Vec<u64> = boundaries.iter().copied().collect();
        b.sort_unstable();
        b.into_iter().map(|c| ga.decode(i, c)).collect()
    };
    let mut class_of: HashMap<u64, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_orders = Vec::new();
    let p = ga.group().p() as u64;
    for &z in &cocycles {
        if class_of.contains_key(&z) {
            continue;
        }
        let id = representatives.len();
        let x = ga.decode(i, z);
        for b in &bvec {
            class_of.insert(ga.encode(i, &ga.mul(i, &x, b)), id);
        }
        let mut order = 1;
        let mut y = x.clone();
        while !boundaries.contains(&ga.encode(i, &y)) {
            y = ga.pow(i, &y, p);
            order *= p;
        }
        representatives.push(x);
        class_orders.push(order);
    }
    let presentation = GroupPresentation::from_element_orders(ga.group().p(), class_orders.iter().copied())?;
    Ok(UnitCohomology {
        degree: i,
        cocycles: cocycles.len() as u64,
        coboundaries: boundaries.len() as u64,
        presentation,
        representatives,
        class_orders,
    })
}

/// Gauge classes of counit-normalized twists for `K[A]`, i.e. degree-2 unit
/// cohomology; the class law is the pointwise product of representatives.
pub fn twist_classes_bruteforce(a: &AbelianPGroup, field: &FieldSpec) -> Result<UnitCohomology> {
    let ga = GroupAlgebra::new(a, field)?;
    let total = (ga.size() as u32)
        .checked_pow(2)
        .and_then(|e| (field.q() as u64).checked_pow(e));
    if total.is_none_or(|t| t > MAX_COCHAINS) {
        return Err(Error::capacity(format!(
            "|F|^(|A|^2) = {}^{} exceeds {MAX_COCHAINS}",
            field.q(),
            ga.size() * ga.size()
        )));
    }
    unit_cohomology(&ga, 2)
}

/// Brute-force `H^i_Sw(O(A), K)` for `i = 1..=i_max`.
pub fn sweedler_bruteforce(a: &AbelianPGroup, field: &FieldSpec, i_max: usize) -> Result<Vec<UnitCohomology>> {
    let ga = GroupAlgebra::new(a, field)?;
    (1..=i_max).map(|i| unit_cohomology(&ga, i)).collect()
}

/// Checks `(J⊗1)(Δ⊗id)(J) = (1⊗J)(id⊗Δ)(J)` and counit normalization.
pub fn is_normalized_twist(a: &AbelianPGroup, field: &FieldSpec, j: &[Elem]) -> Result<bool> {
    let ga = GroupAlgebra::new(a, field)?;
    if j.len() != ga.dim(2) {
        return Err(Error::invalid(format!("twist needs {} coefficients, got {}", ga.dim(2), j.len())));
    }
    let normalized = ga.decode(2, ga.encode(2, j)) == j;
    Ok(normalized && ga.differential(2, j) == ga.one(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abcoh::h2_inv_formula;

    fn grp(orders: &[u64]) -> AbelianPGroup {
        AbelianPGroup::parse_orders(orders).unwrap()
    }

    #[test]
    fn encode_decode_roundtrip() {
        let ga = GroupAlgebra::new(&grp(&[4]), &FieldSpec::prime(2).unwrap()).unwrap();
        for code in 0..ga.normalized_count(2).unwrap() {
            let x = ga.decode(2, code);
            assert_eq!(ga.encode(2, &x), code);
            let d = ga.differential(2, &x);
            assert_eq!(ga.decode(3, ga.encode(3, &d)), d);
        }
    }

    #[test]
    fn spec_twist_classes() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t = twist_classes_bruteforce(&grp(&[2]), &f2).unwrap();
        assert_eq!(t.class_count(), 2);
        assert_eq!(t.presentation.factors(), &[2]);
        let t = twist_classes_bruteforce(&AbelianPGroup::trivial(2).unwrap(), &f2).unwrap();
        assert_eq!(t.class_count(), 1);
        let t = twist_classes_bruteforce(&grp(&[4]), &f2).unwrap();
        assert_eq!(t.class_count(), 4);
        assert_eq!(t.presentation.factors(), &[4]);
    }

    #[test]
    fn brute_force_matches_formula() {
        let cases: [(&[u64], u32); 5] = [(&[2], 4), (&[2, 2], 2), (&[4], 2), (&[3], 3), (&[2], 8)];
        for (orders, q) in cases {
            let a = grp(orders);
            let f = FieldSpec::with_order(q).unwrap();
            let t = twist_classes_bruteforce(&a, &f).unwrap();
            assert_eq!(t.presentation, h2_inv_formula(&a, &f).unwrap(), "A={a} q={q}");
        }
    }

    #[test]
    fn representatives_are_twists() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = grp(&[4]);
        let t = twist_classes_bruteforce(&a, &f2).unwrap();
        for r in &t.representatives {
            assert!(is_normalized_twist(&a, &f2, r).unwrap());
        }
    }

    #[test]
    fn sweedler_low_degrees() {
        let f2 = FieldSpec::prime(2).unwrap();
        let h = sweedler_bruteforce(&grp(&[2]), &f2, 3).unwrap();
        let s: Vec<String> = h.iter().map(|g| g.presentation.to_string()).collect();
        assert_eq!(s, ["Z/2", "Z/2", "0"]);
        assert_eq!(h[2].cocycles, h[2].coboundaries);
    }

    #[test]
    fn capacity_enforced() {
        let f4 = FieldSpec::with_order(4).unwrap();
        assert!(matches!(twist_classes_bruteforce(&grp(&[4]), &f4), Err(Error::Capacity(_))));
    }
}
