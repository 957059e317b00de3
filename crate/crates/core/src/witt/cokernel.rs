use crate::abcoh::GroupPresentation;
use crate::error::{Error, Result};
use crate::exactbase::FieldSpec;

use super::{WittRing, WittVector};

/// Largest `q^n` enumerated by [`coker_p`] and [`ker_p`].
pub const MAX_ENUMERATION: u64 = 1 << 20;

/// `W_n(F_q) / 𝒫(W_n(F_q))` with a canonical section.
#[derive(Debug, Clone)]
pub struct CokerP {
    ring: WittRing,
    presentation: GroupPresentation,
    image_size: u64,
    representatives: Vec<WittVector>,
    coset_of: Vec<u32>,
}

impl CokerP {
    pub fn ring(&self) -> &WittRing {
        &self.ring
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn image_size(&self) -> u64 {
        self.image_size
    }

    /// Lexicographically least element of each coset, in order of discovery.
    pub fn representatives(&self) -> &[WittVector] {
        &self.representatives
    }

    pub fn coset_index(&self, x: &WittVector) -> Result<usize> {
        if x.ring() != &self.ring {
            return Err(Error::invalid("element is not in this Witt ring"));
        }
        Ok(self.coset_of[x.index() as usize] as usize)
    }

    /// Canonical representative of the class of `x`.
    pub fn representative(&self, x: &WittVector) -> Result<&WittVector> {
        Ok(&self.representatives[self.coset_index(x)?])
    }
}

/// `ker 𝒫` as a list of elements.
#[derive(Debug, Clone)]
pub struct KerP {
    pub elements: Vec<WittVector>,
    pub presentation: GroupPresentation,
}

fn enumeration_size(ring: &WittRing) -> Result<u64> {
    match ring.size() {
        Some(s) if s <= MAX_ENUMERATION => Ok(s),
        _ => Err(Error::capacity(format!(
            "q^n = {}^{} exceeds enumeration bound {MAX_ENUMERATION}",
            ring.field().q(),
            ring.n()
        ))),
    }
}

pub fn coker_p(ring: &WittRing) -> Result<CokerP> {
    let size = enumeration_size(ring)?;
    let mut in_image = vec![false; size as usize];
    let mut image = Vec::new();
    for i in 0..size {
        let y = ring.from_index(i).artin_schreier();
        let j = y.index() as usize;
        if !in_image[j] {
            in_image[j] = true;
            image.push(y);
        }
    }
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; size as usize];
    let mut representatives = Vec::new();
    for i in 0..size {
        if coset_of[i as usize] != UNSET {
            continue;
        }
        let x = ring.from_index(i);
        let id = representatives.len() as u32;
        for y in &image {
            coset_of[ring.add_raw(&x, y).index() as usize] = id;
        }
        representatives.push(x);
    }
    let p = ring.p() as i64;
    let orders = representatives.iter().map(|x| {
        let mut y = x.clone();
        let mut order = 1u64;
        while !in_image[y.index() as usize] {
            y = y.scalar(p);
            order *= p as u64;
        }
        order
    });
    let presentation = GroupPresentation::from_element_orders(ring.p(), orders)?;
    Ok(CokerP {
        ring: ring.clone(),
        presentation,
        image_size: image.len() as u64,
        representatives,
        coset_of,
    })
}

pub fn ker_p(ring: &WittRing) -> Result<KerP> {
    let size = enumeration_size(ring)?;
    let elements: Vec<WittVector> = (0..size)
        .map(|i| ring.from_index(i))
        .filter(|x| x.artin_schreier().is_zero())
        .collect();
    let presentation =
        GroupPresentation::from_element_orders(ring.p(), elements.iter().map(|x| x.additive_order()))?;
    Ok(KerP { elements, presentation })
}

/// Outcome of checking `2·(x_0, x_1) = (0, x_0^2)` on `W_2(F_q)`.
#[derive(Debug, Clone)]
pub struct DoublingReport {
    pub checked: u64,
    pub failures: Vec<WittVector>,
}

impl DoublingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn doubling_identity_check(field: &FieldSpec) -> Result<DoublingReport> {
    if field.p() != 2 {
        return Err(Error::invalid("the doubling identity is stated for characteristic 2"));
    }
    let ring = WittRing::over(field, 2)?;
    let size = enumeration_size(&ring)?;
    let mut failures = Vec::new();
    for i in 0..size {
        let x = ring.from_index(i);
        let doubled = ring.add_raw(&x, &x);
        let expected = ring.element(vec![0, field.mul(x.coords()[0], x.coords()[0])])?;
        if doubled != expected {
            failures.push(x);
        }
    }
    Ok(DoublingReport { checked: size, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32, n: usize) -> WittRing {
        WittRing::over(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn spec_cokernels() {
        assert_eq!(coker_p(&ring(2, 2)).unwrap().presentation().factors(), &[4]);
        let c = coker_p(&ring(4, 1)).unwrap();
        assert_eq!(c.presentation().factors(), &[2]);
        assert_eq!(c.image_size(), 2);
        assert_eq!(ker_p(&ring(4, 1)).unwrap().presentation.factors(), &[2]);
        assert_eq!(coker_p(&ring(9, 1)).unwrap().presentation().factors(), &[3]);
    }

    #[test]
    fn cokernel_is_cyclic_of_order_pn() {
        for (q, n) in [(2, 1), (2, 3), (2, 4), (4, 2), (8, 2), (3, 2), (9, 2), (3, 3), (5, 2), (4, 3)] {
            let p = FieldSpec::with_order(q).unwrap().p() as u64;
            let r = ring(q, n);
            let c = coker_p(&r).unwrap();
            assert_eq!(c.presentation().factors(), &[p.pow(n as u32)], "q={q} n={n}");
            let k = ker_p(&r).unwrap();
            assert_eq!(k.elements.len() as u64 * c.image_size(), r.size().unwrap());
            assert_eq!(k.presentation.factors(), &[p.pow(n as u32)]);
        }
    }

    #[test]
    fn representatives_are_lex_least() {
        let r = ring(4, 2);
        let c = coker_p(&r).unwrap();
        for i in 0..r.size().unwrap() {
            let x = r.from_index(i);
            assert!(c.representative(&x).unwrap().index() <= i);
        }
        assert!(c.representatives()[0].is_zero());
    }

    #[test]
    fn doubling_identity() {
        for q in [2, 4, 8, 16] {
            let rep = doubling_identity_check(&FieldSpec::with_order(q).unwrap()).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.checked, (q * q) as u64);
        }
        let r = ring(4, 2);
        let x = r.element(vec![2, 0]).unwrap();
        assert_eq!(x.scalar(2), r.element(vec![0, 3]).unwrap());
    }
}
