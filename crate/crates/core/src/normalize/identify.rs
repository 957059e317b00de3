use std::fmt;

use crate::error::{Error, Result};
use crate::quasihopf::{check_axioms, jacobson_radical, primitives, QuasiHopfDatum};
use crate::tensorops::TensorElement;

use super::normalize_with;

/// The four symmetric categories of Frobenius–Perron dimension 2 in characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fpdim2Label {
    VecZ2,
    RepZ2,
    RepAlpha2,
    D,
}

impl fmt::Display for Fpdim2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fpdim2Label::VecZ2 => "Vec(Z/2Z)",
            Fpdim2Label::RepZ2 => "Rep(Z/2Z)",
            Fpdim2Label::RepAlpha2 => "Rep(α₂)",
            Fpdim2Label::D => "D",
        })
    }
}

/// Semisimple → `Vec(Z/2Z)`; otherwise normalize, then a nontrivial
/// group-like → `Rep(Z/2Z)`, `R = 1` → `Rep(α₂)`, `R = 1 + d⊗d` → `D`.
pub fn identify_fpdim2(qh: &QuasiHopfDatum) -> Result<Fpdim2Label> {
    let ring = qh.ring();
    if qh.dim() != 2 || !ring.is_field() || ring.characteristic() != 2 {
        return Err(Error::invalid("identification needs a 2-dimensional datum over a field of characteristic 2"));
    }
    let rep = check_axioms(qh);
    if !rep.passed() {
        let names: Vec<&str> = rep.failed().map(|c| c.name).collect();
        return Err(Error::verification(format!("input fails axioms: {}", names.join(", "))));
    }
    let filt = jacobson_radical(qh)?;
    if filt.radical_basis().is_empty() {
        return Ok(Fpdim2Label::VecZ2);
    }
    let res = normalize_with(qh, &filt)?;
    let h = &res.datum;
    let s = h.structure();
    let q = ring.size() as u32;
    let one = h.one(1);
    for a in 0..q {
        for b in 0..q {
            let x = TensorElement::vector(ring, &[a, b]);
            if x != one && s.counit_all(&x) == 1 && s.delta(&x) == x.tensor(&x) {
                return Ok(Fpdim2Label::RepZ2);
            }
        }
    }
    if res.d.is_zero() && !primitives(h)?.is_empty() {
        return Ok(Fpdim2Label::RepAlpha2);
    }
    if !res.d.is_zero() {
        return Ok(Fpdim2Label::D);
    }
    Err(Error::verification("not a valid char-2 dim-2 triangular Hopf datum"))
}
