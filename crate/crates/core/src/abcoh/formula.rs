use crate::error::{Error, Result};
use crate::exactbase::FieldSpec;
use crate::witt::{coker_p, WittRing};

use super::group::{p_log, AbelianPGroup, GroupPresentation};

/// `Hom(A, Z/p^n)`, which is isomorphic to `A` once `p^n` kills `A`.
pub fn dual_group(a: &AbelianPGroup, n: u32) -> Result<AbelianPGroup> {
    if n < a.max_exponent() {
        return Err(Error::invalid(format!(
            "p^{n} does not annihilate {a} (exponent p^{})",
            a.max_exponent()
        )));
    }
    let exps = a.exponents().iter().map(|&r| r.min(n)).collect();
    AbelianPGroup::new(a.p(), exps)
}

/// `Hom(⊕ Z/p^a, ⊕ Z/p^b) = ⊕_{a,b} Z/p^{min(a,b)}`.
pub fn hom_group(a: &AbelianPGroup, b: &GroupPresentation) -> Result<GroupPresentation> {
    let p = a.p();
    let b_exps = b
        .factors()
        .iter()
        .map(|&f| p_log(p, f).ok_or_else(|| Error::invalid(format!("Z/{f} is not a {p}-group"))))
        .collect::<Result<Vec<_>>>()?;
    let mut factors = Vec::new();
    for &ea in a.exponents() {
        for &eb in &b_exps {
            factors.push((p as u64).pow(ea.min(eb)));
        }
    }
    Ok(GroupPresentation::new(factors))
}

/// `H^2_inv(A, F_q) = Hom(A^∨, W_n(F_q)/𝒫)` with `n = r_1`.
pub fn h2_inv_formula(a: &AbelianPGroup, field: &FieldSpec) -> Result<GroupPresentation> {
    h2_inv_formula_with_n(a, field, a.max_exponent())
}

/// Same as [`h2_inv_formula`] with an explicit Witt length `n ≥ r_1`.
pub fn h2_inv_formula_with_n(a: &AbelianPGroup, field: &FieldSpec, n: u32) -> Result<GroupPresentation> {
    if field.p() != a.p() {
        return Err(Error::invalid(format!(
            "field characteristic {} differs from group prime {}",
            field.p(),
            a.p()
        )));
    }
    let dual = dual_group(a, n)?;
    if dual.is_trivial() {
        return Ok(GroupPresentation::trivial());
    }
    let coker = coker_p(&WittRing::over(field, n as usize)?)?;
    hom_group(&dual, coker.presentation())
}

/// `[H^1, ..., H^{i_max}]`: `A`, `H^2_inv`, then zeros.
pub fn sweedler_dims_formula(a: &AbelianPGroup, field: &FieldSpec, i_max: usize) -> Result<Vec<GroupPresentation>> {
    let mut out = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        out.push(match i {
            1 => a.presentation(),
            2 => h2_inv_formula(a, field)?,
            _ => GroupPresentation::trivial(),
        });
    }
    Ok(out)
}
