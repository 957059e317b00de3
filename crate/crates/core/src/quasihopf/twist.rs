use rand::Rng;

use crate::error::{Error, Result};
use crate::exactbase::{nullspace, ExactMatrix};
use crate::tensorops::TensorElement;

use super::{QuasiHopfDatum, RadicalFiltration};

/// Twists `(Δ, Φ, R, λ, ρ)` by an invertible `J ∈ H⊗H`.
///
/// `Δ^J = JΔJ⁻¹`, `Φ^J = (1⊗J)(id⊗Δ)(J)·Φ·(Δ⊗id)(J⁻¹)(J⁻¹⊗1)`, `R^J = J₂₁RJ⁻¹`,
/// `λ^J = (ε⊗id)(J)·λ`, `ρ^J = (id⊗ε)(J)·ρ`. Twisting by `J` then by `K`
/// equals twisting by `KJ`.
pub fn apply_twist(qh: &QuasiHopfDatum, j: &TensorElement) -> Result<QuasiHopfDatum> {
    let s = qh.structure();
    if j.arity() != 2 || j.dim() != qh.dim() || j.ring() != qh.ring() {
        return Err(Error::invalid("twist must be a 2-tensor over the datum's ring and basis"));
    }
    let j_inv = s.inverse(j).map_err(|_| Error::NotInvertible("twist J is not invertible".into()))?;
    let delta = (0..qh.dim())
        .map(|a| {
            let da = s.delta(&qh.basis_vector(a));
            s.mul(&s.mul(j, &da), &j_inv).into_coeffs()
        })
        .collect();
    let new_s = s.with_delta(delta)?;
    let left = s.mul(&s.embed(j, &[1, 2], 3), &s.delta_leg(j, 1));
    let right = s.mul(&s.delta_leg(&j_inv, 0), &s.embed(&j_inv, &[0, 1], 3));
    let phi = s.mul(&s.mul(&left, qh.phi()), &right);
    let r = s.mul(&s.mul(&j.flip(), qh.r()), &j_inv);
    let lam = s.mul(&s.counit_leg(j, 0), qh.unit_left());
    let rho = s.mul(&s.counit_leg(j, 1), qh.unit_right());
    QuasiHopfDatum::new(new_s, phi, r, lam, rho)
}

/// `J = (x⊗x)·Δ(x)⁻¹`; twisting by it is the inner automorphism by `x`.
pub fn coboundary_twist(qh: &QuasiHopfDatum, x: &TensorElement) -> Result<TensorElement> {
    let s = qh.structure();
    if x.arity() != 1 || x.dim() != qh.dim() {
        return Err(Error::invalid("x must be an element of H"));
    }
    if s.counit_all(x) != qh.ring().one() {
        return Err(Error::invalid("coboundary twist needs ε(x) = 1"));
    }
    let dx_inv = s.inverse(&s.delta(x))?;
    Ok(s.mul(&x.tensor(x), &dx_inv))
}

/// Basis of the primitive elements `Δ(u) = u⊗1 + 1⊗u`.
pub fn primitives(qh: &QuasiHopfDatum) -> Result<Vec<TensorElement>> {
    let ring = qh.ring();
    if !ring.is_field() {
        return Err(Error::invalid("primitive elements are computed over a field"));
    }
    let s = qh.structure();
    let one = qh.one(1);
    let cols: Vec<Vec<_>> = (0..qh.dim())
        .map(|a| {
            let e = qh.basis_vector(a);
            s.delta(&e).sub(&e.tensor(&one)).sub(&one.tensor(&e)).into_coeffs()
        })
        .collect();
    let m = ExactMatrix::from_cols(&cols, qh.dim() * qh.dim());
    Ok(nullspace(ring, &m).into_iter().map(|v| TensorElement::vector(ring, &v)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    /// `(ε⊗id)J = (id⊗ε)J = 1`.
    Normalized,
    /// Any invertible `J`.
    Pseudo,
}

/// Random `J = 1 + Σ c_ij b_i⊗b_j` in the adapted basis `b`, skipping `(b₀, b₀)`;
/// normalized twists use only `i, j ≥ 1`. Retries until `J` is invertible.
pub fn random_pseudotwist<R: Rng>(
    qh: &QuasiHopfDatum,
    filtration: &RadicalFiltration,
    kind: TwistKind,
    rng: &mut R,
) -> Result<TensorElement> {
    let ring = qh.ring();
    if !ring.is_field() {
        return Err(Error::invalid("random twists are drawn over a field"));
    }
    let d = qh.dim();
    let q = ring.size() as u32;
    for _ in 0..64 {
        let mut adapted = TensorElement::zeros(ring, d, 2);
        adapted.set(&[0, 0], 1);
        for i in 0..d {
            for k in 0..d {
                let skip = match kind {
                    TwistKind::Normalized => i == 0 || k == 0,
                    TwistKind::Pseudo => i == 0 && k == 0,
                };
                if !skip {
                    adapted.set(&[i, k], rng.gen_range(0..q));
                }
            }
        }
        let j = filtration.from_adapted(&adapted);
        if qh.structure().inverse(&j).is_ok() {
            return Ok(j);
        }
    }
    Err(Error::internal("no invertible random twist found in 64 draws"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactbase::FieldSpec;
    use crate::quasihopf::{
        alpha2_squared, category_d, check_axioms, divided_power, group_algebra, jacobson_radical,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn twist_fixture_on_d() {
        let qh = category_d();
        let ring = qh.ring().clone();
        let dd = qh.one(2).add(&TensorElement::basis(&ring, 2, &[1, 1]));
        assert_eq!(apply_twist(&qh, &dd).unwrap().r(), qh.r());
        assert_eq!(apply_twist(&qh, &qh.one(2)).unwrap(), qh);
        // J = 1 + d⊗1: R^J = (1 + 1⊗d)(1 + d⊗d)(1 + d⊗1), and the d⊗d terms cancel.
        let j = qh.one(2).add(&TensorElement::basis(&ring, 2, &[1, 0]));
        let t = apply_twist(&qh, &j).unwrap();
        assert_eq!(qh.format(t.r()), "1⊗1 + 1⊗d + d⊗1");
        assert!(check_axioms(&t).passed(), "{}", check_axioms(&t));
        assert_eq!(qh.format(t.unit_right()), "1 + d");
    }

    #[test]
    fn scrambling_fixture() {
        let qh = alpha2_squared();
        let ring = qh.ring().clone();
        let j = qh.one(2).add(&TensorElement::basis(&ring, 4, &[1, 2]));
        let t = apply_twist(&qh, &j).unwrap();
        assert_eq!(qh.format(t.r()), "1⊗1 + a⊗a + a⊗b + b⊗a + ab⊗ab");
        assert!(check_axioms(&t).passed());
    }

    #[test]
    fn twisting_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let qh = alpha2_squared();
        let filt = jacobson_radical(&qh).unwrap();
        let j = random_pseudotwist(&qh, &filt, TwistKind::Pseudo, &mut rng).unwrap();
        let k = random_pseudotwist(&qh, &filt, TwistKind::Pseudo, &mut rng).unwrap();
        let once = apply_twist(&apply_twist(&qh, &j).unwrap(), &k).unwrap();
        let both = apply_twist(&qh, &qh.mul(&k, &j)).unwrap();
        assert_eq!(once, both);
        assert!(check_axioms(&once).passed(), "{}", check_axioms(&once));
        let j_inv = qh.structure().inverse(&j).unwrap();
        assert_eq!(apply_twist(&apply_twist(&qh, &j).unwrap(), &j_inv).unwrap(), qh);
    }

    #[test]
    fn coboundary_twist_is_inner() {
        let qh = divided_power(2).unwrap();
        let x = qh.one(1).add(&qh.basis_vector(1)).add(&qh.basis_vector(3));
        let j = coboundary_twist(&qh, &x).unwrap();
        let t = apply_twist(&qh, &j).unwrap();
        // Commutative: conjugation is trivial, so Δ is unchanged.
        assert_eq!(t.structure().delta_table(), qh.structure().delta_table());
        assert!(check_axioms(&t).passed());
        assert!(coboundary_twist(&qh, &qh.basis_vector(1)).is_err());
    }

    #[test]
    fn primitive_spaces() {
        assert_eq!(primitives(&category_d()).unwrap().len(), 1);
        assert_eq!(primitives(&alpha2_squared()).unwrap().len(), 2);
        assert_eq!(primitives(&divided_power(3).unwrap()).unwrap().len(), 1);
        let g = group_algebra(&[2], &FieldSpec::prime(2).unwrap()).unwrap();
        // g − 1 is not primitive; K[Z/2] has no nonzero primitives
        assert_eq!(primitives(&g).unwrap().len(), 0);
    }
}
