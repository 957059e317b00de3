use std::fmt;

use crate::error::{Error, Result};
use crate::quasihopf::{apply_twist, QuasiHopfDatum, RadicalFiltration};
use crate::tensorops::{cartier_d, parse_permutation, solve_coboundary, Structure, SymDecomposition, TensorElement};

use super::certificate::TwistCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Restores `λ = ρ = 1`.
    UnitRepair,
    /// Brings `R` to `1 + d⊗d`.
    R,
    /// Kills the leading part of `Φ − 1`.
    Phi,
    /// Restores `R = 1 + d⊗d` after a `Φ` step.
    RepairR,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::UnitRepair => "unit",
            Phase::R => "R",
            Phase::Phi => "Phi",
            Phase::RepairR => "R-repair",
        })
    }
}

/// One handled degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub phase: Phase,
    pub degree: u32,
    /// Nonzero adapted coordinates of the discrepancy handled at this degree.
    pub support: usize,
    pub action: String,
}

impl fmt::Display for TranscriptEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8} degree {:>2}  support {:>3}  {}", self.phase, self.degree, self.support, self.action)
    }
}

/// Output of one trivialization pass.
#[derive(Clone, Debug)]
pub struct Stage {
    pub datum: QuasiHopfDatum,
    pub certificate: TwistCertificate,
    pub d: TensorElement,
    pub transcript: Vec<TranscriptEntry>,
}

pub(crate) struct Run<'a> {
    pub qh: QuasiHopfDatum,
    pub filt: &'a RadicalFiltration,
    pub d: TensorElement,
    pub cert: TwistCertificate,
    pub transcript: Vec<TranscriptEntry>,
    sd: SymDecomposition,
}

fn corruption(msg: String) -> Error {
    Error::verification(format!("input axiom corruption: {msg}"))
}

/// `Φ ↦ Φ_{σ}` in the placement convention of the hexagon axioms.
fn perm3(x: &TensorElement, s: &str) -> TensorElement {
    x.place_legs(&parse_permutation(s).expect("literal")).expect("arity 3")
}

/// Residuals of the four hexagon-derived identities for `(φ, T, δ)` in characteristic 2:
/// `T⊗δ + φ₃₁₂ + φ₁₃₂ + φ₁₂₃`, `δ⊗T + φ₂₃₁ + φ₂₁₃ + φ₁₂₃`,
/// `φ₁₂₃ + φ₃₂₁ + T⊗δ + δ⊗T`, `Cyc(φ) + Cyc(T⊗δ)`.
pub fn hexagon_identity_residuals(phi: &TensorElement, t: &TensorElement, delta: &TensorElement) -> [TensorElement; 4] {
    let td = t.tensor(delta);
    let dt = delta.tensor(t);
    [
        td.add(&perm3(phi, "312")).add(&perm3(phi, "132")).add(phi),
        dt.add(&perm3(phi, "231")).add(&perm3(phi, "213")).add(phi),
        phi.add(&perm3(phi, "321")).add(&td).add(&dt),
        phi.cyc3().add(&td.cyc3()),
    ]
}

impl<'a> Run<'a> {
    pub fn new(qh: QuasiHopfDatum, filt: &'a RadicalFiltration, d: TensorElement) -> Result<Self> {
        let ring = qh.ring();
        if ring.characteristic() != 2 || !ring.is_field() {
            return Err(Error::invalid("normalization needs a base field of characteristic 2"));
        }
        if filt.ring() != ring || filt.dim() != qh.dim() {
            return Err(Error::invalid("radical filtration does not belong to this datum"));
        }
        let sd = SymDecomposition::new(ring, qh.dim())?;
        Ok(Run { qh, filt, d, cert: TwistCertificate::new(), transcript: Vec::new(), sd })
    }

    pub fn into_stage(self) -> Stage {
        Stage { datum: self.qh, certificate: self.cert, d: self.d, transcript: self.transcript }
    }

    fn s(&self) -> &Structure {
        self.qh.structure()
    }

    fn twist(&mut self, j: TensorElement) -> Result<()> {
        if j == self.qh.one(2) {
            return Ok(());
        }
        self.cert.push(&self.qh, j.clone());
        self.qh = apply_twist(&self.qh, &j)?;
        Ok(())
    }

    fn lift(&self, x: &TensorElement) -> TensorElement {
        self.filt.from_adapted(x)
    }

    fn log(&mut self, phase: Phase, degree: u32, support: usize, action: impl Into<String>) {
        self.transcript.push(TranscriptEntry { phase, degree, support, action: action.into() });
    }

    /// `K = ε(ρ)·(ρ⁻¹⊗λ⁻¹)` gives `λ^K = ρ^K = 1`.
    pub fn repair_units(&mut self) -> Result<()> {
        let one = self.qh.one(1);
        if *self.qh.unit_left() == one && *self.qh.unit_right() == one {
            return Ok(());
        }
        let s = self.s();
        let (lam, rho) = (self.qh.unit_left(), self.qh.unit_right());
        let (el, er) = (s.counit_all(lam), s.counit_all(rho));
        if el != er {
            return Err(Error::invalid("unit constraints with ε(λ) ≠ ε(ρ) are not supported"));
        }
        let k = s.inverse(rho)?.tensor(&s.inverse(lam)?).scale(er);
        let deg = self.filt.degree(&k.sub(&self.qh.one(2))).unwrap_or(0);
        self.twist(k)?;
        self.log(Phase::UnitRepair, deg, 0, "K = ε(ρ)·ρ⁻¹⊗λ⁻¹");
        Ok(())
    }

    /// Brings `R` to `1 + d⊗d` degree by degree, starting from the current `d`.
    pub fn trivialize_r(&mut self, phase: Phase) -> Result<()> {
        let ring = self.qh.ring().clone();
        let one2 = self.qh.one(2);
        let mut last: Option<u32> = None;
        loop {
            let disc = self.qh.r().sub(&one2).sub(&self.d.tensor(&self.d));
            let Some(n) = self.filt.degree(&disc) else { break };
            if n == 0 {
                return Err(Error::invalid(
                    "R is not 1 modulo positive filtration degree; reduction of the semisimple part is not supported",
                ));
            }
            if let Some(m) = last {
                if n <= m {
                    return Err(Error::internal(format!("R discrepancy degree did not increase ({m} then {n})")));
                }
            }
            last = Some(n);
            let s = self.filt.homogeneous(&self.filt.to_adapted(&disc), n);
            let anti = s.sub(&s.flip());
            if !anti.is_zero() {
                return Err(Error::verification(format!(
                    "input is not triangular: degree-{n} part of R − 1 − d⊗d has antisymmetric part {}",
                    anti.format_with(self.filt.adapted_names())
                )));
            }
            let v = TensorElement::vector(&ring, &self.sd.untwist(&self.sd.pi_apply(&s)?));
            let u = self.sd.upper_part(&s.sub(&v.tensor(&v)));
            let mut action = Vec::new();
            if !u.is_zero() {
                self.twist(one2.add(&self.lift(&u)))?;
                action.push("J = 1 + ũ".to_string());
            }
            if !v.is_zero() {
                let vt = self.lift(&v);
                match self.filt.degree(&self.d) {
                    None => {
                        self.d = vt;
                        action.push("d := ṽ".into());
                    }
                    Some(p) if n > 2 * p => {
                        let j = one2.add(&self.d.tensor(&vt));
                        let jd = self.filt.degree(&j.sub(&one2)).unwrap_or(u32::MAX);
                        if 2 * jd < n + 2 * p || 2 * self.filt.degree(&vt).unwrap_or(u32::MAX) < n {
                            return Err(Error::internal(format!("merge twist at degree {n} violates the degree bounds")));
                        }
                        self.twist(j)?;
                        self.d = self.d.add(&vt);
                        action.push("J = 1 + d⊗ṽ, d += ṽ".into());
                    }
                    Some(p) => {
                        return Err(Error::internal(format!(
                            "R discrepancy with nonzero π at degree {n} ≤ 2·deg d = {}",
                            2 * p
                        )))
                    }
                }
            }
            let support = s.support().count();
            self.log(phase, n, support, action.join("; "));
        }
        Ok(())
    }

    /// Symmetric normalized 2-cochains of degree `ell` in adapted coordinates.
    fn symmetric_candidates(&self, ell: u32) -> Vec<TensorElement> {
        let ring = self.qh.ring();
        let deg = self.filt.degrees();
        let n = self.qh.dim();
        let mut out = Vec::new();
        for i in 1..n {
            for j in i..n {
                if deg[i] + deg[j] == ell {
                    let mut t = TensorElement::basis(ring, n, &[i, j]);
                    if i != j {
                        t = t.add(&TensorElement::basis(ring, n, &[j, i]));
                    }
                    out.push(t);
                }
            }
        }
        out
    }

    /// Runs the `Φ` loop; requires `R = 1 + d⊗d` on entry and keeps it on exit.
    pub fn trivialize_phi(&mut self) -> Result<()> {
        let one3 = self.qh.one(3);
        let mut last: Option<u32> = None;
        loop {
            let e = self.qh.phi().sub(&one3);
            let Some(ell) = self.filt.degree(&e) else { break };
            if ell == 0 {
                return Err(Error::invalid("Φ is not 1 modulo positive filtration degree"));
            }
            if last.is_some_and(|m| ell <= m) {
                return Err(Error::internal(format!("Φ discrepancy degree did not increase at {ell}")));
            }
            last = Some(ell);
            let phi = self.filt.homogeneous(&self.filt.to_adapted(&e), ell);
            let gr = self.filt.gr_structure(self.s())?;
            self.diagnostics(&gr, &phi, ell)?;

            let cands = self.symmetric_candidates(ell);
            let coeffs = solve_coboundary(&gr, &phi.neg(), &cands).ok_or_else(|| {
                Error::verification(format!(
                    "assumption violated: input not pseudotwist-equivalent to Chevalley form; unsolvable residual φ = {} at degree {ell}",
                    phi.format_with(self.filt.adapted_names())
                ))
            })?;
            let mut f = TensorElement::zeros(self.qh.ring(), self.qh.dim(), 2);
            for (c, b) in coeffs.iter().zip(&cands) {
                f = f.add(&b.scale(*c));
            }
            let support = phi.support().count();
            self.twist(self.qh.one(2).add(&self.lift(&f)))?;
            let mut action = String::from("F = 1 + f̃, df = φ");
            if self.filt.degree(&self.d).is_some() {
                self.repair_r_after(&f, ell)?;
                action.push_str("; R repaired");
            }
            self.trivialize_r(Phase::RepairR)?;
            if let Some(m) = self.filt.degree(&self.qh.phi().sub(&one3)) {
                if m <= ell {
                    return Err(Error::internal(format!("Φ − 1 still has degree {m} after handling degree {ell}")));
                }
            }
            self.log(Phase::Phi, ell, support, action);
        }
        Ok(())
    }

    /// The two repair twists `1 + [d⊗d, h] + dv⊗vd` and `1 + d⊗[d, v]`.
    fn repair_r_after(&mut self, f: &TensorElement, ell: u32) -> Result<()> {
        let ring = self.qh.ring().clone();
        let v = TensorElement::vector(&ring, &self.sd.untwist(&self.sd.pi_apply(f)?));
        let h = self.sd.upper_part(&f.sub(&v.tensor(&v)));
        let (vt, ht) = (self.lift(&v), self.lift(&h));
        let s = self.s().clone();
        let d = self.d.clone();
        let dd = d.tensor(&d);
        let comm = s.mul(&dd, &ht).sub(&s.mul(&ht, &dd));
        let (dv, vd) = (s.mul(&d, &vt), s.mul(&vt, &d));
        self.twist(self.qh.one(2).add(&comm).add(&dv.tensor(&vd)))?;
        let c = dv.sub(&vd);
        if !c.is_zero() {
            self.twist(self.qh.one(2).add(&d.tensor(&c)))?;
            let p = self.filt.degree(&d).expect("d ≠ 0");
            if ell >= 4 * p {
                let one = self.qh.one(1);
                let w = self.s().delta(&c).sub(&c.tensor(&one)).sub(&one.tensor(&c));
                if let Some(k) = self.filt.degree(&w) {
                    if k + p <= ell {
                        return Err(Error::internal(format!("W = Δ[d,v] − [d,v]⊗1 − 1⊗[d,v] has degree {k} ≤ ℓ − p")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cocycle, Alt, T and hexagon-identity checks at degree `ell`.
    fn diagnostics(&self, gr: &Structure, phi: &TensorElement, ell: u32) -> Result<()> {
        let names = self.filt.adapted_names();
        let dphi = cartier_d(gr, phi).map_err(|e| corruption(format!("φ at degree {ell}: {e}")))?;
        if !dphi.is_zero() {
            return Err(corruption(format!("dφ ≠ 0 at degree {ell}: {}", dphi.format_with(names))));
        }
        if !phi.alt3().is_zero() {
            return Err(corruption(format!("Alt(φ) ≠ 0 at degree {ell}")));
        }
        let ring = self.qh.ring();
        let n = self.qh.dim();
        let (t, delta) = match self.filt.degree(&self.d) {
            None => {
                if !phi.cyc3().is_zero() {
                    return Err(corruption(format!("Cyc(φ) ≠ 0 at degree {ell} with d = 0")));
                }
                (TensorElement::zeros(ring, n, 2), TensorElement::zeros(ring, n, 1))
            }
            Some(p) => {
                let one = self.qh.one(1);
                let e2 = self.s().delta(&self.d).sub(&self.d.tensor(&one)).sub(&one.tensor(&self.d));
                if let Some(k) = self.filt.degree(&e2) {
                    if k + p < ell {
                        return Err(corruption(format!("Δ(d) − d⊗1 − 1⊗d has degree {k} < ℓ − p")));
                    }
                }
                let t = if ell >= p {
                    self.filt.homogeneous(&self.filt.to_adapted(&e2), ell - p)
                } else {
                    TensorElement::zeros(ring, n, 2)
                };
                if t != t.flip() {
                    return Err(corruption(format!("T is not symmetric at degree {ell}")));
                }
                if !cartier_d(gr, &t).map_err(|e| corruption(format!("T: {e}")))?.is_zero() {
                    return Err(corruption(format!("T is not a 2-cocycle at degree {ell}")));
                }
                (t, self.filt.homogeneous(&self.filt.to_adapted(&self.d), p))
            }
        };
        for (k, r) in hexagon_identity_residuals(phi, &t, &delta).iter().enumerate() {
            if !r.is_zero() {
                return Err(corruption(format!(
                    "hexagon identity ({}) fails at degree {ell}: {}",
                    ["a", "b", "c", "d"][k],
                    r.format_with(names)
                )));
            }
        }
        Ok(())
    }
}
