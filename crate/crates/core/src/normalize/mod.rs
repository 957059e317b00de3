//! Normalization of triangular quasi-Hopf data over characteristic-2 fields
//! to `Φ = 1`, `R = 1 + d⊗d` with `d` primitive and `d² = 0`.

mod algorithm;
mod certificate;
mod identify;

use crate::error::{Error, Result};
use crate::quasihopf::{check_axioms, jacobson_radical, QuasiHopfDatum, RadicalFiltration};
use crate::tensorops::TensorElement;

pub use algorithm::{hexagon_identity_residuals, Phase, Stage, TranscriptEntry};
pub use certificate::{CertificateEntry, TwistCertificate, TwistTag};
pub use identify::{identify_fpdim2, Fpdim2Label};

use algorithm::Run;

#[derive(Clone, Debug)]
pub struct NormalizationResult {
    pub datum: QuasiHopfDatum,
    pub certificate: TwistCertificate,
    pub d: TensorElement,
    /// `deg d`, absent when `d = 0`.
    pub degree: Option<u32>,
    /// Image of `d` in `gr(H)[deg d]`, in adapted coordinates.
    pub delta: Option<TensorElement>,
    pub transcript: Vec<TranscriptEntry>,
    /// The input had `Φ = 1` and every certificate entry is a twist.
    pub is_twist: bool,
}

/// `R ↦ 1 + d⊗d`. Unit constraints are left as they are.
pub fn trivialize_r(qh: &QuasiHopfDatum, filt: &RadicalFiltration) -> Result<Stage> {
    let mut run = Run::new(qh.clone(), filt, qh.one(1).scale(0))?;
    run.trivialize_r(Phase::R)?;
    Ok(run.into_stage())
}

/// `Φ ↦ 1` keeping `R = 1 + d⊗d` exactly (with `d` possibly corrected in higher degree).
pub fn trivialize_phi(qh: &QuasiHopfDatum, filt: &RadicalFiltration, d: &TensorElement) -> Result<Stage> {
    if *qh.r() != qh.one(2).add(&d.tensor(d)) {
        return Err(Error::invalid("trivialize_phi needs R = 1 + d⊗d exactly"));
    }
    let mut run = Run::new(qh.clone(), filt, d.clone())?;
    run.repair_units()?;
    run.trivialize_phi()?;
    Ok(run.into_stage())
}

/// The final-form invariants; `Err` names the first violated one.
pub fn verify_final_form(qh: &QuasiHopfDatum, d: &TensorElement) -> Result<()> {
    let s = qh.structure();
    let one = qh.one(1);
    let fail = |what: &str| Err(Error::verification(format!("final form violated: {what}")));
    if *qh.phi() != qh.one(3) {
        return fail("Φ ≠ 1");
    }
    if *qh.r() != qh.one(2).add(&d.tensor(d)) {
        return fail("R ≠ 1 + d⊗d");
    }
    if s.delta(d) != d.tensor(&one).add(&one.tensor(d)) {
        return fail("d is not primitive");
    }
    if !s.mul(d, d).is_zero() {
        return fail("d² ≠ 0");
    }
    if *qh.unit_left() != one || *qh.unit_right() != one {
        return fail("unit constraints λ, ρ ≠ 1");
    }
    let rep = check_axioms(qh);
    if !rep.passed() {
        let names: Vec<&str> = rep.failed().map(|c| c.name).collect();
        return fail(&format!("axioms fail: {}", names.join(", ")));
    }
    Ok(())
}

/// Radical, unit repair, `R`-trivialization, `Φ`-trivialization, then
/// verification of the final form and of the certificate replay.
pub fn normalize(qh: &QuasiHopfDatum) -> Result<NormalizationResult> {
    let filt = jacobson_radical(qh)?;
    normalize_with(qh, &filt)
}

pub fn normalize_with(qh: &QuasiHopfDatum, filt: &RadicalFiltration) -> Result<NormalizationResult> {
    let rep = check_axioms(qh);
    if !rep.passed() {
        let names: Vec<&str> = rep.failed().map(|c| c.name).collect();
        return Err(Error::verification(format!("input fails axioms: {}", names.join(", "))));
    }
    let mut run = Run::new(qh.clone(), filt, qh.one(1).scale(0))?;
    run.repair_units()?;
    run.trivialize_r(Phase::R)?;
    run.trivialize_phi()?;
    let stage = run.into_stage();
    verify_final_form(&stage.datum, &stage.d)?;
    if stage.certificate.replay(qh)? != stage.datum {
        return Err(Error::verification("certificate replay does not reproduce the normalized datum"));
    }
    let lead = filt.leading_part(&stage.d);
    let is_twist = *qh.phi() == qh.one(3) && stage.certificate.is_twist();
    Ok(NormalizationResult {
        datum: stage.datum,
        certificate: stage.certificate,
        d: stage.d,
        degree: lead.as_ref().map(|l| l.0),
        delta: lead.map(|l| l.1),
        transcript: stage.transcript,
        is_twist,
    })
}
