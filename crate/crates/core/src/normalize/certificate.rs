use std::fmt;

use crate::error::{Error, Result};
use crate::quasihopf::{apply_twist, QuasiHopfDatum};
use crate::tensorops::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistTag {
    /// `(ε⊗id)J = (id⊗ε)J = 1`.
    Twist,
    Pseudotwist,
}

impl fmt::Display for TwistTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistTag::Twist => "twist",
            TwistTag::Pseudotwist => "pseudotwist",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateEntry {
    pub tag: TwistTag,
    pub j: TensorElement,
}

/// Ordered (pseudo)twists; replaying them from the input reproduces the output exactly.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TwistCertificate {
    entries: Vec<CertificateEntry>,
}

impl TwistCertificate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<CertificateEntry>) -> Self {
        TwistCertificate { entries }
    }

    pub fn entries(&self) -> &[CertificateEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends `j`, tagging it by its counit behaviour in `qh`.
    pub fn push(&mut self, qh: &QuasiHopfDatum, j: TensorElement) {
        let tag = tag_of(qh, &j);
        self.entries.push(CertificateEntry { tag, j });
    }

    pub fn extend(&mut self, other: TwistCertificate) {
        self.entries.extend(other.entries);
    }

    /// Every entry is counit-normalized.
    pub fn is_twist(&self) -> bool {
        self.entries.iter().all(|e| e.tag == TwistTag::Twist)
    }

    /// Applies the entries in order; each tag is rechecked.
    pub fn replay(&self, qh: &QuasiHopfDatum) -> Result<QuasiHopfDatum> {
        let mut cur = qh.clone();
        for (i, e) in self.entries.iter().enumerate() {
            if tag_of(&cur, &e.j) != e.tag {
                return Err(Error::verification(format!("certificate entry {i} is tagged {} but is not", e.tag)));
            }
            cur = apply_twist(&cur, &e.j)?;
        }
        Ok(cur)
    }
}

fn tag_of(qh: &QuasiHopfDatum, j: &TensorElement) -> TwistTag {
    let s = qh.structure();
    let one = qh.one(1);
    if s.counit_leg(j, 0) == one && s.counit_leg(j, 1) == one {
        TwistTag::Twist
    } else {
        TwistTag::Pseudotwist
    }
}
