//! Fixtures shared by the benchmarks.

use qhnorm_core::quasihopf::{apply_twist, jacobson_radical, random_pseudotwist, TwistKind};
use qhnorm_core::QuasiHopfDatum;
use rand::Rng;

/// `qh` twisted by one random pseudotwist adapted to its radical filtration.
pub fn scrambled<R: Rng>(qh: &QuasiHopfDatum, rng: &mut R) -> QuasiHopfDatum {
    let filt = jacobson_radical(qh).expect("radical");
    let j = random_pseudotwist(qh, &filt, TwistKind::Pseudo, rng).expect("pseudotwist");
    apply_twist(qh, &j).expect("twist")
}
