//! Exact computer algebra for finite symmetric tensor categories in
//! characteristic 2.
//!
//! The crate has two halves. The arithmetic half ([`witt`], [`abcoh`])
//! computes truncated Witt vectors over finite fields, the cokernel of the
//! Artin-Schreier-Witt map, and from it the invariant (lazy) cohomology and
//! Sweedler cohomology of finite abelian p-groups, each cross-checked by
//! brute-force enumeration. The Hopf half ([`tensorops`], [`quasihopf`],
//! [`normalize`]) models finite-dimensional triangular quasi-Hopf data over
//! an exact base ring and twists them, degree by degree along the radical
//! filtration, into the canonical form `Phi = 1`, `R = 1 + d (x) d` with `d`
//! primitive and `d^2 = 0`.
//!
//! Everything is exact: field elements are coefficient vectors against an
//! explicit modulus, and every normalization emits a certificate of twists
//! whose replay reproduces the result bit for bit.

pub mod abcoh;
pub mod error;
pub mod exactbase;
pub mod formats;
pub mod normalize;
pub mod quasihopf;
pub mod tensorops;
pub mod witt;

pub use abcoh::{AbelianPGroup, GroupPresentation};
pub use error::{Error, Result};
pub use exactbase::{BaseRing, Elem, ExactMatrix, FieldSpec, Solve};
pub use normalize::{NormalizationResult, TwistCertificate};
pub use quasihopf::{QuasiHopfDatum, RadicalFiltration};
pub use tensorops::TensorElement;
pub use witt::{WittContext, WittRing, WittVector};
