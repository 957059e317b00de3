//! Finite abelian p-groups, the invariant and Sweedler cohomology formulas,
//! brute-force twist classes and torsor decomposition.

mod formula;
mod group;
mod torsor;
mod units;

pub use formula::{dual_group, h2_inv_formula, h2_inv_formula_with_n, hom_group, sweedler_dims_formula};
pub use group::{AbelianPGroup, GroupPresentation};
pub use torsor::torsor_decompose;
pub use units::{is_normalized_twist, sweedler_bruteforce, twist_classes_bruteforce, UnitCohomology, MAX_COCHAINS};
