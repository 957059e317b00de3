//! Tensor powers of a finite-dimensional algebra and coalgebra: leg
//! permutations, `Γ²/∧²/π`, `Ψ`, `Alt`, `Cyc`, and the cobar complex.

mod cochain;
mod structure;
mod sym;
mod tensor;

pub use cochain::{
    beta_cocycle, cartier_d, cartier_d_unchecked, cochain_cohomology, counit_kernel_basis, normalized_cochain_basis,
    solve_coboundary, CohomologyInfo, MAX_MATRIX_ENTRIES,
};
pub use structure::{divided_power_structure, Structure};
pub use sym::{symmetry_residual, SymDecomposition};
pub use tensor::{join_index, parse_permutation, split_index, TensorElement};
