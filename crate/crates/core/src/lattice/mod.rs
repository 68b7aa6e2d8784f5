//! Exact integer linear algebra: normal forms, kernels, cokernels and finitely
//! generated abelian groups.

mod group;
mod matrix;
mod normal_form;
pub mod vector;

pub use group::{cokernel, FinAbGroup, GroupElement, Index};
pub use matrix::IntMatrix;
pub use normal_form::{
    cokernel_invariants, hermite_normal_form, is_hermite_form, kernel_basis, lattice_basis,
    lattice_contains, reduce_mod_lattice, smith_normal_form, solve_integer, Smith,
};
pub use vector::IntVec;
