//! Exact computations on toric schemes given by lattice fans: cones and fans, the
//! scheme-property calculus, Cox gradings and irrelevant ideals, Picard groups, and
//! Čech and local cohomology of monomial modules.

pub mod catalog;
pub mod cohomology;
pub mod cone;
pub mod cox;
pub mod error;
pub mod fan_scheme;
pub mod lattice;
pub mod picard;

pub use error::{Result, ToricError};
