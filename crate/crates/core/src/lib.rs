//! Exact computations around toric degenerations of horospherical
//! SP(2n)-varieties: Gelfand-Cetlin polytopes, representations realized as
//! polynomials on the unipotent radical, the subduction algorithm, and
//! bounded-degree SAGBI verification.

pub mod algebra;
pub mod checklist;
pub mod error;
pub mod gc;
pub mod linalg;
pub mod polyhedra;
pub mod rational;
pub mod sagbi;
pub mod symplectic;

pub use error::{Error, Result};
pub use rational::Q;
