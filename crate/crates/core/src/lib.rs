//! Exact algebra engine for generalized Clifford algebras of homogeneous
//! forms.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * exact scalars over `Q` and `F_p`, commutative polynomials, the free
//!   associative algebra and the mixed ring `k<a_J>[x_1, ..., x_n]`;
//! * the Clifford presentation of a form specification and its hypersurface;
//! * degree-truncated completion of the relations into a rewriting system,
//!   normal forms, filtered dimensions and centers;
//! * verification, search and surjectivity checks for matrix representations;
//! * graded modules over the binary polynomial ring, splitting types and the
//!   Ulrich criterion for the curve case.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cpoly;
pub mod error;
pub mod linalg;
pub mod mixed;
pub mod ncpoly;
pub mod normalform;
pub mod polymatrix;
pub mod presentation;
pub mod representations;
pub mod scalar;
pub mod text;
pub mod ulrich;

pub use cpoly::{CPoly, Monomial};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use mixed::MixedPoly;
pub use ncpoly::{NcPoly, Word};
pub use normalform::{truncated_completion, RewriteSystem};
pub use polymatrix::PolyMatrix;
pub use presentation::{FormSpec, Presentation};
pub use representations::{verify_rep, MatrixRep, Verification};
pub use scalar::{FieldSpec, Scalar};
pub use ulrich::{GradedModule, SplittingType, UlrichReport};
