//! Structure computations for twisted Jacobi structures on sl2.
//!
//! The crate builds up in layers:
//!
//! * [`rat`], [`cnum`]: exact rational scalars and the complex
//!   floating-point fallback with a shared tolerance.
//! * [`matrix`], [`subspace`], [`roots`]: exact linear algebra
//!   (fraction-free elimination, reduced echelon subspaces, characteristic
//!   polynomials), approximate spectra, and low-degree root finding.
//! * [`lie`]: structure-constant Lie algebras, validation, and the
//!   classical families realized as matrix algebras.
//! * [`spaces`]: parametrized derivation spaces, the compatible-twist
//!   space, and weight decompositions under a chosen diagonal action.
//! * [`sl2`]: the 5-dimensional derivation space of sl2 in tuple
//!   coordinates, the automorphism action in closed and matrix form, the
//!   staged orbit reduction, and orbit equivalence tests.
//! * [`homlie`]: twisted-Jacobi validation for structure-constant
//!   algebras and the one-dimensional extension of sl2 by a derivation.
//! * [`reps`]: irreducible sl2 modules, the compatibility equation for
//!   the extension generator, module gluing into higher-dimensional
//!   twisted algebras, and invariant complements.
//! * [`verify`]: the seeded end-to-end checks behind `verify`, shared by
//!   the command-line tool and the acceptance tests.

pub mod cnum;
pub mod homlie;
pub mod lie;
pub mod matrix;
pub mod rat;
pub mod reps;
pub mod roots;
pub mod sl2;
pub mod spaces;
pub mod subspace;
pub mod verify;

pub use cnum::{CNum, EPS};
pub use matrix::Matrix;
pub use rat::Rat;
pub use subspace::SubspaceBasis;
