//! Diagram algebras (partition, half-partition, Brauer, walled Brauer and
//! symmetric group algebras), their Fourier bases, exact and approximate
//! Fourier transforms, and a matrix-level simulation of the
//! separation-of-variables quantum Fourier transform.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`linalg`]: exact/high-precision scalars and dense matrices.
//! * [`diagram`]: diagrams, composition, generators, basis enumeration.
//! * [`algebra`]: scaled basis, regular representation, trace and Schur forms.
//! * [`irreps`]: Young diagrams, labels, multiplicities, Bratteli graphs.
//! * [`forms`]: orthogonal and seminormal generator matrices, factorizations.
//! * [`fourier`]: Fourier elements, transform matrices, niceness, concentration.
//! * [`sov`]: the recursive transform built from transversals and embeddings.
//! * [`checks`]: named invariant suites used by the command line.
//! * [`report`]: JSON/CSV/DOT serialisation.

// Linked only so that rug builds against the system GMP/MPFR.
use gmp_mpfr_sys as _;

pub mod algebra;
pub mod checks;
pub mod diagram;
pub mod error;
pub mod forms;
pub mod fourier;
pub mod irreps;
pub mod linalg;
pub mod par;
pub mod report;
pub mod scalar;
pub mod sov;

pub use error::{Error, Result};
pub use rug::Rational;
pub use scalar::{DParam, Exact, Real, Scalar};
