//! Fock-space models of the homology of Hilbert schemes of points.
//!
//! The crate has four layers:
//!
//! * [`algebra`]: exact Heisenberg and Clifford Fock representations and the
//!   bigraded super-Fock space generated by a list of cohomology classes.
//! * [`series`]: truncated bivariate power series and the Göttsche product
//!   for Poincaré polynomials of `Hilb^n(X)`.
//! * [`partitions`]: partition combinatorics indexing torus fixed points of
//!   `Hilb^n(C^2)` and their Morse data.
//! * [`adhm`]: ADHM data, moment maps, stability, the monad complex, torus
//!   fixed points and a Kempf–Ness flow to the real moment-map level set.
//! * [`verify`]: named check suites over all of the above.
//!
//! Exact computations use [`num_rational::BigRational`] throughout; the ADHM
//! laboratory switches to `f64` only where a computation is intrinsically
//! numerical.

pub mod adhm;
pub mod algebra;
pub mod linalg;
pub mod partitions;
pub mod series;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Crate version, embedded in machine-readable reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
