//! Exact coincidence-symmetry computations for lattices `L = A·Zⁿ` whose
//! structure matrix has entries in `Q` or a real quadratic field `Q(√d)`.
//!
//! * [`scalar`] and [`matrix`]: exact arithmetic over `Q(√d)`.
//! * [`intlattice`]: integer Hermite/Smith normal forms and the index of
//!   `Zⁿ ∩ MZⁿ` for rational `M`.
//! * [`lattice`] and [`coincidence`]: commensurability, membership in the
//!   coincidence symmetry and isometry groups, coincidence index `Σ`.
//! * [`decompose`]: factoring a coincidence isometry of a reflective
//!   lattice into reflections along lattice vectors.
//! * [`planar`]: the coincidence isometry group of `[[a, 1], [0, b]]·Z²`.
//! * [`census`]: denominator growth showing `OC(Zⁿ)` is not finitely generated.

pub mod census;
pub mod coincidence;
pub mod decompose;
pub mod error;
pub mod format;
pub mod intlattice;
pub mod lattice;
pub mod matrix;
pub mod par;
pub mod planar;
pub mod primes;
pub mod scalar;

pub use coincidence::{csg_member, oc_member, CoincidenceCertificate, Membership};
pub use decompose::{decompose, ReflectionSequence};
pub use error::{Error, ParseError, Result};
pub use lattice::Lattice;
pub use matrix::{ExactMatrix, ExactVector};
pub use par::Execution;
pub use scalar::{FieldContext, FieldElement, Rational};
