//! Gluing of affine semigroups.
//!
//! Given generator sets `A ⊂ ℕⁿ` and `B ⊂ ℕⁿ` this crate decides (in the
//! cases where a criterion is known) whether `C = k1·A ∪ k2·B` is a gluing,
//! i.e. whether the toric ideal of `C` is `I_A + I_B + ⟨ρ⟩` for a single
//! binomial `ρ`, builds `ρ`, verifies the result against an exact toric ideal
//! computation, and compares Betti numbers and depth of the rings involved.
//!
//! Modules, bottom up:
//!
//! * [`lattice`]: Hermite/Smith normal forms, integer kernels, `s(A, b)`.
//! * [`semigroup`]: generator sets, membership, cone membership, `d(A, b)`.
//! * [`groebner`]: binomial Buchberger, saturation, toric ideals.
//! * [`gluing`]: the gluing criteria, constructions and verifier.
//! * [`resolution`]: Betti numbers, depth, Cohen–Macaulayness.

pub mod check;
pub mod error;
pub mod gluing;
pub mod groebner;
pub mod lattice;
pub mod resolution;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, IntegerMatrix, LatticeBasis, SmithDecomposition};
pub use scalar::{Field, Fp, IntScalar};
pub use semigroup::{DValue, GeneratorSet, LineForm, MembershipOracle};

/// Default coefficient field for homology computations.
pub type Fp32003 = Fp<32003>;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
