//! Exact continued fractions, `GL(2, ℤ)` actions and the `(Θ, Δ)` invariant
//! of Legendre laminations on the modular curves `X₀(N)`.
//!
//! Every numeric routine is generic over an [`Int`] scalar. The aliases at
//! the crate root fix it to [`BigInt`], which is what the CLI uses.

pub mod cf;
pub mod error;
pub mod gl2;
pub mod hecke;
pub mod invariants;
pub mod json;
pub mod legendre;
pub mod scalar;
pub mod surd;

pub use num_bigint::BigInt;

pub use cf::{apply_gl2, expand_rational, expand_surd, tail_equivalent, CfKind, TailDecision};
pub use error::{Error, Result};
pub use gl2::IsometryClass;
pub use hecke::{genus, surface_invariants, SurfaceInvariants};
pub use invariants::{
    enumerate_delta, invariant_equal, validate_delta, InvariantDecision, SingularityData,
};
pub use scalar::Int;

pub type Rational = num_rational::Ratio<BigInt>;
pub type Cf = cf::RegularCf<BigInt>;
pub type Mat2 = gl2::IntMat2<BigInt>;
pub type Surd = surd::QuadSurd<BigInt>;
pub type Point = gl2::BoundaryPoint<BigInt>;
pub type Axis = gl2::Axis<BigInt>;
pub type Terms = legendre::TermSequence<BigInt>;
pub type Step = legendre::LegendreStep<BigInt>;
pub type Predicate = legendre::TracePredicate<BigInt>;
pub type Invariant = invariants::LaminationInvariant<BigInt>;
