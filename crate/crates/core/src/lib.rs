//! Exact algebra of univariate piecewise-linear functions in the min-plus
//! (tropical) setting: composition, roots, decomposition into binomials and
//! trinomials, commutation certificates and tropical parametrization of
//! polygonal lines.
//!
//! All computations are generic over [`Scalar`], an exact ordered field.
//! The aliases at the crate root fix it to arbitrary-precision rationals,
//! which is what the command-line front end and the test suites use.

pub mod commute;
pub mod decompose;
pub mod error;
pub mod interval;
pub mod parametrize;
pub mod pwl;
pub mod scalar;

pub use commute::{
    build_example_pair, commutes, commuting_witness, find_power_relation, fixed_points, CommutationWitness,
    FixedPointSet, SideWitness, WitnessOutcome,
};
pub use decompose::{
    complete_decomposability, decompose_algebraic_polynomial, decompose_algebraic_rational, decompose_complete,
    decompose_integer_rational, decompose_monotone_algebraic, decompose_monotone_integer, straighten,
    trinomial_criterion, Composant, ComposantKind, Decomposition, Stage, StageCounts,
};
pub use error::{Error, Result};
pub use interval::{Extended, Interval};
pub use pwl::{
    compose_all, Block, FunctionClass, FunctionTag, Monomial, MonomialForm, MonomialMode, PwlFunction, SlopeSign,
};
pub use parametrize::{
    parametrize_laurent, parametrize_polynomial, parametrize_rational, parametrize_with_chain, verify_functions,
    verify_parametrization, Parametrization, ParametrizationKind, PolygonalLine,
};
pub use scalar::Scalar;

pub use num_rational::{BigRational, Rational64};

/// Arbitrary-precision exact rational.
pub type Rational = BigRational;
/// Piecewise-linear function over arbitrary-precision rationals.
pub type Pwl = PwlFunction<Rational>;
/// Piecewise-linear function over 64-bit rationals (small inputs only).
pub type Pwl64 = PwlFunction<Rational64>;
