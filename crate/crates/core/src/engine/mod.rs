//! Closed-form generating functions for induced maps, the calculus of
//! Lefschetz polynomials, and verification against the brute-force oracles.
//!
//! # A functor that is not Lefschetz-polynomial
//!
//! The pointed set of components cannot be written as a polynomial in the
//! reduced Dold indices: the identity maps of `S^1` and of `S^1 ∨ S^1 ∨ S^0`
//! have the same reduced Lefschetz numbers `-1, -1, ..`, hence the same
//! indices, yet fix different numbers of non-base components.
//!
//! ```
//! use dold_zeta_core::dynamics::{dold_from_lefschetz, LefschetzSequence};
//!
//! let circle = dold_from_lefschetz(&LefschetzSequence::from_i64(&[-1; 6])).unwrap();
//! let two_circles_and_point =
//!     dold_from_lefschetz(&LefschetzSequence::from_i64(&[-2 + 1; 6])).unwrap();
//! assert_eq!(circle, two_circles_and_point);
//!
//! // non-base components fixed by the identity
//! let (components_circle, components_other) = (0, 1);
//! assert_ne!(components_circle, components_other);
//! ```

mod closed_forms;
mod coeffic;
mod lefschetz;
mod partition;
mod realize;
mod symbolic;
mod verify;

pub use lefschetz::{compose_lefschetz, dold_polynomial_of_functor, eval_at, iterate_transport, LefschetzPolynomial};
pub use partition::{
    block_counts_polynomial, disjoint_union_combine, disjoint_union_counts, general_lefschetz_polynomial,
    gsymm_polynomial, order_polynomial, CoefficientTraces, LedgerEntry, PartitionRecursion,
};
pub use symbolic::{symbolic_product, symbolic_zeta, symmetric_power_polynomial, SymbolicSeries};
pub use closed_forms::{
    bounded_tuple_counts, coefficient_configuration_series, coefficient_symmetric_series, configuration_trace_series,
    configuration_traces, integer_coefficients, odd_sphere_symmetric_value, rhs_borsuk_ulam, rhs_bounded_tuples,
    rhs_symmetric_power, subset_euler_characteristic,
};
pub use realize::{basis_expansion, realize_polynomial, FunctorExpression, MAX_WEDGE_COPIES};
pub use coeffic::{
    coefficient_identities_check, coefficient_polynomial, CoefficientIdentities, CoefficientReport, CoefficientSeries,
};
pub use verify::{
    coefficient_oracle_checks, gsymm_check, partition_check, verify_identity, CountingPlan, DynamicsSource,
    IdentityReport, Mismatch, SeriesCheck, VerificationPlan, MAX_COEFFICIENT_ORDER,
};
