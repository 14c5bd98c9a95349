//! Exact classification of (-1)-curve classes on the blowup of the
//! projective plane at `n` very general points, and its application to the
//! expected dimension of plane curves with assigned multiplicities.
//!
//! Everything is integer arithmetic on the Picard lattice `Z^(1+n)`.

pub mod classify;
pub mod cremona;
pub mod interpolation;
pub mod picard;

pub use classify::{
    align_to, enumerate_conditions_ab, enumerate_minus_one, is_minus_one_descent,
    is_minus_one_inductive, min_intersection_sorted, orbit, orbit_size, Certificate, ClassifyError,
    Condition, EnumerationTable, Method, Verdict,
};
pub use cremona::{
    apply_cremona, descend, noether_triple, three_largest, DescentError, DescentOutcome,
    HypothesisFailure, ReductionStep, ReductionTrace, TripleIndex,
};
pub use interpolation::{
    analyze_system, analyze_with_table, expected_dim, LinearSystem, Obstruction, ObstructionReport,
};
pub use picard::{intersect, ConditionSet, DivisorClass, PicardError, SurfaceContext};
