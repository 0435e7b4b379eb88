//! Model of a formally real quasilocal field by its Galois-theoretic
//! invariants: two finite sets of odd primes (`pi1`, `pi2`, split by
//! cohomological dimension) and a truncation level per prime.
//!
//! On top of the model the crate computes the lattice of finite extension
//! classes, the norm-group correspondence with its class fields, and the
//! structure of power quotients of the multiplicative group.  Everything
//! closed-form is double-checked by an independent brute-force oracle that
//! works on explicit element sets of finite truncations; `verify` runs the
//! named sweeps and reports violations.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON and the CLI live in the
//! companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod arith;

pub mod component;
pub mod extension;
pub mod field;
pub mod norm;
pub mod oracle;
pub mod power;
pub mod shape;
pub mod verify;

pub use component::{canonical_component, ComponentError, PrimeComponent};
pub use extension::{
    brauer_descriptor, enumerate_extensions, BrauerDescriptor, EnumerationError, FiniteExtension,
    Reality, SigmaClass,
};
pub use field::{FieldSpec, PrimeClass, SpecError};
pub use norm::{
    class_field_core, class_field_of, extend_over_i, norm_group, norm_group_over_i,
    norm_groups_of_index, restrict_to_base, IndexFeasibility, InfeasibleReason, NormError,
    NormSubgroup, NormSubgroupOverI,
};
pub use oracle::{
    component_generators, enumerate_submodules, BitSet, FiniteAbelianGroup, ModelSubgroup,
    OracleError, Subgroup, TruncatedGaloisGroup, UnitModel,
};
pub use power::{
    admissible_pair, finite_index_shape, power_collapse, unit_quotient_shape, PowerError,
    ShapeLawViolation,
};
pub use shape::GroupShape;
pub use verify::{
    verify, Bounds, TheoremId, UnknownTheorem, VerificationReport, VerifyError, Violation,
};
