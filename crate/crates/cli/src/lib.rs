//! Command-line front end for the `quasilocal` library: spec and
//! extension parsing, norm-correspondence queries, verification
//! sweeps, and DOT lattice diagrams.  JSON wire formats live in
//! [`json`], the lattice emitter in [`dot`].

pub mod dot;
pub mod json;

mod app;

pub use app::run;
