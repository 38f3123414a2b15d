//! Motivic and topological Milnor fibres of functions with normal-crossing
//! zero divisors, computed from combinatorial resolution data.
//!
//! * [`motivic_ring`]: exact `Z[L]` arithmetic, keyed classes, zeta factorizations
//! * [`nc_model`]: resolution data, validation, log-space census, JSON I/O
//! * [`milnor`]: motivic Milnor fibre terms and their realizations
//! * [`blowup`]: blow-up transformation of models and invariance checks
//! * [`logspace`]: numeric points of the complete log space in charts

pub mod blowup;
pub mod logspace;
pub mod milnor;
pub mod motivic_ring;
pub mod nc_model;
