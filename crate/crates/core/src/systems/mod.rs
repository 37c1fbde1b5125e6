//! Sampled metric dynamical systems: the catalog of example maps.

pub mod budget;
mod catalog;
mod denjoy;
mod points;
mod spec;

pub use catalog::{
    conjugated_rotation, full_shift, morse_smale_circle, rotation, torus_linear, twist_annulus, TwistProfile, GOLDEN,
};
pub(crate) use catalog::torus_spec;
pub use denjoy::{denjoy, DenjoyMap, INSERTED_LENGTH};
pub use points::PointSet;
pub use spec::{DynamicalSystemSpec, Geometry, MapFn, MetricFn, SamplerFn, SystemKind};

/// Default number of backward iterates added to the Morse-Smale sample.
pub const MORSE_SMALE_DEPTH: usize = 256;
