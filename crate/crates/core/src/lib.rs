//! Growth curves of separated sets and their growth classes for sampled maps.
//!
//! The crate is organised around growth curves: [`estimators`] turn a
//! [`systems::DynamicalSystemSpec`] into non-decreasing sequences,
//! [`growth_order`] compares and classifies those sequences, and
//! [`entropy_report`] aggregates them per scale. [`cascade`] builds
//! slow-entropy skew products with exact certificates and [`homology`]
//! bounds entropy order from an integer action on first homology.

pub mod cascade;
pub mod entropy_report;
pub mod error;
pub mod estimators;
pub mod growth_order;
pub mod homology;
pub mod scalar;
pub mod systems;

pub use error::{Error, Result};
pub use scalar::Real;

pub type GrowthSequence64 = growth_order::GrowthSequence<f64>;
pub type GrowthSequence32 = growth_order::GrowthSequence<f32>;
pub type SystemSpec64 = systems::DynamicalSystemSpec<f64>;
pub type SystemSpec32 = systems::DynamicalSystemSpec<f32>;
pub type OrbitTable64 = estimators::OrbitTable<f64>;
pub type EntropyProfile64 = entropy_report::EntropyProfile<f64>;
