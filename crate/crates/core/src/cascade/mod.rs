//! Slow-entropy cylindrical cascades over an irrational rotation, built
//! stage by stage in exact arithmetic and re-checked by an independent
//! verifier.

mod builder;
mod convergents;
mod envelope;
mod exact;
mod params;
mod system;
mod target;
mod verify;
mod weyl;
mod witness;

pub use builder::{build_cascade, build_with, target_from_sequence, BuildOptions};
pub use convergents::{alpha_approximant, convergent_pairs, convergents, Convergent};
pub use envelope::{envelope_eval, envelope_f64};
pub use params::CascadeParams;
pub use system::cylindrical_cascade;
pub use target::Target;
pub use verify::{inequalities, verify_bounds, CertEntry, Certificate, VISIT_CELLS, VISIT_SAMPLES};
pub use weyl::{weyl_grid_check, weyl_sum, WeylCheck};
pub use witness::{grid_visit_witness, lambda_witness, VisitReport, WitnessReport};

/// Separation scale of the lower-bound argument, as a fraction.
pub const SEPARATION_EPS: (i64, i64) = (1, 20);
/// Measure of `{|sin(2 pi q x)| > 1/sqrt 2}`, as a fraction.
pub const LAMBDA_MEASURE: (i64, i64) = (1, 2);
/// Uniform factor between the recorded bounds and the Weyl-sum constants.
pub const SLACK_FACTOR: f64 = 16.0 * std::f64::consts::PI * std::f64::consts::PI;
/// Ones appended to the quotients before truncating the angle.
pub const ALPHA_TAIL: usize = 64;
