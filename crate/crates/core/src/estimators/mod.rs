//! Growth-curve estimators: dynamical distances, greedy separated and
//! spanning sets, itinerary bounds and open-cover counts.

mod cover;
mod curve;
mod index;
mod itinerary;
mod orbit;
mod separated;
mod spanning;

pub use cover::{arc_cover, open_cover_growth, CoverElement};
pub use curve::{curve_on_points, growth_curve, separated_curve, spanning_curve};
pub use itinerary::{itinerary_upper_bound, BallPartition};
pub use orbit::{dynamical_distance, dynamical_distance_until, DistanceBound, OrbitTable, CLOSE_TOL, MAX_TABLE_COORDS};
pub use separated::{covers_samples, greedy_separated, greedy_separated_naive};
pub use spanning::greedy_spanning;
