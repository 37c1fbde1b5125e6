use std::collections::HashSet;

use super::OrbitTable;
use crate::systems::{DynamicalSystemSpec, PointSet};
use crate::{Error, Real, Result};

/// Finite cover by closed metric balls of a common radius.
#[derive(Debug, Clone)]
pub struct BallPartition<T> {
    pub centers: PointSet<T>,
    pub radius: T,
}

impl<T: Real> BallPartition<T> {
    /// Balls of radius `eps / 2` centred on a maximal `eps/2`-separated
    /// subset of `points`, so they cover `points`.
    pub fn greedy(spec: &DynamicalSystemSpec<T>, points: &PointSet<T>, eps: T) -> Self {
        let radius = eps / T::lit(2.0);
        let mut centers = PointSet::new(points.dim());
        for p in points.iter() {
            if centers.iter().all(|c| spec.distance(c, p) > radius) {
                centers.push(p);
            }
        }
        Self { centers, radius }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// First ball containing `x`.
    pub fn locate(&self, spec: &DynamicalSystemSpec<T>, x: &[T]) -> Option<usize> {
        let lim = self.radius * (T::one() + T::lit(super::CLOSE_TOL));
        self.centers.iter().position(|c| spec.distance(c, x) <= lim)
    }
}

/// Number of distinct length-`n` itineraries through the partition realised
/// by the tabled orbits. Each sample is assigned its first containing ball.
pub fn itinerary_upper_bound<T: Real>(
    spec: &DynamicalSystemSpec<T>,
    table: &OrbitTable<T>,
    partition: &BallPartition<T>,
    n: usize,
) -> Result<usize> {
    if n == 0 || n > table.n_max() + 1 {
        return Err(Error::Invalid(format!("itinerary length {n} outside 1..={}", table.n_max() + 1)));
    }
    let mut seen = HashSet::new();
    for i in 0..table.len() {
        let mut word = Vec::with_capacity(n);
        for t in 0..n {
            let b = partition.locate(spec, table.at(i, t)).ok_or(Error::NotCovering(i))?;
            word.push(b as u32);
        }
        seen.insert(word);
    }
    Ok(seen.len())
}
