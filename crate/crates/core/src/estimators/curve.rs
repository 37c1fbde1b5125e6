use rayon::prelude::*;

use super::{greedy_separated, greedy_spanning, OrbitTable};
use crate::growth_order::GrowthSequence;
use crate::systems::{DynamicalSystemSpec, PointSet};
use crate::{Error, Real, Result};

fn check_mesh<T: Real>(eps: T, delta: T) -> Result<()> {
    let limit = eps.f64() / 4.0;
    if delta.f64() > limit * (1.0 + 1e-12) {
        return Err(Error::MeshTooCoarse { delta: delta.f64(), limit });
    }
    Ok(())
}

fn sample<T: Real>(spec: &DynamicalSystemSpec<T>, eps: T, delta: T) -> Result<PointSet<T>> {
    check_mesh(eps, delta)?;
    spec.sample_space(delta).map_err(|e| match e {
        Error::Budget { min_delta, .. } if min_delta > eps.f64() / 4.0 => Error::MeshTooCoarse {
            delta: min_delta,
            limit: eps.f64() / 4.0,
        },
        e => e,
    })
}

/// `n -> |greedy (n, eps)-separated set|` for `n = 1..=n_max`, made
/// non-decreasing by a running maximum.
pub fn growth_curve<T: Real>(spec: &DynamicalSystemSpec<T>, eps: T, n_max: usize, delta: T) -> Result<GrowthSequence<T>> {
    let pts = sample(spec, eps, delta)?;
    curve_on_points(spec, &pts, eps, n_max)
}

/// [`growth_curve`] on an explicit sample, e.g. nonwandering samples.
pub fn curve_on_points<T: Real>(spec: &DynamicalSystemSpec<T>, pts: &PointSet<T>, eps: T, n_max: usize) -> Result<GrowthSequence<T>> {
    let table = OrbitTable::build(spec, pts, n_max.saturating_sub(1))?;
    separated_curve(&table, eps, n_max)
}

/// Close pairs kept in memory once their count drops below this.
const PAIR_CAP: usize = 1 << 24;

/// Greedy scan over close pairs `(i, j)`, `i < j`, sorted by `j`.
fn greedy_from_pairs(len: usize, pairs: &[(u32, u32)]) -> usize {
    let mut kept = vec![true; len];
    let mut k = 0;
    for j in 0..len {
        let mut blocked = false;
        while k < pairs.len() && pairs[k].1 as usize == j {
            blocked |= kept[pairs[k].0 as usize];
            k += 1;
        }
        kept[j] = !blocked;
    }
    kept.iter().filter(|&&b| b).count()
}

/// Separated counts from a prebuilt table; `n_max` is clipped to the horizon.
///
/// Short windows query a spatial index of the kept samples. Once the close
/// pairs fit in memory they are materialised and filtered one time step at
/// a time, which makes each further window linear in the pair count.
pub fn separated_curve<T: Real>(table: &OrbitTable<T>, eps: T, n_max: usize) -> Result<GrowthSequence<T>> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be positive".into()));
    }
    let n_max = n_max.min(table.n_max() + 1);
    let len = table.len();
    let lim = eps * (T::one() + T::lit(super::CLOSE_TOL));
    let mut pairs: Option<Vec<(u32, u32)>> = None;
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let last = n - 1;
        if let Some(p) = pairs.as_mut() {
            let kept: Vec<(u32, u32)> = p
                .par_iter()
                .copied()
                .filter(|&(i, j)| table.metric_at(i as usize, j as usize, last) <= lim)
                .collect();
            *p = kept;
        } else {
            let mut index = super::index::NeighborIndex::new(table, last, eps);
            for i in 0..len {
                index.insert(i);
            }
            if index.candidate_pairs(len) <= PAIR_CAP {
                let lists: Vec<Vec<u32>> = (0..len).into_par_iter().map(|j| index.close_below(j, eps)).collect();
                let mut p = Vec::new();
                for (j, l) in lists.into_iter().enumerate() {
                    p.extend(l.into_iter().map(|i| (i, j as u32)));
                }
                pairs = Some(p);
            }
        }
        counts.push(match &pairs {
            Some(p) => greedy_from_pairs(len, p),
            None => greedy_separated(table, n, eps).1,
        });
    }
    GrowthSequence::from_counts(&counts)
}

/// Greedy spanning counts `n = 1..=n_max`, with running maximum.
pub fn spanning_curve<T: Real>(table: &OrbitTable<T>, eps: T, n_max: usize) -> Result<GrowthSequence<T>> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be positive".into()));
    }
    let n_max = n_max.min(table.n_max() + 1);
    let counts: Vec<usize> = (1..=n_max).into_par_iter().map(|n| greedy_spanning(table, n, eps).1).collect();
    GrowthSequence::from_counts(&counts)
}
