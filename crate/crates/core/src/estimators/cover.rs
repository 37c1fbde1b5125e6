use serde::{Deserialize, Serialize};

use super::OrbitTable;
use crate::growth_order::GrowthSequence;
use crate::systems::DynamicalSystemSpec;
use crate::{Error, Real, Result};

/// Open set of a cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub enum CoverElement<T> {
    /// `{x : d(x, center) < radius}`.
    Ball { center: Vec<T>, radius: T },
    /// Open arc `(start, start + length)` of the first coordinate mod 1.
    Arc { start: T, length: T },
}

impl<T: Real> CoverElement<T> {
    pub fn contains(&self, spec: &DynamicalSystemSpec<T>, x: &[T]) -> bool {
        match self {
            CoverElement::Ball { center, radius } => spec.distance(center, x) < *radius,
            CoverElement::Arc { start, length } => {
                let u = (x[0] - *start).frac1();
                u > T::zero() && u < *length
            }
        }
    }
}

/// `k` arcs of equal length overlapping by `overlap` on each side.
pub fn arc_cover<T: Real>(k: usize, overlap: T) -> Vec<CoverElement<T>> {
    let k_t = T::usize(k);
    (0..k)
        .map(|i| CoverElement::Arc { start: T::usize(i) / k_t - overlap, length: T::one() / k_t + overlap * T::lit(2.0) })
        .collect()
}

/// Greedy subcover of `members` by the elements containing each point.
fn split(groups_in: &[usize], memberships: &[Vec<u16>], k: usize) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = groups_in.to_vec();
    let mut out = Vec::new();
    while !left.is_empty() {
        let mut counts = vec![0usize; k];
        for &p in &left {
            for &e in &memberships[p] {
                counts[e as usize] += 1;
            }
        }
        let best = (0..k).max_by_key(|&e| (counts[e], std::cmp::Reverse(e))).unwrap();
        let (inside, rest): (Vec<usize>, Vec<usize>) =
            left.iter().partition(|&&p| memberships[p].contains(&(best as u16)));
        out.push(inside);
        left = rest;
    }
    out
}

/// Greedy estimate of `N(alpha^n)`, the smallest subcover of the `n`-fold
/// refinement, on the tabled samples.
///
/// Each member of the running subcover is refined by a greedy cover of its
/// samples at the next time, so the count never decreases.
pub fn open_cover_growth<T: Real>(
    spec: &DynamicalSystemSpec<T>,
    table: &OrbitTable<T>,
    cover: &[CoverElement<T>],
    n_max: usize,
) -> Result<GrowthSequence<T>> {
    if cover.is_empty() || cover.len() > u16::MAX as usize {
        return Err(Error::Invalid("cover must have between 1 and 65535 elements".into()));
    }
    let n_max = n_max.min(table.n_max() + 1);
    let k = cover.len();
    let membership_at = |t: usize| -> Result<Vec<Vec<u16>>> {
        (0..table.len())
            .map(|i| {
                let m: Vec<u16> = (0..k).filter(|&e| cover[e].contains(spec, table.at(i, t))).map(|e| e as u16).collect();
                if m.is_empty() {
                    Err(Error::NotCovering(i))
                } else {
                    Ok(m)
                }
            })
            .collect()
    };
    let all: Vec<usize> = (0..table.len()).collect();
    let mut groups = split(&all, &membership_at(0)?, k);
    let mut counts = vec![groups.len()];
    for t in 1..n_max {
        let m = membership_at(t)?;
        groups = groups.iter().flat_map(|g| split(g, &m, k)).collect();
        counts.push(groups.len());
    }
    GrowthSequence::from_counts(&counts)
}
