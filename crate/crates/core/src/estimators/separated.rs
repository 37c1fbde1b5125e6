use super::index::NeighborIndex;
use super::OrbitTable;
use crate::Real;

/// Last orbit time inspected by `(n, eps)`-separation: `n` points, `0..n-1`.
pub(crate) fn last_time(n: usize) -> usize {
    assert!(n >= 1, "window must be positive");
    n - 1
}

/// Greedy `(n, eps)`-separated subset of the samples, scanned in index order.
///
/// A sample is kept when its distance along the first `n` orbit points to
/// every kept sample exceeds `eps`. The result is maximal, hence also an
/// `(n, eps)`-spanning set of the samples.
pub fn greedy_separated<T: Real>(table: &OrbitTable<T>, n: usize, eps: T) -> (Vec<usize>, usize) {
    let last = last_time(n);
    assert!(last <= table.n_max(), "window {n} beyond table horizon");
    let mut index = NeighborIndex::new(table, last, eps);
    let mut kept = Vec::new();
    for i in 0..table.len() {
        if !index.any_close(i, eps) {
            index.insert(i);
            kept.push(i);
        }
    }
    let c = kept.len();
    (kept, c)
}

/// Quadratic reference scan without bucketing, for cross-checks.
pub fn greedy_separated_naive<T: Real>(table: &OrbitTable<T>, n: usize, eps: T) -> Vec<usize> {
    let last = last_time(n);
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..table.len() {
        if kept.iter().all(|&j| !table.close(i, j, last, eps)) {
            kept.push(i);
        }
    }
    kept
}

/// Every sample lies within `eps` of `centers` along the first `n` points.
pub fn covers_samples<T: Real>(table: &OrbitTable<T>, n: usize, eps: T, centers: &[usize]) -> bool {
    let last = last_time(n);
    let mut index = NeighborIndex::new(table, last, eps);
    for &c in centers {
        index.insert(c);
    }
    (0..table.len()).all(|i| centers.binary_search(&i).is_ok() || index.any_close(i, eps))
}
