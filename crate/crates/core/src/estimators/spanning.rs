use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::index::NeighborIndex;
use super::separated::last_time;
use super::OrbitTable;
use crate::Real;

/// Stored ball entries are capped near this many pairs.
const BALL_CAP: usize = 1 << 24;

/// Greedy set cover of the samples by dynamical `eps`-balls centred at
/// samples. Picks the ball covering most uncovered samples, ties to the
/// lowest index.
pub fn greedy_spanning<T: Real>(table: &OrbitTable<T>, n: usize, eps: T) -> (Vec<usize>, usize) {
    let last = last_time(n);
    assert!(last <= table.n_max(), "window {n} beyond table horizon");
    let len = table.len();
    let mut index = NeighborIndex::new(table, last, eps);
    for i in 0..len {
        index.insert(i);
    }
    let index = index;
    // Balls are stored when small enough, otherwise recomputed on demand.
    let stored: Option<Vec<Vec<u32>>> = (index.candidate_pairs(len) <= BALL_CAP).then(|| {
        (0..len)
            .into_par_iter()
            .map(|i| index.close_to(i, eps).into_iter().map(|j| j as u32).collect())
            .collect()
    });
    let ball = |i: usize| -> Vec<usize> {
        match &stored {
            Some(b) => b[i].iter().map(|&j| j as usize).collect(),
            None => index.close_to(i, eps),
        }
    };
    let sizes: Vec<usize> = match &stored {
        Some(b) => b.iter().map(Vec::len).collect(),
        None => (0..len).into_par_iter().map(|i| index.close_to(i, eps).len()).collect(),
    };

    let mut covered = vec![false; len];
    let mut remaining = len;
    let mut round = 0usize;
    let mut heap: BinaryHeap<(usize, Reverse<usize>, usize)> =
        sizes.iter().enumerate().map(|(i, &b)| (b, Reverse(i), 0)).collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (count, Reverse(i), stamp) = heap.pop().expect("uncovered samples remain");
        if stamp != round {
            let fresh = ball(i).into_iter().filter(|&j| !covered[j]).count();
            if fresh > 0 {
                heap.push((fresh, Reverse(i), round));
            }
            continue;
        }
        debug_assert!(count > 0);
        for j in ball(i) {
            if !covered[j] {
                covered[j] = true;
                remaining -= 1;
            }
        }
        chosen.push(i);
        round += 1;
    }
    let c = chosen.len();
    (chosen, c)
}
