use std::collections::HashMap;

use super::orbit::{OrbitTable, CLOSE_TOL};
use crate::systems::Geometry;
use crate::Real;

/// Axis bucketing rule at scale `eps`.
#[derive(Debug, Clone, Copy)]
enum Axis {
    /// Periodic with `n` buckets of width `period / n`.
    Wrap { period: f64, n: i64 },
    Line { width: f64 },
}

/// Spatial hash over the orbit coordinates at times `0` and `last`.
///
/// Two samples that are `eps`-close along the first `last + 1` orbit points
/// fall in neighbouring buckets at both times, so candidate enumeration
/// never misses a close pair.
pub(crate) struct NeighborIndex<'a, T> {
    table: &'a OrbitTable<T>,
    last: usize,
    times: Vec<usize>,
    axes: Vec<(usize, Axis)>,
    prefix: Option<usize>,
    buckets: HashMap<u64, Vec<u32>>,
}

fn mix(h: u64, v: i64) -> u64 {
    (h.rotate_left(5) ^ (v as u64)).wrapping_mul(0x517c_c1b7_2722_0a95)
}

impl<'a, T: Real> NeighborIndex<'a, T> {
    pub fn new(table: &'a OrbitTable<T>, last: usize, eps: T) -> Self {
        let e = eps.f64() * (1.0 + 1e-6);
        let times = if last == 0 { vec![0] } else { vec![0, last] };
        let mut axes = Vec::new();
        let mut prefix = None;
        match &table.geometry {
            Geometry::Axes(periods) => {
                for (a, p) in periods.iter().enumerate() {
                    match p {
                        Some(period) => {
                            let n = (period / e).floor() as i64;
                            if n >= 3 {
                                axes.push((a, Axis::Wrap { period: *period, n }));
                            }
                        }
                        None => axes.push((a, Axis::Line { width: e })),
                    }
                }
            }
            Geometry::Prefix => {
                let lim = eps.f64() * (1.0 + CLOSE_TOL);
                let m = if lim >= 1.0 { 0 } else { (-lim.log2() - 1e-12).ceil().max(0.0) as usize };
                prefix = Some(m.min(table.dim()));
            }
            Geometry::Opaque => {}
        }
        Self { table, last, times, axes, prefix, buckets: HashMap::new() }
    }

    fn cell(&self, i: usize) -> Vec<i64> {
        let mut c = Vec::new();
        for &t in &self.times {
            let p = self.table.at(i, t);
            if let Some(m) = self.prefix {
                for v in &p[..m] {
                    c.push(v.f64() as i64);
                }
            }
            for (a, ax) in &self.axes {
                let x = p[*a].f64();
                c.push(match ax {
                    Axis::Wrap { period, n } => {
                        let u = (x / period).rem_euclid(1.0);
                        ((u * *n as f64).floor() as i64).clamp(0, n - 1)
                    }
                    Axis::Line { width } => (x / width).floor() as i64,
                });
            }
        }
        c
    }

    fn hash(cell: &[i64]) -> u64 {
        cell.iter().fold(0xcbf2_9ce4_8422_2325, |h, &v| mix(h, v))
    }

    pub fn insert(&mut self, i: usize) {
        let h = Self::hash(&self.cell(i));
        self.buckets.entry(h).or_default().push(i as u32);
    }

    /// Calls `visit` with every indexed sample that may be close to `i`;
    /// stops early when `visit` returns `false`.
    pub fn for_candidates(&self, i: usize, mut visit: impl FnMut(usize) -> bool) {
        let base = self.cell(i);
        let per_time = base.len() / self.times.len();
        let prefix_len = self.prefix.unwrap_or(0);
        // Offsets apply to axis components only; prefix components are exact.
        let mut movable = Vec::new();
        for (ti, _) in self.times.iter().enumerate() {
            for (k, (_, ax)) in self.axes.iter().enumerate() {
                movable.push((ti * per_time + prefix_len + k, *ax));
            }
        }
        let combos = 3usize.pow(movable.len() as u32);
        let mut cell = base.clone();
        for mut code in 0..combos {
            for (slot, ax) in &movable {
                let off = (code % 3) as i64 - 1;
                code /= 3;
                cell[*slot] = match ax {
                    Axis::Wrap { n, .. } => (base[*slot] + off).rem_euclid(*n),
                    Axis::Line { .. } => base[*slot] + off,
                };
            }
            if let Some(b) = self.buckets.get(&Self::hash(&cell)) {
                for &j in b {
                    if !visit(j as usize) {
                        return;
                    }
                }
            }
        }
    }

    /// Upper bound on the close pairs among indexed samples.
    pub fn candidate_pairs(&self, len: usize) -> usize {
        let mut total = 0usize;
        for i in 0..len {
            self.for_candidates(i, |j| {
                if j < i {
                    total += 1;
                }
                true
            });
        }
        total
    }

    /// Indexed samples `j < i` with `d_last(i, j) <= eps`, ascending.
    pub fn close_below(&self, i: usize, eps: T) -> Vec<u32> {
        let mut out = Vec::new();
        self.for_candidates(i, |j| {
            if j < i && self.table.close(i, j, self.last, eps) {
                out.push(j as u32);
            }
            true
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Any indexed sample `j` with `d_last(i, j) <= eps`.
    pub fn any_close(&self, i: usize, eps: T) -> bool {
        let mut found = false;
        self.for_candidates(i, |j| {
            if self.table.close(i, j, self.last, eps) {
                found = true;
                return false;
            }
            true
        });
        found
    }

    /// Indexed samples `j` with `d_last(i, j) <= eps`, including `i` when present.
    pub fn close_to(&self, i: usize, eps: T) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_candidates(i, |j| {
            if j == i || self.table.close(i, j, self.last, eps) {
                out.push(j);
            }
            true
        });
        out.sort_unstable();
        out.dedup();
        out
    }
}
