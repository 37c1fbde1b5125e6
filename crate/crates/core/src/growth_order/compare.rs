use super::{GrowthSequence, OrderRelation};
use crate::Real;

/// Width of the log-ratio band identified as one class.
pub const EQUIV_BAND: f64 = std::f64::consts::LN_2 * 2.0;
/// Ratio that must be exceeded in both directions for `Incomparable`.
pub const DIVERGENCE_RATIO: f64 = 100.0;
pub const DEFAULT_TAIL: f64 = 0.5;
/// Minimal log-ratio slope against `ln n` accepted as a trend.
const MIN_TREND: f64 = 0.05;
const MIN_WINDOW: usize = 8;

pub(crate) fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    if ys.windows(2).all(|w| w[0] == w[1]) {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn range(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn sign_of(x: f64) -> OrderRelation {
    if x > 0.0 {
        OrderRelation::Greater
    } else {
        OrderRelation::Less
    }
}

/// Empirical comparison of `[a]` against `[b]`.
///
/// Returns `Greater` when `a` dominates. Windows of different length are
/// compared on the common prefix; `tail_fraction` selects the suffix on
/// which band and divergence are judged.
pub fn compare_sequences<T: Real>(a: &GrowthSequence<T>, b: &GrowthSequence<T>, tail_fraction: f64) -> OrderRelation {
    let n = a.window().min(b.window());
    if n < MIN_WINDOW || !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return OrderRelation::Inconclusive;
    }
    let start = ((n as f64) * (1.0 - tail_fraction)).floor() as usize;
    let start = start.min(n - 2);

    let mut full_x = Vec::with_capacity(n);
    let mut full_r = Vec::with_capacity(n);
    let mut tail_x = Vec::new();
    let mut tail_r = Vec::new();
    for i in 0..n {
        let (x, y) = (a.values()[i].f64(), b.values()[i].f64());
        let r = match (x > 0.0, y > 0.0) {
            (true, true) => (x / y).ln(),
            (false, false) => 0.0,
            (true, false) if i >= start => return OrderRelation::Greater,
            (false, true) if i >= start => return OrderRelation::Less,
            _ => continue,
        };
        let lx = ((i + 1) as f64).ln();
        full_x.push(lx);
        full_r.push(r);
        if i >= start {
            tail_x.push(lx);
            tail_r.push(r);
        }
    }

    let (lo, hi) = range(&tail_r);
    let tail_slope = ls_slope(&tail_x, &tail_r);
    if hi - lo <= EQUIV_BAND {
        // A slow trend can hide inside the band on the tail; it is accepted
        // only when the whole window leaves the band in the same direction.
        let (flo, fhi) = range(&full_r);
        let full_slope = ls_slope(&full_x, &full_r);
        let trending = fhi - flo > EQUIV_BAND
            && tail_slope.abs() >= MIN_TREND
            && full_slope.abs() >= MIN_TREND
            && tail_slope.signum() == full_slope.signum();
        return if trending { sign_of(tail_slope) } else { OrderRelation::Equivalent };
    }
    let div = DIVERGENCE_RATIO.ln();
    if hi > div && lo < -div {
        return OrderRelation::Incomparable;
    }
    let q = (tail_r.len() / 4).max(1);
    let head_mean = tail_r[..q].iter().sum::<f64>() / q as f64;
    let end_mean = tail_r[tail_r.len() - q..].iter().sum::<f64>() / q as f64;
    let drift = end_mean - head_mean;
    if tail_slope != 0.0 && drift != 0.0 && tail_slope.signum() == drift.signum() {
        sign_of(tail_slope)
    } else {
        OrderRelation::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OrderRelation::*;

    fn seq(n: usize, f: impl Fn(f64) -> f64) -> GrowthSequence<f64> {
        GrowthSequence::new((1..=n).map(|k| f(k as f64)).collect()).unwrap()
    }

    /// Per-step factor 1.01 in place of doubling keeps 2^16 steps inside f64.
    fn staircases(n: usize) -> (GrowthSequence<f64>, GrowthSequence<f64>) {
        let c = 1.01f64.ln();
        let (mut la, mut lb) = (0.0, 0.0);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for k in 1..=n {
            let m = usize::BITS - 1 - k.leading_zeros();
            if m % 2 == 0 {
                la += c;
            } else {
                lb += c;
            }
            a.push(f64::exp(la));
            b.push(f64::exp(lb));
        }
        (GrowthSequence::new(a).unwrap(), GrowthSequence::new(b).unwrap())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(compare_sequences(&seq(100, |n| n), &seq(100, |n| 2.0 * n), DEFAULT_TAIL), Equivalent);
        assert_eq!(compare_sequences(&seq(10000, |n| n), &seq(10000, |n| n * (n + 1.0).ln()), DEFAULT_TAIL), Less);
        let (a, b) = staircases(1 << 16);
        assert_eq!(compare_sequences(&a, &b, DEFAULT_TAIL), Incomparable);
    }

    #[test]
    fn staircase_oracle_direct_scan() {
        let (a, b) = staircases(1 << 16);
        let tail = (1 << 15) - 1..(1 << 16);
        let up = tail.clone().any(|i| a.values()[i] / b.values()[i] > 100.0);
        let down = tail.clone().any(|i| b.values()[i] / a.values()[i] > 100.0);
        assert!(up && down);
    }

    #[test]
    fn zeros_decide() {
        let z = seq(20, |_| 0.0);
        let one = seq(20, |_| 1.0);
        assert_eq!(compare_sequences(&one, &z, 0.5), Greater);
        assert_eq!(compare_sequences(&z, &one, 0.5), Less);
        assert_eq!(compare_sequences(&z, &z, 0.5), Equivalent);
    }

    #[test]
    fn common_prefix_and_trends() {
        assert_eq!(compare_sequences(&seq(50, |n| n * n), &seq(80, |n| n), 0.5), Greater);
        assert_eq!(compare_sequences(&seq(60, |n| 2f64.powf(n)), &seq(60, |n| n.powi(3)), 0.5), Greater);
        assert_eq!(compare_sequences(&seq(6, |n| n), &seq(6, |n| n), 0.5), Inconclusive);
    }
}
