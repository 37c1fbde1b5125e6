use super::compare::ls_slope;
use super::GrowthSequence;
use crate::Real;

#[derive(Debug, Clone)]
pub enum Family<T> {
    Exponential,
    Polynomial,
    Custom(GrowthSequence<T>),
}

const TAIL: f64 = 0.5;

/// Local degree jump across tail halves that counts as a divergent fit.
fn diverges(p1: f64, p2: f64) -> bool {
    p2 - p1 > (0.25 * p1.abs()).max(0.5)
}

struct Tail {
    n: Vec<f64>,
    ln_a: Vec<f64>,
}

fn tail_of<T: Real>(a: &GrowthSequence<T>) -> Tail {
    let w = a.window();
    let start = ((w as f64) * (1.0 - TAIL)).floor() as usize;
    let start = start.min(w.saturating_sub(2));
    let mut t = Tail { n: Vec::new(), ln_a: Vec::new() };
    for i in start..w {
        let v = a.values()[i].f64();
        if v > 0.0 {
            t.n.push((i + 1) as f64);
            t.ln_a.push(v.ln());
        }
    }
    t
}

/// Slopes on the two halves of `(xs, ys)` and on the whole.
fn split_slopes(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let h = xs.len() / 2;
    (ls_slope(&xs[..h], &ys[..h]), ls_slope(&xs[h..], &ys[h..]), ls_slope(xs, ys))
}

/// Least-squares limsup estimate of `ln a(n)` against the base of `family`.
///
/// Returns `+inf` when the fitted slope keeps growing across the tail
/// halves. Short tails (fewer than 4 positive points) project to 0.
pub fn project_onto_family<T: Real>(a: &GrowthSequence<T>, family: &Family<T>) -> T {
    let t = tail_of(a);
    if t.n.len() < 4 {
        return T::zero();
    }
    let ln_n: Vec<f64> = t.n.iter().map(|n| n.ln()).collect();
    let (p1, p2, p) = split_slopes(&ln_n, &t.ln_a);
    let poly_diverges = diverges(p1, p2);
    let out = match family {
        Family::Polynomial => {
            if poly_diverges {
                f64::INFINITY
            } else {
                p
            }
        }
        Family::Exponential => {
            if poly_diverges {
                ls_slope(&t.n, &t.ln_a)
            } else {
                0.0
            }
        }
        Family::Custom(b) => {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for (n, la) in t.n.iter().zip(&t.ln_a) {
                let idx = *n as usize;
                if idx <= b.window() && b.at(idx).f64() > 0.0 {
                    xs.push(b.at(idx).f64().ln());
                    ys.push(*la);
                }
            }
            let spread = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - xs.iter().cloned().fold(f64::INFINITY, f64::min);
            if xs.len() < 4 {
                0.0
            } else if !(spread > 1e-12) {
                let grows = ys.last().unwrap() - ys.first().unwrap() > 1e-12;
                if grows {
                    f64::INFINITY
                } else {
                    0.0
                }
            } else {
                let (c1, c2, c) = split_slopes(&xs, &ys);
                if diverges(c1, c2) {
                    f64::INFINITY
                } else {
                    c
                }
            }
        }
    };
    T::lit(out.max(0.0))
}
