use crate::{Error, Result};

pub const BUDGET_ENV: &str = "OGE_MEM_BUDGET";
/// Default cap on sampled points.
pub const DEFAULT_POINT_BUDGET: u128 = 4_000_000;

pub fn point_budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .filter(|b| *b > 0)
        .unwrap_or(DEFAULT_POINT_BUDGET)
}

/// Fails with the smallest mesh whose sample fits in the budget.
/// `count` must be non-increasing in the mesh.
pub fn check(delta: f64, count: impl Fn(f64) -> u128) -> Result<()> {
    check_with(point_budget(), delta, count)
}

pub fn check_with(budget: u128, delta: f64, count: impl Fn(f64) -> u128) -> Result<()> {
    let points = count(delta);
    if points <= budget {
        return Ok(());
    }
    let (mut lo, mut hi) = (delta.ln(), 0f64);
    while count(hi.exp()) > budget {
        hi += 1.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid.exp()) > budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Budget { points, budget, min_delta: hi.exp() })
}

/// Number of grid points of spacing at most `delta` on a unit circle.
pub fn circle_count(delta: f64) -> usize {
    ((1.0 / delta) - 1e-9).ceil().max(1.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_error_names_minimal_mesh() {
        let err = check_with(DEFAULT_POINT_BUDGET, 1e-7, |d| (circle_count(d) as u128).pow(2)).unwrap_err();
        match err {
            Error::Budget { min_delta, budget, .. } => {
                assert!((circle_count(min_delta) as u128).pow(2) <= budget);
                assert!((circle_count(min_delta * 0.999) as u128).pow(2) > budget);
            }
            e => panic!("{e}"),
        }
        assert!(check_with(10, 0.1, |d| circle_count(d) as u128).is_ok());
        assert_eq!(circle_count(0.1), 10);
    }
}
