use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating scalar used by samplers, maps and estimators.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + serde::de::DeserializeOwned
    + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range")
    }

    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn usize(n: usize) -> Self {
        Self::from_usize(n).expect("index out of range")
    }

    /// Representative of `self` in `[0, 1)`.
    fn frac1(self) -> Self {
        let r = self - self.floor();
        if r >= Self::one() {
            Self::zero()
        } else {
            r
        }
    }

    /// Arc-length distance on `R/Z`.
    fn circle_dist(self, other: Self) -> Self {
        let d = (self - other).abs().frac1();
        d.min(Self::one() - d)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_distance_wraps() {
        assert!((0.95f64.circle_dist(0.05) - 0.1).abs() < 1e-12);
        assert!((0.25f32.circle_dist(0.75) - 0.5).abs() < 1e-6);
        assert_eq!((-0.25f64).frac1(), 0.75);
    }
}
