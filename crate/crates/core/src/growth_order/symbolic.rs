use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OrderRelation;
use crate::{Error, Result};

/// Abstract elements of the completed order space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sentinel {
    SupE,
    InfE,
    SupP,
    InfP,
    Zero,
}

impl Sentinel {
    pub fn name(self) -> &'static str {
        match self {
            Sentinel::SupE => "SupE",
            Sentinel::InfE => "InfE",
            Sentinel::SupP => "SupP",
            Sentinel::InfP => "InfP",
            Sentinel::Zero => "Zero",
        }
    }
}

/// The class `[exp(t n) n^a log(n)^b]`, or a sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicOrder {
    pub exp_rate: f64,
    pub poly_deg: Rational64,
    pub log_deg: Rational64,
    pub sentinel: Option<Sentinel>,
}

impl SymbolicOrder {
    pub fn new(exp_rate: f64, poly_deg: Rational64, log_deg: Rational64) -> Result<Self> {
        if !(exp_rate >= 0.0 && exp_rate.is_finite()) || poly_deg.is_negative() || log_deg.is_negative() {
            return Err(Error::Invalid(format!("exponents must be nonnegative: ({exp_rate}, {poly_deg}, {log_deg})")));
        }
        Ok(Self { exp_rate, poly_deg, log_deg, sentinel: None })
    }

    pub fn zero() -> Self {
        Self::poly(0)
    }

    pub fn sentinel(s: Sentinel) -> Self {
        Self { exp_rate: 0.0, poly_deg: Rational64::zero(), log_deg: Rational64::zero(), sentinel: Some(s) }
    }

    pub fn poly(a: i64) -> Self {
        Self::new(0.0, a.into(), 0.into()).unwrap()
    }

    pub fn poly_log(a: Rational64, b: Rational64) -> Self {
        Self::new(0.0, a, b).unwrap()
    }

    pub fn exp(t: f64) -> Self {
        Self::new(t, 0.into(), 0.into()).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        match self.sentinel {
            Some(Sentinel::Zero) => true,
            Some(_) => false,
            None => self.exp_rate == 0.0 && self.poly_deg.is_zero() && self.log_deg.is_zero(),
        }
    }

    /// `ln g(n)` for the representative `exp(t n) n^a ln(n+1)^b`.
    pub fn ln_eval(&self, n: f64) -> f64 {
        let a = self.poly_deg.to_f64().unwrap_or(0.0);
        let b = self.log_deg.to_f64().unwrap_or(0.0);
        let mut v = self.exp_rate * n;
        if a != 0.0 {
            v += a * n.ln();
        }
        if b != 0.0 {
            v += b * (n + 1.0).ln().ln();
        }
        v
    }

    /// Human-readable bracket form, e.g. `[n log(n)]`.
    pub fn pretty(&self) -> String {
        if let Some(s) = self.sentinel {
            return if s == Sentinel::Zero { "0".into() } else { s.name().into() };
        }
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        if self.exp_rate > 0.0 {
            parts.push(format!("exp({:.4}n)", self.exp_rate));
        }
        match self.poly_deg {
            a if a.is_zero() => {}
            a if a == 1.into() => parts.push("n".into()),
            a => parts.push(format!("n^{a}")),
        }
        match self.log_deg {
            b if b.is_zero() => {}
            b if b == 1.into() => parts.push("log(n)".into()),
            b => parts.push(format!("log(n)^{b}")),
        }
        format!("[{}]", parts.join(" "))
    }

    fn tier(&self) -> u8 {
        match self.sentinel {
            Some(Sentinel::Zero) => 0,
            Some(Sentinel::InfP) => 1,
            Some(Sentinel::SupP) => 3,
            Some(Sentinel::InfE) => 4,
            Some(Sentinel::SupE) => 6,
            None if self.exp_rate > 0.0 => 5,
            None if self.poly_deg.is_zero() => 0,
            None => 2,
        }
    }

    fn numeric(&self) -> (f64, Rational64, Rational64) {
        match self.sentinel {
            Some(_) => (0.0, 0.into(), 0.into()),
            None => (self.exp_rate, self.poly_deg, self.log_deg),
        }
    }
}

/// Exact comparison. The order is total:
/// `(0,0,b) < InfP < (0,a>0,b) < SupP < InfE < (t>0,a,b) < SupE`.
pub fn compare_symbolic(o1: &SymbolicOrder, o2: &SymbolicOrder) -> OrderRelation {
    let key = |o: &SymbolicOrder| (o.tier(), o.numeric());
    let (t1, (e1, a1, b1)) = key(o1);
    let (t2, (e2, a2, b2)) = key(o2);
    let ord = t1
        .cmp(&t2)
        .then(e1.partial_cmp(&e2).unwrap_or(Ordering::Equal))
        .then(a1.cmp(&a2))
        .then(b1.cmp(&b2));
    match ord {
        Ordering::Less => OrderRelation::Less,
        Ordering::Greater => OrderRelation::Greater,
        Ordering::Equal => OrderRelation::Equivalent,
    }
}

fn fmt_ratio(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for SymbolicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.sentinel {
            return f.write_str(s.name());
        }
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(
            f,
            "exp({:?}*n)*n^{}*log(n)^{}",
            self.exp_rate,
            fmt_ratio(self.poly_deg),
            fmt_ratio(self.log_deg)
        )
    }
}

fn parse_ratio(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad rational exponent {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl FromStr for SymbolicOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for sen in [Sentinel::SupE, Sentinel::InfE, Sentinel::SupP, Sentinel::InfP, Sentinel::Zero] {
            if s == sen.name() {
                return Ok(Self::sentinel(sen));
            }
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("unrecognised order {s:?}"));
        let rest = s.strip_prefix("exp(").ok_or_else(bad)?;
        let (t, rest) = rest.split_once("*n)*n^").ok_or_else(bad)?;
        let (a, b) = rest.split_once("*log(n)^").ok_or_else(bad)?;
        let t: f64 = t.parse().map_err(|_| bad())?;
        Self::new(t, parse_ratio(a)?, parse_ratio(b)?)
    }
}

impl Serialize for SymbolicOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolicOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OrderRelation::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn spec_examples() {
        let n = SymbolicOrder::poly(1);
        let nlogn = SymbolicOrder::poly_log(1.into(), 1.into());
        assert_eq!(compare_symbolic(&n, &nlogn), Less);
        let e = SymbolicOrder::exp(std::f64::consts::LN_2);
        assert_eq!(compare_symbolic(&e, &SymbolicOrder::sentinel(Sentinel::SupP)), Greater);
        assert_eq!(compare_symbolic(&SymbolicOrder::sentinel(Sentinel::Zero), &SymbolicOrder::zero()), Equivalent);
    }

    #[test]
    fn sentinel_placement() {
        let inf_p = SymbolicOrder::sentinel(Sentinel::InfP);
        assert_eq!(compare_symbolic(&SymbolicOrder::poly_log(0.into(), 7.into()), &inf_p), Less);
        assert_eq!(compare_symbolic(&inf_p, &SymbolicOrder::poly_log(r(1, 100), 0.into())), Less);
        let sup_p = SymbolicOrder::sentinel(Sentinel::SupP);
        let inf_e = SymbolicOrder::sentinel(Sentinel::InfE);
        assert_eq!(compare_symbolic(&SymbolicOrder::poly(1000), &sup_p), Less);
        assert_eq!(compare_symbolic(&sup_p, &inf_e), Less);
        assert_eq!(compare_symbolic(&inf_e, &SymbolicOrder::exp(1e-9)), Less);
        assert_eq!(compare_symbolic(&SymbolicOrder::exp(50.0), &SymbolicOrder::sentinel(Sentinel::SupE)), Less);
    }

    #[test]
    fn string_round_trip() {
        let o = SymbolicOrder::new(0.5, r(3, 2), 1.into()).unwrap();
        assert_eq!(o.to_string(), "exp(0.5*n)*n^3/2*log(n)^1");
        assert_eq!(o.to_string().parse::<SymbolicOrder>().unwrap(), o);
        assert_eq!(SymbolicOrder::zero().to_string(), "0");
        assert_eq!("InfE".parse::<SymbolicOrder>().unwrap(), SymbolicOrder::sentinel(Sentinel::InfE));
        assert_eq!(serde_json::to_string(&SymbolicOrder::poly(1)).unwrap(), "\"exp(0.0*n)*n^1*log(n)^0\"");
        assert!("n^2".parse::<SymbolicOrder>().is_err());
    }

    #[test]
    fn pretty_forms() {
        assert_eq!(SymbolicOrder::poly(1).pretty(), "[n]");
        assert_eq!(SymbolicOrder::zero().pretty(), "0");
        assert_eq!(SymbolicOrder::poly_log(2.into(), 1.into()).pretty(), "[n^2 log(n)]");
    }

    #[test]
    fn total_and_transitive_on_catalog() {
        let mut cat = Vec::new();
        for s in [Sentinel::SupE, Sentinel::InfE, Sentinel::SupP, Sentinel::InfP, Sentinel::Zero] {
            cat.push(SymbolicOrder::sentinel(s));
        }
        for t in [0.0, 0.5, 1.0] {
            for a in [r(0, 1), r(1, 2), r(1, 1), r(2, 1), r(3, 1)] {
                for b in [r(0, 1), r(1, 1), r(2, 1)] {
                    if cat.len() < 50 {
                        cat.push(SymbolicOrder::new(t, a, b).unwrap());
                    }
                }
            }
        }
        assert_eq!(cat.len(), 50);
        for x in &cat {
            for y in &cat {
                let xy = compare_symbolic(x, y);
                assert_ne!(xy, Inconclusive);
                assert_ne!(xy, Incomparable);
                assert_eq!(xy.reverse(), compare_symbolic(y, x));
                for z in &cat {
                    if xy.is_le() && compare_symbolic(y, z).is_le() {
                        assert!(compare_symbolic(x, z).is_le(), "{x} <= {y} <= {z}");
                    }
                }
            }
        }
    }
}
