use std::fmt;
use std::str::FromStr;

use num::{BigRational, Zero};

use super::{parse_rational, render_rational};
use crate::error::ValueError;
use crate::semiring::Semiring;

/// The tropical semiring `(Q>=0 ∪ {inf}, min, +, inf, 0)`.
///
/// The natural order is the reverse of the numeric one:
/// `inf < 20 < 1 < 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tropical;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalValue {
    Finite(BigRational),
    Infinity,
}

impl TropicalValue {
    pub fn finite(r: BigRational) -> Result<Self, ValueError> {
        if r < BigRational::zero() {
            return Err(ValueError::Negative(render_rational(&r)));
        }
        Ok(TropicalValue::Finite(r))
    }

    pub fn from_integer(n: u64) -> Self {
        TropicalValue::Finite(BigRational::from_integer(n.into()))
    }

    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        TropicalValue::Finite(BigRational::new(numer.into(), denom.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropicalValue::Infinity)
    }
}

impl FromStr for TropicalValue {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "inf" {
            return Ok(TropicalValue::Infinity);
        }
        parse_rational(s).map(TropicalValue::Finite)
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Finite(r) => f.write_str(&render_rational(r)),
            TropicalValue::Infinity => f.write_str("inf"),
        }
    }
}

impl Semiring for Tropical {
    type Elem = TropicalValue;

    fn zero(&self) -> TropicalValue {
        TropicalValue::Infinity
    }

    fn one(&self) -> TropicalValue {
        TropicalValue::Finite(BigRational::zero())
    }

    fn add(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        use TropicalValue::*;
        match (a, b) {
            (Infinity, x) | (x, Infinity) => x.clone(),
            (Finite(x), Finite(y)) => Finite(x.min(y).clone()),
        }
    }

    fn mul(&self, a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
        use TropicalValue::*;
        match (a, b) {
            (Finite(x), Finite(y)) => Finite(x + y),
            _ => Infinity,
        }
    }

    fn inf_pow(&self, a: &TropicalValue) -> TropicalValue {
        match a {
            TropicalValue::Finite(x) if x.is_zero() => a.clone(),
            _ => TropicalValue::Infinity,
        }
    }

    fn render(&self, a: &TropicalValue) -> String {
        a.to_string()
    }

    fn leq(&self, a: &TropicalValue, b: &TropicalValue) -> bool {
        use TropicalValue::*;
        match (a, b) {
            (Infinity, _) => true,
            (Finite(_), Infinity) => false,
            (Finite(x), Finite(y)) => x >= y,
        }
    }
}
