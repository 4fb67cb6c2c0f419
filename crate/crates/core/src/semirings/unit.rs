use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};

use super::{parse_rational, render_rational};
use crate::error::ValueError;
use crate::semiring::Semiring;

/// An exact rational in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRational(BigRational);

pub type ViterbiValue = UnitRational;
pub type LukasiewiczValue = UnitRational;

impl UnitRational {
    pub fn new(r: BigRational) -> Result<Self, ValueError> {
        if r < BigRational::zero() {
            return Err(ValueError::Negative(render_rational(&r)));
        }
        if r > BigRational::one() {
            return Err(ValueError::OutOfRange(render_rational(&r)));
        }
        Ok(UnitRational(r))
    }

    /// Panics unless `numer <= denom` and `denom > 0`.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0 && numer <= denom, "{numer}/{denom} is not in [0, 1]");
        UnitRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        UnitRational(BigRational::zero())
    }

    pub fn one() -> Self {
        UnitRational(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for UnitRational {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnitRational::new(parse_rational(s)?)
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.0))
    }
}

/// The Viterbi semiring `([0,1], max, *, 0, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Viterbi;

impl Semiring for Viterbi {
    type Elem = UnitRational;

    fn zero(&self) -> UnitRational {
        UnitRational::zero()
    }

    fn one(&self) -> UnitRational {
        UnitRational::one()
    }

    fn add(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        a.max(b).clone()
    }

    fn mul(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        UnitRational(&a.0 * &b.0)
    }

    fn inf_pow(&self, a: &UnitRational) -> UnitRational {
        if a.0.is_one() {
            a.clone()
        } else {
            UnitRational::zero()
        }
    }

    fn render(&self, a: &UnitRational) -> String {
        a.to_string()
    }

    fn leq(&self, a: &UnitRational, b: &UnitRational) -> bool {
        a <= b
    }
}

/// The Łukasiewicz semiring `([0,1], max, ⋆, 0, 1)` with
/// `a ⋆ b = max(0, a + b - 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Lukasiewicz;

impl Semiring for Lukasiewicz {
    type Elem = UnitRational;

    fn zero(&self) -> UnitRational {
        UnitRational::zero()
    }

    fn one(&self) -> UnitRational {
        UnitRational::one()
    }

    fn add(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        a.max(b).clone()
    }

    fn mul(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        let s = &a.0 + &b.0 - BigRational::one();
        if s > BigRational::zero() {
            UnitRational(s)
        } else {
            UnitRational::zero()
        }
    }

    fn inf_pow(&self, a: &UnitRational) -> UnitRational {
        // a^n = max(0, n*a - (n - 1)) reaches 0 for every a < 1.
        if a.0.is_one() {
            a.clone()
        } else {
            UnitRational::zero()
        }
    }

    fn render(&self, a: &UnitRational) -> String {
        a.to_string()
    }

    fn leq(&self, a: &UnitRational, b: &UnitRational) -> bool {
        a <= b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viterbi_basics() {
        let v = Viterbi;
        let half = UnitRational::ratio(1, 2);
        assert_eq!(v.add(&half, &half), half);
        assert_eq!(v.mul(&half, &half), UnitRational::ratio(1, 4));
        assert_eq!(v.inf_pow(&UnitRational::ratio(99, 100)), v.zero());
        assert_eq!(v.inf_pow(&v.one()), v.one());
    }

    #[test]
    fn lukasiewicz_truncated_sum() {
        let l = Lukasiewicz;
        assert_eq!(l.mul(&UnitRational::ratio(1, 2), &UnitRational::ratio(1, 3)), l.zero());
        assert_eq!(
            l.mul(&UnitRational::ratio(3, 4), &UnitRational::ratio(1, 2)),
            UnitRational::ratio(1, 4)
        );
        assert_eq!(l.inf_pow(&UnitRational::ratio(3, 4)), l.zero());
    }

    #[test]
    fn lukasiewicz_power_chain_reaches_zero() {
        let l = Lukasiewicz;
        let a = UnitRational::ratio(9, 10);
        // 10 factors of 9/10 lose 10 * 1/10 = 1.
        assert_eq!(l.pow(&a, 10), l.zero());
        assert_eq!(l.pow(&a, 9), UnitRational::ratio(1, 10));
    }

    #[test]
    fn range_is_enforced() {
        assert!("3/2".parse::<UnitRational>().is_err());
        assert!("-1/2".parse::<UnitRational>().is_err());
        assert_eq!("0.5".parse::<UnitRational>().unwrap(), UnitRational::ratio(1, 2));
    }
}
