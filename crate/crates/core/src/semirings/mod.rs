//! Concrete absorptive semirings over exact carriers.

mod boolean;
mod minmax;
mod tropical;
mod unit;

pub use boolean::Boolean;
pub use minmax::{MinMax, MinMaxValue};
pub use tropical::{Tropical, TropicalValue};
pub use unit::{Lukasiewicz, LukasiewiczValue, UnitRational, Viterbi, ViterbiValue};

use num::{BigInt, BigRational, Zero};

use crate::error::ValueError;

/// Parses a nonnegative rational written as an integer (`"20"`), a fraction
/// (`"1/3"`) or a finite decimal (`"0.25"`).
pub(crate) fn parse_rational(text: &str) -> Result<BigRational, ValueError> {
    let s = text.trim();
    let invalid = || ValueError::Malformed(text.to_string());
    if s.is_empty() || s.starts_with('+') {
        return Err(invalid());
    }
    let value = if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        if int_part.is_empty() || frac_part.is_empty() || !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(invalid());
        }
        let numer: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| invalid())?;
        let denom = num::pow(BigInt::from(10u32), frac_part.len());
        BigRational::new(numer, denom)
    } else {
        let r: BigRational = s.parse().map_err(|_| invalid())?;
        if r.denom().is_zero() {
            return Err(invalid());
        }
        r
    };
    if value < BigRational::zero() {
        return Err(ValueError::Negative(text.to_string()));
    }
    Ok(value)
}

pub(crate) fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("20").unwrap(), q(20, 1));
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_rational("2/6").unwrap(), q(1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("1.50").unwrap(), q(3, 2));
    }

    #[test]
    fn rejects_garbage_and_negatives() {
        for bad in ["", "abc", "1/0", ".5", "5.", "1.2.3", "+1", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
        assert!(matches!(parse_rational("-1"), Err(ValueError::Negative(_))));
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_rational(&q(20, 1)), "20");
        assert_eq!(render_rational(&q(2, 6)), "1/3");
        assert_eq!(render_rational(&q(0, 1)), "0");
    }
}
