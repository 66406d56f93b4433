//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Fractional part `q − ⌊q⌋`, always in `[0, 1)`.
pub fn fract(q: &Rational) -> Rational {
    q - q.floor()
}

/// `⌊q − ε⌋` for every sufficiently small `ε > 0`.
pub fn floor_below(q: &Rational) -> BigInt {
    if q.is_integer() {
        q.to_integer() - BigInt::one()
    } else {
        floor(q)
    }
}

/// Parses `"3"`, `"-17/42"` or an exact decimal such as `"0.25"`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Parses a comma separated list of rationals, e.g. `"1/6,1"`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse).collect()
}

/// Canonical lowest-terms text form: `"17/42"`, `"-3"`, `"0"`.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(format).collect();
    format!("({})", parts.join(", "))
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("17/42").unwrap(), ratio(17, 42));
        assert_eq!(parse(" 4/6 ").unwrap(), ratio(2, 3));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format(&ratio(10, 4)), "5/2");
        assert_eq!(format(&ratio(6, 3)), "2");
        assert_eq!(format(&ratio(-1, 2)), "-1/2");
        assert_eq!(format(&int(0)), "0");
    }

    #[test]
    fn floor_below_drops_integers() {
        assert_eq!(floor_below(&int(2)), BigInt::from(1));
        assert_eq!(floor_below(&ratio(5, 2)), BigInt::from(2));
        assert_eq!(floor_below(&ratio(-1, 2)), BigInt::from(-1));
        assert_eq!(fract(&ratio(-1, 3)), ratio(2, 3));
    }
}
