//! Parsing and formatting of exact rationals.
//!
//! Rationals cross the CLI and JSON boundary as strings: `"p/q"` in
//! lowest terms with positive denominator, with `"p"` allowed when the
//! denominator is 1.

use num::bigint::BigInt;
use num::BigRational;
use std::str::FromStr;

use crate::{Error, Result};

/// Parse a rational from `"p/q"` or an integer literal `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameters(format!("cannot parse rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(Error::InvalidParameters(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Format in lowest terms with positive denominator; `"p"` when q = 1.
pub fn format_rational(r: &BigRational) -> String {
    // BigRational is kept reduced with a positive denominator internally.
    r.to_string()
}

/// Shorthand for building a rational from two machine integers.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("6/2").unwrap(), rat(3, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(6, 1)), "6");
        assert_eq!(format_rational(&rat(1, -3)), "-1/3");
    }
}
