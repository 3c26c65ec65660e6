//! Arbitrary-precision rationals. `num_rational::BigRational` already keeps
//! the normalized-form invariant (gcd 1, positive denominator) after every
//! operation, so we use it directly behind a crate-local alias.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for n/d.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "num/den" or "num".
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => Some(BigRational::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Renders as "num/den", or "num" for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[allow(unused_imports)]
pub(crate) use {format_rational as fmt_rat, parse_rational as parse_rat};

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "5/3", "-7/2"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // normalization on parse
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
    }

    #[test]
    fn helpers() {
        assert!(rat(3).is_integer());
        assert_eq!(rat_frac(6, 4), rat_frac(3, 2));
        assert!(rat(0).is_zero() && rat(1).is_one());
    }
}
