//! Exact rational scalars.
//!
//! `Rat` is the coefficient domain for everything in this crate: arbitrary
//! precision, always reduced, denominator always positive (both maintained by
//! `num::BigRational` itself).

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Parses "p" or "p/q" with q > 0. Used by the point syntax `x1=3/2`.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        None => Int::from_str(text).ok().map(Rat::from_integer),
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).ok()?;
            let d = Int::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
    }
}

/// Renders without spaces: "3", "-3/2".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int_sign(v: &Int) -> i32 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(rat_to_string(&rat(-2, 3)), "-2/3");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }
}
