//! Exact rational coefficients.
//!
//! The stoquasticity deciders work entirely over arbitrary-precision
//! rationals; conversion to `f64` (for dense spectra and Monte Carlo) is
//! explicit, never silent.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Parse a coefficient token: an integer, a `p/q` rational, or a plain
/// decimal such as `-1.25`. Scientific notation is not accepted.
pub fn parse_rat(token: &str) -> Option<Rat> {
    let t = token.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let num: BigInt = p.parse().ok()?;
        let den: BigInt = q.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit()) || int_digits.is_empty() && frac_part.is_empty() {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rat::from_integer(whole) + Rat::new(frac, scale);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    let num: BigInt = t.parse().ok()?;
    Some(Rat::from_integer(num))
}

/// Render as `p` or `p/q`, always in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-1").unwrap(), rat(-1));
        assert_eq!(parse_rat("1/3").unwrap(), rat_frac(1, 3));
        assert_eq!(parse_rat("-2/6").unwrap(), rat_frac(-1, 3));
        assert_eq!(parse_rat("0.5").unwrap(), rat_frac(1, 2));
        assert_eq!(parse_rat("-1.25").unwrap(), rat_frac(-5, 4));
        assert!(parse_rat("1e-3").is_none());
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("").is_none());
    }

    #[test]
    fn format_lowest_terms() {
        assert_eq!(format_rat(&rat_frac(2, 4)), "1/2");
        assert_eq!(format_rat(&rat(-7)), "-7");
    }
}

/// Serialize rationals as `p/q` strings in reports.
pub mod serde_rat {
    use super::{format_rat, Rat};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }
}
