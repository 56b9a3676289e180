//! Exact conversion between decimal text and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Parse `[+-]digits[.digits]` exactly, so `"0.001"` is `1/1000`.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let err = || Error::Decimal(text.to_string());
    let s = text.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| err())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Digits after the decimal point in `text`.
pub fn decimals_of(text: &str) -> usize {
    text.split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// `10^(-decimals)`.
pub fn unit(decimals: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u32).pow(decimals as u32))
}

/// Round half away from zero to `decimals` places.
pub fn format_fixed(x: &BigRational, decimals: usize) -> String {
    let scale = BigInt::from(10u32).pow(decimals as u32);
    let scaled = x.abs() * BigRational::from_integer(scale);
    let rounded = scaled.round().to_integer();
    let mut digits = rounded.to_string();
    if decimals > 0 {
        if digits.len() <= decimals {
            digits = format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits);
        }
        digits.insert(digits.len() - decimals, '.');
    }
    if x.is_negative() && !rounded.is_zero() {
        digits.insert(0, '-');
    }
    digits
}

/// Round to `sig` significant digits, fixed notation (`1.39017`, `14.0000`,
/// `0.0000412345`).
pub fn format_sig(x: &BigRational, sig: usize) -> String {
    let sig = sig.max(1) as i64;
    if x.is_zero() {
        return format_fixed(x, (sig - 1) as usize);
    }
    let exp = decimal_exponent(x);
    let decimals = (sig - 1 - exp).max(0) as usize;
    let out = format_fixed(x, decimals);
    // Rounding can carry into a new leading digit (9.99995 -> 10.0000).
    let rounded = parse_decimal(&out).expect("own output parses");
    if decimals > 0 && !rounded.is_zero() && decimal_exponent(&rounded) > exp {
        format_fixed(x, decimals - 1)
    } else {
        out
    }
}

/// The `e` with `10^e <= |x| < 10^(e+1)`, for nonzero `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let mut v = x.abs();
    let one = BigRational::from_integer(BigInt::from(1u32));
    let mut e = 0i64;
    while v >= ten {
        v /= &ten;
        e += 1;
    }
    while v < one {
        v *= &ten;
        e -= 1;
    }
    e
}

/// Scientific notation, for error bounds.
pub fn format_sci(x: &BigRational, sig: usize) -> String {
    use num_traits::ToPrimitive;
    format!(
        "{:.*e}",
        sig.saturating_sub(1),
        x.to_f64().unwrap_or(f64::NAN)
    )
}
