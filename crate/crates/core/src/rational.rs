//! Exact rational values and their decimal rendering.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational over 128-bit integers. Always kept in lowest terms.
pub type Rational = Ratio<i128>;

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// Renders `value` rounded half away from zero to `places` decimal places.
pub fn to_decimal(value: &Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let neg = value.is_negative();
    let abs = value.abs();
    // round(|p/q| * 10^k) = floor((2 * p * 10^k + q) / (2q))
    let numer = abs.numer();
    let denom = abs.denom();
    let scaled = match numer
        .checked_mul(scale)
        .and_then(|v| v.checked_mul(2))
        .and_then(|v| v.checked_add(*denom))
    {
        Some(v) => v / (2 * denom),
        // Too large for an exact render; fall back to f64.
        None => (abs_to_f64(&abs) * scale as f64).round() as i128,
    };
    let int_part = scaled / scale;
    let frac_part = scaled % scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac_part:0width$}",
            width = places as usize
        )
    }
}

fn abs_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `P/Q` form, or just `P` for integers.
pub fn to_exact(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `P/Q`, an integer, or a finite decimal such as `0.25` exactly.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Validation(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(ratio(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) || fp.len() > 30 {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_val: i128 = if ip.is_empty() || ip == "-" {
            0
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let scale = 10i128.checked_pow(fp.len() as u32).ok_or_else(bad)?;
        let frac: i128 = fp.parse().map_err(|_| bad())?;
        let mag = ip_val
            .abs()
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        return Ok(ratio(if neg { -mag } else { mag }, scale));
    }
    s.parse::<i128>().map(int).map_err(|_| bad())
}

/// `10^-places` as an exact rational.
pub fn precision(places: u32) -> Rational {
    ratio(1, 10i128.pow(places))
}

/// Least common multiple, `None` on overflow.
pub fn checked_lcm(a: i128, b: i128) -> Option<i128> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b)
}
