//! Decimal rendering used by the CLI output files.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::numerics::Real;

/// `x` with exactly `digits` decimal places, rounded half to even on the
/// exact binary value. A result that rounds to zero carries no sign.
pub fn fixed(x: &Real, digits: usize) -> String {
    let Some(exact) = x.to_rational() else {
        return x.to_string();
    };
    let scale = Integer::from(10).pow(digits as u32);
    let scaled = exact * &scale;
    let negative = scaled < 0;
    let magnitude = scaled.abs();
    let (floor, frac) = {
        let floor = magnitude.clone().floor();
        let frac = Rational::from(&magnitude - &floor);
        (floor.into_numer_denom().0, frac)
    };
    let half = Rational::from((1, 2));
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1u32
    } else {
        floor
    };

    let mut text = rounded.to_string();
    if digits > 0 {
        if text.len() <= digits {
            text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
        }
        text.insert(text.len() - digits, '.');
    }
    if negative && rounded_is_nonzero(&text) {
        text.insert(0, '-');
    }
    text
}

fn rounded_is_nonzero(text: &str) -> bool {
    text.bytes().any(|b| b.is_ascii_digit() && b != b'0')
}

/// `x` in scientific notation with `digits` digits after the point.
pub fn scientific(x: &Real, digits: usize) -> String {
    let significant = digits + 1;
    format!("{x:.significant$e}")
}
