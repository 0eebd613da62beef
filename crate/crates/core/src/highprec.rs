//! Thin helpers over `astro_float::BigFloat` for the few places that need
//! more than double precision (real embeddings, `L'(0, chi)`).

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

pub use astro_float::BigFloat as HighPrecReal;

/// Default number of significant decimal digits carried by high-precision reals.
pub const DEFAULT_DIGITS: usize = 60;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision, stored as a number of significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(usize);

impl Precision {
    pub fn digits(digits: usize) -> Self {
        Precision(digits.max(1))
    }

    pub fn decimal_digits(self) -> usize {
        self.0
    }

    /// Mantissa bits, with a guard word on top of the requested digits.
    pub fn bits(self) -> usize {
        let raw = (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        raw.div_ceil(64) * 64
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_DIGITS)
    }
}

pub(crate) fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

pub fn from_bigint(x: &BigInt, bits: usize) -> BigFloat {
    if let Ok(small) = i64::try_from(x) {
        return BigFloat::from_i64(small, bits);
    }
    let mut cc = consts();
    BigFloat::parse(&x.to_string(), Radix::Dec, bits, RM, &mut cc)
}

/// Scientific decimal representation as produced by astro-float.
pub fn to_sci_string(x: &BigFloat) -> String {
    let mut cc = consts();
    x.format(Radix::Dec, RM, &mut cc)
        .unwrap_or_else(|_| "NaN".to_string())
}

/// Scientific decimal representation rounded to `digits` significant digits.
pub fn to_digits_string(x: &BigFloat, digits: usize) -> String {
    let full = to_sci_string(x);
    let Some((mantissa, exp)) = full.split_once('e') else {
        return full;
    };
    let Ok(mut exp) = exp.parse::<i64>() else {
        return full;
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let mut ds: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    let digits = digits.max(1);
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    let text: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let (head, tail) = text.split_at(1);
    let dot = if tail.is_empty() { "" } else { "." };
    let exp_sign = if exp < 0 { "-" } else { "+" };
    format!("{sign}{head}{dot}{tail}e{exp_sign}{}", exp.abs())
}

/// Nearest double. Values outside the double range saturate to infinity.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    to_sci_string(x).parse::<f64>().unwrap_or(f64::NAN)
}

/// Fixed 17-significant-digit rendering used by every text output.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    format!("{v:.16e}")
}
