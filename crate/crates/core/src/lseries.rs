//! Special values of `L(s, chi_D)`: the exact value at `s = -1` and a
//! high-precision `L'(0, chi_D)`.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::highprec::{self, Precision, RM};

/// `S = sum_{n=1}^{D} n^2 chi(n)`, `L(-1, chi) = -S/(2D)` and the valuation
/// exponent `m = -L(-1, chi)/2` of the eta product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LValueRecord {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "S_chi", with = "crate::records::json_bigint")]
    pub s_chi: BigInt,
    #[serde(rename = "L_minus_1", serialize_with = "crate::records::rational_as_string")]
    pub l_minus_one: BigRational,
    #[serde(rename = "m", serialize_with = "crate::records::rational_as_number")]
    pub m_exponent: BigRational,
}

pub fn l_minus_one(ct: &CharTable) -> Result<LValueRecord> {
    let d = ct.d();
    let s_chi: BigInt = (1..=d)
        .map(|n| BigInt::from(n * n) * ct.chi(n as i64))
        .sum();
    let two_d = BigInt::from(2 * d);
    let l = BigRational::new(-&s_chi, two_d);
    let m = -&l / BigRational::from_integer(BigInt::from(2));

    let bad = || Error::LValue {
        d,
        value: l.to_string(),
    };
    if d == 5 {
        if l != BigRational::new(BigInt::from(-2), BigInt::from(5)) {
            return Err(bad());
        }
    } else {
        let four_d = BigInt::from(4 * d);
        if !l.is_integer() || !l.is_negative() || l.to_integer().is_odd() || !(&s_chi % &four_d).is_zero() {
            return Err(bad());
        }
    }
    Ok(LValueRecord {
        d,
        s_chi,
        l_minus_one: l,
        m_exponent: m,
    })
}

/// `L'(0, chi_D) = sum_{a=1}^{D-1} chi(a) log Gamma(a/D)`.
///
/// `chi_D` is even and sums to zero, so pairing `a` with `D - a` and applying
/// the reflection formula reduces the sum to
/// `-(1/2) sum_a chi(a) log sin(pi a / D)`, which is what is evaluated.
pub fn l_prime_zero(ct: &CharTable, precision: Precision) -> BigFloat {
    let bits = precision.bits() + 64;
    let mut cc = highprec::consts();
    let pi = cc.pi(bits, RM);
    let d = BigFloat::from_u64(ct.d(), bits);
    let mut acc = BigFloat::from_u8(0, bits);
    for a in 1..ct.d() {
        let c = ct.chi(a as i64);
        if c == 0 {
            continue;
        }
        let x = pi
            .mul(&BigFloat::from_u64(a, bits), bits, RM)
            .div(&d, bits, RM);
        let term = x.sin(bits, RM, &mut cc).ln(bits, RM, &mut cc);
        acc = if c > 0 {
            acc.add(&term, bits, RM)
        } else {
            acc.sub(&term, bits, RM)
        };
    }
    let half = BigFloat::from_f64(-0.5, bits);
    let mut out = acc.mul(&half, bits, RM);
    let _ = out.set_precision(precision.bits(), RM);
    out
}

pub fn l_prime_zero_f64(ct: &CharTable) -> f64 {
    highprec::to_f64(&l_prime_zero(ct, Precision::digits(30)))
}

/// `L(-1, chi_D)` as a double.
pub fn l_minus_one_f64(rec: &LValueRecord) -> f64 {
    let n = rec.l_minus_one.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = rec.l_minus_one.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

impl LValueRecord {
    pub fn m_f64(&self) -> f64 {
        -l_minus_one_f64(self) / 2.0
    }
}
