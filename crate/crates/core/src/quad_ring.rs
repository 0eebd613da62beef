//! Exact arithmetic in the ring of integers `O_D = Z[(1 + sqrt D)/2]` of a
//! real quadratic field with `D = 1 mod 4`.
//!
//! Elements are stored as a numerator pair over the fixed denominator 2,
//! `(a + b sqrt D) / 2` with `a = b (mod 2)`. The discriminant is not part of
//! an element; operations that need it (multiplication, embedding,
//! formatting) go through a [`RingCtx`].

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::is_fundamental;
use crate::error::{Error, Result};
use crate::highprec::{self, Precision, RM};

/// `(num_a + num_b * sqrt D) / 2`, always with `num_a = num_b (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    a: BigInt,
    b: BigInt,
}

impl RingElem {
    /// Builds `(a + b sqrt D)/2`, rejecting pairs of mixed parity.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_odd() != b.is_odd() {
            return Err(Error::Parse(format!(
                "numerators ({a}, {b}) have different parity"
            )));
        }
        Ok(RingElem { a, b })
    }

    /// Caller guarantees the parity invariant.
    pub(crate) fn from_numerators(a: BigInt, b: BigInt) -> Self {
        debug_assert_eq!(a.is_odd(), b.is_odd());
        RingElem { a, b }
    }

    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        RingElem {
            a: n.into() * 2,
            b: BigInt::zero(),
        }
    }

    /// The element `u + v sqrt D` with integer `u`, `v`.
    pub fn from_surd(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        RingElem {
            a: u.into() * 2,
            b: v.into() * 2,
        }
    }

    /// `sqrt D` itself.
    pub fn sqrt_d() -> Self {
        RingElem::from_surd(0, 1)
    }

    pub fn num_a(&self) -> &BigInt {
        &self.a
    }

    pub fn num_b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == BigInt::from(2)
    }

    /// True when the `sqrt D` part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational integer `n` when `self = n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_even()).then(|| &self.a / 2)
    }

    /// `(u, v)` when `self = u + v sqrt D` with integer `u`, `v`.
    pub fn as_surd(&self) -> Option<(BigInt, BigInt)> {
        (self.a.is_even() && self.b.is_even()).then(|| (&self.a / 2, &self.b / 2))
    }

    /// Galois conjugate `(a - b sqrt D)/2`.
    pub fn conj(&self) -> Self {
        RingElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        RingElem {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Exact division by a rational integer; `None` if the quotient leaves `O_D`.
    pub fn div_exact_int(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let (qa, ra) = self.a.div_rem(k);
        let (qb, rb) = self.b.div_rem(k);
        if !ra.is_zero() || !rb.is_zero() || qa.is_odd() != qb.is_odd() {
            return None;
        }
        Some(RingElem { a: qa, b: qb })
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        RingElem {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        RingElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        RingElem {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        RingElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

/// Ambient ring descriptor: the discriminant and a high-precision `+sqrt D`.
#[derive(Clone, Debug)]
pub struct RingCtx {
    d: u64,
    d_big: BigInt,
    precision: Precision,
    sqrt_d: BigFloat,
}

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for RingCtx {}

impl RingCtx {
    pub fn new(d: u64) -> Result<Self> {
        RingCtx::with_precision(d, Precision::default())
    }

    pub fn with_precision(d: u64, precision: Precision) -> Result<Self> {
        if !is_fundamental(d as i64) {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        let bits = precision.bits();
        let sqrt_d = BigFloat::from_u64(d, bits).sqrt(bits, RM);
        Ok(RingCtx {
            d,
            d_big: BigInt::from(d),
            precision,
            sqrt_d,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// High-precision positive square root of `D`.
    pub fn sqrt_d(&self) -> &BigFloat {
        &self.sqrt_d
    }

    pub fn ensure_same(&self, other: &RingCtx) -> Result<()> {
        if self.d != other.d {
            return Err(Error::ContextMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    /// `((ac + bdD) + (ad + bc) sqrt D) / 4`, renormalised to denominator 2.
    pub fn mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        let ra = &x.a * &y.a + &x.b * &y.b * &self.d_big;
        let rb = &x.a * &y.b + &x.b * &y.a;
        let two = BigInt::from(2);
        let (qa, rem_a) = ra.div_rem(&two);
        let (qb, rem_b) = rb.div_rem(&two);
        if !rem_a.is_zero() || !rem_b.is_zero() || qa.is_odd() != qb.is_odd() {
            return Err(Error::Corruption(format!(
                "product numerators ({ra}, {rb}) do not renormalise into O_{}",
                self.d
            )));
        }
        Ok(RingElem { a: qa, b: qb })
    }

    /// `x * conj(x) = (a^2 - b^2 D) / 4`, a rational integer.
    pub fn norm(&self, x: &RingElem) -> Result<BigInt> {
        let n = self.mul(x, &x.conj())?;
        n.as_integer()
            .ok_or_else(|| Error::Corruption(format!("norm of {} is not an integer", self.format(x))))
    }

    pub fn pow(&self, x: &RingElem, mut k: u32) -> Result<RingElem> {
        let mut acc = RingElem::one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Real embedding `(a + b * sqrt D)/2` with the positive root.
    pub fn embed_real(&self, x: &RingElem) -> BigFloat {
        let bits = self.precision.bits();
        let a = highprec::from_bigint(&x.a, bits);
        let b = highprec::from_bigint(&x.b, bits);
        let num = a.add(&b.mul(&self.sqrt_d, bits, RM), bits, RM);
        num.div(&BigFloat::from_u8(2, bits), bits, RM)
    }

    pub fn embed_f64(&self, x: &RingElem) -> f64 {
        highprec::to_f64(&self.embed_real(x))
    }

    /// Exact sign of the real embedding.
    pub fn sign(&self, x: &RingElem) -> i8 {
        let sa = sign_of(&x.a);
        let sb = sign_of(&x.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 D
        if &x.a * &x.a > &x.b * &x.b * &self.d_big {
            sa
        } else {
            sb
        }
    }

    /// Canonical text form `(a+b*sqrt(D))/2`.
    pub fn format(&self, x: &RingElem) -> String {
        format_canonical(x, self.d)
    }
}

pub fn format_canonical(x: &RingElem, d: u64) -> String {
    let sign = if x.b.is_negative() { '-' } else { '+' };
    format!("({}{}{}*sqrt({}))/2", x.a, sign, x.b.abs(), d)
}

/// Element together with the discriminant read from its canonical text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedElem {
    pub d: u64,
    pub elem: RingElem,
}

impl fmt::Display for ParsedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_canonical(&self.elem, self.d))
    }
}

impl FromStr for ParsedElem {
    type Err = Error;

    /// Accepts exactly the canonical form emitted by [`format_canonical`].
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { s, pos: 0 };
        cur.expect("(")?;
        let a = cur.integer(true)?;
        let neg_b = match cur.next_byte() {
            Some(b'+') => false,
            Some(b'-') => true,
            _ => return Err(cur.err("expected '+' or '-'")),
        };
        let b_abs = cur.integer(false)?;
        if neg_b && b_abs.is_zero() {
            return Err(cur.err("negative zero"));
        }
        cur.expect("*sqrt(")?;
        let d = cur.integer(false)?;
        cur.expect("))/2")?;
        if cur.pos != s.len() {
            return Err(cur.err("trailing input"));
        }
        let d = u64::try_from(&d).map_err(|_| Error::Parse(format!("D = {d} out of range")))?;
        if !is_fundamental(d as i64) {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        let b = if neg_b { -b_abs } else { b_abs };
        Ok(ParsedElem {
            d,
            elem: RingElem::new(a, b)?,
        })
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn next_byte(&mut self) -> Option<u8> {
        let b = self.s.as_bytes().get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected {lit:?}")))
        }
    }

    /// Decimal integer without leading zeros or a plus sign.
    fn integer(&mut self, signed: bool) -> Result<BigInt> {
        let bytes = self.s.as_bytes();
        let start = self.pos;
        let mut i = self.pos;
        if signed && bytes.get(i) == Some(&b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let digits = &self.s[digits_start..i];
        if digits.is_empty() {
            return Err(self.err("expected digits"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(self.err("leading zero"));
        }
        if digits == "0" && digits_start != start {
            return Err(self.err("negative zero"));
        }
        self.pos = i;
        self.s[start..i]
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// JSON shape `{"a": .., "b": .., "den": 2}` with exact integer numerators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingElemJson {
    #[serde(with = "crate::records::json_bigint")]
    pub a: BigInt,
    #[serde(with = "crate::records::json_bigint")]
    pub b: BigInt,
    pub den: u8,
}

impl From<&RingElem> for RingElemJson {
    fn from(x: &RingElem) -> Self {
        RingElemJson {
            a: x.a.clone(),
            b: x.b.clone(),
            den: 2,
        }
    }
}

impl TryFrom<RingElemJson> for RingElem {
    type Error = Error;
    fn try_from(j: RingElemJson) -> Result<Self> {
        if j.den != 2 {
            return Err(Error::Parse(format!("denominator must be 2, got {}", j.den)));
        }
        RingElem::new(j.a, j.b)
    }
}
