//! Serialized forms of coefficient data: JSON records with exact integer
//! numerators and a CSV row layout.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::highprec::format_f64;
use crate::quad_ring::{RingCtx, RingElem};

/// Serde adapter writing a `BigInt` as a bare JSON number of any size.
pub mod json_bigint {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let text = n.to_string();
        parse_integer(&text).map_err(serde::de::Error::custom)
    }

    fn parse_integer(text: &str) -> std::result::Result<BigInt, String> {
        let digits = text.strip_prefix('-').unwrap_or(text);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(format!("expected an integer, got {text}"));
        }
        text.parse::<BigInt>().map_err(|e| e.to_string())
    }
}

fn number(text: &str) -> serde_json::Number {
    serde_json::Number::from_str(text).expect("decimal integer is a JSON number")
}

pub fn bigint_seq<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| number(&x.to_string())))
}

pub fn bigint_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|row| row.iter().map(|x| number(&x.to_string())).collect::<Vec<_>>()),
    )
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_as_string<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A bare JSON number for integers, otherwise the `"p/q"` string.
pub fn rational_as_number<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_integer() {
        number(&x.to_integer().to_string()).serialize(s)
    } else {
        s.serialize_str(&x.to_string())
    }
}

/// Serde adapter writing an `f64` with the fixed 17-digit layout.
pub mod json_f64 {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !x.is_finite() {
            return Err(serde::ser::Error::custom("non-finite real value"));
        }
        let n = serde_json::Number::from_str(&format_f64(*x)).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string()
            .parse::<f64>()
            .map_err(serde::de::Error::custom)
    }
}

/// One coefficient `a_D(N) = (a + b sqrt D)/2` with its real embedding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRecord {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(with = "json_bigint")]
    pub a: BigInt,
    #[serde(with = "json_bigint")]
    pub b: BigInt,
    pub den: u8,
    #[serde(with = "json_f64")]
    pub real: f64,
}

pub const CSV_HEADER: &str = "D,N,num_a,num_b,real";

impl CoeffRecord {
    pub fn new(ctx: &RingCtx, n: u64, x: &RingElem) -> Self {
        CoeffRecord {
            d: ctx.d(),
            n,
            a: x.num_a().clone(),
            b: x.num_b().clone(),
            den: 2,
            real: ctx.embed_f64(x),
        }
    }

    /// The exact element, checking denominator and parity.
    pub fn elem(&self) -> Result<RingElem> {
        if self.den != 2 {
            return Err(Error::Parse(format!("denominator must be 2, got {}", self.den)));
        }
        RingElem::new(self.a.clone(), self.b.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite record serializes")
    }

    pub fn to_csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.d, self.n, self.a, self.b, format_f64(self.real))
    }

    pub fn from_csv_row(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::Parse(format!("expected 5 CSV fields, got {}", fields.len())));
        }
        let int = |s: &str| -> Result<BigInt> {
            s.parse::<BigInt>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let record = CoeffRecord {
            d: fields[0].parse().map_err(|_| Error::Parse(format!("bad D {:?}", fields[0])))?,
            n: fields[1].parse().map_err(|_| Error::Parse(format!("bad N {:?}", fields[1])))?,
            a: int(fields[2])?,
            b: int(fields[3])?,
            den: 2,
            real: fields[4]
                .parse()
                .map_err(|_| Error::Parse(format!("bad real {:?}", fields[4])))?,
        };
        record.elem()?;
        Ok(record)
    }
}

/// Parses one JSON record and checks that it denotes an element of `O_D`.
pub fn parse_record_json(text: &str) -> Result<CoeffRecord> {
    let record: CoeffRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if !record.real.is_finite() {
        return Err(Error::Parse("real value is not finite".into()));
    }
    record.elem()?;
    Ok(record)
}

/// Parses a JSON array of records.
pub fn parse_records_json(text: &str) -> Result<Vec<CoeffRecord>> {
    let records: Vec<CoeffRecord> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    for r in &records {
        if !r.real.is_finite() {
            return Err(Error::Parse("real value is not finite".into()));
        }
        r.elem()?;
    }
    Ok(records)
}

pub fn records_to_json(records: &[CoeffRecord]) -> String {
    serde_json::to_string(records).expect("finite records serialize")
}
