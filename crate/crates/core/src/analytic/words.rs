//! Words `alpha(k_1, .., k_l) = T^{k_1} S T^{k_2} S .. S T^{k_l}` in the
//! generators `T = (1, sqrt D; 0, 1)` and `S = (0, -1; 1, 0)`, and the fifth
//! root of unity by which `eta_5` transforms under them.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::{EtaEvaluator, HalfPlanePoint};
use crate::characters::is_fundamental;
use crate::error::{Error, Result};

/// `u + v sqrt D` with exact integer parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Surd {
    pub u: i128,
    pub v: i128,
}

impl Surd {
    pub const ZERO: Surd = Surd { u: 0, v: 0 };
    pub const ONE: Surd = Surd { u: 1, v: 0 };

    fn add(self, o: Surd) -> Result<Surd> {
        Ok(Surd {
            u: self.u.checked_add(o.u).ok_or_else(overflow)?,
            v: self.v.checked_add(o.v).ok_or_else(overflow)?,
        })
    }

    fn mul(self, o: Surd, d: i128) -> Result<Surd> {
        let m = |a: i128, b: i128| a.checked_mul(b).ok_or_else(overflow);
        let u = m(self.u, o.u)?.checked_add(m(m(self.v, o.v)?, d)?).ok_or_else(overflow)?;
        let v = m(self.u, o.v)?.checked_add(m(self.v, o.u)?).ok_or_else(overflow)?;
        Ok(Surd { u, v })
    }

    pub fn to_f64(self, sqrt_d: f64) -> f64 {
        self.u as f64 + self.v as f64 * sqrt_d
    }
}

fn overflow() -> Error {
    Error::Capacity("word matrix entries overflow 128-bit integers".into())
}

type Matrix = [[Surd; 2]; 2];

fn mat_mul(x: &Matrix, y: &Matrix, d: i128) -> Result<Matrix> {
    let mut out = [[Surd::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0].mul(y[0][j], d)?.add(x[i][1].mul(y[1][j], d)?)?;
        }
    }
    Ok(out)
}

/// A word together with its matrix, multiplied out exactly in `Z[sqrt D]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupWord {
    pub d: u64,
    pub ks: Vec<i64>,
    pub matrix: Matrix,
}

impl GroupWord {
    pub fn new(ks: &[i64], d: u64) -> Result<Self> {
        if !is_fundamental(d as i64) {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        if ks.is_empty() {
            return Err(Error::Parse("a word needs at least one exponent".into()));
        }
        let di = d as i128;
        let t = |k: i64| -> Matrix {
            [[Surd::ONE, Surd { u: 0, v: k as i128 }], [Surd::ZERO, Surd::ONE]]
        };
        let s: Matrix = [[Surd::ZERO, Surd { u: -1, v: 0 }], [Surd::ONE, Surd::ZERO]];
        let mut m = t(ks[0]);
        for &k in &ks[1..] {
            m = mat_mul(&mat_mul(&m, &s, di)?, &t(k), di)?;
        }
        let det = m[0][0].mul(m[1][1], di)?;
        let off = m[0][1].mul(m[1][0], di)?;
        if det.u.checked_sub(off.u) != Some(1) || det.v != off.v {
            return Err(Error::Corruption(format!("word {ks:?} has determinant != 1")));
        }
        Ok(GroupWord {
            d,
            ks: ks.to_vec(),
            matrix: m,
        })
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    /// Real entries `(a, b, c, d)`.
    pub fn real_entries(&self) -> [f64; 4] {
        let r = (self.d as f64).sqrt();
        let m = &self.matrix;
        [m[0][0].to_f64(r), m[0][1].to_f64(r), m[1][0].to_f64(r), m[1][1].to_f64(r)]
    }

    pub fn act(&self, z: HalfPlanePoint) -> Result<HalfPlanePoint> {
        let [a, b, c, d] = self.real_entries();
        let zc = z.to_complex();
        HalfPlanePoint::from_complex((a * zc + b) / (c * zc + d))
    }

    /// `sum k_i mod 5`.
    pub fn exponent_sum_mod5(&self) -> u8 {
        self.ks.iter().map(|&k| k.rem_euclid(5)).sum::<i64>().rem_euclid(5) as u8
    }

    /// The exponent `u` with `eta_5(gamma z) = e^{2 pi i u/5} eta_5(z)`, read off
    /// the matrix: `c(a + d)` for even length, where the matrix is
    /// `(a sqrt5, b; c, d sqrt5)`, and `a(b - c)` for odd length, where it is
    /// `(a, b sqrt5; c sqrt5, d)`.
    pub fn predicted_u(&self) -> Result<u8> {
        if self.d != 5 {
            return Err(Error::Unsupported(format!(
                "the root-of-unity law is only available for D = 5, not D = {}",
                self.d
            )));
        }
        let m = &self.matrix;
        let u = if self.len() % 2 == 0 {
            if m[0][0].u != 0 || m[0][1].v != 0 || m[1][0].v != 0 || m[1][1].u != 0 {
                return Err(Error::Corruption(format!("even word {:?} has the wrong shape", self.ks)));
            }
            m[1][0].u * (m[0][0].v + m[1][1].v)
        } else {
            if m[0][0].v != 0 || m[0][1].u != 0 || m[1][0].u != 0 || m[1][1].v != 0 {
                return Err(Error::Corruption(format!("odd word {:?} has the wrong shape", self.ks)));
            }
            m[0][0].u * (m[0][1].v - m[1][0].v)
        };
        Ok(u.rem_euclid(5) as u8)
    }

    /// A point where both `z` and `gamma z` sit as high as possible: the top
    /// of the isometric circle, where `|cz + d| = 1`.
    pub fn conditioned_point(&self) -> Result<HalfPlanePoint> {
        let [_, _, c, d] = self.real_entries();
        if c.abs() < 1e-12 {
            return HalfPlanePoint::new(0.1, 1.0);
        }
        HalfPlanePoint::new(-d / c, 1.0 / c.abs())
    }

    /// Compares `eta_5(gamma z)/eta_5(z)` with `e^{2 pi i u/5}`.
    ///
    /// Without an explicit `n_max` the truncation grows with `1/im` so that the
    /// neglected tail stays below double precision.
    pub fn check_u_gamma(&self, z: Option<HalfPlanePoint>, n_max: Option<usize>) -> Result<UGammaReport> {
        let predicted = self.predicted_u()?;
        let z = match z {
            Some(z) => z,
            None => self.conditioned_point()?,
        };
        let image = self.act(z)?;
        let low = z.im.min(image.im);
        if low < 1e-4 {
            return Err(Error::Conditioning(format!(
                "word {:?}: imaginary part {low:e} too close to the real axis",
                self.ks
            )));
        }
        let ev = EtaEvaluator::new(5)?;
        let n_max = n_max.unwrap_or_else(|| {
            ((40.0 * ev.sqrt_d() / (2.0 * PI * low)).ceil() as usize).max(50)
        });
        let ratio = (ev.log_eta(image, n_max) - ev.log_eta(z, n_max)).exp();
        let expected = Complex64::from_polar(1.0, 2.0 * PI * predicted as f64 / 5.0);
        Ok(UGammaReport {
            ks: self.ks.clone(),
            predicted_u: predicted,
            exponent_sum_mod5: self.exponent_sum_mod5(),
            z,
            image,
            n_max,
            ratio_re: ratio.re,
            ratio_im: ratio.im,
            residual: (ratio - expected).norm(),
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UGammaReport {
    pub ks: Vec<i64>,
    pub predicted_u: u8,
    pub exponent_sum_mod5: u8,
    pub z: HalfPlanePoint,
    pub image: HalfPlanePoint,
    pub n_max: usize,
    pub ratio_re: f64,
    pub ratio_im: f64,
    pub residual: f64,
}

impl UGammaReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.predicted_u == self.exponent_sum_mod5 && self.residual < tol
    }
}

const MAX_WORD_LEN: usize = 64;
const MAX_EXPONENT: i64 = 1_000_000;

/// Parses `"k1,k2,.."`, optionally wrapped in `[ ]`, with optional spaces
/// around the commas.
pub fn parse_word(text: &str) -> Result<Vec<i64>> {
    let bad = |why: &str| Error::Parse(format!("word {text:?}: {why}"));
    let inner = match text.strip_prefix('[') {
        Some(rest) => rest.strip_suffix(']').ok_or_else(|| bad("unbalanced bracket"))?,
        None => text,
    };
    let mut out = Vec::new();
    for field in inner.split(',') {
        let field = field.trim_matches(' ');
        let digits = field.strip_prefix('-').unwrap_or(field);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad("expected an integer"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(bad("leading zero"));
        }
        if field.starts_with('-') && digits == "0" {
            return Err(bad("negative zero"));
        }
        let k: i64 = field.parse().map_err(|_| bad("integer out of range"))?;
        if k.abs() > MAX_EXPONENT {
            return Err(bad("exponent too large"));
        }
        out.push(k);
        if out.len() > MAX_WORD_LEN {
            return Err(bad("word too long"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(u: i128, v: i128) -> Surd {
        Surd { u, v }
    }

    #[test]
    fn tst_matrix() {
        let w = GroupWord::new(&[1, 1], 5).unwrap();
        assert_eq!(w.matrix, [[s(0, 1), s(4, 0)], [s(1, 0), s(0, 1)]]);
        assert_eq!(w.predicted_u().unwrap(), 2);
        assert_eq!(w.exponent_sum_mod5(), 2);
    }

    #[test]
    fn single_exponent_is_a_translation() {
        let w = GroupWord::new(&[0], 5).unwrap();
        assert_eq!(w.matrix, [[s(1, 0), s(0, 0)], [s(0, 0), s(1, 0)]]);
        assert_eq!(w.predicted_u().unwrap(), 0);
        let inversion = GroupWord::new(&[0, 0], 5).unwrap();
        assert_eq!(inversion.matrix, [[s(0, 0), s(-1, 0)], [s(1, 0), s(0, 0)]]);
        assert_eq!(inversion.predicted_u().unwrap(), 0);
    }

    #[test]
    fn random_word_numeric() {
        let w = GroupWord::new(&[2, -1, 1], 5).unwrap();
        assert_eq!(w.predicted_u().unwrap(), 2);
        let r = w.check_u_gamma(None, None).unwrap();
        assert!(r.passed(1e-4), "{r:?}");
    }

    #[test]
    fn other_discriminants_are_unsupported() {
        let w = GroupWord::new(&[1, 2], 13).unwrap();
        assert!(matches!(w.predicted_u(), Err(Error::Unsupported(_))));
        assert!(GroupWord::new(&[1], 9).is_err());
        assert!(GroupWord::new(&[], 5).is_err());
    }

    #[test]
    fn explicit_point_near_axis_is_rejected() {
        let w = GroupWord::new(&[1, 1], 5).unwrap();
        let z = HalfPlanePoint::new(0.0, 1e-6).unwrap();
        assert!(matches!(w.check_u_gamma(Some(z), None), Err(Error::Conditioning(_))));
    }

    #[test]
    fn word_parser() {
        assert_eq!(parse_word("2,-1,1").unwrap(), vec![2, -1, 1]);
        assert_eq!(parse_word("[0, 3]").unwrap(), vec![0, 3]);
        for bad in ["", "[]", "1,,2", "01", "-0", "1;2", "[1,2", "1 2", "9999999"] {
            assert!(parse_word(bad).is_err(), "{bad:?}");
        }
        let long = vec!["1"; 65].join(",");
        assert!(parse_word(&long).is_err());
    }

    proptest! {
        #[test]
        fn exact_law_and_determinant(ks in prop::collection::vec(-7i64..=7, 1..=8)) {
            let w = GroupWord::new(&ks, 5).unwrap();
            prop_assert_eq!(w.predicted_u().unwrap(), w.exponent_sum_mod5());
        }

        #[test]
        fn display_parses_back(ks in prop::collection::vec(-50i64..=50, 1..=10)) {
            let w = GroupWord::new(&ks, 13).unwrap();
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), ks);
        }
    }
}
