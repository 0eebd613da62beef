//! Double-precision evaluation of the truncated product for `eta_D` on the
//! upper half plane, and the numeric identities checked against it.
//!
//! All products are accumulated as sums of principal logarithms, so large
//! or tiny magnitudes never overflow before the final `exp`.

mod envelope;
mod words;

pub use envelope::{bound_envelope, log_bound_envelope, EnvelopeConstants};
pub use words::{parse_word, GroupWord, Surd, UGammaReport};

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::lseries::{l_minus_one, l_minus_one_f64, l_prime_zero_f64};

/// A point `z = re + i im` with `im > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfPlanePoint {
    pub re: f64,
    pub im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !im.is_finite() || !re.is_finite() {
            return Err(Error::NotInUpperHalfPlane(im));
        }
        Ok(HalfPlanePoint { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HalfPlanePoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `-1/z`.
    pub fn inverted(self) -> Self {
        let w = -self.to_complex().inv();
        HalfPlanePoint { re: w.re, im: w.im }
    }

    pub fn translated(self, by: f64) -> Self {
        HalfPlanePoint {
            re: self.re + by,
            im: self.im,
        }
    }
}

/// Precomputed data for evaluating `eta_D` and its factors numerically.
#[derive(Clone, Debug)]
pub struct EtaEvaluator {
    d: u64,
    sqrt_d: f64,
    chi: Vec<i8>,
    /// `(chi(a), zeta^a)` for every `a` coprime to `D`.
    twists: Vec<(f64, Complex64)>,
    valuation: f64,
}

impl EtaEvaluator {
    pub fn new(d: u64) -> Result<Self> {
        let ct = CharTable::new(d)?;
        let valuation = l_minus_one(&ct)?.m_f64();
        let twists = (1..d)
            .filter(|&a| ct.chi(a as i64) != 0)
            .map(|a| {
                let angle = 2.0 * PI * a as f64 / d as f64;
                (ct.chi(a as i64) as f64, Complex64::from_polar(1.0, angle))
            })
            .collect();
        Ok(EtaEvaluator {
            d,
            sqrt_d: (d as f64).sqrt(),
            chi: ct.values().to_vec(),
            twists,
            valuation,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn sqrt_d(&self) -> f64 {
        self.sqrt_d
    }

    /// `q = exp(2 pi i z / sqrt D)`.
    pub fn nome(&self, z: HalfPlanePoint) -> Complex64 {
        (Complex64::i() * 2.0 * PI * z.to_complex() / self.sqrt_d).exp()
    }

    fn chi(&self, n: usize) -> f64 {
        self.chi[n % self.d as usize] as f64
    }

    /// `sum_{n <= n_max} chi(n) log(1 - q^n)`, the logarithm of `Phi_D`.
    pub fn log_phi(&self, z: HalfPlanePoint, n_max: usize) -> Complex64 {
        let q = self.nome(z);
        let mut qn = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=n_max {
            qn *= q;
            let c = self.chi(n);
            if c != 0.0 {
                acc += c * (1.0 - qn).ln();
            }
        }
        acc
    }

    /// `sum_{n <= n_max} sum_a chi(a) log(1 - zeta^a q^n)`, the logarithm of `Phi#_D`.
    pub fn log_phi_twisted(&self, z: HalfPlanePoint, n_max: usize) -> Complex64 {
        let q = self.nome(z);
        let mut qn = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for _ in 1..=n_max {
            qn *= q;
            for &(c, zeta) in &self.twists {
                acc += c * (1.0 - zeta * qn).ln();
            }
        }
        acc
    }

    /// A logarithm of the truncated `eta_D(z)`; the `q^v` prefactor is
    /// taken as `2 pi i v z / sqrt D` straight from `z`.
    pub fn log_eta(&self, z: HalfPlanePoint, n_max: usize) -> Complex64 {
        let prefactor = Complex64::i() * 2.0 * PI * self.valuation * z.to_complex() / self.sqrt_d;
        prefactor + self.log_phi(z, n_max) + self.log_phi_twisted(z, n_max)
    }

    pub fn eta(&self, z: HalfPlanePoint, n_max: usize) -> Complex64 {
        self.log_eta(z, n_max).exp()
    }

    /// The multiplier `u` in `eta_D(z + sqrt D) = u eta_D(z)`: `e^{2 pi i/5}`
    /// for `D = 5`, `1` otherwise.
    pub fn translation_multiplier(&self) -> Complex64 {
        if self.d == 5 {
            Complex64::from_polar(1.0, 2.0 * PI / 5.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    /// `|eta(-1/z) - eta(z)|`.
    pub fn check_inversion(&self, z: HalfPlanePoint, n_max: usize) -> f64 {
        (self.eta(z.inverted(), n_max) - self.eta(z, n_max)).norm()
    }

    /// `|eta(z + sqrt D) - u eta(z)|`.
    pub fn check_translation(&self, z: HalfPlanePoint, n_max: usize) -> f64 {
        let shifted = self.eta(z.translated(self.sqrt_d), n_max);
        (shifted - self.translation_multiplier() * self.eta(z, n_max)).norm()
    }
}

/// `eta_D(z)` truncated at `n_max`.
pub fn eval_eta_numeric(d: u64, z: HalfPlanePoint, n_max: usize) -> Result<Complex64> {
    if n_max == 0 {
        return Err(Error::Unsupported("truncation n_max must be at least 1".into()));
    }
    Ok(EtaEvaluator::new(d)?.eta(z, n_max))
}

pub fn check_inversion(d: u64, z: HalfPlanePoint, n_max: usize) -> Result<f64> {
    Ok(EtaEvaluator::new(d)?.check_inversion(z, n_max))
}

pub fn check_translation(d: u64, z: HalfPlanePoint, n_max: usize) -> Result<f64> {
    Ok(EtaEvaluator::new(d)?.check_translation(z, n_max))
}

/// Residuals of both transformation laws at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularityResidual {
    pub d: u64,
    pub z: HalfPlanePoint,
    pub inversion: f64,
    pub translation: f64,
}

impl ModularityResidual {
    pub fn within(&self, tol: f64) -> bool {
        self.inversion < tol && self.translation < tol
    }
}

/// Deterministic points with `|re| <= sqrt(D)/2` and `0.5 <= im <= 1.5`.
pub fn sample_points(d: u64, count: usize, seed: u64) -> Vec<HalfPlanePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ d);
    let half = (d as f64).sqrt() / 2.0;
    (0..count)
        .map(|_| HalfPlanePoint {
            re: rng.gen_range(-half..=half),
            im: rng.gen_range(0.5..=1.5),
        })
        .collect()
}

pub fn verify_modularity(d: u64, points: &[HalfPlanePoint], n_max: usize) -> Result<Vec<ModularityResidual>> {
    let ev = EtaEvaluator::new(d)?;
    Ok(points
        .iter()
        .map(|&z| ModularityResidual {
            d,
            z,
            inversion: ev.check_inversion(z, n_max),
            translation: ev.check_translation(z, n_max),
        })
        .collect())
}

/// The relation between `Phi#_D` at `i/y` and `Phi_D` at `iy`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistedInversionCheck {
    pub d: u64,
    pub y: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
}

/// `|Phi#(i/y) - exp(L'(0) + y pi L(-1)/sqrt D) Phi(iy)|`.
pub fn twisted_inversion_check(d: u64, y: f64, n_max: usize) -> Result<TwistedInversionCheck> {
    let ct = CharTable::new(d)?;
    let ev = EtaEvaluator::new(d)?;
    let lp = l_prime_zero_f64(&ct);
    let lm = l_minus_one_f64(&l_minus_one(&ct)?);
    let at_iy = HalfPlanePoint::new(0.0, y)?;
    let lhs = ev.log_phi_twisted(at_iy.inverted(), n_max).exp();
    let scale = lp + y * PI * lm / ev.sqrt_d();
    let rhs = (scale + ev.log_phi(at_iy, n_max)).exp();
    Ok(TwistedInversionCheck {
        d,
        y,
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs_re: rhs.re,
        rhs_im: rhs.im,
        residual: (lhs - rhs).norm(),
    })
}

/// One row of the contour grid: `eta(z)` and `eta(-1/z)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRow {
    pub re: f64,
    pub im: f64,
    pub eta_re: f64,
    pub eta_im: f64,
    pub eta_inverted_re: f64,
    pub eta_inverted_im: f64,
}

pub const GRID_CSV_HEADER: &str = "re,im,re_eta,im_eta,re_eta_inv,im_eta_inv";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub steps: usize,
    pub n_max: usize,
}

pub fn grid(d: u64, spec: GridSpec) -> Result<Vec<GridRow>> {
    let ev = EtaEvaluator::new(d)?;
    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        if spec.steps <= 1 {
            return vec![lo];
        }
        (0..spec.steps)
            .map(|i| lo + (hi - lo) * i as f64 / (spec.steps - 1) as f64)
            .collect()
    };
    let mut rows = Vec::with_capacity(spec.steps * spec.steps);
    for im in axis(spec.im_min, spec.im_max) {
        for re in axis(spec.re_min, spec.re_max) {
            let z = HalfPlanePoint::new(re, im)?;
            let eta = ev.eta(z, spec.n_max);
            let eta_inverted = ev.eta(z.inverted(), spec.n_max);
            rows.push(GridRow {
                re,
                im,
                eta_re: eta.re,
                eta_im: eta.im,
                eta_inverted_re: eta_inverted.re,
                eta_inverted_im: eta_inverted.im,
            });
        }
    }
    Ok(rows)
}

impl GridRow {
    pub fn to_csv_row(&self) -> String {
        use crate::highprec::format_f64 as f;
        format!(
            "{},{},{},{},{},{}",
            f(self.re),
            f(self.im),
            f(self.eta_re),
            f(self.eta_im),
            f(self.eta_inverted_re),
            f(self.eta_inverted_im)
        )
    }
}
