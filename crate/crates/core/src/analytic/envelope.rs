//! The growth envelope `e^{C sqrt N} N^{phi/4 + 1} log(N + 2)^{phi/2 + 1}`
//! for the coefficients `a_D(N)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::{euler_phi, factor};
use crate::characters::is_fundamental;
use crate::error::{Error, Result};

/// The constants entering the envelope for one `D`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeConstants {
    pub d: u64,
    pub phi: u64,
    /// `pi sqrt(2/3)`.
    pub c0: f64,
    /// `(pi/sqrt 3) sqrt((D - 1)/D)` for prime `D`, otherwise `c0`.
    pub c_d: f64,
    /// `sqrt(2 c_D^2 + c0^2 (phi/2 + 1/5))`.
    pub c_tilde: f64,
    /// `pi/sqrt(3D) * sqrt(5D^2 + 7D - 10)`.
    pub c_closed_form: f64,
    /// The larger of the two, used by [`bound_envelope`].
    pub c_used: f64,
}

impl EnvelopeConstants {
    pub fn new(d: u64) -> Result<Self> {
        if !is_fundamental(d as i64) {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        let phi = euler_phi(d);
        let df = d as f64;
        let c0 = PI * (2.0f64 / 3.0).sqrt();
        let prime = matches!(factor(d).as_slice(), [(_, 1)]);
        let c_d = if prime {
            PI / 3f64.sqrt() * ((df - 1.0) / df).sqrt()
        } else {
            c0
        };
        let c_tilde = (2.0 * c_d * c_d + c0 * c0 * (phi as f64 / 2.0 + 0.2)).sqrt();
        let c_closed_form = PI / (3.0 * df).sqrt() * (5.0 * df * df + 7.0 * df - 10.0).sqrt();
        Ok(EnvelopeConstants {
            d,
            phi,
            c0,
            c_d,
            c_tilde,
            c_closed_form,
            c_used: c_tilde.max(c_closed_form),
        })
    }

    /// Natural log of the envelope at `N`. `N = 0` is read as `N = 1` in the
    /// polynomial factor so the value stays finite.
    pub fn log_envelope(&self, n: u64) -> f64 {
        let nf = n.max(1) as f64;
        let phi = self.phi as f64;
        self.c_used * (n as f64).sqrt()
            + (phi / 4.0 + 1.0) * nf.ln()
            + (phi / 2.0 + 1.0) * ((n as f64 + 2.0).ln()).ln()
    }
}

pub fn log_bound_envelope(d: u64, n: u64) -> Result<f64> {
    Ok(EnvelopeConstants::new(d)?.log_envelope(n))
}

pub fn bound_envelope(d: u64, n: u64) -> Result<f64> {
    Ok(log_bound_envelope(d, n)?.exp())
}
