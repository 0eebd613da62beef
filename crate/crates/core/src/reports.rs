//! Exploratory reports on the real embeddings of `a_D(N)`: sign patterns
//! and the growth of `log |a_D(N)|` against `sqrt N`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highprec::format_f64;
use crate::qseries::eta_series;
use crate::quad_ring::{RingCtx, RingElem};

/// `log |x|` of the real embedding, or `None` for zero.
///
/// When `a` and `b sqrt D` have opposite signs the embedding is computed as
/// `norm / conjugate`, which avoids cancellation.
pub fn log_abs_embedding(ctx: &RingCtx, x: &RingElem) -> Result<Option<f64>> {
    if x.is_zero() {
        return Ok(None);
    }
    let (a, b) = (x.num_a(), x.num_b());
    if a.is_zero() || b.is_zero() || a.is_negative() == b.is_negative() {
        return Ok(Some(ctx.embed_f64(x).abs().ln()));
    }
    let norm = ctx.norm(x)?;
    let norm = norm.to_string().parse::<f64>().unwrap_or(f64::INFINITY).abs();
    Ok(Some(norm.ln() - ctx.embed_f64(&x.conj()).abs().ln()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignReport {
    pub d: u64,
    pub n_max: usize,
    /// Sign of the real embedding of `a_D(N)` for `N = 1..=n_max`.
    pub signs: Vec<i8>,
    /// Indices `N` with `sign(a_D(N)) != sign(a_D(N - 1))`, skipping zeros.
    pub changes: Vec<usize>,
    pub count: usize,
}

pub fn sign_report(d: u64, n_max: usize) -> Result<SignReport> {
    let s = eta_series(d, n_max)?;
    let ctx = s.ctx().clone();
    let signs: Vec<i8> = s.coeffs()[1..].iter().map(|c| ctx.sign(c)).collect();
    let mut changes = Vec::new();
    let mut last = 0i8;
    for (i, &sg) in signs.iter().enumerate() {
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            changes.push(i + 1);
        }
        last = sg;
    }
    Ok(SignReport {
        d,
        n_max,
        count: changes.len(),
        signs,
        changes,
    })
}

impl SignReport {
    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|&s| match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub sqrt_n: f64,
    pub log_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub d: u64,
    pub n_max: usize,
    pub window: (usize, usize),
    pub points: Vec<GrowthPoint>,
    /// Indices `N` with `a_D(N) = 0`, left out of the fit.
    pub zeros: Vec<usize>,
    pub slope: f64,
    pub intercept: f64,
    /// The fitted slope, read as an estimate of the growth constant.
    pub c_estimate: f64,
}

pub const GROWTH_CSV_HEADER: &str = "N,sqrt_N,log_abs_a";

/// Least-squares line through `(sqrt N, log |a_D(N)|)` for `N` in `window`.
pub fn growth_report(d: u64, n_max: usize, window: Option<(usize, usize)>) -> Result<GrowthReport> {
    let window = window.unwrap_or((1, n_max));
    if window.0 < 1 || window.0 >= window.1 || window.1 > n_max {
        return Err(Error::Unsupported(format!(
            "fit window {window:?} must satisfy 1 <= lo < hi <= {n_max}"
        )));
    }
    let s = eta_series(d, n_max)?;
    let ctx = s.ctx().clone();
    let mut points = Vec::with_capacity(n_max);
    let mut zeros = Vec::new();
    for (n, c) in s.coeffs().iter().enumerate().skip(1) {
        match log_abs_embedding(&ctx, c)? {
            Some(log_abs) => points.push(GrowthPoint {
                n,
                sqrt_n: (n as f64).sqrt(),
                log_abs,
            }),
            None => zeros.push(n),
        }
    }
    let fit: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| (window.0..=window.1).contains(&p.n))
        .map(|p| (p.sqrt_n, p.log_abs))
        .collect();
    let (slope, intercept) = least_squares(&fit)?;
    Ok(GrowthReport {
        d,
        n_max,
        window,
        points,
        zeros,
        slope,
        intercept,
        c_estimate: slope,
    })
}

fn least_squares(xy: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = xy.len() as f64;
    if xy.len() < 2 {
        return Err(Error::Unsupported("fit needs at least two points".into()));
    }
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

impl GrowthReport {
    pub fn csv_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.points
            .iter()
            .map(|p| format!("{},{},{}", p.n, format_f64(p.sqrt_n), format_f64(p.log_abs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_signs_for_five() {
        let r = sign_report(5, 100).unwrap();
        assert!(r.sign_string().starts_with("-+-++"));
        assert!(r.changes.starts_with(&[2, 3]));
        assert_eq!(r.count, r.changes.len());
    }

    #[test]
    fn cancellation_free_log() {
        let ctx = RingCtx::new(5).unwrap();
        // 4 - sqrt 5
        let x = RingElem::new(8, -2).unwrap();
        let v = log_abs_embedding(&ctx, &x).unwrap().unwrap();
        assert!((v - (4.0 - 5f64.sqrt()).ln()).abs() < 1e-14);
        assert_eq!(log_abs_embedding(&ctx, &RingElem::zero()).unwrap(), None);
    }

    #[test]
    fn fit_recovers_a_line() {
        let xy: Vec<(f64, f64)> = (1..50).map(|i| (i as f64, 3.0 * i as f64 - 2.0)).collect();
        let (m, b) = least_squares(&xy).unwrap();
        assert!((m - 3.0).abs() < 1e-12 && (b + 2.0).abs() < 1e-10);
    }

    #[test]
    fn thirteen_outgrows_five_at_hundred() {
        let g5 = growth_report(5, 100, None).unwrap();
        let g13 = growth_report(13, 100, None).unwrap();
        let last = |g: &GrowthReport| g.points.iter().find(|p| p.n == 100).unwrap().log_abs;
        assert!(last(&g13) > last(&g5));
        assert!(g13.slope > 0.0);
    }

    #[test]
    fn bad_window_is_rejected() {
        assert!(growth_report(5, 10, Some((5, 20))).is_err());
        assert!(growth_report(5, 10, Some((0, 5))).is_err());
    }
}
