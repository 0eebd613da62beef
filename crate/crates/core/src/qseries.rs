//! Truncated power series over `O_D` and the exact expansion of `eta_D`.
//!
//! A [`QSeries`] stands for `q^v * sum_{k <= prec} c_k q^k` where the
//! valuation `v` is an exact rational carried alongside the coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characters::CharTable;
use crate::cyclotomic::period_polynomials;
use crate::error::{Error, Result};
use crate::lseries::l_minus_one;
use crate::quad_ring::{RingCtx, RingElem};

/// Largest truncation order accepted by the series constructors.
pub const MAX_ORDER: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    ctx: RingCtx,
    coeffs: Vec<RingElem>,
    valuation: BigRational,
}

impl QSeries {
    /// The constant series `1 + O(q^{prec+1})`.
    pub fn one(ctx: RingCtx, prec: usize) -> Self {
        let mut coeffs = vec![RingElem::zero(); prec + 1];
        coeffs[0] = RingElem::one();
        QSeries {
            ctx,
            coeffs,
            valuation: BigRational::zero(),
        }
    }

    /// Series with the given coefficients for `q^0 .. q^prec`.
    pub fn from_coeffs(ctx: RingCtx, coeffs: Vec<RingElem>, valuation: BigRational) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the q^0 coefficient");
        QSeries {
            ctx,
            coeffs,
            valuation,
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    /// Truncation order `N`: coefficients are known for `q^0 .. q^N`.
    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElem> {
        self.coeffs
    }

    pub fn valuation(&self) -> &BigRational {
        &self.valuation
    }

    pub fn set_valuation(&mut self, v: BigRational) {
        self.valuation = v;
    }

    /// Same series cut down to a lower order.
    pub fn truncate(&self, prec: usize) -> Self {
        let keep = prec.min(self.prec()) + 1;
        QSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs[..keep].to_vec(),
            valuation: self.valuation.clone(),
        }
    }

    fn check_compatible(&self, other: &QSeries) -> Result<()> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.prec() != other.prec() {
            return Err(Error::DimensionMismatch {
                left: self.prec(),
                right: other.prec(),
            });
        }
        Ok(())
    }

    /// Multiplies by `(1 - q^n)` for `exponent = +1`, divides by it for `-1`.
    pub fn sparse_binomial_apply(&mut self, n: usize, exponent: i8) {
        assert!(n >= 1, "gap must be positive");
        let len = self.coeffs.len();
        match exponent {
            1 => {
                for k in (n..len).rev() {
                    let (lo, hi) = self.coeffs.split_at_mut(k);
                    hi[0] -= &lo[k - n];
                }
            }
            -1 => {
                for k in n..len {
                    let (lo, hi) = self.coeffs.split_at_mut(k);
                    hi[0] += &lo[k - n];
                }
            }
            0 => {}
            e => panic!("exponent must be -1, 0 or +1, got {e}"),
        }
    }

    /// Multiplies by `poly(q^n)` where `poly[j]` is the coefficient of `x^j`.
    pub fn mul_poly_in_power(&mut self, poly: &[RingElem], n: usize) -> Result<()> {
        assert!(n >= 1);
        let len = self.coeffs.len();
        for k in (0..len).rev() {
            let mut acc = RingElem::zero();
            for (j, c) in poly.iter().enumerate() {
                let Some(src) = k.checked_sub(j * n) else { break };
                if c.is_zero() || self.coeffs[src].is_zero() {
                    continue;
                }
                if c.is_one() {
                    acc += &self.coeffs[src];
                } else {
                    acc += &self.ctx.mul(c, &self.coeffs[src])?;
                }
            }
            self.coeffs[k] = acc;
        }
        Ok(())
    }

    /// Divides by `poly(q^n)`, which must have constant term 1.
    pub fn div_poly_in_power(&mut self, poly: &[RingElem], n: usize) -> Result<()> {
        assert!(n >= 1);
        if poly.first().map_or(true, |c| !c.is_one()) {
            return Err(Error::NonUnitConstant);
        }
        let len = self.coeffs.len();
        for k in 0..len {
            let mut acc = std::mem::take(&mut self.coeffs[k]);
            for (j, c) in poly.iter().enumerate().skip(1) {
                let Some(src) = k.checked_sub(j * n) else { break };
                if c.is_zero() || self.coeffs[src].is_zero() {
                    continue;
                }
                acc -= &self.ctx.mul(c, &self.coeffs[src])?;
            }
            self.coeffs[k] = acc;
        }
        Ok(())
    }
}

/// Truncated product; valuations add.
pub fn series_mul(f: &QSeries, g: &QSeries) -> Result<QSeries> {
    f.check_compatible(g)?;
    let len = f.coeffs.len();
    let mut out = vec![RingElem::zero(); len];
    for (i, fi) in f.coeffs.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs[..len - i].iter().enumerate() {
            if !gj.is_zero() {
                out[i + j] += &f.ctx.mul(fi, gj)?;
            }
        }
    }
    Ok(QSeries {
        ctx: f.ctx.clone(),
        coeffs: out,
        valuation: &f.valuation + &g.valuation,
    })
}

/// Inverse of a series whose constant term is `+1` or `-1`.
pub fn series_inv(f: &QSeries) -> Result<QSeries> {
    let c0 = &f.coeffs[0];
    let unit = if c0.is_one() {
        BigInt::one()
    } else if (-c0).is_one() {
        -BigInt::one()
    } else {
        return Err(Error::NonUnitConstant);
    };
    let len = f.coeffs.len();
    let mut out: Vec<RingElem> = Vec::with_capacity(len);
    out.push(RingElem::from_int(unit.clone()));
    for k in 1..len {
        let mut acc = RingElem::zero();
        for j in 1..=k {
            if !f.coeffs[j].is_zero() && !out[k - j].is_zero() {
                acc += &f.ctx.mul(&f.coeffs[j], &out[k - j])?;
            }
        }
        // out[k] = -c0^{-1} * acc
        out.push((-acc).mul_int(&unit));
    }
    Ok(QSeries {
        ctx: f.ctx.clone(),
        coeffs: out,
        valuation: -&f.valuation,
    })
}

/// `f^k` for `k >= 1` by repeated squaring; the valuation is multiplied by `k`.
pub fn series_pow(f: &QSeries, k: u32) -> Result<QSeries> {
    assert!(k >= 1, "power must be positive");
    let mut result: Option<QSeries> = None;
    let mut base = f.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => series_mul(&r, &base)?,
            });
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base)?;
        }
    }
    Ok(result.expect("k >= 1"))
}

/// `a_D(0..=N)` of `eta_D = q^m prod_n (1 - q^n)^{chi(n)} prod_a (1 - zeta^a q^n)^{chi(a)}`.
///
/// Each `n` contributes `(1 - q^n)^{chi(n)} f_plus(q^n) / f_minus(q^n)`;
/// the factor with `a = D` has exponent `chi(D) = 0` and is skipped. The
/// valuation `m = -L(-1, chi_D)/2` is attached as metadata.
pub fn eta_series(d: u64, order: usize) -> Result<QSeries> {
    if order > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "order {order} exceeds the limit of {MAX_ORDER}"
        )));
    }
    let ct = CharTable::new(d)?;
    let ctx = RingCtx::new(d)?;
    let periods = period_polynomials(&ct)?;
    let lvals = l_minus_one(&ct)?;

    let mut s = QSeries::one(ctx, order);
    for n in 1..=order {
        s.sparse_binomial_apply(n, ct.chi(n as i64));
        s.mul_poly_in_power(&periods.f_plus, n)?;
        s.div_poly_in_power(&periods.f_minus, n)?;
    }
    s.valuation = lvals.m_exponent;
    Ok(s)
}

/// `Delta_5 = eta_5^5` truncated so that `tau_5(1..=count)` are available.
///
/// The result has valuation 1, so `coeffs()[k]` is `tau_5(k + 1)`.
pub fn delta5_series(count: usize) -> Result<QSeries> {
    let order = count.max(1) - 1;
    let eta = eta_series(5, order)?;
    series_pow(&eta, 5)
}

/// `tau_5(1..=count)` as a plain vector (index 0 holds `tau_5(1)`).
pub fn tau5(count: usize) -> Result<Vec<RingElem>> {
    Ok(delta5_series(count)?.into_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> RingCtx {
        RingCtx::new(5).unwrap()
    }

    fn e(a: i64, b: i64) -> RingElem {
        RingElem::new(a, b).unwrap()
    }

    fn int_series(ctx: RingCtx, c: &[i64]) -> QSeries {
        QSeries::from_coeffs(ctx, c.iter().map(|&v| RingElem::from_int(v)).collect(), BigRational::zero())
    }

    #[test]
    fn inverse_contract() {
        let f = QSeries::from_coeffs(
            ctx5(),
            vec![RingElem::one(), e(-2, -2), e(7, 1), e(0, -4), e(3, 1)],
            BigRational::new(1.into(), 5.into()),
        );
        let prod = series_mul(&f, &series_inv(&f).unwrap()).unwrap();
        assert_eq!(prod.coeffs(), QSeries::one(ctx5(), 4).coeffs());
        assert!(prod.valuation().is_zero());
        let neg = QSeries::from_coeffs(ctx5(), vec![-RingElem::one(), e(1, 1)], BigRational::zero());
        let inv = series_inv(&neg).unwrap();
        assert_eq!(series_mul(&neg, &inv).unwrap().coeffs(), QSeries::one(ctx5(), 1).coeffs());
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = int_series(ctx5(), &[1, -1, 0, 0, 0, 0]);
        let geo = int_series(ctx5(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(series_mul(&one_minus_q, &geo).unwrap(), QSeries::one(ctx5(), 5));
    }

    #[test]
    fn pow_one_is_identity() {
        let f = int_series(ctx5(), &[1, 3, -2, 7]);
        assert_eq!(series_pow(&f, 1).unwrap(), f);
        let f3 = series_pow(&f, 3).unwrap();
        let manual = series_mul(&series_mul(&f, &f).unwrap(), &f).unwrap();
        assert_eq!(f3, manual);
    }

    #[test]
    fn non_unit_constant_rejected() {
        let f = int_series(ctx5(), &[2, 1]);
        assert_eq!(series_inv(&f), Err(Error::NonUnitConstant));
        let g = QSeries::from_coeffs(ctx5(), vec![e(1, 1), RingElem::zero()], BigRational::zero());
        assert_eq!(series_inv(&g), Err(Error::NonUnitConstant));
    }

    #[test]
    fn mismatched_series() {
        let f = QSeries::one(ctx5(), 3);
        let g = QSeries::one(RingCtx::new(13).unwrap(), 3);
        assert!(matches!(series_mul(&f, &g), Err(Error::ContextMismatch { .. })));
        let h = QSeries::one(ctx5(), 4);
        assert!(matches!(series_mul(&f, &h), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sparse_binomial_examples() {
        let mut f = QSeries::one(ctx5(), 6);
        f.sparse_binomial_apply(2, -1);
        assert_eq!(f, int_series(ctx5(), &[1, 0, 1, 0, 1, 0, 1]));
        let mut g = QSeries::one(ctx5(), 3);
        g.sparse_binomial_apply(1, 1);
        assert_eq!(g, int_series(ctx5(), &[1, -1, 0, 0]));

        let orig = QSeries::from_coeffs(ctx5(), vec![e(2, 0), e(-2, -2), e(7, 1), e(0, 4)], BigRational::zero());
        let mut h = orig.clone();
        h.sparse_binomial_apply(2, 1);
        h.sparse_binomial_apply(2, -1);
        assert_eq!(h, orig);
    }

    #[test]
    fn poly_multiply_then_divide() {
        let orig = QSeries::from_coeffs(ctx5(), vec![e(2, 0), e(-2, -2), e(7, 1), e(0, 4), e(1, 1)], BigRational::zero());
        let poly = vec![RingElem::one(), e(1, -1), RingElem::one()];
        let mut h = orig.clone();
        h.mul_poly_in_power(&poly, 1).unwrap();
        assert_ne!(h, orig);
        h.div_poly_in_power(&poly, 1).unwrap();
        assert_eq!(h, orig);
        assert_eq!(h.div_poly_in_power(&[e(4, 0)], 1), Err(Error::NonUnitConstant));
    }

    #[test]
    fn eta_examples() {
        let s = eta_series(5, 3).unwrap();
        assert_eq!(s.coeffs(), &[RingElem::one(), e(-2, -2), e(7, 1), e(0, -4)]);
        assert_eq!(s.valuation(), &BigRational::new(1.into(), 5.into()));
        let s = eta_series(13, 3).unwrap();
        assert_eq!(s.coeffs()[3], e(-4, -8));
        assert_eq!(s.valuation(), &BigRational::from_integer(1.into()));
        let s = eta_series(17, 25).unwrap();
        assert_eq!(s.coeffs()[25], e(2 * 1381414, -2 * 335786));
    }

    #[test]
    fn delta5_examples() {
        let t = tau5(6).unwrap();
        assert_eq!(t[0], RingElem::one());
        assert_eq!(t[1], e(-10, -10));
        assert_eq!(t[2], e(155, 45));
        assert_eq!(delta5_series(6).unwrap().valuation(), &BigRational::one());
    }

    // Fifth power of the tabulated a_5(0..=6), expanded independently.
    #[test]
    fn delta5_sixth_and_seventh() {
        let t = tau5(7).unwrap();
        assert_eq!(t[5], e(-6552, -3760));
        assert_eq!(t[6], e(20565, 6965));
    }

    #[test]
    fn truncation_stability() {
        for d in [5u64, 13, 21] {
            let short = eta_series(d, 30).unwrap();
            let long = eta_series(d, 40).unwrap();
            assert_eq!(short, long.truncate(30));
        }
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(eta_series(5, MAX_ORDER + 1), Err(Error::Capacity(_))));
        assert!(matches!(eta_series(9, 3), Err(Error::InvalidDiscriminant(9))));
    }
}
