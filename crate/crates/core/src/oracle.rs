//! Independent recomputation of `a_D(N)` from partition generating functions.
//!
//! `eta_D` rearranges as
//!
//! ```text
//! q^m F_NR(q)^2 F_e(q, 1) F_0(q) prod_{a in QR} F_e(q, zeta^a) prod_{b in NR} F_ord(q, zeta^b)
//! ```
//!
//! with `F_e(q, t) = prod (1 - t q^n)`, `F_ord(q, t) = prod (1 - t q^n)^{-1}`
//! `F_NR` the generating function of partitions into non-residues and `F_0`
//! that of partitions into parts `n` with `chi_D(n) = 0` (`F_ord(q^D, 1)`
//! when `D` is prime).
//! `F_e(q, 1)` comes from the pentagonal terms; the twisted factors come
//! from partition counts split by length mod `D` (signed distinct-part
//! counts for `F_e`, ordinary counts for `F_ord`). Every factor is
//! expanded from the tables in [`crate::partitions`], multiplied in
//! `Z[x]/(x^D - 1)` and only the final coefficients are projected to `O_D`.
//! None of this touches the period polynomials used by [`crate::qseries`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::characters::CharTable;
use crate::cyclotomic::{CycPoly, QuadProjector};
use crate::error::{Error, Result};
use crate::partitions::{
    distinct_length_distribution, length_distribution, p_nr_table, p_ord_twisted, p_zero_table,
    pentagonal_terms,
};
use crate::qseries::{eta_series, MAX_ORDER};
use crate::quad_ring::{RingCtx, RingElem};

/// Truncated power series with coefficients in the cyclotomic model ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycSeries {
    d: usize,
    coeffs: Vec<CycPoly>,
}

impl CycSeries {
    pub fn one(d: usize, prec: usize) -> Self {
        let mut coeffs = vec![CycPoly::zero(d); prec + 1];
        coeffs[0] = CycPoly::one(d);
        CycSeries { d, coeffs }
    }

    /// Rational-integer series embedded at `x^0`.
    pub fn from_integers(d: usize, ints: &[BigInt]) -> Self {
        CycSeries {
            d,
            coeffs: ints
                .iter()
                .map(|c| CycPoly::monomial(d, 0, c.clone()))
                .collect(),
        }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycPoly] {
        &self.coeffs
    }

    /// Full truncated product.
    pub fn mul(&self, other: &CycSeries) -> Result<CycSeries> {
        if self.d != other.d || self.prec() != other.prec() {
            return Err(Error::DimensionMismatch {
                left: self.prec(),
                right: other.prec(),
            });
        }
        let len = self.coeffs.len();
        let mut out = vec![CycPoly::zero(self.d); len];
        for (i, u) in self.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in other.coeffs[..len - i].iter().enumerate() {
                if !v.is_zero() {
                    out[i + j].add_product(u, v);
                }
            }
        }
        Ok(CycSeries { d: self.d, coeffs: out })
    }

    pub fn project(&self, proj: &QuadProjector) -> Result<Vec<RingElem>> {
        self.coeffs.iter().map(|c| proj.project(c)).collect()
    }
}

fn int_mul(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let len = f.len().min(g.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, a) in f.iter().enumerate().take(len) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g[..len - i].iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// The rational-integer part `F_NR(q)^2 F_e(q, 1) prod_{chi(n) = 0} (1 - q^n)^{-1}`.
///
/// For prime `D` the last factor is `F_ord(q^D, 1)`; for composite `D` it
/// also absorbs the parts that share only a proper factor with `D`.
fn untwisted_factor(ct: &CharTable, order: usize) -> Vec<BigInt> {
    let p_nr = p_nr_table(ct, order);
    let mut euler = vec![BigInt::zero(); order + 1];
    for t in pentagonal_terms(order as u64) {
        euler[t.exponent as usize] += t.sign as i64;
    }
    let zero_parts = p_zero_table(ct, order);
    let nr_sq = int_mul(&p_nr, &p_nr);
    int_mul(&int_mul(&nr_sq, &euler), &zero_parts)
}

/// `prod_{a in twists} sum_k (sum_r rows[k][r] zeta^{a r}) q^k`.
fn twisted_product(rows: &[Vec<BigInt>], twists: &[u64]) -> Result<CycSeries> {
    let d = rows[0].len();
    let mut acc = CycSeries::one(d, rows.len() - 1);
    for &a in twists {
        let factor = CycSeries {
            d,
            coeffs: rows.iter().map(|row| p_ord_twisted(row, a)).collect(),
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `a_D(0..=N)` by the partition convolution, projected coefficientwise.
///
/// Both twisted sub-products (over residues and over non-residues) are
/// projected on their own as well: each is fixed by the residue subgroup of
/// the Galois group, so a projection failure there is reported as an error.
pub fn a_via_convolution(d: u64, order: usize) -> Result<Vec<RingElem>> {
    if order > MAX_ORDER {
        return Err(Error::Capacity(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let ct = CharTable::new(d)?;
    let dd = d as usize;
    let proj = QuadProjector::new(&ct);

    let residues = twisted_product(&distinct_length_distribution(dd, order), ct.qr_list())?;
    residues.project(&proj)?;
    let non_residues = twisted_product(&length_distribution(dd, order), ct.nr_list())?;
    non_residues.project(&proj)?;

    let base = CycSeries::from_integers(dd, &untwisted_factor(&ct, order));
    base.mul(&residues)?.mul(&non_residues)?.project(&proj)
}

/// Coefficientwise comparison of the oracle against [`eta_series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub d: u64,
    pub order: usize,
    pub product: Vec<RingElem>,
    pub convolution: Vec<RingElem>,
}

impl OracleCheck {
    pub fn run(d: u64, order: usize) -> Result<Self> {
        let product = eta_series(d, order)?.into_coeffs();
        let convolution = a_via_convolution(d, order)?;
        Ok(OracleCheck {
            d,
            order,
            product,
            convolution,
        })
    }

    pub fn first_divergence(&self) -> Option<usize> {
        self.product
            .iter()
            .zip(&self.convolution)
            .position(|(a, b)| a != b)
    }

    pub fn passed(&self) -> bool {
        self.first_divergence().is_none()
    }

    pub fn ctx(&self) -> Result<RingCtx> {
        RingCtx::new(self.d)
    }
}
