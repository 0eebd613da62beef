//! Exact arithmetic in the model ring `Z[x]/(x^D - 1)`, standing in for
//! `Z[zeta_D]` through the evaluation `x -> zeta_D = exp(2 pi i / D)`.
//!
//! Nothing is reduced modulo the cyclotomic polynomial. The field trace
//! `Q(zeta_D) -> Q` is extended linearly to the model ring, which makes it
//! blind to the kernel of the evaluation map; all projections go through it.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{euler_phi, gcd, mobius};
use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::quad_ring::{RingCtx, RingElem};

/// Element `sum_k coeffs[k] x^k` of `Z[x]/(x^D - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycPoly {
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn zero(d: usize) -> Self {
        CycPoly {
            coeffs: vec![BigInt::zero(); d],
        }
    }

    pub fn one(d: usize) -> Self {
        CycPoly::monomial(d, 0, BigInt::from(1))
    }

    /// `c * x^k`, exponent taken mod `D`.
    pub fn monomial(d: usize, k: i64, c: BigInt) -> Self {
        let mut p = CycPoly::zero(d);
        p.coeffs[k.rem_euclid(d as i64) as usize] = c;
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "CycPoly needs D >= 1 coefficients");
        CycPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        CycPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `self * x^k`: a cyclic rotation of the coefficients.
    pub fn shift(&self, k: i64) -> Self {
        let d = self.d();
        let k = k.rem_euclid(d as i64) as usize;
        let mut out = vec![BigInt::zero(); d];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i + k) % d] = c.clone();
        }
        CycPoly { coeffs: out }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `self += c * x^k`.
    pub fn add_monomial(&mut self, k: i64, c: &BigInt) {
        let d = self.d() as i64;
        self.coeffs[k.rem_euclid(d) as usize] += c;
    }

    /// `self += other * x^k`, no allocation.
    pub fn add_shifted(&mut self, other: &CycPoly, k: i64) {
        let d = self.d();
        let k = k.rem_euclid(d as i64) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.coeffs[(i + k) % d] += c;
            }
        }
    }

    /// `self += u * v`, accumulating the cyclic convolution in place.
    pub fn add_product(&mut self, u: &CycPoly, v: &CycPoly) {
        let d = self.d();
        debug_assert!(u.d() == d && v.d() == d);
        for (i, ui) in u.coeffs.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coeffs.iter().enumerate() {
                if !vj.is_zero() {
                    self.coeffs[(i + j) % d] += ui * vj;
                }
            }
        }
    }

    /// Numeric value at `zeta_D^power`.
    pub fn eval_at_root(&self, power: i64) -> Complex64 {
        let d = self.d() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let c = c.to_string().parse::<f64>().unwrap_or(f64::NAN);
                let angle = 2.0 * std::f64::consts::PI * (k as i64 * power) as f64 / d;
                Complex64::from_polar(c, angle)
            })
            .sum()
    }
}

/// `(u v)[k] = sum_{i + j = k mod D} u[i] v[j]`.
pub fn cyc_mul(u: &CycPoly, v: &CycPoly) -> Result<CycPoly> {
    if u.d() != v.d() {
        return Err(Error::DimensionMismatch {
            left: u.d(),
            right: v.d(),
        });
    }
    let mut out = CycPoly::zero(u.d());
    out.add_product(u, v);
    Ok(out)
}

impl Add for &CycPoly {
    type Output = CycPoly;
    fn add(self, rhs: &CycPoly) -> CycPoly {
        assert_eq!(self.d(), rhs.d(), "CycPoly dimension mismatch");
        CycPoly {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycPoly {
    type Output = CycPoly;
    fn sub(self, rhs: &CycPoly) -> CycPoly {
        assert_eq!(self.d(), rhs.d(), "CycPoly dimension mismatch");
        CycPoly {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycPoly {
    type Output = CycPoly;
    fn neg(self) -> CycPoly {
        CycPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `T(k) = mu(D/g) phi(D) / phi(D/g)` with `g = gcd(k, D)`: the trace of `zeta^k`.
pub fn trace_table(d: u64) -> Vec<i64> {
    let phi = euler_phi(d) as i64;
    (0..d)
        .map(|k| {
            let m = d / gcd(k, d);
            mobius(m) * phi / euler_phi(m) as i64
        })
        .collect()
}

/// Field trace from `Q(zeta_D)` to `Q`, extended linearly to the model ring.
pub fn trace(u: &CycPoly) -> BigInt {
    let table = trace_table(u.d() as u64);
    trace_with(u, &table, 0)
}

/// `trace(u * x^shift)` against a precomputed table.
fn trace_with(u: &CycPoly, table: &[i64], shift: usize) -> BigInt {
    let d = table.len();
    let mut acc = BigInt::zero();
    for (k, c) in u.coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc += c * table[(k + shift) % d];
        }
    }
    acc
}

/// The Gauss sum `sum_a chi_D(a) x^a`, which evaluates to `+sqrt D`.
pub fn gauss_element(ct: &CharTable) -> CycPoly {
    CycPoly::from_coeffs(ct.values().iter().map(|&v| BigInt::from(v)).collect())
}

/// Projection of fixed-field elements of `Q(zeta_D)` onto `O_D`.
///
/// Holds the trace table and the Gauss element so repeated projections
/// (one per series coefficient) do not rebuild them.
#[derive(Clone, Debug)]
pub struct QuadProjector {
    d: u64,
    phi: BigInt,
    table: Vec<i64>,
    gauss: CycPoly,
}

impl QuadProjector {
    pub fn new(ct: &CharTable) -> Self {
        QuadProjector {
            d: ct.d(),
            phi: BigInt::from(euler_phi(ct.d())),
            table: trace_table(ct.d()),
            gauss: gauss_element(ct),
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Returns `(alpha, beta)` with `u(zeta) = alpha + beta sqrt D`, as an
    /// element of `O_D`.
    ///
    /// `alpha = tr(u)/phi(D)` and `beta = tr(u g)/(D phi(D))`. Beyond exact
    /// divisibility, the residual `2u - (2 alpha + 2 beta g)` must have zero
    /// trace against every `x^j`, i.e. vanish at `zeta_D`; otherwise `u` is not
    /// fixed by the residue subgroup and an error is returned.
    pub fn project(&self, u: &CycPoly) -> Result<RingElem> {
        let d = self.d as usize;
        if u.d() != d {
            return Err(Error::DimensionMismatch { left: u.d(), right: d });
        }
        let not_in = |detail: String| Error::NotInQuadraticField { d: self.d, detail };

        let two = BigInt::from(2);
        let tr_u = trace_with(u, &self.table, 0) * &two;
        let mut ug = CycPoly::zero(d);
        ug.add_product(u, &self.gauss);
        let tr_ug = trace_with(&ug, &self.table, 0) * &two;
        let dphi = &self.phi * BigInt::from(self.d);

        let (num_a, rem_a) = tr_u.div_rem(&self.phi);
        let (num_b, rem_b) = tr_ug.div_rem(&dphi);
        if !rem_a.is_zero() || !rem_b.is_zero() {
            return Err(not_in(format!(
                "traces ({tr_u}, {tr_ug}) not divisible by ({}, {dphi})",
                self.phi
            )));
        }
        if num_a.is_odd() != num_b.is_odd() {
            return Err(not_in(format!(
                "({num_a} + {num_b} sqrt D)/2 is not an algebraic integer"
            )));
        }

        // residual = 2u - num_a - num_b * g must vanish at zeta_D
        let mut residual = u.scale(&two);
        residual.coeffs[0] -= &num_a;
        for (k, gk) in self.gauss.coeffs.iter().enumerate() {
            if !gk.is_zero() {
                residual.coeffs[k] -= &num_b * gk;
            }
        }
        if !residual.is_zero() {
            for j in 0..d {
                if !trace_with(&residual, &self.table, j).is_zero() {
                    return Err(not_in(format!(
                        "residual has nonzero trace against x^{j}"
                    )));
                }
            }
        }
        Ok(RingElem::from_numerators(num_a, num_b))
    }
}

/// One-shot projection; see [`QuadProjector::project`].
pub fn project_to_quad(u: &CycPoly, ct: &CharTable) -> Result<RingElem> {
    QuadProjector::new(ct).project(u)
}

/// `f_plus = prod_{a in QR}(1 - zeta^a x)` and `f_minus` over the
/// non-residues, as polynomials in `x` over `O_D` (index = power of `x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodPair {
    pub f_plus: Vec<RingElem>,
    pub f_minus: Vec<RingElem>,
}

fn expand_linear_factors(d: usize, roots: &[u64]) -> Vec<CycPoly> {
    let mut poly = vec![CycPoly::one(d)];
    for &a in roots {
        let mut next = vec![CycPoly::zero(d); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k].add_shifted(c, 0);
            let shifted = c.shift(a as i64);
            next[k + 1] = &next[k + 1] - &shifted;
        }
        poly = next;
    }
    poly
}

pub fn period_polynomials(ct: &CharTable) -> Result<PeriodPair> {
    let proj = QuadProjector::new(ct);
    let d = ct.d() as usize;
    let project_all = |roots: &[u64]| -> Result<Vec<RingElem>> {
        expand_linear_factors(d, roots)
            .iter()
            .map(|c| proj.project(c))
            .collect()
    };
    let pair = PeriodPair {
        f_plus: project_all(ct.qr_list())?,
        f_minus: project_all(ct.nr_list())?,
    };
    pair.check_invariants(&RingCtx::new(ct.d())?)?;
    Ok(pair)
}

/// Product of two polynomials over `O_D` (coefficient vectors, low degree first).
pub fn poly_mul(ctx: &RingCtx, f: &[RingElem], g: &[RingElem]) -> Result<Vec<RingElem>> {
    if f.is_empty() || g.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![RingElem::zero(); f.len() + g.len() - 1];
    for (i, fi) in f.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            out[i + j] += &ctx.mul(fi, gj)?;
        }
    }
    Ok(out)
}

impl PeriodPair {
    pub fn degree(&self) -> usize {
        self.f_plus.len() - 1
    }

    /// Constant terms 1, conjugation swaps the two, and the product is a
    /// rational polynomial of degree `phi(D)`.
    pub fn check_invariants(&self, ctx: &RingCtx) -> Result<()> {
        let bad = |what: &str| Err(Error::Corruption(format!("period polynomials: {what}")));
        if self.f_plus.len() != self.f_minus.len() {
            return bad("degree mismatch");
        }
        if !self.f_plus[0].is_one() || !self.f_minus[0].is_one() {
            return bad("constant term is not 1");
        }
        if self.f_plus.iter().zip(&self.f_minus).any(|(p, m)| p.conj() != *m) {
            return bad("conjugation does not swap f_plus and f_minus");
        }
        let prod = poly_mul(ctx, &self.f_plus, &self.f_minus)?;
        if prod.iter().any(|c| !c.is_rational()) {
            return bad("f_plus * f_minus has a sqrt D part");
        }
        if prod.last().is_some_and(|c| c.is_zero()) {
            return bad("f_plus * f_minus drops degree");
        }
        Ok(())
    }
}

/// Sum of the numeric values of `u` over the primitive embeddings; equals `trace(u)`.
pub fn numeric_trace(u: &CycPoly) -> f64 {
    let d = u.d() as u64;
    (1..d)
        .filter(|&j| gcd(j, d) == 1)
        .map(|j| u.eval_at_root(j as i64).re)
        .sum()
}
