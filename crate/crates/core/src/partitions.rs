//! Partition counts behind the product expansion of `eta_D`: `p(k)`,
//! partitions into quadratic non-residues, generalized pentagonal terms,
//! and the distribution of partition lengths modulo `D`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::CharTable;
use crate::cyclotomic::CycPoly;

/// `p(0..=n)` via Euler's pentagonal recurrence.
pub fn p_table(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[k - g1].clone();
            if g2 <= k {
                term += &p[k - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[k] = acc;
    }
    p
}

/// One term `sign * theta^theta_power * q^exponent` of
/// `F_e(q, theta) = prod_n (1 - theta q^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PentagonalTerm {
    /// Signed index `k`; the exponent is `g(k) = k(3k - 1)/2`.
    pub k: i64,
    pub exponent: u64,
    pub sign: i8,
    pub theta_power: u64,
}

fn pentagonal_term(k: i64) -> PentagonalTerm {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let theta_power = if k > 0 { 3 * k - 1 } else { -3 * k };
    PentagonalTerm {
        k,
        exponent: (k * (3 * k - 1) / 2) as u64,
        sign,
        theta_power: theta_power as u64,
    }
}

/// All terms with `g(k) <= bound`, ordered by exponent.
pub fn pentagonal_terms(bound: u64) -> Vec<PentagonalTerm> {
    let mut out = vec![pentagonal_term(0)];
    for j in 1i64.. {
        let pos = pentagonal_term(j);
        if pos.exponent > bound {
            break;
        }
        out.push(pos);
        let neg = pentagonal_term(-j);
        if neg.exponent <= bound {
            out.push(neg);
        }
    }
    out
}

/// Partitions of `0..=n` whose parts all satisfy `allowed`.
pub fn restricted_partitions(n: usize, allowed: impl Fn(usize) -> bool) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    t[0] = BigInt::one();
    for part in (1..=n).filter(|&m| allowed(m)) {
        for k in part..=n {
            let (lo, hi) = t.split_at_mut(k);
            hi[0] += &lo[k - part];
        }
    }
    t
}

/// Partitions of `0..=n` into parts `m` with `chi_D(m) = -1`.
pub fn p_nr_table(ct: &CharTable, n: usize) -> Vec<BigInt> {
    restricted_partitions(n, |m| ct.chi(m as i64) == -1)
}

/// Partitions of `0..=n` into parts `m` with `chi_D(m) = 0`. For prime `D`
/// these are the parts divisible by `D`, giving `F_ord(q^D, 1)`.
pub fn p_zero_table(ct: &CharTable, n: usize) -> Vec<BigInt> {
    restricted_partitions(n, |m| ct.chi(m as i64) == 0)
}

/// `c[k][r]` = number of partitions of `k` whose length is `r mod D`.
pub fn length_distribution(d: usize, n: usize) -> Vec<Vec<BigInt>> {
    assert!(d >= 1);
    let mut c = vec![vec![BigInt::zero(); d]; n + 1];
    c[0][0] = BigInt::one();
    // one more part of size `part` shifts the length residue by one
    for part in 1..=n {
        for k in part..=n {
            let (lo, hi) = c.split_at_mut(k);
            let src = &lo[k - part];
            let dst = &mut hi[0];
            for r in 0..d {
                let from = &src[(r + d - 1) % d];
                if !from.is_zero() {
                    dst[r] += from;
                }
            }
        }
    }
    c
}

/// `e[k][r]` = signed count `sum (-1)^len` over partitions of `k` into
/// distinct parts whose length is `r mod D`; the coefficients of
/// `prod_n (1 - t q^n)` with `t` reduced mod `t^D - 1`.
pub fn distinct_length_distribution(d: usize, n: usize) -> Vec<Vec<BigInt>> {
    assert!(d >= 1);
    let mut e = vec![vec![BigInt::zero(); d]; n + 1];
    e[0][0] = BigInt::one();
    for part in 1..=n {
        for k in (part..=n).rev() {
            let (lo, hi) = e.split_at_mut(k);
            let src = &lo[k - part];
            let dst = &mut hi[0];
            for r in 0..d {
                let from = &src[(r + d - 1) % d];
                if !from.is_zero() {
                    dst[r] -= from;
                }
            }
        }
    }
    e
}

/// `p_ord(k, zeta^b) = sum_r c[k][r] x^{b r}` in the cyclotomic model ring.
pub fn p_ord_twisted(row: &[BigInt], b: u64) -> CycPoly {
    let d = row.len();
    let mut out = CycPoly::zero(d);
    for (r, count) in row.iter().enumerate() {
        if !count.is_zero() {
            out.add_monomial((b as i64) * r as i64, count);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionTables {
    pub d: u64,
    pub n_max: usize,
    #[serde(serialize_with = "crate::records::bigint_seq")]
    pub p: Vec<BigInt>,
    #[serde(serialize_with = "crate::records::bigint_seq")]
    pub p_nr: Vec<BigInt>,
    #[serde(serialize_with = "crate::records::bigint_rows")]
    pub c: Vec<Vec<BigInt>>,
}

impl PartitionTables {
    pub fn new(ct: &CharTable, n_max: usize) -> Self {
        PartitionTables {
            d: ct.d(),
            n_max,
            p: p_table(n_max),
            p_nr: p_nr_table(ct, n_max),
            c: length_distribution(ct.d() as usize, n_max),
        }
    }

    /// Row sums of `c` reproduce `p`.
    pub fn rows_consistent(&self) -> bool {
        self.c
            .iter()
            .zip(&self.p)
            .all(|(row, p)| row.iter().sum::<BigInt>() == *p)
    }
}
