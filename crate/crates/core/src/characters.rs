//! The primitive real character `chi_D = (. / D)` and the quadratic
//! residue / non-residue split of `[1, D]`.

use serde::Serialize;

use crate::arith::{euler_phi, gcd, is_squarefree};
use crate::error::{Error, Result};

/// True iff `D = 1 mod 4`, `D >= 5` and `D` is squarefree.
pub fn is_fundamental(d: i64) -> bool {
    d >= 5 && d.rem_euclid(4) == 1 && is_squarefree(d as u64)
}

/// Kronecker symbol `(n / D)` for a fundamental `D = 1 mod 4`.
///
/// For odd positive `D` this is the Jacobi symbol, computed with the usual
/// reciprocity loop.
pub fn kronecker(n: i64, d: u64) -> Result<i8> {
    if !is_fundamental(d as i64) {
        return Err(Error::InvalidDiscriminant(d as i64));
    }
    Ok(jacobi(n.rem_euclid(d as i64) as u64, d))
}

fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Values of `chi_D` on `0..D` together with the ordered residue classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    d: u64,
    values: Vec<i8>,
    qr_list: Vec<u64>,
    nr_list: Vec<u64>,
}

impl CharTable {
    pub fn new(d: u64) -> Result<Self> {
        if !is_fundamental(d as i64) {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        let values: Vec<i8> = (0..d).map(|n| jacobi(n, d)).collect();
        let qr_list = (1..d).filter(|&n| values[n as usize] == 1).collect();
        let nr_list = (1..d).filter(|&n| values[n as usize] == -1).collect();
        let table = CharTable {
            d,
            values,
            qr_list,
            nr_list,
        };
        table.check_invariants()?;
        Ok(table)
    }

    fn check_invariants(&self) -> Result<()> {
        let d = self.d;
        let fail = |detail: String| Err(Error::CharacterInvariant { d, detail });
        if self.chi(1) != 1 {
            return fail("chi(1) != 1".into());
        }
        for n in 0..d {
            if (self.values[n as usize] == 0) != (gcd(n, d) > 1) {
                return fail(format!("zero pattern wrong at {n}"));
            }
        }
        if self.values[(d - 1) as usize] != 1 {
            return fail("character is not even".into());
        }
        let s0: i64 = self.values.iter().map(|&v| v as i64).sum();
        let s1: i64 = (0..d).map(|n| n as i64 * self.values[n as usize] as i64).sum();
        if s0 != 0 || s1 != 0 {
            return fail(format!("balance sums are ({s0}, {s1})"));
        }
        let half = (euler_phi(d) / 2) as usize;
        if self.qr_list.len() != half || self.nr_list.len() != half {
            return fail("residue classes are unbalanced".into());
        }
        // multiplicativity on generators is enough to pin down a character,
        // but the table is small so check every pair.
        for m in 1..d {
            for n in m..d {
                let lhs = self.values[((m * n) % d) as usize];
                if lhs != self.values[m as usize] * self.values[n as usize] {
                    return fail(format!("not multiplicative at ({m}, {n})"));
                }
            }
        }
        Ok(())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `chi_D(n)` for any integer `n`.
    pub fn chi(&self, n: i64) -> i8 {
        self.values[n.rem_euclid(self.d as i64) as usize]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Quadratic residues `a` in `[1, D]` coprime to `D`, ascending.
    pub fn qr_list(&self) -> &[u64] {
        &self.qr_list
    }

    /// Quadratic non-residues `b` in `[1, D]` coprime to `D`, ascending.
    pub fn nr_list(&self) -> &[u64] {
        &self.nr_list
    }

    pub fn phi(&self) -> u64 {
        2 * self.qr_list.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn squares_mod(p: u64) -> BTreeSet<u64> {
        (1..p).map(|x| x * x % p).collect()
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(2, 5).unwrap(), -1);
        assert_eq!(kronecker(1, 13).unwrap(), 1);
        assert_eq!(kronecker(4, 17).unwrap(), 1);
        assert_eq!(kronecker(-1, 13).unwrap(), 1);
        assert_eq!(kronecker(7, 21).unwrap(), 0);
        assert!(kronecker(3, 9).is_err());
        assert!(kronecker(3, 7).is_err());
    }

    #[test]
    fn fundamental_examples() {
        assert!(is_fundamental(5));
        assert!(!is_fundamental(9));
        assert!(is_fundamental(21));
        assert!(!is_fundamental(1));
        assert!(!is_fundamental(-3));
        assert!(!is_fundamental(12));
        assert!(!is_fundamental(45));
    }

    #[test]
    fn tables() {
        let t = CharTable::new(5).unwrap();
        assert_eq!(t.qr_list(), &[1, 4]);
        assert_eq!(t.nr_list(), &[2, 3]);
        let t = CharTable::new(13).unwrap();
        assert_eq!(t.qr_list(), &[1, 3, 4, 9, 10, 12]);
        let t = CharTable::new(17).unwrap();
        assert_eq!(t.qr_list().len(), 8);
        assert!(CharTable::new(9).is_err());
    }

    #[test]
    fn agrees_with_square_enumeration_for_primes() {
        for p in (5..=200u64).filter(|&p| p % 4 == 1 && crate::arith::factor(p).len() == 1 && crate::arith::factor(p)[0].1 == 1) {
            let sq = squares_mod(p);
            for n in 1..p {
                let expect = if sq.contains(&n) { 1 } else { -1 };
                assert_eq!(kronecker(n as i64, p).unwrap(), expect, "({n}/{p})");
            }
        }
    }

    #[test]
    fn every_fundamental_discriminant_up_to_1000_builds() {
        // CharTable::new checks multiplicativity, evenness and balance.
        let count = (5..=1000i64)
            .filter(|&d| is_fundamental(d))
            .map(|d| CharTable::new(d as u64).unwrap())
            .count();
        // squarefree D = 1 mod 4 in [5, 1000], counted independently
        assert_eq!(count, 199);
    }
}
