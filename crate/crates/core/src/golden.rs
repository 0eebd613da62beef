//! Reference coefficients embedded as static data: `a_D(N)` for
//! `D = 5, 13, 17` and `1 <= N <= 25`, and `tau_5(1..=6)`.
//!
//! Entries are numerator pairs `(a, b)` of `(a + b sqrt D)/2`.

use crate::error::Result;
use crate::qseries::{eta_series, tau5};
use crate::quad_ring::{format_canonical, RingElem};

/// `(D, N, a, b)` with `a_D(N) = (a + b sqrt D)/2`.
pub const TABLE: [(u64, usize, i64, i64); 75] = [
    (5, 1, -2, -2),
    (5, 2, 7, 1),
    (5, 3, 0, -4),
    (5, 4, 8, -2),
    (5, 5, 12, -4),
    (5, 6, 13, -7),
    (5, 7, 22, -10),
    (5, 8, 35, -13),
    (5, 9, 38, -22),
    (5, 10, 69, -25),
    (5, 11, 74, -42),
    (5, 12, 129, -45),
    (5, 13, 140, -76),
    (5, 14, 216, -86),
    (5, 15, 268, -124),
    (5, 16, 352, -160),
    (5, 17, 466, -206),
    (5, 18, 603, -267),
    (5, 19, 754, -350),
    (5, 20, 1017, -429),
    (5, 21, 1216, -576),
    (5, 22, 1625, -693),
    (5, 23, 1970, -910),
    (5, 24, 2530, -1112),
    (5, 25, 3128, -1412),
    (13, 1, -2, -2),
    (13, 2, 15, 1),
    (13, 3, -4, -8),
    (13, 4, 54, 2),
    (13, 5, 0, -24),
    (13, 6, 132, -6),
    (13, 7, 54, -58),
    (13, 8, 310, -36),
    (13, 9, 256, -128),
    (13, 10, 715, -119),
    (13, 11, 728, -296),
    (13, 12, 1590, -328),
    (13, 13, 1824, -664),
    (13, 14, 3504, -786),
    (13, 15, 4320, -1412),
    (13, 16, 7398, -1782),
    (13, 17, 9522, -2934),
    (13, 18, 15069, -3855),
    (13, 19, 19972, -5940),
    (13, 20, 30138, -7914),
    (13, 21, 40348, -11708),
    (13, 22, 58843, -15677),
    (13, 23, 78780, -22572),
    (13, 24, 112004, -30230),
    (13, 25, 149822, -42530),
    (17, 1, -2, -2),
    (17, 2, 15, -1),
    (17, 3, 38, -2),
    (17, 4, 13, -23),
    (17, 5, 138, -22),
    (17, 6, 278, -46),
    (17, 7, 332, -140),
    (17, 8, 984, -178),
    (17, 9, 1636, -364),
    (17, 10, 2484, -756),
    (17, 11, 5134, -1122),
    (17, 12, 8470, -1996),
    (17, 13, 13560, -3512),
    (17, 14, 23637, -5515),
    (17, 15, 37954, -9118),
    (17, 16, 59823, -14961),
    (17, 17, 97114, -23254),
    (17, 18, 152212, -36616),
    (17, 19, 234206, -57490),
    (17, 20, 363839, -87715),
    (17, 21, 553916, -134068),
    (17, 22, 834468, -203628),
    (17, 23, 1258094, -304090),
    (17, 24, 1871277, -453479),
    (17, 25, 2762828, -671572),
];

/// `(N, a, b)` with `tau_5(N) = (a + b sqrt 5)/2`.
pub const TAU5: [(usize, i64, i64); 6] = [
    (1, 2, 0),
    (2, -10, -10),
    (3, 155, 45),
    (4, -560, -340),
    (5, 2830, 980),
    (6, 20565, 6965),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub d: u64,
    pub n: usize,
    pub value: RingElem,
}

/// Table entries as ring elements; every pair satisfies the parity rule.
pub fn table_entries() -> Vec<GoldenEntry> {
    TABLE
        .iter()
        .map(|&(d, n, a, b)| GoldenEntry {
            d,
            n,
            value: RingElem::new(a, b).expect("golden entry has matching parity"),
        })
        .collect()
}

pub fn tau5_entries() -> Vec<GoldenEntry> {
    TAU5.iter()
        .map(|&(n, a, b)| GoldenEntry {
            d: 5,
            n,
            value: RingElem::new(a, b).expect("golden entry has matching parity"),
        })
        .collect()
}

/// Expected against recomputed value for one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub label: &'static str,
    pub d: u64,
    pub n: usize,
    pub expected: RingElem,
    pub actual: RingElem,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {} D={} N={} {}",
            self.label,
            self.d,
            self.n,
            format_canonical(&self.expected, self.d)
        );
        if !self.passed() {
            s.push_str(&format!(" got {}", format_canonical(&self.actual, self.d)));
        }
        s
    }
}

/// Recomputes `a_D(N)` for every entry with one series per discriminant.
pub fn check_table(entries: &[GoldenEntry]) -> Result<Vec<EntryCheck>> {
    let mut out = Vec::with_capacity(entries.len());
    let mut ds: Vec<u64> = entries.iter().map(|e| e.d).collect();
    ds.sort_unstable();
    ds.dedup();
    for d in ds {
        let order = entries.iter().filter(|e| e.d == d).map(|e| e.n).max().unwrap_or(0);
        let series = eta_series(d, order)?;
        for e in entries.iter().filter(|e| e.d == d) {
            out.push(EntryCheck {
                label: "a",
                d,
                n: e.n,
                expected: e.value.clone(),
                actual: series.coeffs()[e.n].clone(),
            });
        }
    }
    Ok(out)
}

/// Recomputes `tau_5(N)` for every entry from `eta_5^5`.
pub fn check_tau5(entries: &[GoldenEntry]) -> Result<Vec<EntryCheck>> {
    let count = entries.iter().map(|e| e.n).max().unwrap_or(1);
    let tau = tau5(count)?;
    Ok(entries
        .iter()
        .map(|e| EntryCheck {
            label: "tau5",
            d: 5,
            n: e.n,
            expected: e.value.clone(),
            actual: tau[e.n - 1].clone(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_entry_fails_with_diff() {
        let mut entries = table_entries();
        entries[2].value = RingElem::new(0, 4).unwrap();
        let checks = check_table(&entries).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(
            failed[0].line(),
            "FAIL a D=5 N=3 (0+4*sqrt(5))/2 got (0-4*sqrt(5))/2"
        );
    }

    #[test]
    fn shape() {
        let t = table_entries();
        assert_eq!(t.len(), 75);
        for d in [5u64, 13, 17] {
            let ns: Vec<usize> = t.iter().filter(|e| e.d == d).map(|e| e.n).collect();
            assert_eq!(ns, (1..=25).collect::<Vec<_>>());
        }
        assert_eq!(tau5_entries().len(), 6);
    }
}
