//! The product construction and the partition-convolution oracle agree
//! coefficientwise, for prime and composite discriminants.

use hecke_eta::golden;
use hecke_eta::oracle::{a_via_convolution, OracleCheck};
use hecke_eta::qseries::eta_series;

#[test]
fn agree_beyond_the_table() {
    for (d, n) in [(5u64, 60usize), (13, 50), (17, 40), (21, 30), (29, 25), (33, 20), (37, 20)] {
        let product = eta_series(d, n).unwrap();
        let conv = a_via_convolution(d, n).unwrap();
        assert_eq!(product.coeffs(), &conv[..], "D = {d}");
    }
}

#[test]
fn check_report_has_no_divergence() {
    let check = OracleCheck::run(21, 25).unwrap();
    assert!(check.passed());
    assert_eq!(check.first_divergence(), None);
}

#[test]
fn oracle_reproduces_table() {
    for e in golden::table_entries() {
        let conv = a_via_convolution(e.d, e.n).unwrap();
        assert_eq!(conv[e.n], e.value, "D = {}, N = {}", e.d, e.n);
    }
}
