//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed even when an earlier one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use hecke_eta::analytic::{self, EnvelopeConstants, GroupWord};
use hecke_eta::characters::{is_fundamental, CharTable};
use hecke_eta::golden;
use hecke_eta::lseries::l_minus_one;
use hecke_eta::oracle::a_via_convolution;
use hecke_eta::partitions::{p_nr_table, pentagonal_terms, PartitionTables};
use hecke_eta::qseries::{eta_series, tau5};
use hecke_eta::{RingCtx, RingElem};
use hecke_eta_cli::{random_words, run};

type Check = fn() -> Result<String, String>;

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hecke-eta"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table_reproduction() -> Result<String, String> {
    let (code, out) = cli(&["verify-table"]);
    let passed = out.lines().filter(|l| l.starts_with("PASS a ")).count();
    let failed = out.lines().filter(|l| l.starts_with("FAIL a ")).count();
    ensure(passed == 75 && failed == 0, format!("{passed} passed, {failed} failed"))?;
    Ok(format!("{passed}/75 exact (verify-table exit {code})"))
}

fn tau5_reproduction() -> Result<String, String> {
    let ctx = RingCtx::new(5).map_err(|e| e.to_string())?;
    let tau = tau5(7).map_err(|e| e.to_string())?;
    for e in golden::tau5_entries() {
        if tau[e.n - 1] != e.value {
            let found = match tau.iter().position(|t| *t == e.value) {
                Some(i) => format!("the reference value is tau_5({})", i + 1),
                None => "the reference value does not occur up to N = 7".into(),
            };
            return Err(format!(
                "tau_5({}) reference {}, computed {}; {found}",
                e.n,
                ctx.format(&e.value),
                ctx.format(&tau[e.n - 1])
            ));
        }
    }
    ensure(tau[3] == RingElem::from_surd(-280, -170), "tau_5(4)")?;
    ensure(tau[4] == RingElem::from_surd(1415, 490), "tau_5(5)")?;
    Ok("tau_5(1..6) exact".into())
}

fn l_values() -> Result<String, String> {
    let r5 = l_minus_one(&CharTable::new(5).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        r5.l_minus_one == BigRational::new(BigInt::from(-2), BigInt::from(5)),
        "L(-1, chi_5) != -2/5",
    )?;
    let mut count = 0;
    for d in (6..=1000u64).filter(|&d| is_fundamental(d as i64)) {
        let r = l_minus_one(&CharTable::new(d).unwrap()).map_err(|e| e.to_string())?;
        let l = &r.l_minus_one;
        ensure(
            l.is_integer() && l.is_negative() && (l.to_integer() % BigInt::from(2)).is_zero(),
            format!("D = {d}: L(-1) = {l}"),
        )?;
        ensure((&r.s_chi % BigInt::from(4 * d)).is_zero(), format!("D = {d}: 4D does not divide S"))?;
        count += 1;
    }
    Ok(format!("{count} discriminants"))
}

fn oracle_equivalence() -> Result<String, String> {
    for (d, n) in [(5u64, 40usize), (13, 40), (17, 25)] {
        let product = eta_series(d, n).map_err(|e| e.to_string())?;
        let conv = a_via_convolution(d, n).map_err(|e| e.to_string())?;
        if let Some(k) = product.coeffs().iter().zip(&conv).position(|(a, b)| a != b) {
            return Err(format!("D = {d}: first divergence at N = {k}"));
        }
    }
    Ok("D=5,13 N<=40; D=17 N<=25".into())
}

fn modularity_residuals() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for d in [5u64, 13, 17] {
        let points = analytic::sample_points(d, 20, 2024);
        for r in analytic::verify_modularity(d, &points, 300).map_err(|e| e.to_string())? {
            ensure(r.within(1e-6), format!("D = {d} at {:?}: {r:?}", r.z))?;
            worst = worst.max(r.inversion).max(r.translation);
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn twisted_inversion() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for d in [5u64, 13] {
        for y in [0.7, 1.0, 1.5] {
            let r = analytic::twisted_inversion_check(d, y, 400).map_err(|e| e.to_string())?;
            ensure(r.residual < 1e-8, format!("D = {d}, y = {y}: {:e}", r.residual))?;
            worst = worst.max(r.residual);
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn root_of_unity_law() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for ks in random_words(100, 5) {
        let w = GroupWord::new(&ks, 5).map_err(|e| e.to_string())?;
        let r = w.check_u_gamma(None, None).map_err(|e| format!("{ks:?}: {e}"))?;
        ensure(r.predicted_u == r.exponent_sum_mod5, format!("{ks:?}: exact law fails"))?;
        ensure(r.residual < 1e-4, format!("{ks:?}: numeric residual {:e}", r.residual))?;
        worst = worst.max(r.residual);
    }
    Ok(format!("100 words, max residual {worst:.2e}"))
}

fn growth_envelope() -> Result<String, String> {
    let mut min_margin = f64::INFINITY;
    let mut reported = Vec::new();
    for (d, n_max) in [(5u64, 800usize), (13, 200), (17, 200)] {
        let s = eta_series(d, n_max).map_err(|e| e.to_string())?;
        let env = EnvelopeConstants::new(d).map_err(|e| e.to_string())?;
        let ctx = s.ctx().clone();
        for (n, c) in s.coeffs().iter().enumerate() {
            if let Some(log_abs) = hecke_eta::reports::log_abs_embedding(&ctx, c).map_err(|e| e.to_string())? {
                let margin = env.log_envelope(n as u64) - log_abs;
                if n == 0 {
                    if margin < 0.0 {
                        reported.push(format!("D={d} N=0 over by {:.3} in log", -margin));
                    }
                    continue;
                }
                ensure(margin >= 0.0, format!("D = {d}, N = {n}: exceeds envelope by {:e}", -margin))?;
                min_margin = min_margin.min(margin);
            }
        }
    }
    let note = if reported.is_empty() { "none".into() } else { reported.join(", ") };
    Ok(format!("smallest log margin {min_margin:.3} for N >= 1; constant-term report: {note}"))
}

fn partition_identities() -> Result<String, String> {
    let n = 500;
    let mut prod = vec![BigInt::zero(); n + 1];
    prod[0] = BigInt::from(1);
    for m in 1..=n {
        for k in (m..=n).rev() {
            let t = prod[k - m].clone();
            prod[k] -= t;
        }
    }
    let mut series = vec![BigInt::zero(); n + 1];
    for t in pentagonal_terms(n as u64) {
        series[t.exponent as usize] += t.sign as i64;
    }
    ensure(series == prod, "Euler pentagonal identity")?;
    for d in [5u64, 13, 17] {
        let tables = PartitionTables::new(&CharTable::new(d).unwrap(), 300);
        ensure(tables.rows_consistent(), format!("row sums for D = {d}"))?;
    }
    for d in [5u64, 13] {
        let ct = CharTable::new(d).unwrap();
        let t = p_nr_table(&ct, 40);
        for (k, count) in t.iter().enumerate() {
            ensure(*count == BigInt::from(brute_nr(&ct, k, k)), format!("p_nr D = {d}, k = {k}"))?;
        }
    }
    Ok("Euler to 500, rows to 300, p_nr to 40".into())
}

/// Partitions of `k` into non-residue parts of size at most `max`.
fn brute_nr(ct: &CharTable, k: usize, max: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    (1..=max.min(k))
        .filter(|&p| ct.chi(p as i64) == -1)
        .map(|p| brute_nr(ct, k - p, p))
        .sum()
}

fn conjecture_tooling() -> Result<String, String> {
    let (code, signs) = cli(&["signs", "--D", "5", "--N", "800"]);
    ensure(code == 0, format!("signs exit {code}"))?;
    let v: serde_json::Value = serde_json::from_str(signs.trim()).map_err(|e| e.to_string())?;
    let changes = v["count"].as_u64().ok_or("missing count")?;
    let (code, growth) = cli(&["growth", "--D", "5", "--N", "800"]);
    ensure(code == 0, format!("growth exit {code}"))?;
    let rows = growth.lines().filter(|l| !l.starts_with('#') && !l.starts_with('N')).count();
    let slope_line = growth.lines().find(|l| l.starts_with("# slope=")).ok_or("missing fit")?;
    let slope: f64 = slope_line["# slope=".len()..]
        .split_whitespace()
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or("unparsable slope")?;
    ensure(rows == 800, format!("{rows} growth rows"))?;
    ensure(slope.is_finite() && slope > 0.0, format!("slope {slope}"))?;
    Ok(format!("{changes} sign changes, slope {slope:.4}"))
}

fn main() {
    let criteria: [(&str, Check, Duration); 10] = [
        ("1 table reproduction", table_reproduction, Duration::from_secs(10)),
        ("2 tau_5 reproduction", tau5_reproduction, Duration::from_secs(10)),
        ("3 L(-1) values", l_values, Duration::from_secs(5)),
        ("4 oracle equivalence", oracle_equivalence, Duration::from_secs(60)),
        ("5 modularity residuals", modularity_residuals, Duration::from_secs(30)),
        ("6 twisted inversion identity", twisted_inversion, Duration::from_secs(30)),
        ("7 root-of-unity law", root_of_unity_law, Duration::from_secs(60)),
        ("8 growth envelope", growth_envelope, Duration::from_secs(120)),
        ("9 partition identities", partition_identities, Duration::from_secs(60)),
        ("10 conjecture tooling", conjecture_tooling, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over budget {budget:?}")),
            Err(why) => ("FAIL", why),
        };
        failures += usize::from(status == "FAIL");
        println!("{status} criterion {name}: {detail} ({:.2}s)", elapsed.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
