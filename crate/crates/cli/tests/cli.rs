use hecke_eta::records::parse_records_json;
use hecke_eta_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hecke-eta"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn coeffs_json_ends_with_third_coefficient() {
    let (code, out, _) = cli(&["coeffs", "--D", "5", "--N", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let records = parse_records_json(out.trim()).unwrap();
    assert_eq!(records.len(), 3);
    let last = serde_json::to_string(&records[2]).unwrap();
    assert!(last.starts_with(r#"{"D":5,"N":3,"a":0,"b":-4,"den":2,"real":"#), "{last}");
}

#[test]
fn coeffs_json_round_trips_byte_for_byte() {
    let (_, out, _) = cli(&["coeffs", "--D", "17", "--N", "30", "--format", "json"]);
    let records = parse_records_json(out.trim()).unwrap();
    assert_eq!(hecke_eta::records::records_to_json(&records), out.trim());
}

#[test]
fn coeffs_csv_layout_and_determinism() {
    let (code, out, _) = cli(&["coeffs", "--D", "13", "--N", "3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "D,N,num_a,num_b,real");
    assert!(lines[3].starts_with("13,3,-4,-8,"));
    assert_eq!(out, cli(&["coeffs", "--D", "13", "--N", "3"]).1);
    for line in &lines[1..] {
        let r = hecke_eta::records::CoeffRecord::from_csv_row(line).unwrap();
        assert_eq!(r.to_csv_row(), *line);
    }
}

#[test]
fn invalid_discriminant_is_a_usage_error() {
    let (code, _, err) = cli(&["coeffs", "--D", "9", "--N", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("squarefree"), "{err}");
    assert_eq!(cli(&["coeffs", "--D", "7", "--N", "3"]).0, EXIT_USAGE);
    assert_eq!(cli(&["no-such-command"]).0, EXIT_USAGE);
}

#[test]
fn capacity_guard_is_a_usage_error() {
    let (code, _, err) = cli(&["coeffs", "--D", "5", "--N", "1000000"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("capacity"), "{err}");
}

#[test]
fn lvalues_for_seventeen() {
    let (code, out, _) = cli(&["lvalues", "--D", "17"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(r#""S_chi":136,"L_minus_1":"-4","m":2"#), "{out}");
}

#[test]
fn digits_come_from_the_environment_by_default() {
    let (_, short, _) = cli(&["--digits", "20", "lvalues", "--D", "5"]);
    let (_, long, _) = cli(&["--digits", "50", "lvalues", "--D", "5"]);
    let digits = |s: &str| {
        let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
        v["L_prime_0"].as_str().unwrap().len()
    };
    assert!(digits(&long) > digits(&short));
    assert!(long.contains("4.8121182505960344749775891342436842313518"));
}

#[test]
fn verify_table_flags_only_the_sixth_tau5_value() {
    let (code, out, _) = cli(&["verify-table"]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS a ")).count(), 75);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS tau5 ")).count(), 5);
    assert!(out.contains("FAIL tau5 D=5 N=6 (20565+6965*sqrt(5))/2 got (-6552-3760*sqrt(5))/2"));
    assert!(out.trim_end().ends_with("80/81 PASS"));
}

#[test]
fn oracle_check_reports_every_coefficient() {
    let (code, out, _) = cli(&["oracle-check", "--D", "13", "--N", "10"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}

#[test]
fn modularity_with_words() {
    let (code, out, _) = cli(&["verify-modularity", "--D", "5", "--samples", "3", "--words", "5"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().count(), 8);
    let (code, _, _) = cli(&["verify-modularity", "--D", "13", "--samples", "1", "--words", "1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn impossible_tolerance_is_a_verification_failure() {
    let (code, out, _) = cli(&["verify-modularity", "--D", "13", "--samples", "2", "--nmax", "2", "--tol", "1e-30"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("FAIL"));
}

#[test]
fn chars_periods_partitions_are_json() {
    for args in [
        &["chars", "--D", "5"][..],
        &["periods", "--D", "13"][..],
        &["partitions", "--D", "5", "--N", "10"][..],
        &["signs", "--D", "5", "--N", "20"][..],
        &["growth", "--D", "5", "--N", "20", "--format", "json"][..],
    ] {
        let (code, out, _) = cli(args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        serde_json::from_str::<serde_json::Value>(out.trim()).unwrap();
    }
    let (_, out, _) = cli(&["chars", "--D", "5"]);
    assert!(out.contains(r#""qr_list":[1,4]"#) && out.contains(r#""nr_list":[2,3]"#), "{out}");
    let (_, out, _) = cli(&["periods", "--D", "5"]);
    assert!(out.contains(r#""text":"(1-1*sqrt(5))/2""#), "{out}");
}

#[test]
fn delta5_first_terms() {
    let (code, out, _) = cli(&["delta5", "--N", "3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("5,1,2,0,"));
    assert!(lines[3].starts_with("5,3,155,45,"));
}

#[test]
fn grid_csv() {
    let (code, out, _) = cli(&["grid", "--D", "5", "--steps", "2", "--nmax", "50"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 5);
    assert_eq!(out.lines().next().unwrap(), "re,im,re_eta,im_eta,re_eta_inv,im_eta_inv");
    let (code, _, _) = cli(&["grid", "--D", "5", "--im-min", "-1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn growth_window() {
    let (code, out, _) = cli(&["growth", "--D", "13", "--N", "60", "--window", "10,60"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("window=10,60"));
    assert_eq!(cli(&["growth", "--D", "13", "--N", "60", "--window", "10,99"]).0, EXIT_USAGE);
}
