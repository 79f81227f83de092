use std::process::{Command, Output};

use phisum::run::{run, Algorithm, RunRequest};

fn phisum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phisum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn small_value_text() {
    let out = phisum(&["100"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("Phi(100) = 3044\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&phisum(&["1e6", "--verify", "303963552392"])), 0);
    assert_eq!(code(&phisum(&["1e6", "--verify", "303963552391"])), 2);
    assert_eq!(code(&phisum(&["0"])), 1);
    assert_eq!(code(&phisum(&["1e20"])), 1);
    assert_eq!(code(&phisum(&["18446744073709551615"])), 1);
    assert_eq!(code(&phisum(&["ten"])), 1);
    assert_eq!(code(&phisum(&[])), 1);
    assert_eq!(code(&phisum(&["1e10", "--alg", "oracle"])), 1);
    assert_eq!(code(&phisum(&["1e6", "--a", "10"])), 1);
    assert_eq!(code(&phisum(&["1e6", "--c", "-1"])), 1);
    assert_eq!(code(&phisum(&["1e6", "--c", "0/3"])), 1);
    assert_eq!(code(&phisum(&["--help"])), 0);
}

#[test]
fn json_report() {
    let out = phisum(&[
        "1e6",
        "--alg",
        "space-saving",
        "--json",
        "--c",
        "3/2",
        "--verify",
        "303963552392",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in [
        "n",
        "algorithm",
        "a",
        "b",
        "c",
        "phi",
        "phase_times_ms",
        "peak_elements",
        "wall_time_ms",
        "verified",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["init", "phase1", "phase2", "phase3"] {
        assert!(
            v["phase_times_ms"][key].is_number(),
            "missing phase time {key}"
        );
    }
    for key in ["m_prime", "batch", "sieve"] {
        assert!(v["peak_elements"][key].is_u64(), "missing peak {key}");
    }
    assert_eq!(v["phi"], "303963552392");
    assert_eq!(v["algorithm"], "space-saving");
    assert_eq!(v["c"], 1.5);
    assert_eq!(v["verified"], true);
    assert_eq!(v["peak_elements"]["m_prime"], v["b"]);
    let (a, b) = (v["a"].as_u64().unwrap(), v["b"].as_u64().unwrap());
    assert!(a * b <= 1_000_000 && 1_000_000 < a * (b + 1));
    assert!(v.get("contributions").is_none());
}

#[test]
fn oracle_report_has_null_split() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&phisum(&["5000", "--json"]))).unwrap();
    assert_eq!(v["dispatched"], "oracle");
    assert!(v["a"].is_null() && v["b"].is_null() && v["verified"].is_null());
}

#[test]
fn text_and_json_agree() {
    for alg in ["oracle", "mertens-first", "space-saving", "auto"] {
        let text = stdout(&phisum(&["123457", "--alg", alg]));
        let json: serde_json::Value =
            serde_json::from_str(&stdout(&phisum(&["123457", "--alg", alg, "--json"]))).unwrap();
        let phi = json["phi"].as_str().unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            format!("Phi(123457) = {phi}"),
            "{alg}"
        );
        if let Some(a) = json["a"].as_u64() {
            assert!(
                text.contains(&format!("a = {a}, b = {}", json["b"])),
                "{alg}"
            );
        }
    }
}

#[test]
fn instrument_counts_contributions() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&phisum(&[
        "1e6",
        "--alg",
        "space-saving",
        "--json",
        "--instrument",
    ])))
    .unwrap();
    let c = &v["contributions"];
    let total: u64 = ["phase1_flush", "phase2_flush", "phase3"]
        .iter()
        .map(|k| c[k].as_u64().unwrap())
        .sum();
    let b = v["b"].as_u64().unwrap();
    let expected: u64 = (1..=b).map(|y| phisum_core::isqrt(1_000_000 / y) - 1).sum();
    assert_eq!(total, expected);
}

#[test]
fn report_round_trip() {
    let mut req = RunRequest::new(1);
    for alg in [
        Algorithm::Oracle,
        Algorithm::MertensFirst,
        Algorithm::SpaceSaving,
        Algorithm::Auto,
    ] {
        req.algorithm = alg;
        let report = run(&req).unwrap();
        assert_eq!(report.value(), 1);
        let back: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back["phi"], "1");
        assert_eq!(back["n"], 1);
    }
}

#[test]
fn mertens_subcommand() {
    let out = phisum(&["mertens", "1e6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "M(1000000) = 212\n");
    assert_eq!(
        stdout(&phisum(&["mertens", "1e9"])),
        "M(1000000000) = -222\n"
    );
}

#[test]
fn selftest_is_deterministic() {
    let args = [
        "selftest", "--limit", "3000", "--random", "3", "--seed", "11",
    ];
    let one = phisum(&args);
    let two = phisum(&args);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
    assert!(stdout(&one).trim_end().ends_with("PASS"));
    assert_eq!(code(&phisum(&["selftest", "--limit", "2000000"])), 1);
}
