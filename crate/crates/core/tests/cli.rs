use std::process::Command;

use plurilab::cli::{run, ENV_RMAX};
use serde_json::Value;

fn cli(args: &[&str]) -> plurilab::cli::Outcome {
    run(std::iter::once("plurilab").chain(args.iter().copied()), None)
}

#[test]
fn pluri_table() {
    let out = cli(&["pluri", "--chi", "0", "--k3", "1/30", "--basket", "1/2,1/3,1/5", "--m", "2..5"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "m\tP_m\tintegral\n2\t1\tyes\n3\t2\tyes\n4\t3\tyes\n5\t4\tyes\n");
}

#[test]
fn pluri_json_keeps_fractions() {
    let out = cli(&["--format", "json", "pluri", "--chi", "0", "--k3", "1/7", "--basket", "1/2", "--m", "2"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"][0]["p"], "9/28");
    assert_eq!(v["rows"][0]["integral"], false);
}

#[test]
fn wps_and_infer() {
    let out = cli(&["wps", "16:1,1,2,3,8", "--m", "2"]);
    assert!(out.stdout.contains("K^3 1/3") && out.stdout.contains("2\t4"), "{}", out.stdout);
    let out = cli(&["infer", "--hypersurface", "22:1,2,3,4,11"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("basket {5*1/2,1/3,1/4}\nsize 7\nchi 0\n"), "{}", out.stdout);
    let out = cli(&["infer", "--pm", "2=1,3=2,4=3,5=4,6=5", "--chi", "0", "--k3", "1/30"]);
    assert!(out.stdout.starts_with("basket {1/2,1/3,1/5}"), "{}", out.stdout);
}

#[test]
fn env_rmax_limits_the_search() {
    let args = ["plurilab", "infer", "--hypersurface", "28:1,3,4,5,14", "--chi", "0"];
    assert_eq!(run(args, Some("5")).code, 0);
    let out = run(args, Some("4"));
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("r <= 4"), "{}", out.stderr);
    assert_eq!(run(args, Some("many")).code, 2);
}

#[test]
fn bounds_modes() {
    let out = cli(&["bounds", "--preset", "case2", "--m0", "3", "--schedule", "8,9,10,11"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("11\t"), "{}", out.stdout);
    let out = cli(&["--format", "json", "bounds", "--scenario", "m0=3 p=1 beta=1/3 g=2 sep=8"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["m_birational"], 13);
    assert_eq!(v["start_xi"], "2/7");
    assert_eq!(cli(&["bounds", "--theorem44", "--m0", "3", "--chi-zero"]).stdout.lines().last(), Some("threshold 14"));
    assert!(cli(&["bounds", "--pipeline", "corollary"]).stdout.ends_with("threshold: 8\n"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["pluri", "--chi", "0", "--k3", "1/0"][..],
        &["pluri", "--chi", "0", "--k3", "1", "--basket", "1/2,"],
        &["wps", "28:1,3,4,5"],
        &["bounds", "--preset", "nope", "--m0", "3"],
        &["bounds", "--preset", "d5_1", "--m0", "2"],
        &["bounds", "--scenario", "m0=3 p=1"],
        &["infer", "--pm", "2=1"],
        &["frobnicate"],
        &["--format", "yaml", "verify-paper"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn verify_json_and_filter() {
    let out = cli(&["--format", "json", "verify-paper", "--filter", "reid"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "summary", "version"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["group"] == "reid"));
    assert_eq!(cli(&["verify-paper", "--filter", "nothing"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    let a = cli(&["--format", "json", "verify-paper"]);
    let b = cli(&["--format", "json", "verify-paper", "--seed", "99"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_plurilab");
    let status = |args: &[&str]| Command::new(bin).args(args).env_remove(ENV_RMAX).output().unwrap().status.code();
    assert_eq!(status(&["verify-paper", "--filter", "theorems"]), Some(0));
    assert_eq!(status(&["pluri", "--chi", "x"]), Some(2));
    assert_eq!(status(&["infer", "--pm", "2=1,3=2,4=3", "--chi", "0", "--k3", "1/2"]), Some(1));
    let out = Command::new(bin)
        .args(["infer", "--hypersurface", "28:1,3,4,5,14", "--chi", "0"])
        .env(ENV_RMAX, "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
