use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn repcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcheck"))
        .args(args)
        .env_remove("REPCHECK_CACHE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&fs::read(p).unwrap()).unwrap()
}

#[test]
fn maximal_parabolic_passes() {
    let o = repcheck(&["jacquet", "--q", "2", "--n", "2", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["max_multiplicity"], 1);
    assert_eq!(r["claim"], "multiplicity-one");
    assert!(r["prime"].as_u64().is_some());
    assert!(r.get("counterexample").is_none());
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["claim", "max_multiplicity", "params", "prime", "verdict", "version"]);
}

#[test]
fn borel_fails_with_payload() {
    let o = repcheck(&["jacquet", "--q", "2", "--composition", "1,1,1", "--expect-fail"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["counterexample"]["multiplicity"], 2);
    assert_eq!(r["counterexample"]["g_degree"], 6);
    assert_eq!(code(&repcheck(&["jacquet", "--q", "2", "--composition", "1,1,1"])), 1);
}

#[test]
fn key_lemma_counterexample_is_recheckable() {
    let o = repcheck(&["keylemma", "--q", "2", "--k", "3", "--composition", "1,1,1", "--expect-fail"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    let c = &r["counterexample"];
    let orbit = c["orbit"].as_array().unwrap();
    assert!(orbit.contains(&c["member"]));
    assert!(!orbit.contains(&c["transpose"]));
    assert_eq!(code(&repcheck(&["keylemma", "--q", "2", "--k", "2"])), 0);
}

#[test]
fn dual_lemma_domains() {
    assert_eq!(code(&repcheck(&["dualkey", "--q", "3", "--k", "2"])), 0);
    let o = repcheck(&["dualkey", "--q", "3", "--k", "2", "--all-maps", "--expect-fail"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["params"]["all_maps"], true);
}

#[test]
fn symmetric_group_verdicts() {
    assert_eq!(code(&repcheck(&["symgroup", "--composition", "4,2"])), 0);
    let o = repcheck(&["symgroup", "--composition", "3,3", "--expect-fail"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["max_multiplicity"], 2);
    assert!(r["counterexample"]["noncommuting_pair"].is_array());
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(code(&repcheck(&["jacquet", "--n", "2", "--k", "1"])), 2);
    assert_eq!(code(&repcheck(&["jacquet", "--q", "6", "--n", "1", "--k", "1"])), 2);
    assert_eq!(code(&repcheck(&["jacquet", "--q", "2", "--n", "2", "--k", "2", "--prime", "8"])), 2);
    assert_eq!(code(&repcheck(&["jacquet", "--q", "2", "--n", "2", "--k", "1", "--composition", "1,1"])), 2);
    assert_eq!(code(&repcheck(&["keylemma", "--q", "2", "--k", "2", "--prime", "7"])), 2);
    assert_eq!(code(&repcheck(&["frobnicate"])), 2);
    assert_eq!(code(&repcheck(&["--version"])), 0);
}

#[test]
fn cache_miss_hit_prime_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("r.json");
    let meta = dir.path().join("r.json.meta.json");
    let args = |extra: &[&str]| {
        let mut v = vec!["chartab", "--q", "2", "--n", "3", "--cache-dir", cache.to_str().unwrap()];
        v.extend_from_slice(&["--out", out.to_str().unwrap()]);
        v.extend_from_slice(extra);
        v.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let run = |extra: &[&str]| {
        let a = args(extra);
        code(&repcheck(&a.iter().map(String::as_str).collect::<Vec<_>>()))
    };

    assert_eq!(run(&[]), 0);
    assert_eq!(read_json(&meta)["cache"]["misses"], 1);
    let first = fs::read(&out).unwrap();

    assert_eq!(run(&[]), 0);
    let m = read_json(&meta);
    assert_eq!((m["cache"]["hits"].as_u64(), m["cache"]["misses"].as_u64()), (Some(1), Some(0)));
    assert_eq!(fs::read(&out).unwrap(), first, "report is byte-identical across runs");

    assert_eq!(run(&["--prime", "next"]), 0);
    assert_eq!(read_json(&meta)["cache"]["misses"], 1);
    assert_ne!(read_json(&out)["prime"], serde_json::from_slice::<Value>(&first).unwrap()["prime"]);
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 2);

    for e in &entries {
        let bytes = fs::read(e).unwrap();
        fs::write(e, &bytes[..bytes.len() / 3]).unwrap();
    }
    assert_eq!(run(&[]), 0);
    let m = read_json(&meta);
    assert_eq!((m["cache"]["misses"].as_u64(), m["cache"]["discarded"].as_u64()), (Some(1), Some(1)));
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_repcheck"))
        .args(["chartab", "--q", "3", "--n", "2"])
        .env("REPCHECK_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn manifests() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let out = dir.path().join("suite.json");
    let run = |manifest: &Path| {
        code(&repcheck(&["all", "--manifest", manifest.to_str().unwrap(), "--out", out.to_str().unwrap(), "--jobs", "2"]))
    };

    assert_eq!(run(&write("empty.json", "[]")), 0);
    let s = read_json(&out);
    assert_eq!((s["total"].as_u64(), s["all_met"].as_bool()), (Some(0), Some(true)));

    let rows = r#"[
        {"command": "keylemma", "params": {"q": 2, "k": 2}, "expect": "pass"},
        {"command": "jacquet", "params": {"q": 2, "composition": [1, 1, 1]}, "expect": "pass"},
        {"command": "symgroup", "params": {"composition": [2, 2]}, "expect": "pass"}
    ]"#;
    assert_eq!(run(&write("wrong.json", rows)), 1);
    let s = read_json(&out);
    let met: Vec<bool> = s["rows"].as_array().unwrap().iter().map(|r| r["met"].as_bool().unwrap()).collect();
    assert_eq!(met, [true, false, true]);
    assert_eq!(s["rows"][1]["report"]["verdict"], "fail");

    let broken = r#"[
        {"command": "jacquet", "params": {"n": 1, "k": 1}, "expect": "pass"},
        {"command": "keylemma", "params": {"q": 3, "k": 1}, "expect": "pass"}
    ]"#;
    assert_eq!(run(&write("broken.json", broken)), 2);
    let s = read_json(&out);
    assert!(s["rows"][0]["error"].as_str().unwrap().contains("--q"));
    assert_eq!(s["rows"][1]["met"], true);

    assert_eq!(run(&write("garbage.json", "{ not json")), 2);
}

#[test]
fn unwritable_destinations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let under_file = file.join("r.json");
    assert_eq!(code(&repcheck(&["keylemma", "--q", "2", "--k", "1", "--out", under_file.to_str().unwrap()])), 2);
    assert_eq!(code(&repcheck(&["chartab", "--q", "2", "--n", "2", "--cache-dir", file.to_str().unwrap()])), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Exit 2 exactly on errors; otherwise 0 iff the verdict matches the expectation.
    #[test]
    fn exit_status_contract(
        cmd in prop::sample::select(vec!["keylemma", "dualkey", "chartab", "jacquet", "symgroup"]),
        q in prop::sample::select(vec!["2", "3", "6"]),
        size in 1usize..4,
        expect_fail: bool,
    ) {
        let size_s = size.to_string();
        let mut args: Vec<&str> = vec![cmd, "--q", q];
        match cmd {
            "keylemma" | "dualkey" => args.extend(["--k", size_s.as_str()]),
            "chartab" => args.extend(["--n", size_s.as_str()]),
            "jacquet" => args.extend(["--n", size_s.as_str(), "--k", "1"]),
            _ => args = vec![cmd, "--composition", if size == 3 { "2,2,2" } else { "2,1" }],
        }
        if expect_fail {
            args.push("--expect-fail");
        }
        let o = repcheck(&args);
        let c = code(&o);
        if o.stdout.is_empty() {
            prop_assert_eq!(c, 2);
        } else {
            let verdict = stdout_json(&o)["verdict"].as_str().unwrap().to_string();
            let matched = (verdict == "fail") == expect_fail;
            prop_assert_eq!(c, if matched { 0 } else { 1 });
            if verdict == "fail" {
                prop_assert!(stdout_json(&o).get("counterexample").is_some());
            }
        }
    }
}
