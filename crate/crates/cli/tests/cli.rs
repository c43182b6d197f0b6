use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_entropy-decomp");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn num(v: &Value, path: &str) -> f64 {
    v.pointer(path)
        .and_then(Value::as_f64)
        .unwrap_or_else(|| panic!("no number at {path} in {v}"))
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entropy-decomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn emitted(name: &str) -> PathBuf {
    let out = run(&["examples", "--name", name, "--emit-input"]);
    assert!(out.status.success());
    scratch(&format!("{name}.json"), &out.stdout)
}

#[test]
fn decompose_xor() {
    let path = emitted("xor");
    let v = json(&run(&["decompose", "--input", path.to_str().unwrap()]));
    assert_eq!(num(&v, "/results/decompose/syn"), 1.0);
    assert_eq!(num(&v, "/results/decompose/red"), 0.0);
    assert_eq!(num(&v, "/results/decompose/layers/dH_(3)"), 2.0);
    assert_eq!(v["units"], "bits");
    assert_eq!(v["results"]["decompose"]["unique"], true);
}

#[test]
fn and_gate_example_reports_its_synergy() {
    let v = json(&run(&["examples", "--name", "and-gate"]));
    assert!((num(&v, "/results/decompose/syn") - 0.1887).abs() < 5e-4);
    let pme = num(&v, "/results/synergy_split/pme_synergy/value");
    assert!((pme - 0.1887).abs() < 5e-4);
    assert!(num(&v, "/results/synergy_split/dH^(3)").abs() < 1e-9);
}

#[test]
fn gaussian_flags_and_json_agree() {
    let v = json(&run(&["gaussian", "--a", "0.5", "--b", "0.5", "--g", "0.5", "decompose"]));
    assert!((num(&v, "/results/decompose/red") - 0.5 * (4.0f64 / 3.0).log2()).abs() < 1e-11);
    let path = scratch(
        "gauss.json",
        br#"{"sigma": [1, 1, 1], "corr": {"a": 0.5, "b": 0.5, "g": 0.5}}"#,
    );
    let w = json(&run(&["gaussian", "decompose", "--input", path.to_str().unwrap()]));
    assert_eq!(v, w);
}

#[test]
fn gaussian_actions() {
    let v = json(&run(&["gaussian", "latent", "--a", "0.6", "--b", "0.4", "--g", "0.2"]));
    assert!((num(&v, "/results/latent/s3") - 0.6f64.sqrt()).abs() < 1e-11);
    assert!(num(&v, "/results/latent/reconstruction_error") < 1e-12);

    let out = run(&["gaussian", "latent", "--a", "0.2", "--b", "0.4", "--g", "0.6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reorder"));

    let v = json(&run(&["gaussian", "broadcast", "--a", "0.6", "--b", "0.4", "--g", "0.1"]));
    assert!((num(&v, "/results/broadcast/c_pub") - 0.1258).abs() < 1e-4);
    assert!((num(&v, "/results/broadcast/c_priv") - 0.1961).abs() < 1e-4);

    let v = json(&run(&["gaussian", "--a", "-0.3", "--b", "0.2"]));
    assert!(num(&v, "/results/measures/mutual_information/1;2") > 0.0);

    let out = run(&["gaussian", "--a", "0.9", "--b", "-0.9", "--g", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_gallery_entry_round_trips() {
    let list = json(&run(&["examples"]));
    let entries = list["examples"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["name"] == "modk-3"));
    for e in entries {
        let name = e["name"].as_str().unwrap();
        let full = json(&run(&["examples", "--name", name]));
        let path = emitted(name);
        let path = path.to_str().unwrap();
        let single: Vec<(Vec<&str>, Vec<&str>)> = if e["kind"] == "discrete" {
            vec![
                (vec!["measures", "--input", path], vec!["measures"]),
                (vec!["decompose", "--input", path], vec!["decompose"]),
                (vec!["spectrum", "--input", path], vec!["spectrum", "synergy_split"]),
            ]
        } else {
            let mut v = vec![
                (vec!["gaussian", "measures", "--input", path], vec!["measures"]),
                (vec!["gaussian", "decompose", "--input", path], vec!["decompose"]),
                (vec!["gaussian", "broadcast", "--input", path], vec!["broadcast"]),
            ];
            if full["results"].get("latent").is_some() {
                v.push((vec!["gaussian", "latent", "--input", path], vec!["latent"]));
            }
            v
        };
        for (args, keys) in single {
            let part = json(&run(&args));
            assert_eq!(part["digest"], full["digest"], "{name}: digest");
            for key in keys {
                let a = serde_json::to_string(&part["results"][key]).unwrap();
                let b = serde_json::to_string(&full["results"][key]).unwrap();
                assert_eq!(a, b, "{name}: {key}");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["examples", "--name", "bsc-markov"],
        vec!["examples", "--name", "gauss-markov", "--format", "table"],
        vec!["search-synergy", "--k", "2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn twelve_significant_digits() {
    let v = run(&["examples", "--name", "and-gate"]);
    let text = String::from_utf8(v.stdout).unwrap();
    assert!(text.contains("0.188721875541"));
    assert!(!text.contains("0.1887218755408"));
}

#[test]
fn table_format_lists_paths() {
    let out = run(&["examples", "--name", "xor", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with("results.decompose.syn "))
        .expect("syn row");
    assert!(line.trim_end().ends_with("1.0"));
}

#[test]
fn nats_are_selectable() {
    let path = emitted("xor");
    let v = json(&run(&["decompose", "--input", path.to_str().unwrap(), "--units", "nats"]));
    assert!((num(&v, "/results/decompose/syn") - 2f64.ln()).abs() < 1e-11);
    assert_eq!(v["results"]["decompose"]["units"], "nats");
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(BIN)
        .args(["measures", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"cardinalities": [2, 2], "probabilities": [0.5, 0, 0, 0.5]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v = json(&out);
    assert_eq!(num(&v, "/results/measures/mutual_information/1;2"), 1.0);
}

#[test]
fn input_errors_exit_one() {
    let bad = scratch("bad.json", b"{\"cardinalities\": [2, 2],\n \"probabilities\": [0.5, 0.5,");
    let out = run(&["measures", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    let unnormalized = scratch("unnorm.json", br#"{"cardinalities": [2], "probabilities": [0.5, 0.6]}"#);
    let out = run(&["measures", "--input", unnormalized.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["examples", "--name", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("modk-3"));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    let path = emitted("xor");
    let out = run(&["decompose", "--input", path.to_str().unwrap(), "--markov", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Markov"));

    let four = scratch("four.json", br#"{"cardinalities": [2, 2, 2, 2, 2], "probabilities": [
        0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125,
        0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125,
        0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125,
        0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125, 0.03125]}"#);
    let out = run(&["spectrum", "--input", four.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("search-synergy"));
}

#[test]
fn closed_forms_can_be_requested() {
    let path = emitted("bsc-markov");
    let v = json(&run(&["decompose", "--input", path.to_str().unwrap(), "--markov", "2"]));
    assert!(num(&v, "/results/decompose/syn").abs() < 1e-12);
    let path = emitted("and-gate");
    let v = json(&run(&["decompose", "--input", path.to_str().unwrap(), "--independent", "1,2"]));
    assert!((num(&v, "/results/decompose/syn") - 0.1887).abs() < 5e-4);
}

#[test]
fn spectrum_and_lost_fraction() {
    let path = emitted("xor");
    let v = json(&run(&["spectrum", "--input", path.to_str().unwrap(), "--lost-tc", "2"]));
    assert_eq!(num(&v, "/results/spectrum/external_increments/1"), 1.0);
    assert_eq!(num(&v, "/results/lost_tc_fraction/fraction"), 1.0);
    assert_eq!(v["results"]["spectrum"]["units"], "bits");
}

#[test]
fn netinfo_scenarios() {
    let xor = emitted("xor");
    let xor = xor.to_str().unwrap();
    // R = R~ for XOR since every H(Xk|rest) = 0
    let v = json(&run(&["netinfo", "slepian-wolf", "--input", xor, "--rates", "1,1,0"]));
    assert_eq!(v["results"]["slepian_wolf"]["membership"]["inside"], true);
    assert_eq!(v["results"]["slepian_wolf"]["excess_membership"]["inside"], true);
    let v = json(&run(&["netinfo", "slepian-wolf", "--input", xor, "--rates", "1,0,0"]));
    assert_eq!(v["results"]["slepian_wolf"]["excess_membership"]["inside"], false);
    assert_eq!(v["results"]["slepian_wolf"]["membership"]["inside"], false);

    let v = json(&run(&["netinfo", "mac", "--input", xor, "--rates", "0.5,0.5"]));
    assert_eq!(num(&v, "/results/mac/c_s"), 1.0);
    assert_eq!(v["results"]["mac"]["membership"]["inside"], true);

    let chain = emitted("bsc-markov");
    let v = json(&run(&["netinfo", "wiretap", "--input", chain.to_str().unwrap()]));
    assert!((num(&v, "/results/wiretap/c_sec") - 0.2111).abs() < 1e-4);
    assert!((num(&v, "/results/wiretap/c_eav") - 0.3199).abs() < 1e-4);

    let v = json(&run(&["netinfo", "broadcast", "--a", "0.6", "--b", "0.4", "--g", "0.1"]));
    assert!((num(&v, "/results/broadcast/c_priv") - 0.1961).abs() < 1e-4);

    let out = run(&["netinfo", "wiretap", "--input", xor]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn synergy_search() {
    let v = json(&run(&["search-synergy", "--k", "2"]));
    assert_eq!(v["results"]["search_synergy"]["maximizers"].as_array().unwrap().len(), 2);
    let v = json(&run(&["search-synergy", "--k", "3"]));
    assert_eq!(v["results"]["search_synergy"]["attains_bound"], true);
    assert_eq!(run(&["search-synergy", "--k", "9"]).status.code(), Some(1));
}
