use std::process::{Command, Output};

use serde_json::Value;

fn strength(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strength"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Runs with `--json` and returns the record, asserting the exit code.
fn record(args: &[&str], code: i32) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = strength(&all);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}\nstdout: {}\nstderr: {}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bounds_examples() {
    let r = record(&["bounds", "--family", "hypercube:4"], 0);
    assert_eq!(r["operation"], "bounds");
    assert_eq!(r["input"], "family hypercube:4");
    assert_eq!(r["result"]["best_lower"], 21);
    let c5 = record(&["bounds", "--graph6", "Dhc"], 0);
    assert_eq!(c5["result"]["best_lower"], 7);
    let mixed = record(&["bounds", "--family", "two-regular:4,6,5,5,7"], 0);
    assert_eq!(mixed["result"]["best_lower"], 31);
    assert_eq!(mixed["result"]["best_upper"], 31);
    let text = stdout(&strength(&["bounds", "--family", "hypercube:4"]));
    assert!(text.contains("best: 21 <= str <= 21 (exact)"), "{text}");
}

#[test]
fn label_examples() {
    let star = record(&["label", "--family", "star:9"], 0);
    assert_eq!(star["result"]["certificate"]["claimed"], 11);
    assert_eq!(star["result"]["verdict"]["verdict"], "exact");
    let ex = record(&["label", "--fixture", "example21"], 0);
    assert_eq!(ex["result"]["certificate"]["claimed"], 14);
    let q5 = record(&["label", "--family", "hypercube:5"], 0);
    assert_eq!(q5["result"]["verdict"], serde_json::json!({"verdict": "exact", "strength": 40}));
    let q6 = record(&["label", "--family", "hypercube:6"], 0);
    assert_eq!(q6["result"]["verdict"], serde_json::json!({"verdict": "bracket", "lower": 76, "upper": 79}));
}

#[test]
fn label_modes_and_embedding() {
    let r = record(&["label", "--family", "example22", "--mode", "delta"], 3);
    assert_eq!(r["result"]["found"], false);
    let r = record(&["label", "--family", "example22", "--mode", "any"], 0);
    assert_eq!(r["result"]["certificate"]["claimed"], 17);
    record(&["label", "--family", "hypercube:4", "--mode", "delta"], 3);
    let r = record(&["label", "--family", "hypercube:4", "--mode", "delta", "--embed"], 0);
    assert_eq!(r["result"]["attached"]["m"], 4);
    assert_eq!(r["result"]["attached"]["n"], 5);
    assert_eq!(r["result"]["certificate"]["claimed"], 29);
}

#[test]
fn exact_examples() {
    let r = record(&["exact", "--family", "cycle:7"], 0);
    assert_eq!(r["result"]["str_value"], 9);
    assert_eq!(r["result"]["status"], "exact");
    let r = record(&["exact", "--family", "complete-bipartite:2,3"], 0);
    assert_eq!(r["result"]["str_value"], 7);
    let r = record(&["exact", "--family", "complete:12", "--budget", "10"], 3);
    assert_eq!(r["result"]["status"], "budget-hit-bracket");
    let o = strength(&["exact", "--family", "hypercube:4"]);
    assert_eq!(o.status.code(), Some(2), "Q4 is above the oracle cap");
}

#[test]
fn exact_value_lies_within_bounds() {
    for seed in ["1", "2", "3"] {
        let args = ["--family", "gnp:8,0.5", "--seed", seed];
        let g6 = stdout(&strength(&["convert", "--to", "graph6", args[0], args[1], args[2], args[3]]));
        let g6 = g6.trim();
        let b = record(&["bounds", "--graph6", g6], 0);
        let e = record(&["exact", "--graph6", g6], 0);
        let v = e["result"]["str_value"].as_u64().unwrap();
        assert!(b["result"]["best_lower"].as_u64().unwrap() <= v);
        assert!(v <= b["result"]["best_upper"].as_u64().unwrap());
    }
}

#[test]
fn verify_certificates_and_numberings() {
    let dir = tempfile::tempdir().unwrap();
    let r = record(&["label", "--family", "two-regular:4,6,5,5,7"], 0);
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, r["result"]["certificate"].to_string()).unwrap();
    let cert_s = cert.to_str().unwrap();
    let v = record(&["verify", "--family", "two-regular:4,6,5,5,7", "--labeling", cert_s], 0);
    assert_eq!(v["result"]["verdict"], "exact");

    let mut bad = r["result"]["certificate"].clone();
    bad["claimed"] = 30.into();
    std::fs::write(&cert, bad.to_string()).unwrap();
    let v = record(&["verify", "--family", "two-regular:4,6,5,5,7", "--labeling", cert_s], 4);
    assert_eq!(v["result"]["verdict"], "invalid");

    let numbering = dir.path().join("f.json");
    std::fs::write(&numbering, r#"{"p": 4, "labels": [1, 4, 2, 3]}"#).unwrap();
    let v = record(&["verify", "--family", "cycle:4", "--labeling", numbering.to_str().unwrap()], 0);
    assert_eq!(v["result"]["strength"], 6);
    std::fs::write(&numbering, r#"{"p": 4, "labels": [1, 1, 2, 3]}"#).unwrap();
    let o = strength(&["verify", "--family", "cycle:4", "--labeling", numbering.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sequence_rendering() {
    let o = strength(&["sequence", "--family", "star:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("G1 [u=1 d=1] -> G2 = 2K1 [y=3 z=3]"), "{}", stdout(&o));
    let r = record(&["sequence", "--family", "hypercube:4", "--choices", "0,3,5,6"], 0);
    let z: Vec<i64> = r["result"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|s| s["z"].as_i64())
        .collect();
    assert_eq!(z, vec![-1, -1, 0]);
    let r = record(&["sequence", "--family", "example22"], 3);
    assert_eq!(r["result"]["outcome"], "exhausted");
}

#[test]
fn repro_runs_and_filters() {
    let r = record(&["repro"], 0);
    assert_eq!(r["result"]["failed"], 0);
    let r = record(&["repro", "--filter", "hypercube"], 0);
    let items = r["result"]["items"].as_array().unwrap();
    assert!(!items.is_empty());
    assert!(items.iter().all(|i| {
        i["id"].as_str().unwrap().contains("hypercube")
            || i["tags"].as_array().unwrap().iter().any(|t| t == "hypercube")
    }));
}

#[test]
fn repro_names_a_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    record(&["export-fixtures", d], 0);
    let q6 = dir.path().join("Q6.json");
    let text = std::fs::read_to_string(&q6).unwrap();
    std::fs::write(&q6, text.replacen("79", "78", 1)).unwrap();
    let r = record(&["repro", "--fixtures", d], 4);
    let failed: Vec<&str> = r["result"]["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["pass"] == false)
        .map(|i| i["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["q6-table"]);
}

#[test]
fn invalid_inputs_exit_2() {
    let o = strength(&["bounds", "--family", "hypercube:"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = strength(&["bounds", "--graph6", "D?"]);
    assert_eq!(o.status.code(), Some(2));
    let o = strength(&["bounds", "--family", "empty:3+path:3"]);
    assert_eq!(o.status.code(), Some(2), "isolated vertices are refused");
    let o = strength(&["label", "--fixture", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = strength(&["bounds"]);
    assert_eq!(o.status.code(), Some(2), "a graph source is required");
}

#[test]
fn edge_list_input_and_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("c5.txt");
    std::fs::write(&edges, "# five-cycle\n5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let dot = dir.path().join("c5.dot");
    let r = record(
        &["label", "--edges", edges.to_str().unwrap(), "--dot", dot.to_str().unwrap()],
        0,
    );
    assert_eq!(r["result"]["certificate"]["claimed"], 7);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph"), "{text}");
    assert_eq!(text.matches("--").count(), 5);
}

#[test]
fn results_are_deterministic() {
    let args = ["bounds", "--family", "gnp:14,0.4", "--seed", "9", "--jobs", "3"];
    let a = record(&args, 0);
    let b = record(&args, 0);
    assert_eq!(a["result"], b["result"]);
    let a = record(&["label", "--family", "gnp:12,0.5", "--seed", "4", "--embed"], 0);
    let b = record(&["label", "--family", "gnp:12,0.5", "--seed", "4", "--embed"], 0);
    assert_eq!(a["result"], b["result"]);
}
