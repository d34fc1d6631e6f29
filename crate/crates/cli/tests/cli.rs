use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const C5: &str = r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#;
const C5_K3: &str = r#"{"base":{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]},"attachments":[{"vertex":0,"cliques":[3]}]}"#;

fn eil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eil"))
        .args(args)
        .env("EIL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn graph_invariants_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", C5);
    let inv = json_out(&eil(&["graph", &c5, "invariants"]));
    assert_eq!(inv["induced_matching"]["value"], 1);
    assert_eq!(inv["matching"]["value"], 2);
    assert_eq!(inv["cochord"]["exact"], 2);

    let ht = write(dir.path(), "ht.json", C5_K3);
    let cls = json_out(&eil(&["graph", &ht, "classify"]));
    assert_eq!(cls["n"], 7);
    assert_eq!(cls["kappa"], 3);
    assert_eq!(cls["bipartite"]["value"], false);
    assert_eq!(cls["unicyclic"]["value"], true);
    assert_eq!(cls["unicyclic"]["decomposition"]["gamma"], serde_json::json!([5, 6]));
}

#[test]
fn ideal_operations() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", C5);
    assert_eq!(json_out(&eil(&["ideal", &c5]))["count"], 5);
    assert_eq!(json_out(&eil(&["ideal", &c5, "--power", "2"]))["count"], 15);
    let sym = json_out(&eil(&["ideal", &c5, "--symbolic", "3"]));
    let ord = json_out(&eil(&["ideal", &c5, "--power", "3"]));
    assert_ne!(sym["gens"], ord["gens"]);
    let colon = json_out(&eil(&["ideal", &c5, "--colon", "x0*x1"]));
    assert_eq!(colon["display"], "(1)");
}

#[test]
fn regularity_over_both_fields() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", C5);
    assert_eq!(json_out(&eil(&["reg", &c5]))["reg"], 2);
    assert_eq!(json_out(&eil(&["reg", &c5, "--power", "2"]))["reg"], 3);
    let q = json_out(&eil(&["reg", &c5, "--symbolic", "2", "--rational"]));
    assert_eq!(q["char"], 0);
    assert_eq!(json_out(&eil(&["reg", &c5, "--char", "2"]))["reg"], 2);

    let ideal = write(dir.path(), "i.json", r#"{"n":2,"gens":[[2,0],[1,1],[0,2]]}"#);
    assert_eq!(json_out(&eil(&["reg", &ideal]))["reg"], 1);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", C5);
    assert_eq!(eil(&["reg", &c5, "--power", "2", "--symbolic", "2"]).status.code(), Some(2));
    assert_eq!(eil(&["reg", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(eil(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(eil(&["reg", &c5, "--char", "4"]).status.code(), Some(2));
    let broken = write(dir.path(), "bad.json", "{not json");
    assert_eq!(eil(&["graph", &broken, "classify"]).status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", C5);
    let o = eil(&["reg", &c5, "--power", "3", "--lattice-cap", "5"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_writes_report_and_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "corpus.json", r#"{"kind":"all-connected","min_n":2,"max_n":5}"#);
    let out = dir.path().join("report.json");
    let o = eil(&["verify", "svv", "--corpus", &corpus, "--rmax", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["suite"], "svv");
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["summary"]["total"], 30);

    // C5 violates the attributed bare-cycle equality
    let named = write(dir.path(), "c5.json", r#"[{"kind":"all-connected","min_n":5,"max_n":5}]"#);
    let o = eil(&["verify", "unicyclic-bare", "--corpus", &named, "--rmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["summary"]["fail"].as_u64().unwrap() >= 1);

    let empty = write(dir.path(), "empty.json", "[]");
    let o = eil(&["verify", "engine", "--corpus", &empty]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_with_seed_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(
        dir.path(),
        "u.json",
        r#"{"kind":"random-unicyclic-ht","max_base":6,"max_total":9,"count":4,"seed":0}"#,
    );
    let run = || {
        let o = eil(&["verify", "unicyclic", "--corpus", &corpus, "--rmax", "1", "--seed", "7"]);
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["corpora"][0]["seed"], 7);
}

#[test]
fn corpus_materializes_instances() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"[{"kind":"all-connected","min_n":1,"max_n":4},{"kind":"named","name":"c10-k3"}]"#,
    );
    let out = dir.path().join("corpus");
    let o = json_out(&eil(&["corpus", &spec, "--out", out.to_str().unwrap()]));
    assert_eq!(o["count"], 10 + 1);
    let index: Value = serde_json::from_str(&fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["instances"].as_array().unwrap().len(), 11);
    let last: Value = serde_json::from_str(&fs::read_to_string(out.join("00010.json")).unwrap()).unwrap();
    assert_eq!(last["graph"]["n"], 12);
    assert!(last["ht"].is_object());
}
