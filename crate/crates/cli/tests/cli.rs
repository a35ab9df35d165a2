use std::path::PathBuf;
use std::process::{Command, Output};

fn mbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mbg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table1_row() {
    let o = mbg(&["table1", "--t-min", "7", "--t-max", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "t,k,N,ours,hl\n7,2,192,551,557\n");
}

#[test]
fn table2_first_row_with_blanks() {
    let o = mbg(&["table2", "--t", "14", "--n-min", "16385", "--n-max", "16386", "--paper-facsimile"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "n,k=2,k=3,k=4,k=5,k=6,hln,hl\n16385,49109,49044,48909,48628,48043,115871,\n16386,49112,49047,48912,48631,48046,,\n"
    );
}

#[test]
fn params_json() {
    let o = mbg(&["params", "--t", "14", "--k", "3", "--n", "16385"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["d"].as_u64(), v["x"].as_u64(), v["y"].as_u64(), v["p"].as_u64()), (Some(12287), Some(2), Some(4095), Some(1)));
    assert_eq!(v["N"], 28672);
}

#[test]
fn certify_passes_and_is_deterministic() {
    let one = mbg(&["certify", "--t", "7", "--k", "2", "--jobs", "1"]);
    let many = mbg(&["certify", "--t", "7", "--k", "2", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["max_round"], 8);
    assert_eq!(v["checked"], 192);
}

#[test]
fn certify_one_originator_by_label() {
    let o = mbg(&["certify", "--t", "8", "--k", "3", "--n", "300", "--originator", "3::100", "--brief"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checked"], 1);
}

#[test]
fn construct_writes_graph_and_accounting() {
    let out = scratch("g.json");
    let o = mbg(&["construct", "--t", "7", "--k", "2", "--out", out.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let acc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(acc["total_edges"]["measured"], 551);
    assert_eq!(acc["total_edges"]["delta"], 0);
    let graph: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(graph["n"], 192);
    assert_eq!(graph["edges"].as_array().unwrap().len(), 551);
}

#[test]
fn export_and_exact_on_a_small_file() {
    let list = scratch("cube.edges");
    std::fs::write(&list, "0 1\n0 2\n1 3\n2 3\n4 0\n").unwrap();
    let dot = scratch("cube.dot");
    let o = mbg(&["export", "--graph", list.to_str().unwrap(), "--format", "dot", "--out", dot.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
    let o = mbg(&["exact", "--graph", list.to_str().unwrap(), "--originator", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn schedule_json_shape() {
    let o = mbg(&["schedule", "--t", "7", "--k", "2", "--originator", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["completes_at"], 8);
    assert_eq!(v["phase1_strategy"], "paper");
    assert_eq!(v["rounds"].as_array().unwrap().len(), 8);
}

#[test]
fn bounds_report() {
    let o = mbg(&["bounds", "--n", "192"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 192);
    assert!(v["bounds"].as_array().unwrap().iter().any(|b| b["id"] == "hl_direct" && b["value"] == 557));
}

#[test]
fn exit_codes() {
    assert_eq!(mbg(&["params", "--t", "7", "--k", "5"]).status.code(), Some(1));
    assert_eq!(mbg(&["bounds", "--n", "193"]).status.code(), Some(0));
    assert_eq!(mbg(&["certify", "--t", "7", "--k", "2", "--originator", "9999"]).status.code(), Some(1));
    assert_eq!(mbg(&["exact", "--graph", "/nonexistent/graph", "--originator", "0"]).status.code(), Some(1));
    assert_eq!(mbg(&["params", "--t", "7"]).status.code(), Some(2));
    assert_eq!(mbg(&["construct", "--t", "7", "--k", "2", "--format", "png"]).status.code(), Some(2));
    assert_eq!(mbg(&["nonsense"]).status.code(), Some(2));
}
