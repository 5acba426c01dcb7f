use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra-factor")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn spectral_text_and_json() {
    let o = bin(&["spectral", "--family", "K(2; 5x1)", "--kinds", "rho"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3.701562119"));

    let o = bin(&["--format", "json", "spectral", "Bw"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    for x in values {
        assert!((x["value"].as_f64().unwrap() - if x["kind"] == "kappa" { 4.0 } else { 2.0 }).abs() < 1e-10);
    }
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.txt");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let o = bin(&["wiener", "--edge-list", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn charpoly_of_closed_form_matrix() {
    let o = bin(&["charpoly", "--matrix", "M14", "--nu", "7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("x^2 - x - 10"), "{out}");
    assert!(out.contains("3.701562119"));
}

#[test]
fn charpoly_of_graph() {
    let o = bin(&["--format", "json", "charpoly", "Bw", "--kind", "A"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // K3: x^3 - 3x - 2
    assert_eq!(v["charpoly"], serde_json::json!([-2, -3, 0, 1]));
}

#[test]
fn factor_check_reports_witness() {
    let o = bin(&["--format", "json", "factor-check", "--family", "K(2; 6x1)"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sc = &v["factors"]["star_cycle_factor"];
    assert_eq!(sc["exists"], false);
    assert_eq!(sc["witness"]["subset"], serde_json::json!([0, 1]));
    assert_eq!(sc["witness"]["counts"]["observed"], 6);
    assert_eq!(v["factors"]["k2_factor"]["exists"], false);

    let o = bin(&["factor-check", "--factor", "k2", "Cr"]);
    assert!(stdout(&o).contains("perfect matching: yes"));
}

#[test]
fn extremal_matching_graph_agrees_with_quotient() {
    let o = bin(&["--format", "json", "extremal", "--theorem", "pm-mu1", "--nu", "14", "--delta", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "K(4; 5, 5x1)");
    assert_eq!(v["values"]["quotient"]["agrees"], true);
    assert_eq!(v["factors"]["k2_factor"]["witness"]["counts"]["observed"], 6);
}

#[test]
fn extremal_needs_delta_for_matching() {
    let o = bin(&["extremal", "--theorem", "pm-kappa", "--nu", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_csv_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = bin(&[
        "--format", "csv", "--out", out.to_str().unwrap(),
        "verify", "--theorem", "sc-size", "--orders", "5..6", "--records", "all",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("graph6,nu,m,delta"));
    // connected labeled graphs: 728 on 5 vertices, 26704 on 6
    assert_eq!(lines.count(), 728 + 26704);
}

#[test]
fn verify_notable_records_are_the_extremal_graphs() {
    let o = bin(&["verify", "--theorem", "sc-size", "--orders", "7"]);
    assert!(o.status.success());
    let records: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 21);
    assert!(records.iter().all(|r| r["verdict"] == "exceptional-extremal" && r["m"] == 11));
}

#[test]
fn verify_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.g6");
    std::fs::write(&corpus, "F}rE?\nBw\nC?\n").unwrap();
    let o = bin(&["verify", "--corpus", corpus.to_str().unwrap(), "--records", "all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2 * 3);
}

#[test]
fn verify_gates_order_eight() {
    let o = bin(&["verify", "--orders", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-large"));
}

#[test]
fn oracle_mode() {
    let o = bin(&["verify", "--oracles", "--orders", "4..6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graphs"], 38 + 728 + 26704);
}

#[test]
fn sweep_csv() {
    let o = bin(&["sweep", "--orders", "7", "--theorem", "sc-rho"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "nu,size_threshold,beta,rho_threshold,mu1_threshold,kappa_k2,mu1_k2\n7,,3.273072863,3.701562119,,,\n");
}

#[test]
fn input_and_io_exit_codes() {
    assert_eq!(bin(&["spectral", "B"]).status.code(), Some(2));
    assert_eq!(bin(&["spectral", "--family", "K(x; 3)"]).status.code(), Some(2));
    assert_eq!(bin(&["wiener", "--edge-list", "/nonexistent/file"]).status.code(), Some(3));
    assert_eq!(bin(&["nope"]).status.code(), Some(2));
    // distance matrix of a disconnected graph
    assert_eq!(bin(&["spectral", "--kinds", "mu1", "C?"]).status.code(), Some(2));
}

#[test]
fn verify_output_is_independent_of_chunks() {
    let run = |chunks: &str| {
        bin(&["--chunks", chunks, "verify", "--orders", "4..6", "--records", "all"]).stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
}

#[test]
fn extremal_star_cycle_text() {
    let o = bin(&["extremal", "--theorem", "sc-size", "--nu", "9"]);
    let out = stdout(&o);
    assert!(out.starts_with("K(1; 5, 3x1)\n"), "{out}");
    assert!(out.contains("|E| 18"));
    assert!(out.contains("size threshold 18"));
    assert!(out.contains("X = [0]: iso(G-X) = 3 > 2"));
}

#[test]
fn kappa_of_k2() {
    let o = bin(&["spectral", "A_", "--kinds", "kappa"]);
    assert!(stdout(&o).starts_with("kappa  2.000000000"));
}
