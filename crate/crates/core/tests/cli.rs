use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tricolor(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tricolor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tricolor_golden() {
    let o = tricolor(&["tricolor"], "1 1 0\n0\n2 0 0\n\n3 0 0 0\n");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "RGR\t1 0 2 2 1 1\nR\t0 0 1 1 0 1\nGRR\t1 0 2 2 1 1\nGRRR\t1 0 3 3 1 2\n"
    );
}

#[test]
fn two_vertices_are_orange() {
    let o = tricolor(&["tricolor"], "1 0\n");
    assert_eq!(stdout(&o), "OO\t0 2 0 1 1 0\n");
}

#[test]
fn sample_single_vertex() {
    let o = tricolor(&["sample", "--family", "poisson:1", "--n", "1", "--count", "1", "--seed", "7"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn sample_is_reproducible_and_pipes_into_tricolor() {
    let args = ["sample", "--family", "geometric:0.5", "--n", "30", "--count", "5", "--seed", "3"];
    let a = stdout(&tricolor(&args, ""));
    assert_eq!(a, stdout(&tricolor(&args, "")));
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        assert_eq!(line.split(' ').count(), 30);
    }
    let o = tricolor(&["tricolor"], &a);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn limits_geometric() {
    let o = tricolor(&["limits", "--family", "geometric:0.5"], "");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["q"].as_f64().unwrap() - 0.618_033_988_7).abs() < 1e-10);
    assert!((v["p_red"].as_f64().unwrap() - 0.447_213_595_5).abs() < 1e-10);
    assert_eq!(v["regime"], 1);
    for key in ["q_tilde", "p_green", "p_orange", "lim_I", "lim_M", "lim_N"] {
        assert!(v[key].is_number(), "{key}");
    }
}

#[test]
fn limits_poisson() {
    let o = tricolor(&["limits", "--family", "poisson:1"], "");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let q = v["q"].as_f64().unwrap();
    assert!(((-q).exp() - q).abs() < 1e-11);
    assert!((v["p_green"].as_f64().unwrap() - (1.0 - 2.0 * q * q) / (1.0 + q)).abs() < 1e-11);
    assert!((v["p_green"].as_f64().unwrap() - 0.227_61).abs() < 5e-6);
    assert!((v["p_orange"].as_f64().unwrap() - 0.41049).abs() < 5e-6);
    assert!((v["p_red"].as_f64().unwrap() - 0.36190).abs() < 5e-6);
}

#[test]
fn experiment_csv_shape() {
    let o = tricolor(
        &["experiment", "--family", "poisson:1", "--sizes", "10,20", "--replicates", "5", "--seed", "1"],
        "",
    );
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("family,n,replicates,seed,mean_ng"));
    assert!(lines[1].starts_with("poisson:1,10,5,1,"));
    assert_eq!(lines[1].split(',').count(), lines[0].split(',').count());
}

#[test]
fn experiment_reports_infeasible_sizes() {
    let o = tricolor(&["experiment", "--family", "binary:1,1", "--sizes", "4", "--replicates", "2"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n=4"));
}

#[test]
fn oracle_check_small() {
    let o = tricolor(&["oracle-check", "--max-n", "6"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("n=6 trees=42 mismatches=0 pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(tricolor(&["limits", "--family", "poisson"], "").status.code(), Some(1));
    assert_eq!(tricolor(&["tricolor"], "2 0\n").status.code(), Some(2));
    assert_eq!(tricolor(&["--help"], "").status.code(), Some(0));
}
