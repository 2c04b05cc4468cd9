use tricolor_core::experiment::{run_experiment, write_csv, write_json, ExperimentConfig, ExperimentRecord};

fn csv_for(threads: usize) -> String {
    let mut cfg = ExperimentConfig::new("poisson:1", vec![10, 50, 200], 64, 99).unwrap();
    cfg.threads = Some(threads);
    let out = run_experiment(&cfg).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &out.records).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn output_independent_of_thread_count() {
    let one = csv_for(1);
    assert_eq!(one, csv_for(4));
    assert_eq!(one, csv_for(3));
}

#[test]
fn fractions_sum_to_one() {
    let cfg = ExperimentConfig::new("geometric:0.5", vec![5, 40, 300], 50, 1).unwrap();
    for r in run_experiment(&cfg).unwrap().records {
        let total = r.green.mean + r.orange.mean + r.red.mean;
        assert!((total - 1.0).abs() <= 1e-12, "n={}: {total}", r.n);
        assert!((r.independence.mean + r.matching.mean - 1.0).abs() <= 1e-12);
    }
}

fn total_gap(r: &ExperimentRecord) -> (f64, f64) {
    let (g, o, red) = r.colour_gaps().unwrap();
    let se = [&r.green, &r.orange, &r.red]
        .iter()
        .map(|m| m.se(r.replicates).unwrap())
        .sum::<f64>();
    (g + o + red, se)
}

#[test]
fn gaps_shrink_with_n() {
    let cfg = ExperimentConfig::new("poisson:1", vec![100, 400, 1600], 400, 5).unwrap();
    let recs = run_experiment(&cfg).unwrap().records;
    let gaps: Vec<(f64, f64)> = recs.iter().map(total_gap).collect();
    // one inversion is tolerated when it is within half a standard error
    let mut inversions = 0;
    for w in gaps.windows(2) {
        let ((a, _), (b, se)) = (w[0], w[1]);
        if b > a {
            inversions += 1;
            assert!(b - a <= 0.5 * se, "gap grew from {a} to {b} (se {se})");
        }
    }
    assert!(inversions <= 1, "{gaps:?}");
    assert!(gaps[2].0 < gaps[0].0, "{gaps:?}");
}

#[test]
fn json_has_limits() {
    let cfg = ExperimentConfig::new("binary:1,1", vec![21], 8, 2).unwrap();
    let recs = run_experiment(&cfg).unwrap().records;
    let mut buf = Vec::new();
    write_json(&mut buf, &recs).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let row = &v[0];
    assert_eq!(row["family"], "binary:1,1");
    assert_eq!(row["n"], 21);
    let q = row["limits"]["q"].as_f64().unwrap();
    assert!((q - (2.0 - 2f64.sqrt())).abs() < 1e-10);
    assert_eq!(row["limits"]["regime"], 1);
}

#[test]
fn factorial_family_has_limits_but_no_tilt() {
    let cfg = ExperimentConfig::new("factorial:1", vec![30], 10, 2).unwrap();
    let r = &run_experiment(&cfg).unwrap().records[0];
    let l = r.limits.unwrap();
    assert_eq!(l.regime, 3);
    assert!(r.red.mean > 0.5);
}
