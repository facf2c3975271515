use std::process::{Command, Output};

use tubedist::bounds::R_MIN;
use tubedist::cli::cmd_verify;

fn tubedist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubedist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// CSV body as rows of `column -> value`.
fn records(o: &Output) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            headers
                .iter()
                .zip(rec.unwrap().iter())
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect()
        })
        .collect()
}

fn num(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap()
}

#[test]
fn radius_example_pi() {
    let o = tubedist(&[
        "radius", "--alpha", "6.2832", "--lambda", "0.1", "--tau", "3.1416", "--eps", "0.201",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("2pi"));
    let rows = records(&o);
    assert!((num(&rows[0], "radius") - 0.1001).abs() < 5e-4);
    assert_eq!(rows[0]["power"], "2");
    assert_eq!(rows[0]["alpha"], "6.28318530718");
}

#[test]
fn radius_empty_thin_part() {
    let o = tubedist(&[
        "radius", "--lambda", "0.1", "--tau", "3.1416", "--eps", "0.05",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("empty thin part"));
    assert_eq!(records(&o)[0]["radius"], "-inf");
}

#[test]
fn radius_oracle_residual() {
    let o = tubedist(&[
        "radius", "--oracle", "--alpha", "2.5", "--lambda", "0.03", "--tau", "-1.2", "--eps",
        "0.27",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(num(&records(&o)[0], "residual") < 1e-6);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["radius", "--lambda", "-1", "--tau", "0", "--eps", "0.1"][..],
        &[
            "radius", "--alpha", "7", "--lambda", "0", "--tau", "0", "--eps", "0.1",
        ],
        &["radius", "--lambda", "0", "--tau", "0", "--eps", "0.1"],
        &[
            "distance", "--lambda", "0.1", "--tau", "0", "--delta", "0.05", "--eps", "0.2",
        ],
        &[
            "distance", "--lambda", "0.01", "--tau", "0", "--delta", "0.2", "--eps", "0.1",
        ],
        &["region-map", "--eps", "0.2", "--lambda-steps", "1"],
        &[
            "surface",
            "--delta",
            "0.05",
            "--eps",
            "0.2",
            "--lambda-max",
            "0.1",
        ],
        &["sharpness", "--delta", "0.01", "--eps", "0.2"],
        &["cusp", "--delta", "0.1", "--eps", "0.5"],
        &["radius", "--lambda", "0.1"],
    ] {
        let o = tubedist(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn distance_certificate_and_override() {
    let o = tubedist(&[
        "--format", "json", "distance", "--lambda", "0.05", "--tau", "3.14159", "--delta", "0.05",
        "--eps", "0.2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lower_ok"], true);
    assert_eq!(v["upper_ok"], true);
    let actual = v["actual"].as_f64().unwrap();
    assert!(actual > v["lower"].as_f64().unwrap() && actual < v["upper"].as_f64().unwrap());

    let o = tubedist(&[
        "distance",
        "--lambda",
        "0.01",
        "--tau",
        "0",
        "--delta",
        "0.05",
        "--eps",
        "0.4",
        "--allow-out-of-hypothesis",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o)[0]["certified"], "false");
}

#[test]
fn region_map_anchor_cells() {
    let base = [
        "region-map",
        "--lambda-min",
        "0.1",
        "--lambda-max",
        "0.3",
        "--lambda-steps",
        "3",
        "--tau-min",
        "0",
        "--tau-max",
        "3.141592653589793",
        "--tau-steps",
        "2",
    ];
    let power_at = |eps: &str| {
        let mut args = base.to_vec();
        args.extend(["--eps", eps]);
        let o = tubedist(&args);
        assert_eq!(o.status.code(), Some(0));
        records(&o)
    };
    let rows = power_at("0.2");
    assert_eq!(rows[1]["power"], "1");
    assert_eq!(rows[5]["power"], "0");
    let rows = power_at("0.201");
    assert_eq!(rows[1]["power"], "2");
    assert_eq!(rows[4]["power"], "0");
}

#[test]
fn surface_sweep_and_single_cell() {
    let o = tubedist(&["surface", "--delta", "0.05", "--eps", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = records(&o);
    assert_eq!(rows.len(), 300 * 301);
    let d: Vec<f64> = rows.iter().map(|r| num(r, "distance")).collect();
    let max = d.iter().cloned().fold(f64::MIN, f64::max);
    let min = d.iter().cloned().fold(f64::MAX, f64::min);
    assert!((max - 2.065).abs() < 1e-3 && (min - 0.117).abs() < 5e-3);
    assert!(d.iter().all(|&x| x >= 0.075 - 1e-9));
    assert!(stderr(&o).contains("min=0.117"));

    let o = tubedist(&[
        "surface",
        "--delta",
        "0.05",
        "--eps",
        "0.2",
        "--lambda-min",
        "0.05",
        "--lambda-steps",
        "1",
        "--tau-max",
        "0",
        "--tau-steps",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(records(&o)[0]["distance"].starts_with("2.0650"));
}

#[test]
fn surface_json_embeds_summary() {
    let o = tubedist(&[
        "--format",
        "json",
        "surface",
        "--delta",
        "0.05",
        "--eps",
        "0.2",
        "--lambda-steps",
        "20",
        "--tau-steps",
        "21",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 420);
    assert!(v["summary"]["max"].as_f64().unwrap() > 2.0);
}

#[test]
fn verify_is_thread_independent() {
    let dir = std::env::temp_dir().join(format!("tubedist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for (threads, format) in [("1", "csv"), ("4", "csv"), ("1", "json"), ("3", "json")] {
        let path = dir.join(format!("v{threads}.{format}"));
        let o = tubedist(&[
            "--seed",
            "42",
            "--threads",
            threads,
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
            "verify",
            "--samples",
            "2000",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[2], outputs[3]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_campaigns() {
    let o = tubedist(&["verify", "--samples", "10000", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("violations=0"));
    let o = tubedist(&["verify", "--samples", "1000", "--eps-max", "1.475"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = tubedist(&["verify", "--samples", "50", "--self-test"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_rows_recheck_from_inputs() {
    let (rows, summary) = cmd_verify(9, 3000, 0.3, false).unwrap();
    assert_eq!(summary.violations, 0);
    for row in &rows {
        assert_eq!(row.recheck(R_MIN), (row.lower_ok, row.upper_ok));
    }
}

#[test]
fn sharpness_and_cusp() {
    let o = tubedist(&["sharpness", "--delta", "0.01", "--eps", "0.29"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert_eq!(r["n"], "10");
    assert!(num(r, "gap_to_lower") < 2.2);

    let o = tubedist(&["cusp", "--delta", "0.05", "--eps", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&o)[0];
    assert!((num(r, "distance") - 1.387_856).abs() < 1e-6);
    assert_eq!(r["within"], "true");

    let o = tubedist(&["cusp", "--delta", "0.2", "--eps", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(records(&o)[0]["distance"], "0");
}
