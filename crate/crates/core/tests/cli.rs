use std::process::{Command, Output};

fn torsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsig"))
        .args(args)
        .env_remove("TORSIG_TOL")
        .output()
        .expect("run torsig")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sig_values() {
    let o = torsig(&["sig", "-p", "4", "-q", "7", "-t", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sigma=10\n"));
    let o = torsig(&["sig", "-p", "5", "-q", "12", "-t", "1/2"]);
    assert!(stdout(&o).contains("sigma=28\n"));
}

#[test]
fn sig_rejects_bad_input() {
    let o = torsig(&["sig", "-p", "4", "-q", "6", "-t", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p and q must be coprime"));
    assert_eq!(stderr(&o).lines().count(), 1);
    for t in ["0.25", "1", "0/3", "5/4", "1/0", "x"] {
        let o = torsig(&["sig", "-p", "2", "-q", "3", "-t", t]);
        assert_eq!(o.status.code(), Some(2), "t = {t}");
    }
}

#[test]
fn max_values() {
    let out = stdout(&torsig(&["max", "-p", "5", "-q", "12"]));
    for line in ["sigma=28", "M=1", "sigma_hat=30", "g4_lb=15"] {
        assert!(out.lines().any(|l| l == line), "{line} missing from\n{out}");
    }
    let out = stdout(&torsig(&["max", "-p", "4", "-q", "7"]));
    assert!(out.contains("sequence=(-1,+1)\n") && out.contains("sigma_hat=14\n"));
    let out = stdout(&torsig(&["max", "-p", "2", "-q", "9"]));
    assert!(out.contains("sequence=()\n") && out.contains("sigma_hat=8\n"));
}

#[test]
fn max_json() {
    let o = torsig(&["max", "-p", "5", "-q", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["sigma_hat"], 30);
    assert_eq!(v["sequence"], serde_json::json!([1, -1, 1, -1]));
    assert_eq!(v["profile"]["lower"][0]["distance"], 6);
}

#[test]
fn sweep_csv_sections() {
    let out = stdout(&torsig(&["sweep", "-p", "2", "-q", "3", "--format", "csv"]));
    let (intervals, points) = out.split_once("\n\n").unwrap();
    assert_eq!(intervals, "t_lo,t_hi,sigma\n0,1/6,0\n1/6,5/6,2\n5/6,1,0");
    assert_eq!(points, "t,sigma\n1/6,0\n5/6,0\n");
}

#[test]
fn sweep_plot_maximum() {
    let out = stdout(&torsig(&[
        "sweep", "-p", "4", "-q", "7", "--format", "plot",
    ]));
    let values: Vec<(f64, i64)> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(values.iter().map(|v| v.1).max(), Some(14));
    assert_eq!(values.first().unwrap().0, 0.0);
    assert_eq!(values.last().unwrap().0, 1.0);
    assert!(values.windows(2).all(|w| w[0].0 <= w[1].0));
}

#[test]
fn sweep_json_is_symmetric() {
    let o = torsig(&["sweep", "-p", "4", "-q", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sigmas: Vec<i64> = v["intervals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["sigma"].as_i64().unwrap())
        .collect();
    let mut reversed = sigmas.clone();
    reversed.reverse();
    assert_eq!(sigmas, reversed);
    let points = v["breakpoints"].as_array().unwrap();
    let n = points.len();
    for i in 0..n {
        assert_eq!(points[i]["sigma"], points[n - 1 - i]["sigma"]);
    }
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trefoil.csv");
    let o = torsig(&[
        "sweep",
        "-p",
        "2",
        "-q",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("t_lo,t_hi,sigma\n"));

    let missing = dir.path().join("no/such/dir/out.csv");
    let o = torsig(&[
        "sweep",
        "-p",
        "2",
        "-q",
        "3",
        "--output",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &[
            "verify", "--p-max", "20", "--q-max", "60", "--which", "main",
        ][..],
        &[
            "verify",
            "--which",
            "odd-shift",
            "--p-max",
            "15",
            "--q-max",
            "45",
        ],
        &[
            "verify", "--which", "oracle", "--p-max", "8", "--q-max", "15",
        ],
        &[
            "verify",
            "--which",
            "glm,even-periodicity,closed-forms,brute-max",
            "--p-max",
            "12",
            "--q-max",
            "30",
        ],
    ] {
        let o = torsig(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).ends_with("result=pass\n"));
    }
}

#[test]
fn verify_json_and_tolerance_sources() {
    let o = torsig(&[
        "verify", "--which", "oracle", "--p-max", "4", "--q-max", "7", "--format", "json", "--tol",
        "1e-9",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["tolerance"], 1e-9);

    let run_env = |env: &str, extra: &[&str]| {
        let mut args = vec![
            "verify", "--which", "glm", "--p-max", "3", "--q-max", "5", "--format", "json",
        ];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_torsig"))
            .args(&args)
            .env("TORSIG_TOL", env)
            .output()
            .unwrap()
    };
    let o = run_env("1e-6", &[]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["tolerance"], 1e-6);
    let o = run_env("1e-6", &["--tol", "1e-7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["tolerance"], 1e-7);
    assert_eq!(run_env("lots", &[]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let args = [
        "verify", "--p-max", "7", "--q-max", "12", "--format", "json",
    ];
    let base = torsig(&[&args[..], &["--jobs", "1"]].concat());
    for jobs in ["2", "8"] {
        let other = torsig(&[&args[..], &["--jobs", jobs]].concat());
        assert_eq!(base.stdout, other.stdout, "--jobs {jobs}");
    }
    assert_eq!(
        base.stdout,
        torsig(&[&args[..], &["--jobs", "1"]].concat()).stdout
    );
}

#[test]
fn table_output() {
    let out = stdout(&torsig(&["table", "--p-max", "5", "--q-max", "12"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("p,q,sigma,M,sigma_hat,g4_lb"));
    assert!(out.contains("\n5,12,28,1,30,15\n"));
    assert!(out.contains("\n4,7,14,0,14,7\n"));

    let o = torsig(&["table", "--p-max", "3", "--q-max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["p"], 2);
    assert_eq!(rows[0]["q"], 3);
}

#[test]
fn every_command_speaks_json() {
    for args in [
        &["sig", "-p", "2", "-q", "3", "-t", "1/2", "--format", "json"][..],
        &["max", "-p", "2", "-q", "3", "--format", "json"],
        &["sweep", "-p", "2", "-q", "3", "--format", "json"],
        &[
            "verify", "--which", "glm", "--p-max", "3", "--q-max", "4", "--format", "json",
        ],
        &["table", "--p-max", "3", "--q-max", "4", "--format", "json"],
    ] {
        let o = torsig(args);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["schema_version"], "1", "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
}
