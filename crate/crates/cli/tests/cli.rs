use std::process::{Command, Output};

fn kicfb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kicfb"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn det_rate_example() {
    let o = kicfb(&["det-rate", "--n", "5", "--m", "2", "--p2", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7/2 = 3.5\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn det_sim_example() {
    let o = kicfb(&[
        "det-sim", "--n", "7", "--m", "4", "--p2", "1", "--k", "3", "--blocks", "100", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "100/100 blocks decoded, rate 9/2\n");
}

#[test]
fn det_sim_odd_users_strong_regime() {
    let o = kicfb(&[
        "det-sim", "--n", "2", "--m", "6", "--p2", "1", "--k", "3", "--blocks", "100",
    ]);
    assert_eq!(stdout(&o), "100/100 blocks decoded, rate 5/2\n");
}

#[test]
fn gdof_at_unit_alpha() {
    let o = kicfb(&["gdof", "--alpha", "1", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("GDoF not well defined at alpha=1"));
    assert!(o.stdout.is_empty());
    let o = kicfb(&["gdof", "--alpha", "0.5", "--beta", "0"]);
    assert_eq!(stdout(&o), "0.5\n");
}

#[test]
fn exit_codes() {
    let base = [
        "gauss-rate",
        "--snr-db",
        "40",
        "--inr-db",
        "10",
        "--cfb",
        "1",
        "--k",
        "3",
    ];
    let with = |extra: &[&str]| kicfb(&[&base[..], extra].concat());
    assert_eq!(with(&[]).status.code(), Some(0));
    assert_eq!(with(&["--mu", "0.1,0.1"]).status.code(), Some(1));
    assert_eq!(with(&["--mu", "0.1,0.1,0.1,0.1", "--optimize"]).status.code(), Some(2));
    assert_eq!(kicfb(&["det-rate", "--n", "5"]).status.code(), Some(2));
    assert_eq!(
        kicfb(&[
            "gauss-sweep",
            "--alpha",
            "0.25",
            "--k",
            "3",
            "--cfb-list",
            "-1",
            "--snr-db-range",
            "10:20:2"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = kicfb(&[
        "gauss-rate",
        "--snr-db",
        "40",
        "--inr-db",
        "30",
        "--cfb",
        "1",
        "--k",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn refined_and_optimized_never_lose() {
    let base = [
        "gauss-rate",
        "--snr-db",
        "50",
        "--inr-db",
        "25",
        "--cfb",
        "2",
        "--k",
        "3",
        "--json",
    ];
    let r_sym = |extra: &[&str]| {
        let o = kicfb(&[&base[..], extra].concat());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["r_sym"].as_f64().unwrap()
    };
    let plain = r_sym(&[]);
    assert!(r_sym(&["--refined"]) >= plain);
    assert!(r_sym(&["--optimize"]) >= plain - 1e-12);
}

#[test]
fn sweeps_are_reproducible() {
    let args = [
        "gauss-sweep",
        "--alpha",
        "2.5",
        "--k",
        "3",
        "--cfb-list",
        "0,1,inf",
        "--snr-db-range",
        "10:60:6",
    ];
    let a = kicfb(&args);
    let b = kicfb(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("snr_db,cfb,rate_bits,ub_bits,gap_bits\n"));
    assert_eq!(stdout(&a).lines().count(), 1 + 6 * 3);
}

#[test]
fn out_flag_keeps_stdout_clean() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("det.csv");
    let o = kicfb(&[
        "det-sweep",
        "--beta-list",
        "0,0.1,inf",
        "--k",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("alpha_num,alpha_den,beta,rate_norm,rate_norm_frac\n"));
    assert!(text.contains("\n1,2,inf,0.75,3/4\n"));
}

#[test]
fn gap_audit_summary_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.csv");
    let o = kicfb(&[
        "gap-audit",
        "--k-list",
        "2,3",
        "--cfb-list",
        "0,1,inf",
        "--snr-db-range",
        "10:60:6",
        "--alpha-list",
        "0.25,2.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["points"], 2 * 6 * 2 * 3);
    assert_eq!(summary["failures_regime"], 0);
    assert_eq!(summary["failures_L"], 0);
    let rows = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rows.lines().count(), 1 + 72);
    assert_eq!(
        kicfb(&[
            "gap-audit",
            "--k-list",
            "2",
            "--cfb-list",
            "0",
            "--snr-db-range",
            "10:20:2"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn json_records() {
    let o = kicfb(&["det-rate", "--n", "7", "--m", "4", "--p2", "1", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rate"], "9/2");
    let o = kicfb(&["gdof", "--alpha", "2", "--beta", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gdof"], 1.0);
}
