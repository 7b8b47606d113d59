use std::process::Command;

fn qsd(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qsd")).args(args).output().expect("binary runs")
}

#[test]
fn sweep_prints_csv() {
    let out = qsd(&["sweep", "--d", "3", "--p", "0.01,0.02", "--q-equals-p", "--samples", "2000", "--seed", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,p,q,sigma,backend,t,pl,stderr,n");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("3,0.01,0.01,"));
}

#[test]
fn sweep_is_reproducible_and_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = qsd(&[
            "sweep", "--backend", "coherent", "--d", "3", "--sigma", "0.2", "--q", "0.02", "--samples", "300",
            "--readout-samples", "3", "--seed", "11", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(a.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["config"]["backend"], "coherent");
    assert_eq!(json["results"]["rows"][0]["d"], 3);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "d = [5]\nsamples = 500\n").unwrap();
    let out = qsd(&["sweep", "--d", "3", "--p", "0.01", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("5,"));
    assert!(text.lines().nth(1).unwrap().ends_with(",500"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(qsd(&["sweep", "--p", "0.01", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qsd(&["sweep", "--backend", "coherent", "--d", "7", "--p", "0.01"]).status.code(), Some(2));
    assert_eq!(qsd(&["sweep", "--d", "3"]).status.code(), Some(2));
    assert_eq!(qsd(&["sweep", "--config", "/nonexistent.toml", "--p", "0.1"]).status.code(), Some(2));
    assert_eq!(qsd(&["bogus"]).status.code(), Some(2));
}

#[test]
fn analytic_subcommands() {
    let out = qsd(&["repcode-table", "--p", "0.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    assert!(text.lines().nth(1).unwrap().starts_with("0.1,1,I,I,I,0,0,"));

    let out = qsd(&["tvd-curve", "--sigma-min", "0.1", "--sigma-max", "0.5", "--points", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
    assert_eq!(qsd(&["tvd-curve", "--points", "1"]).status.code(), Some(2));
}

#[test]
fn threshold_and_break_even_run() {
    let out = qsd(&["threshold", "--d", "3,5", "--p", "0.01,0.06", "--q-equals-p", "--samples", "3000"]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("threshold bracket: [0.01, 0.06]"), "{stderr}");

    let out = qsd(&["break-even", "--p", "0.005", "--q", "0.02", "--samples", "500", "--readout-samples", "2", "--points", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,q,pl,stderr,green\n"));
    assert!(text.contains("t_meas,sigma,p,q,pl,stderr,green\n0.5,"));
}
