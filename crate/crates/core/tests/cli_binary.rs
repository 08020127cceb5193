use std::process::Command;

fn verlinde() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verlinde"))
}

#[test]
fn rank_on_torus() {
    let out = verlinde().args(["rank", "A1", "1", "--genus", "1"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 2);
}

#[test]
fn usage_error_exit_code() {
    let out = verlinde().args(["spectrum"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn weyl_cap_from_environment() {
    let out = verlinde().args(["spectrum", "E6", "1"]).env("VERLINDE_WEYL_CAP", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
    let ok = verlinde().args(["spectrum", "A2", "1"]).env("VERLINDE_WEYL_CAP", "10").output().unwrap();
    assert!(ok.status.success());
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["metadata"]["config"]["weyl_order_cap"], 10);
}

#[test]
fn fuse_batch() {
    let dir = std::env::temp_dir().join(format!("verlinde-batch-{}", std::process::id()));
    std::fs::write(&dir, "{\"a\": \"1\", \"b\": \"1\"}\n{\"a\": \"2\", \"b\": \"1\"}\n").unwrap();
    let out = verlinde().args(["fuse", "A1", "2", "--batch"]).arg(&dir).output().unwrap();
    std::fs::remove_file(&dir).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["product"].as_array().unwrap().len(), 2);
    assert_eq!(lines[1]["product"][0]["label"], "1");
}
