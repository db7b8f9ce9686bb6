use assert_cmd::Command;
use igm_cli::corpus::default_dir;

fn igm() -> Command {
    Command::cargo_bin("igm").unwrap()
}

fn input(name: &str) -> String {
    default_dir().join(name).display().to_string()
}

fn stdout(args: &[&str]) -> String {
    let out = igm().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn expectations_set_the_exit_code() {
    igm().args(["torsion", &input("and.igm"), "--expect", "torsion-free"]).assert().code(0);
    igm().args(["torsion", &input("torsionex.igm"), "--expect", "torsion-free"]).assert().code(1);
    igm().args(["torsion", &input("torsionex.igm"), "--expect", "torsion"]).assert().code(0);
    igm().args(["maximal-order", &input("nonmax.igm"), "--expect", "maximal-order"]).assert().code(1);
    igm().args(["maximal-order", &input("and.igm"), "--expect", "maximal-order"]).assert().code(0);
}

#[test]
fn unknown_property_is_an_input_error() {
    igm().args(["torsion", &input("and.igm"), "--expect", "ybe"]).assert().code(2);
}

#[test]
fn parse_errors_are_json_on_stderr() {
    let dir = std::env::temp_dir().join(format!("igm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.igm");
    std::fs::write(&bad, "gens u1 u2\nrel u1 =\n").unwrap();
    let out = igm().args(["validate", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "syntax");
    assert_eq!(err["error"]["line"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_file_exits_2() {
    igm().args(["validate", "/nonexistent/x.igm"]).assert().code(2);
}

#[test]
fn wrong_document_kind_exits_2() {
    igm().args(["ybe", &input("and.igm")]).assert().code(2);
    igm().args(["torsion", &input("belvb.irel")]).assert().code(2);
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--report", "json", "maximal-order", &input("nonmax.igm")];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "maximal-order");
    assert_eq!(v["input"]["name"], "nonmax.igm");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn ybe_and_sigma_text() {
    let ybe = stdout(&["ybe", &input("belvb.irel"), "--expect", "ybe"]);
    assert!(ybe.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["ybe", "yes"]), "{ybe}");
    let sigma = stdout(&["sigma", &input("belvb.irel")]);
    for s in ["(23)", "(14)", "(1243)", "(1342)"] {
        assert!(sigma.contains(s), "{sigma}");
    }
}

#[test]
fn witness_text_names_the_element() {
    let out = stdout(&["witness", &input("nonmax.igm"), "--expect", "witness"]);
    assert!(out.contains("(12)"), "{out}");
    igm().args(["witness", &input("and.igm"), "--bound", "1", "--expect", "witness"]).assert().code(1);
}

#[test]
fn corpus_passes() {
    let out = stdout(&["corpus", "--report", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 22);
}
