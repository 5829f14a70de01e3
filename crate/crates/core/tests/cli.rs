use std::process::Command;

fn coinv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coinv")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn hilbert_text() {
    let (code, out, _) = coinv(&["hilbert", "--n", "2", "--variant", "a12", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q + u + v + 1\n");
    let (_, out, _) = coinv(&["hilbert", "--n", "1", "--variant", "b12"]);
    assert_eq!(out, "q + u + v + 1\n");
}

#[test]
fn hilbert_json_is_canonical() {
    let (code, out, _) = coinv(&["hilbert", "--n", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<(u64, u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["q"].as_u64().unwrap(), t["u"].as_u64().unwrap(), t["v"].as_u64().unwrap()))
        .collect();
    assert_eq!(keys, [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]);
}

#[test]
fn bijection_row_count() {
    let (code, out, _) = coinv(&["bijection", "--n", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "sigma,basis_element,k,l,sminv,split");
    assert_eq!(lines.len(), 25);
}

#[test]
fn frobenius_latex_n3() {
    let (code, out, _) = coinv(&["frobenius", "--n", "3", "--form", "schur", "--format", "latex"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "\\Big(q^3+(q^2+q)u+(q^2+q)v+u^2+(q+1)uv+v^2\\Big)s_{1 1 1} + \\Big((q^2+q)+(q+1)u+(q+1)v+uv\\Big)s_{2 1} + s_{3}"
    );
}

#[test]
fn frobenius_qsym_refined() {
    let (code, out, _) = coinv(&["frobenius", "--n", "3", "--form", "qsym", "--k", "1", "--l", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Q{1}: 1\nQ{2}: 1\nQ{1,2}: q + 1\n");
}

#[test]
fn hook_and_hmu() {
    let (code, out, _) = coinv(&["hook", "--n", "3", "--k", "1", "--l", "1", "--d", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("hook_h: q + 3"));
    assert!(out.contains("schur(basis): q + 1"));
    let (code, out, _) = coinv(&["hmu", "--n", "3", "--mu", "1,1,1", "--k", "1", "--l", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k=1 l=1 mu=1,1,1: q + 3\n");
}

#[test]
fn basis_filters() {
    let (code, out, _) = coinv(&["basis", "--n", "3", "--k", "1", "--l", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let (_, csv, _) = coinv(&["basis", "--n", "2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn verify_passes() {
    let (code, out, _) = coinv(&["verify", "--n", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.ends_with("PASS")));
}

#[test]
fn oracle_reports() {
    let (code, out, _) = coinv(&["oracle", "--n", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], true);
    let piece = v["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["degree"] == serde_json::json!([0, 1, 1]))
        .unwrap();
    assert_eq!(piece["ambient"], 4);
    assert_eq!(piece["quotient"], 0);
}

#[test]
fn output_is_stable_across_worker_counts() {
    let a = coinv(&["--jobs", "1", "oracle", "--n", "3", "--format", "json"]);
    let b = coinv(&["--jobs", "4", "oracle", "--n", "3", "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        vec!["hilbert", "--n", "0"],
        vec!["hilbert", "--n", "2", "--variant", "c12"],
        vec!["hmu", "--n", "3", "--mu", "2,2"],
        vec!["hook", "--n", "3", "--d", "3"],
        vec!["oracle", "--n", "4"],
        vec!["frobenius", "--n", "3", "--k", "1"],
        vec!["bijection", "--n", "2", "--format", "latex"],
        vec!["nonsense"],
    ] {
        let (code, out, err) = coinv(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.contains("Usage: coinv"), "{args:?}: {err}");
    }
}
