use std::path::PathBuf;
use std::process::Command;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kripke")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kripke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn generated(family: &str, params: &str, file: &str) -> String {
    let path = scratch(file);
    let p = path.to_str().unwrap().to_string();
    let (code, _, err) = bin(&["gen", "--family", family, "--params", params, "--out", &p]);
    assert_eq!(code, 0, "{err}");
    p
}

#[test]
fn d1_validates_five_two() {
    let d1 = generated("Dj", "1", "d1.json");
    let (code, out, _) = bin(&["valid", "-F", &d1, "-f", "<d><d>p0 -> [d]<d>p0"]);
    assert_eq!((code, out.trim()), (0, "VALID"));
    let (code, out, _) = bin(&["valid", "-F", &d1, "-f", "[d](<d>true & ~<d><d>true -> p0) | [d](<d>true & ~<d><d>true -> ~p0)"]);
    assert_eq!((code, out.trim()), (1, "INVALID world=2 p0={1prime}"));
}

#[test]
fn rake_fails_u2_with_three_teeth() {
    let rake = generated("LawnRake", "3", "rake3.json");
    let (code, out, _) = bin(&["corr", "-F", &rake, "--cond", "un", "--n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "FAILS x=a y0=x0 y1=x1 y2=x2");
    let (code, out, _) = bin(&["corr", "-F", &rake, "--cond", "un", "--n", "3"]);
    assert_eq!((code, out.trim()), (0, "HOLDS"));
    let (code, out, _) = bin(&["width", "-F", &rake, "-m", "d", "--set", "x0,x1,x2", "--achronal"]);
    assert_eq!((code, out.trim()), (0, "3"));
}

#[test]
fn parse_right_associates() {
    let (code, out, _) = bin(&["parse", "p0 -> p1 -> p2"]);
    assert_eq!((code, out.trim()), (0, "p0 -> p1 -> p2"));
    let (_, a, _) = bin(&["parse", "p0 -> (p1 -> p2)"]);
    assert_eq!(a, out);
}

#[test]
fn model_check_and_errors() {
    let model = scratch("m.json");
    std::fs::write(
        &model,
        r#"{"modalities":["d"],"worlds":["a","b"],"relations":{"d":[["a","b"]]},"valuation":{"p0":["b"]}}"#,
    )
    .unwrap();
    let m = model.to_str().unwrap();
    let (code, out, err) = bin(&["check", "-m", m, "-f", "<d>p0", "-w", "a"]);
    assert_eq!((code, out.trim()), (0, "TRUE"), "{err}");
    let (code, out, _) = bin(&["check", "-m", m, "-f", "<d>p0"]);
    assert_eq!((code, out.trim()), (1, "{a}"));
    let (code, _, err) = bin(&["check", "-m", m, "-f", "<d>p0", "-w", "zz"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("E_PARAM: "));
    let (code, _, err) = bin(&["valid", "-F", "/no/such/file.json", "-f", "p0"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("E_IO: "));
}

#[test]
fn budget_errors_are_coded() {
    let rake = generated("LawnRake", "4", "rake4.json");
    let (code, _, err) = bin(&["valid", "-F", &rake, "-f", "p0 & p1 & p2 -> <d>p0", "--budget", "10"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("E_BUDGET: "), "{err}");
}

#[test]
fn duality_subcommands() {
    let d0 = generated("Dj", "0", "d0.json");
    let (code, out, _) = bin(&["dual", "-F", &d0, "roundtrip"]);
    assert_eq!((code, out.trim()), (0, "ISOMORPHIC"));
    let (code, algebra, _) = bin(&["dual", "-F", &d0, "complex"]);
    assert_eq!(code, 0);
    let a = scratch("a.json");
    std::fs::write(&a, algebra).unwrap();
    let a = a.to_str().unwrap();
    let (code, out, _) = bin(&["dual", "-A", a, "eq", "<d><d>v0 + <d>v0 = <d>v0"]);
    assert_eq!((code, out.trim()), (0, "HOLDS"));
    let (code, out, _) = bin(&["dual", "-A", a, "eq", "<d>v0 = 0"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAILS v0="), "{out}");
    let (code, frame, _) = bin(&["dual", "-A", a, "frame"]);
    assert_eq!(code, 0);
    assert!(frame.contains("\"worlds\""));
}

#[test]
fn generated_formulas_print() {
    let (code, out, _) = bin(&["gen", "--formula", "H"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "~(p0 & [d](p0 -> <d>(~p0 & p1 & <d>(~p0 & ~p1 & <d>p0))))");
    let (code, out, _) = bin(&["gen", "--formula", "Uset", "--params", "1", "--sig", "d,e"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn reproduce_exits_zero_and_is_deterministic() {
    let (code, a, _) = bin(&["reproduce"]);
    assert_eq!(code, 0);
    assert!(a.starts_with("claim_id\treference\texpected\tcomputed\tstatus\n"));
    let (_, b, _) = bin(&["reproduce"]);
    assert_eq!(a, b);
    let (code, json, _) = bin(&["reproduce", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), a.lines().count() - 1);
}

#[test]
fn tiny_budget_fails_ledger() {
    let (code, out, _) = bin(&["reproduce", "--budget", "16"]);
    assert_eq!(code, 1);
    assert!(out.contains("ERROR E_BUDGET"));
}
