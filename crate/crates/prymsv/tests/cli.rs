use std::process::{Command, Output};

fn prymsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prymsv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sv_reports_conjectured_values() {
    let o = prymsv(&["sv", "--d", "17"]);
    assert_eq!(o.status.code(), Some(0));
    let first: serde_json::Value =
        serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["c1"], "25/9");
    assert_eq!(first["c2"], "3");
    assert_eq!(first["c3"], "2/9");
    assert_eq!(first["component"], "plus");
}

#[test]
fn chi_range_has_twelve_rows() {
    let o = prymsv(&["chi", "--dmin", "8", "--dmax", "48"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("\n8,-1/6,-1/6,true\n"));
    assert!(text.contains("\n41,-16/3,-16/3,true\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        prymsv(&["verify", "modular", "--nmax", "2000"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(prymsv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(prymsv(&["sv", "--d", "16"]).status.code(), Some(2));
    let o = prymsv(&[
        "count", "--d", "8", "--proto", "1,0,1,0", "--slit", "0.1,0", "--radius", "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn table_override_can_fail_the_comparison() {
    let dir = std::env::temp_dir().join(format!("prymsv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    std::fs::write(&path, "D,chi_w4,chi_w2,chi_w03\n12,-5/6,-3/2,-1/2\n").unwrap();
    let o = prymsv(&[
        "chi",
        "--dmin",
        "12",
        "--dmax",
        "12",
        "--table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("12,-1/3,-1/2,false"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_identical() {
    let args = [
        "count",
        "--d",
        "8",
        "--proto",
        "1,0,1,0",
        "--slit",
        "0.11,0.073",
        "--radius",
        "12",
    ];
    assert_eq!(prymsv(&args).stdout, prymsv(&args).stdout);
}
