use std::io::Write;
use std::process::{Command, Output};

fn isow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isow")).args(args).output().expect("run isow")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .unwrap_or_else(|| panic!("no {key} in `{line}`"))
        .parse()
        .unwrap()
}

#[test]
fn classify_lists_families() {
    let o = isow(&["classify", "0.5", "-0.25"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("II\n"));
    assert!(stdout(&isow(&["classify", "1", "0"])).starts_with("I\n"));
    assert!(stdout(&isow(&["classify", "1", "-5"])).starts_with("III-bounded\n"));
}

#[test]
fn usage_errors_exit_2() {
    let o = isow(&["classify", "0", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("constant-K"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.obj");
    let o = isow(&["generate", "--spec", "case-i:1,1,plus", "--u-range", "2,1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty domain"));
    assert!(!out.exists());

    assert_eq!(isow(&["curvature", "--spec", "torus:1,2", "1", "0"]).status.code(), Some(2));
    assert_eq!(isow(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn curvature_on_the_paraboloid_family() {
    let o = isow(&["curvature", "--spec", "case-ii:2,0", "3", "1"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert_eq!(field(&line, "K"), 4.0);
    assert_eq!(field(&line, "H"), 4.0);
    assert!(field(&line, "jac").abs() < 1e-9);
}

#[test]
fn curvature_from_a_sampled_profile() {
    // g = u^3 / 3 + u: K = g' g'' / u = 2 (u^2 + 1), H = g'/u + g'' = 3u + 1/u
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "u,g").unwrap();
    for k in 0..=2000 {
        let u = 0.5 + 2.0 * k as f64 / 2000.0;
        writeln!(f, "{u:.17e},{:.17e}", u * u * u / 3.0 + u).unwrap();
    }
    drop(f);
    let spec = format!("profile-file:{}", path.display());
    let o = isow(&["curvature", "--spec", &spec, "1.2", "0.4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let line = stdout(&o);
    let u = 1.2f64;
    assert!((field(&line, "K") - 2.0 * (u * u + 1.0)).abs() < 1e-5, "{line}");
    assert!((field(&line, "H") - (3.0 * u + 1.0 / u)).abs() < 1e-5, "{line}");
}

#[test]
fn generate_reports_and_writes_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.obj");
    let o = isow(&["generate", "--spec", "case-i:1,1,plus", "--samples", "5x8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("case I\n"));
    assert!(text.contains("wrote 40 vertices, 56 triangles"));
    let obj = std::fs::read_to_string(&out).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 40);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 56);
}

#[test]
fn verify_jacobian_passes_at_default_seed() {
    let o = isow(&["verify", "jacobian", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS weingarten-jacobian"));
}

#[test]
fn verify_reports_failure_with_exit_1() {
    let o = isow(&["verify", "residual", "--tol-residual", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL ode-residual"));
}
