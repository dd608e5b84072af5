//! End-to-end CLI behavior: exit codes, report shapes, file handling.

use curvlab_cli::run;
use std::io::Write;

const METRIC: &str = "\
dim 4
coords x1 x2 x3 x4
g 1 1 : 1
g 2 2 : x1
g 3 3 : x4
g 4 4 : x3
";

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("curvlab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn run_cmd(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["curvlab".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut buf = Vec::new();
    let code = run(argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn compute_riemann_json_contains_the_reference_component() {
    let spec = write_temp("m1.spec", METRIC);
    let (code, out) = run_cmd(&["compute", spec.to_str().unwrap(), "--tensor", "riemann", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"R[1,2,1,2]\": \"1/(4*x1)\""), "got: {out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identically_zero"], false);
    assert_eq!(v["command"], "compute");
}

#[test]
fn compute_zero_tensor_flags_identically_zero() {
    let flat = write_temp(
        "flat.spec",
        "dim 2\ncoords x1 x2\ng 1 1 : 1\ng 2 2 : 1\n",
    );
    let (code, out) = run_cmd(&["compute", flat.to_str().unwrap(), "--tensor", "riemann", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identically_zero"], true);
    assert!(v["tensors"].as_object().unwrap().is_empty());
}

#[test]
fn compute_rejects_singular_metric_with_exit_2() {
    let bad = write_temp("sing.spec", "dim 2\ncoords x1 x2\ng 1 1 : 1\n");
    let (code, out) = run_cmd(&["compute", bad.to_str().unwrap(), "--tensor", "riemann"]);
    assert_eq!(code, 2);
    assert!(out.contains("singular"));
}

#[test]
fn verify_zero_forms_on_curved_metric_exits_1_with_witness() {
    let spec = write_temp("m2.spec", METRIC);
    let forms = write_temp("zero.forms", "# empty family\n");
    let (code, out) = run_cmd(&[
        "verify",
        spec.to_str().unwrap(),
        "--forms",
        forms.to_str().unwrap(),
        "--pattern",
        "reduced-9",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("residual[1,2,1,2;1] = -1/(2*x1^2)"), "got: {out}");
}

#[test]
fn verify_solved_forms_exits_0() {
    // flat metric: any family with a zero G-part satisfies the equation
    let flat = write_temp(
        "flat4.spec",
        "dim 4\ncoords x1 x2 x3 x4\ng 1 1 : 1\ng 2 2 : 1\ng 3 3 : 1\ng 4 4 : 1\n",
    );
    let forms = write_temp(
        "some.forms",
        "form A 1 : x1\nform B 2 : 1/x2\nform alpha 3 : x3^2\n",
    );
    let (code, out) = run_cmd(&[
        "verify",
        flat.to_str().unwrap(),
        "--forms",
        forms.to_str().unwrap(),
        "--pattern",
        "reduced-9",
    ]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("holds"));
}

#[test]
fn verify_full_fifteen_alphabet() {
    let flat = write_temp(
        "flat4c.spec",
        "dim 4\ncoords x1 x2 x3 x4\ng 1 1 : 1\ng 2 2 : 1\ng 3 3 : 1\ng 4 4 : 1\n",
    );
    // independent barred forms are accepted under full-15; with R = H = 0
    // and the G-family absent the equation still holds
    let forms = write_temp(
        "full.forms",
        "form A 1 : x1\nform Bbar 2 : 1/x2\nform betabar 3 : x3\nform gammabar 1 : 5\n",
    );
    let (code, out) = run_cmd(&[
        "verify",
        flat.to_str().unwrap(),
        "--forms",
        forms.to_str().unwrap(),
        "--pattern",
        "full-15",
    ]);
    assert_eq!(code, 0, "output: {out}");
    // the reduced alphabet must reject barred names
    let (code2, out2) = run_cmd(&[
        "verify",
        flat.to_str().unwrap(),
        "--forms",
        forms.to_str().unwrap(),
        "--pattern",
        "reduced-9",
    ]);
    assert_eq!(code2, 2);
    assert!(out2.contains("unknown form name"));
}

#[test]
fn solve_recurrent_no_solution_with_certificate() {
    let spec = write_temp("m3.spec", METRIC);
    let (code, out) = run_cmd(&["solve", spec.to_str().unwrap(), "--pattern", "recurrent"]);
    assert_eq!(code, 1);
    assert!(out.contains("no-solution"));
    assert!(out.contains("evaluates to"));
}

#[test]
fn solve_reduced_nine_succeeds_with_point_mode_too() {
    let spec = write_temp("m4.spec", METRIC);
    let (code, out) = run_cmd(&["solve", spec.to_str().unwrap(), "--pattern", "reduced-9"]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("proven-zero"));
    assert!(out.contains("nullspace-dimension: 8"));
    let (code2, out2) = run_cmd(&[
        "solve",
        spec.to_str().unwrap(),
        "--pattern",
        "reduced-9",
        "--at-point",
        "x1=1,x2=1,x3=1,x4=1",
    ]);
    assert_eq!(code2, 0, "output: {out2}");
}

#[test]
fn check_identities_pass_on_reference_metric() {
    let spec = write_temp("m5.spec", METRIC);
    let (code, out) = run_cmd(&["check-identities", spec.to_str().unwrap()]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("second bianchi: holds"));
    assert!(out.contains("weyl trace-free: holds"));
}

#[test]
fn oracle_agrees_seeded() {
    let spec = write_temp("m6.spec", METRIC);
    let (code, out) = run_cmd(&["oracle", spec.to_str().unwrap(), "--points", "2", "--seed", "11"]);
    assert_eq!(code, 0, "output: {out}");
    assert!(out.contains("agrees"));
}

#[test]
fn classify_flat_reports_symmetric_class() {
    let flat = write_temp(
        "flat4b.spec",
        "dim 4\ncoords x1 x2 x3 x4\ng 1 1 : 1\ng 2 2 : 1\ng 3 3 : 1\ng 4 4 : 1\n",
    );
    let (code, out) = run_cmd(&["classify", flat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("class 01 (i) symmetric space: holds"), "got: {out}");
    assert!(out.contains("flag locally-symmetric: true"));
    assert!(out.contains("flag constant-curvature: c = 0"));
}

#[test]
fn paper_example_reports_the_two_known_mismatches_and_exits_1() {
    let (code, out) = run_cmd(&["paper-example"]);
    assert_eq!(code, 1);
    assert!(out.contains("table summary: 25/27 embedded entries reproduced"), "got: {out}");
    assert!(out.contains("gradR[3,4,3,4;3]: MISMATCH"));
    assert!(out.contains("R[1,2,1,2]: matches (1/(4*x1))"));
}

#[test]
fn usage_errors_exit_2() {
    let (code, _) = run_cmd(&["compute"]);
    assert_eq!(code, 2);
    let (code2, _) = run_cmd(&["not-a-command"]);
    assert_eq!(code2, 2);
    let spec = write_temp("m7.spec", METRIC);
    let (code3, out3) = run_cmd(&["solve", spec.to_str().unwrap(), "--pattern", "xv"]);
    assert_eq!(code3, 2, "xv has no defining condition: {out3}");
}

#[test]
fn json_output_is_deterministic() {
    let spec = write_temp("m8.spec", METRIC);
    let (_, a) = run_cmd(&["compute", spec.to_str().unwrap(), "--tensor", "ricci", "--format", "json"]);
    let (_, b) = run_cmd(&["compute", spec.to_str().unwrap(), "--tensor", "ricci", "--format", "json"]);
    assert_eq!(a, b);
}
