use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn cuspmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `key=value` fields of a tuple report.
fn field(report: &str, key: &str) -> String {
    report
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {report}"))
        .to_string()
}

fn num(report: &str, key: &str) -> f64 {
    field(report, key).parse().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn tuple_of_example_2_6() {
    let o = cuspmap(&["tuple", "--domain", "example_2_6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert_eq!(field(&s, "N"), "1");
    assert!((num(&s, "a") - 1.0).abs() < 1e-12);
    assert!((num(&s, "c_0") + PI).abs() < 1e-12);
    assert!((num(&s, "σ") - PI).abs() < 1e-12);
    assert!((num(&s, "b_0") - 1.0).abs() < 1e-12 && (num(&s, "b_1") - 1.0).abs() < 1e-12);
    assert_eq!(field(&s, "small_perturbation"), "false");
}

#[test]
fn tuple_of_tangent_circles() {
    let s = stdout(&cuspmap(&["tuple", "--domain", "tangent_circles:0.5"]));
    assert!((num(&s, "c_0") + PI).abs() < 1e-12);
    assert!(num(&s, "σ").abs() < 1e-12);
}

#[test]
fn tuple_of_a_cubic_angle_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.json");
    std::fs::write(
        &path,
        r#"{"kind": "angle_function", "angle": {"coeffs": [0, 0, 0, 2]}, "radius": 0.4}"#,
    )
    .unwrap();
    let o = cuspmap(&["tuple", "--domain", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert_eq!(field(&s, "N"), "3");
    assert!((num(&s, "c_0") + PI / 6.0).abs() < 1e-12);
    assert_eq!(num(&s, "c_1"), 0.0);
    assert_eq!(num(&s, "σ"), 0.0);
    assert_eq!(field(&s, "small_perturbation"), "true");
}

#[test]
fn malformed_specs_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\"kind\": \"angle_function\",\n \"angle\": {\"coeffs\": [0, 1]},\n \"radios\": 0.4}",
    )
    .unwrap();
    let o = cuspmap(&["tuple", "--domain", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("radios") && e.contains("line 3"), "{e}");

    assert_eq!(
        cuspmap(&["tuple", "--domain", "no_such_preset"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cuspmap(&["eval", "--domain", "example_2_6", "--range", "0.1:0.9:3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cuspmap(&["eval", "--domain", "example_2_6", "--ray", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cuspmap(&["verify", "--domain", "example_2_6", "--oracle", "catalog"])
            .status
            .code(),
        Some(2)
    );
    let o = cuspmap(&[
        "verify",
        "--domain",
        "example_2_6",
        "--oracle",
        "zipper",
        "--nodes",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        cuspmap(&["verify", "--domain", "example_2_6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cuspmap(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    for (what, k) in [
        ("F", "0"),
        ("Fk", "2"),
        ("G", "0"),
        ("Gk", "3"),
        ("logF", "0"),
    ] {
        let out = dir.path().join(format!("{what}.csv"));
        let o = cuspmap(&[
            "eval",
            "--domain",
            "example_2_6",
            "--what",
            what,
            "--k",
            k,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{what}: {}", stderr(&o));
        let (header, rows) = read_csv(&out);
        assert_eq!(
            header,
            [
                "t",
                "re_z",
                "im_z",
                "re_value",
                "im_value",
                "log_abs_value",
                "arg_value",
                "flag"
            ]
        );
        assert_eq!(rows.len(), if what.starts_with('G') { 4 } else { 10 });
        for row in &rows {
            assert_eq!(row[7], "ok");
            for cell in &row[..7] {
                // 17 significant digits
                let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
                assert_eq!(mantissa.len(), 18, "{cell}");
            }
        }
    }
}

#[test]
fn eval_matches_library_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "eval",
            "--domain",
            "tangent_circles:0.5",
            "--range",
            "0.05:0.25:7",
            "--out",
        ]
        .into_iter()
        .map(String::from)
        .chain([p.to_str().unwrap().to_string()])
        .collect::<Vec<_>>()
    };
    for p in [&a, &b] {
        let args = args(p);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert!(cuspmap(&refs).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (_, rows) = read_csv(&a);
    for row in rows {
        let v: Vec<f64> = row[..7].iter().map(|c| c.parse().unwrap()).collect();
        // exp(-π/z) is the exact map of this domain
        let z = num_complex::Complex64::new(v[1], v[2]);
        let exact = (-PI / z).exp();
        assert!((num_complex::Complex64::new(v[3], v[4]) / exact - 1.0).norm() < 1e-12);
        assert!((v[5] - exact.norm().ln()).abs() < 1e-12);
    }
}

fn verify(args: &[&str]) -> (Option<i32>, String, Vec<Vec<String>>) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let mut all = vec!["verify"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = cuspmap(&all);
    let (header, rows) = read_csv(&out);
    assert_eq!(
        header,
        [
            "t",
            "asymptotic_value",
            "oracle_value",
            "ratio_abs",
            "ratio_arg",
            "drift",
            "flag"
        ]
    );
    (o.status.code(), stdout(&o), rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn verify_h_quadrature_on_example_2_6() {
    let (code, summary, rows) = verify(&["--domain", "example_2_6", "--oracle", "h-quadrature"]);
    assert_eq!(code, Some(0), "{summary}");
    assert!(summary.starts_with("PASS"));
    let drift = column(&rows, 5);
    let spread = drift.iter().cloned().fold(f64::MIN, f64::max)
        - drift.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread < 1e-8, "{spread}");
}

#[test]
fn verify_catalog_on_tangent_circles() {
    let (code, summary, rows) = verify(&["--domain", "tangent_circles:0.5", "--oracle", "catalog"]);
    assert_eq!(code, Some(0), "{summary}");
    assert!(column(&rows, 3).iter().all(|r| (r - 1.0).abs() < 1e-12));
    assert!(column(&rows, 4).iter().all(|a| a.abs() < 1e-12));
}

#[test]
fn verify_finite_differences_at_0_2() {
    let (code, summary, rows) = verify(&[
        "--domain",
        "example_2_6",
        "--oracle",
        "finite-diff",
        "--k",
        "3",
        "--range",
        "0.2:0.2:1",
    ]);
    assert_eq!(code, Some(0), "{summary}");
    assert_eq!(rows.len(), 1);
    assert!((column(&rows, 3)[0] - 1.0).abs() < 1e-6);
}

#[test]
fn verify_reports_tolerance_failures() {
    // the catalog identity holds to rounding, not to zero
    let (code, summary, _) = verify(&[
        "--domain",
        "tangent_circles:0.5",
        "--oracle",
        "catalog",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(code, Some(1));
    assert!(summary.starts_with("FAIL"));
}

#[test]
fn verify_zipper_on_tangent_circles() {
    let (code, summary, rows) = verify(&[
        "--domain",
        "tangent_circles:0.5",
        "--oracle",
        "zipper",
        "--nodes",
        "1024",
        "--range",
        "0.1:0.3:4",
    ]);
    assert_eq!(code, Some(0), "{summary}");
    assert_eq!(rows.len(), 4);
}

#[test]
fn series_operations() {
    let o = cuspmap(&[
        "series",
        "inverse",
        r#"{"min_exponent": 1, "coeffs": [1, -1], "trunc": 10}"#,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lit: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(lit["min_exponent"], -1);
    assert!(lit["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_f64() == Some(1.0)));

    let o = cuspmap(&["series", "revert", r#"{"coeffs": [0, 1, 1], "trunc": 5}"#]);
    let lit: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c: Vec<f64> = lit["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect();
    assert_eq!(c, [0.0, 1.0, -1.0, 2.0, -5.0]);

    let f = r#"{"coeffs": [0.5, 2, 0, -3], "trunc": 6}"#;
    let o = cuspmap(&["series", "compose", f, r#"{"coeffs": [0, 1]}"#]);
    let lit: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c: Vec<f64> = lit["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect();
    assert_eq!(c, [0.5, 2.0, 0.0, -3.0, 0.0, 0.0]);

    let o = cuspmap(&["series", "revert", r#"{"coeffs": [1, 1]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("revert"));
}
