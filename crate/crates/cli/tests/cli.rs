use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfact"))
        .args(args)
        .output()
        .expect("run gfact")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_cover(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const QUAD_T: &str = "kind = kummer\np = 5\nd = 2\nD = T\n";
const QUAD_CUBIC: &str = "kind = kummer\np = 5\nd = 2\nD = T^3 - 3*T^2 + 2*T\n";

#[test]
fn factor_over_f5() {
    let o = gfact(&["factor", "--q", "5", "T^2+1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(T+2)(T+3)\n");
    let o = gfact(&["factor", "--q", "5", "2*T^2+4*T+2"]);
    assert_eq!(stdout(&o), "2(T+1)^2\n");
}

#[test]
fn frobenius_classes_and_ramification() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(dir.path(), "quad.cov", QUAD_T);
    let o = gfact(&["frobenius", "--cover", &cov, "T-2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("class 1 (nontrivial)"));
    let o = gfact(&["frobenius", "--cover", &cov, "T-1"]);
    assert!(stdout(&o).starts_with("class 0 (trivial)"));
    let o = gfact(&["frobenius", "--cover", &cov, "T"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("RamifiedPrime"));
}

#[test]
fn lambda_of_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(dir.path(), "quad.cov", QUAD_T);
    let o = gfact(&["lambda", "--cover", &cov, "T^2*(T-2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1:1:1=1;1:2:2=1\n");
}

#[test]
fn wreath_means() {
    let o = gfact(&[
        "wreath-mean",
        "--group",
        "Z/2",
        "--n",
        "3",
        "--fn",
        "one_c:1",
    ]);
    assert_eq!(stdout(&o), "1/6\n");
    for method in ["classes", "closed", "brute"] {
        let o = gfact(&[
            "wreath-mean",
            "--group",
            "Z/2",
            "--n",
            "2",
            "--fn",
            "b",
            "--method",
            method,
        ]);
        assert_eq!(stdout(&o), "3/8\n", "{method}");
    }
    let o = gfact(&["wreath-mean", "--group", "S_3", "--n", "2", "--fn", "r"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn interval_mean_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(dir.path(), "quad.cov", QUAD_CUBIC);
    let args = [
        "interval-mean",
        "--cover",
        &cov,
        "--fn",
        "b",
        "--f0",
        "T^4",
        "--m",
        "2",
        "--seed",
        "7",
    ];
    let a = gfact(&args);
    let b = gfact(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let r = gfact::report::Report::parse(&text).unwrap();
    assert_eq!(r.to_text(), text);
    assert_eq!(r.get("report", "predicted_mean"), Some("35/128"));
    assert_eq!(r.get("config", "seed"), Some("7"));
    assert_eq!(r.get("cover", "cover_sha256").map(str::len), Some(64));
}

#[test]
fn census_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(dir.path(), "quad.cov", QUAD_CUBIC);
    let csv = dir.path().join("census.csv");
    let out = dir.path().join("census.txt");
    let o = gfact(&[
        "census",
        "--cover",
        &cov,
        "--f0",
        "T^4",
        "--m",
        "2",
        "--csv",
        csv.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = fs::read_to_string(csv).unwrap();
    assert!(csv.starts_with("lambda,empirical,predicted\n"));
    let r = gfact::report::Report::parse(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r.get("census", "members"), Some("125"));
}

#[test]
fn cheb_grid_rows_per_function() {
    let o = gfact(&[
        "cheb-grid",
        "--poly",
        "T^3-3T^2+2T",
        "--qs",
        "5,9,13,25",
        "--n",
        "4",
        "--m",
        "2",
        "--fn",
        "b",
        "--fn",
        "one_c:1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,function,empirical,predicted,deviation,deviation_times_sqrt_q"
    );
    for f in ["b", "one_c:1", "census_tv"] {
        let rows = lines
            .iter()
            .filter(|l| l.split(',').nth(1) == Some(f))
            .count();
        assert_eq!(rows, 4, "{f}");
    }
}

#[test]
fn zeta_norms_and_psi_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(dir.path(), "quad.cov", QUAD_CUBIC);
    let o = gfact(&["zeta", "--cover", &cov, "--n", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = gfact::report::Report::parse(&stdout(&o)).unwrap();
    assert_eq!(r.get("zeta", "ptilde"), Some("1 2 5"));
    assert_eq!(r.get("zeta", "ptilde_at_inv_q"), Some("8/5"));
    let o = gfact(&["norms-check", "--cover", &cov, "--n", "4"]);
    let r = gfact::report::Report::parse(&stdout(&o)).unwrap();
    assert_eq!(r.get("norms", "direct_agreement"), Some("true"));
    let o = gfact(&["psi-check", "--cover", &cov, "--n", "6"]);
    let r = gfact::report::Report::parse(&stdout(&o)).unwrap();
    assert_eq!(r.get("psi", "within_band_4"), Some("true"));
}

#[test]
fn wild_cover_needs_override() {
    let dir = tempfile::tempdir().unwrap();
    let cov = write_cover(
        dir.path(),
        "wild.cov",
        "kind = artin_schreier\np = 5\nD = T^3\n",
    );
    let o = gfact(&[
        "interval-mean",
        "--cover",
        &cov,
        "--fn",
        "b",
        "--f0",
        "T^4",
        "--m",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("WildAtInfinity"));
    let o = gfact(&[
        "interval-mean",
        "--cover",
        &cov,
        "--force-wild",
        "--fn",
        "b",
        "--f0",
        "T^4",
        "--m",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = gfact::report::Report::parse(&stdout(&o)).unwrap();
    assert!(r
        .get("report", "regime_flags")
        .unwrap()
        .contains("wild-at-infinity-overridden"));
}

#[test]
fn exit_codes() {
    assert_eq!(gfact(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(gfact(&["factor", "--q", "6", "T"]).status.code(), Some(2));
    assert_eq!(
        gfact(&["frobenius", "--cover", "/nonexistent/x.cov", "T"])
            .status
            .code(),
        Some(1)
    );
    let o = gfact(&[
        "wreath-mean",
        "--group",
        "S_3",
        "--n",
        "12",
        "--fn",
        "r",
        "--method",
        "brute",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("TooLarge"));
    let o = gfact(&["wreath-mean", "--group", "S_5", "--n", "2", "--fn", "r"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("InvalidGroup"));
    assert_eq!(gfact(&["--help"]).status.code(), Some(0));
}
