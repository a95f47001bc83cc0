use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const PARAMS: &str = "-0.4,0.3,0.2,0.6";

fn bsdft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsdft"))
        .args(args)
        .output()
        .expect("failed to launch bsdft")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn read_values(path: &Path, skip_header: bool) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(usize::from(skip_header))
        .map(|l| l.parse().unwrap())
        .collect()
}

#[test]
fn spectrum_dirichlet_nodes() {
    let out = bsdft(&["spectrum", "--m", "4", "--params", "0,0,0,0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("l_hat,xi,H,eigenvalue,bracket_lo,bracket_hi\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    for (l_hat, row) in rows.iter().enumerate() {
        assert_eq!(row[0], l_hat as f64);
        assert!((row[1] - PI * (l_hat as f64 + 1.0) / 6.0).abs() < 1e-13);
        assert!((row[3] - 2.0 * row[1].cos()).abs() < 1e-15);
    }
}

#[test]
fn spectrum_strictly_increasing() {
    let out = bsdft(&["spectrum", "--m", "3", "--params", "0.9,0.95,0,0"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 4);
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1]));
}

#[test]
fn malformed_params_exit_one() {
    let out = bsdft(&["spectrum", "--m", "3", "--params", "0.95,0.9,0,0"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exceeds"), "{err}");
    assert_eq!(
        code(&bsdft(&["spectrum", "--m", "3", "--params", "1,2"])),
        1
    );
    assert_eq!(code(&bsdft(&["spectrum"])), 1);
    assert_eq!(code(&bsdft(&["no-such-command"])), 1);
    assert_eq!(code(&bsdft(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    let a = bsdft(&["kernel", "--m", "5", "--seed", "7"]);
    let b = bsdft(&["kernel", "--m", "5", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = bsdft(&["kernel", "--m", "5", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn kernel_export_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("k.csv");
    let out = bsdft(&[
        "kernel",
        "--m",
        "3",
        "--params",
        PARAMS,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("0,1,2,3\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    for a in &rows {
        for b in &rows {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let expect = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
            assert!((dot - expect).abs() < 1e-12);
        }
    }
}

#[test]
fn transform_round_trip_via_files() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("f.csv");
    let mid = dir.path().join("fhat.csv");
    let back = dir.path().join("f2.csv");
    let f = [0.25, -1.5, 3.0, 0.125, 2.0, -0.75];
    let text: String = f.iter().map(|x| format!("{x}\n")).collect();
    fs::write(&input, text).unwrap();

    let common = ["--m", "5", "--params", PARAMS];
    let fwd = [
        &["transform"][..],
        &common,
        &[
            "--direction",
            "forward",
            "--in",
            input.to_str().unwrap(),
            "--out",
            mid.to_str().unwrap(),
        ],
    ]
    .concat();
    assert_eq!(code(&bsdft(&fwd)), 0);
    let inv = [
        &["transform"][..],
        &common,
        &[
            "--direction",
            "inverse",
            "--in",
            mid.to_str().unwrap(),
            "--out",
            back.to_str().unwrap(),
        ],
    ]
    .concat();
    assert_eq!(code(&bsdft(&inv)), 0);

    let got = read_values(&back, false);
    assert_eq!(got.len(), f.len());
    for (a, b) in got.iter().zip(&f) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn transform_of_first_kernel_row_is_indicator() {
    let dir = TempDir::new().unwrap();
    let kernel = bsdft(&["kernel", "--m", "4", "--params", PARAMS]);
    let row0 = csv_rows(&stdout(&kernel)).remove(0);
    let input = dir.path().join("row.csv");
    fs::write(
        &input,
        row0.iter()
            .map(|x| format!("{x:.17e}\n"))
            .collect::<String>(),
    )
    .unwrap();
    let out = bsdft(&[
        "transform",
        "--m",
        "4",
        "--params",
        PARAMS,
        "--in",
        input.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let vals: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    for (i, v) in vals.iter().enumerate() {
        let expect = if i == 0 { 1.0 } else { 0.0 };
        assert!((v - expect).abs() < 1e-12, "{vals:?}");
    }
}

#[test]
fn complex_input_mirrors_format() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("z.csv");
    fs::write(&input, "1,0.5\n0,-1\n2,0\n").unwrap();
    let out = bsdft(&[
        "transform",
        "--m",
        "2",
        "--params",
        PARAMS,
        "--in",
        input.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.split(',').count() == 2));
}

#[test]
fn transform_dimension_mismatch() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("f.csv");
    fs::write(&input, "1\n2\n3\n").unwrap();
    let out = bsdft(&[
        "transform",
        "--m",
        "5",
        "--params",
        PARAMS,
        "--in",
        input.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('6') && err.contains('3'), "{err}");

    let missing = dir.path().join("absent.csv");
    let out = bsdft(&["transform", "--m", "5", "--in", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn multivariate_transform_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("f.csv");
    let mid = dir.path().join("fhat.csv");
    let back = dir.path().join("f2.csv");
    let header = "0-0,1-0,2-0,1-1,3-0,2-1,3-1,2-2,3-2,3-3";
    let f: Vec<f64> = (0..10).map(|i| (i as f64 * 0.7).sin()).collect();
    let body: String = f.iter().map(|x| format!("{x:.17e}\n")).collect();
    fs::write(&input, format!("{header}\n{body}")).unwrap();

    let base = ["--m", "3", "--n", "2", "--params", PARAMS];
    let fwd = [
        &["transform"][..],
        &base,
        &[
            "--in",
            input.to_str().unwrap(),
            "--out",
            mid.to_str().unwrap(),
        ],
    ]
    .concat();
    assert_eq!(code(&bsdft(&fwd)), 0);
    assert!(fs::read_to_string(&mid).unwrap().starts_with(header));
    let inv = [
        &["transform"][..],
        &base,
        &[
            "--direction",
            "inverse",
            "--in",
            mid.to_str().unwrap(),
            "--out",
            back.to_str().unwrap(),
        ],
    ]
    .concat();
    assert_eq!(code(&bsdft(&inv)), 0);
    let got = read_values(&back, true);
    for (a, b) in got.iter().zip(&f) {
        assert!((a - b).abs() < 1e-9);
    }

    // One row short.
    let short: String = f[..9].iter().map(|x| format!("{x}\n")).collect();
    fs::write(&input, format!("{header}\n{short}")).unwrap();
    assert_eq!(code(&bsdft(&fwd)), 1);
    // Header in the wrong order.
    fs::write(
        &input,
        format!("1-0,0-0,2-0,1-1,3-0,2-1,3-1,2-2,3-2,3-3\n{body}"),
    )
    .unwrap();
    assert_eq!(code(&bsdft(&fwd)), 1);
}

#[test]
fn multi_kernel_header_and_cap() {
    let out = bsdft(&[
        "multi-kernel",
        "--m",
        "2",
        "--n",
        "2",
        "--params",
        PARAMS,
        "--threads",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("0-0,1-0,2-0,1-1,2-1,2-2\n"));
    assert_eq!(csv_rows(&text).len(), 6);
    let capped = bsdft(&["multi-kernel", "--m", "3", "--n", "3", "--cap", "10"]);
    assert_eq!(code(&capped), 1);
}

#[test]
fn verify_default_and_multivariate_pass() {
    let out = bsdft(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS orthogonality"));
    let out = bsdft(&["verify", "--m", "3", "--n", "2", "--params", PARAMS]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    for name in [
        "mv-orthogonality",
        "mv-plancherel-factorization",
        "mv-cauchy-binet",
        "mv-round-trip",
    ] {
        assert!(text.contains(&format!("PASS {name}")), "{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_corrupted_node_exit_three() {
    let out = bsdft(&["verify", "--m", "6", "--corrupt-xi", "1e-3"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("FAIL orthogonality"));
}

#[test]
fn classic_report() {
    let out = bsdft(&["classic", "dst-1", "--m", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let nodes: Vec<f64> = text
        .split("# nodes\n")
        .nth(1)
        .unwrap()
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(nodes.len(), 5);
    for (l_hat, xi) in nodes.iter().enumerate() {
        assert!((xi - PI * (l_hat as f64 + 1.0) / 6.0).abs() < 1e-15);
    }

    let out = bsdft(&["classic", "dct-2", "--m", "4", "--eps", "1e-2,1e-3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let errors: Vec<f64> = text
        .split("eps,error\n")
        .nth(1)
        .unwrap()
        .lines()
        .take_while(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 2);
    assert!(errors[1] < errors[0]);
    assert!(text.contains("# monotone=true"));
}

#[test]
fn classic_unknown_kind() {
    let out = bsdft(&["classic", "dct-9", "--m", "4"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("dst-8"), "{err}");
}
