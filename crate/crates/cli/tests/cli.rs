use std::path::PathBuf;
use std::process::{Command, Output};

fn stelim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stelim"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stelim-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn convert_prints_size_order_and_expression() {
    let text = stdout(&stelim(&[
        "convert",
        "--canonical",
        "12312312",
        "--finals",
        "3",
    ]));
    assert!(text.contains("size: 12\n"), "{text}");
    assert!(text.contains("regex: "), "{text}");
    let text = stdout(&stelim(&[
        "convert",
        "--canonical",
        "12312312",
        "--finals",
        "3",
        "--heuristic",
        "dm",
        "--variant",
        "sea",
    ]));
    assert!(text.starts_with("size: 29\n"), "{text}");
}

#[test]
fn invalid_input_fails() {
    let out = stelim(&["convert", "--canonical", "21312312", "--finals", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    let out = stelim(&["convert", "--canonical", "12312312", "--heuristic", "nope"]);
    assert!(!out.status.success());
}

#[test]
fn samples_are_reproducible() {
    let args = [
        "sample", "--n", "6", "--k", "2", "--count", "20", "--seed", "5",
    ];
    let a = stdout(&stelim(&args));
    assert_eq!(a, stdout(&stelim(&args)));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 21);
    assert!(lines[0].starts_with("# n=6 k=2 count=20 seed=5"));
    assert!(lines[1].starts_with("6 2 "));
}

#[test]
fn bench_writes_table_and_sidecar() {
    let dir = scratch_dir("bench");
    for experiment in ["bridge", "ratio", "compare"] {
        let csv = dir.join(format!("{experiment}.csv"));
        let text = stdout(&stelim(&[
            "bench",
            experiment,
            "--n",
            "5",
            "--k",
            "2",
            "--count",
            "30",
            "--out",
            csv.to_str().unwrap(),
        ]));
        assert!(!text.is_empty());
        let table = std::fs::read_to_string(&csv).unwrap();
        assert!(table.lines().count() > 30, "{experiment}");
        let sidecar = std::fs::read_to_string(csv.with_extension("json")).unwrap();
        assert!(sidecar.contains("\"metadata\""), "{sidecar}");
        assert!(sidecar.contains("chacha8"), "{sidecar}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oracle_searches_all_orders() {
    let text = stdout(&stelim(&[
        "oracle",
        "bf",
        "--canonical",
        "1232004232",
        "--finals",
        "3,4",
    ]));
    assert!(text.contains("orders: 120\n"), "{text}");
    assert!(text.contains("best: 16 "), "{text}");
    assert!(text.contains("worst: 126 "), "{text}");
}
