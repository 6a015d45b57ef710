use std::io::Write;
use std::process::{Command, Output};

fn damerau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_damerau"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> Vec<String> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(String::from)
        .collect()
}

#[test]
fn ball_lines_are_sorted() {
    let o = damerau(&["ball", "--kind", "t-or-d", "00110"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        ["0010", "00101", "0011", "00110", "01010", "0110"]
    );
}

#[test]
fn enumerate_then_decode_every_deletion() {
    let o = damerau(&["codes", "t-or-d", "enumerate", "-n", "5", "-a", "4"]);
    assert!(o.status.success());
    let words = stdout(&o);
    assert!(!words.is_empty());
    let mut sorted = words.clone();
    sorted.sort();
    assert_eq!(words, sorted);
    for x in &words {
        for k in 0..5 {
            let y = format!("{}{}", &x[..k], &x[k + 1..]);
            let o = damerau(&["codes", "t-or-d", "decode", "-n", "5", "-a", "4", &y]);
            assert!(o.status.success());
            assert_eq!(stdout(&o), std::slice::from_ref(x));
        }
    }
}

#[test]
fn codebook_file_round_trip() {
    let o = damerau(&["codes", "t-or-d", "enumerate", "-n", "10", "-a", "7"]);
    assert!(o.status.success());
    let words = stdout(&o);
    assert!(words.len() > 5);
    let dir = std::env::temp_dir().join(format!("damerau-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("book.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    for w in &words {
        writeln!(f, "{w}").unwrap();
    }
    drop(f);
    let args = [
        "codes",
        "t-or-d",
        "contains",
        "-n",
        "10",
        "-a",
        "7",
        "--input",
        path.to_str().unwrap(),
    ];
    let o = damerau(&args);
    assert!(o.status.success());
    let got = stdout(&o);
    assert_eq!(got.len(), words.len());
    for (line, w) in got.iter().zip(&words) {
        assert_eq!(line, &format!("{w} yes"));
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn one_td_params() {
    let o = damerau(&["codes", "one-td", "params", "-n", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), ["L: 6", "p: 23"]);
}

#[test]
fn sweep_prints_the_largest_code() {
    let o = damerau(&["codes", "t-or-d", "enumerate", "-n", "10", "--sweep"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).len(), 27);
}

#[test]
fn burst_levels_from_files() {
    let dir = std::env::temp_dir().join(format!("damerau-burst-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c = dir.join("c.txt");
    std::fs::write(&c, "1\n0 2\n0 0 3\n").unwrap();
    let base = [
        "codes",
        "burst",
        "enumerate",
        "-n",
        "9",
        "--b",
        "3",
        "--scaled",
        "--odd",
        "-a",
        "5",
    ];
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--c-file", c.to_str().unwrap()]);
    assert!(damerau(&args).status.success());
    std::fs::write(&c, "1\n0 2\n").unwrap();
    assert_eq!(damerau(&args).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        damerau(&["codes", "t-or-d", "enumerate"]).status.code(),
        Some(2)
    );
    assert_eq!(
        damerau(&["ball", "--kind", "t-or-d", "0120"]).status.code(),
        Some(2)
    );
    assert_eq!(
        damerau(&["ball", "--kind", "t-or-d", "--bogus", "01"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(damerau(&["verify", "nope"]).status.code(), Some(2));
    let o = damerau(&["codes", "t-or-d", "decode", "-n", "6", "-a", "0", "111"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_output_is_deterministic() {
    let run = || damerau(&["verify", "td", "--max-n", "5", "--format", "json-lines"]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a) {
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert!(v["wall_time_ms"].is_null());
        if v["status"] == "fail" {
            assert!(v["witness"].is_object());
        }
    }
}

#[test]
fn burst_suite_exits_zero() {
    let o = damerau(&["verify", "burst", "--max-n", "8"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn redundancy_report() {
    let o = damerau(&["report", "redundancy", "--family", "t-or-d", "-n", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains(&"codeword_count: 27".to_string()));
    assert!(text.contains(&"status: pass".to_string()));
}
