// Copyright 2026 The levar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use levar::format;
use levar::kernels;

fn levar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn pool_example_file() {
    let input = data("pooling_2x4.json");
    for extra in [None, Some("--direct")] {
        let mut args = vec!["pool", input.to_str().unwrap()];
        args.extend(extra);
        let o = levar(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let a = format::from_slice(stdout(&o).trim().as_bytes()).unwrap();
        assert_eq!(a.shape().extents(), &[1, 2]);
        assert_eq!(a.to_vec(), vec![2, 6]);
    }
}

#[test]
fn kernel_output_is_library_serialization() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("pooling_2x4.json");
    let out = dir.path().join("pooled.json");
    let o = levar(&["pool", input.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let a = format::read_array(std::fs::File::open(&input).unwrap()).unwrap();
    let expected = format::to_bytes(&kernels::avgp_nested(&a).unwrap());
    assert_eq!(std::fs::read(&out).unwrap(), expected);

    let prod = dir.path().join("prod.json");
    let o = levar(&[
        "matmul",
        input.to_str().unwrap(),
        input.to_str().unwrap(),
        "-o",
        prod.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("DimMismatch"));
}

#[test]
fn gen_add_sum_show() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    assert_eq!(
        levar(&[
            "gen",
            "--shape",
            "[2,3]",
            "--fill",
            "iota",
            "-o",
            a.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        levar(&[
            "gen",
            "--shape",
            "[2,3]",
            "--fill",
            "const:10",
            "-o",
            b.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let o = levar(&[
        "add",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "-o",
        c.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = levar(&["sum", c.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "75");

    let o = levar(&["show", c.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("level: 2"), "{text}");
    assert!(text.contains("prod: 6"), "{text}");
    assert!(text.contains("array: [[10,11,12],[13,14,15]]"), "{text}");
}

#[test]
fn gen_random_is_deterministic() {
    let one = levar(&["gen", "--shape", "[3,3]", "--fill", "rand:5"]);
    let two = levar(&["gen", "--shape", "[3,3]", "--fill", "rand:5"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn reshape_prod_mismatch_exits_2() {
    let input = data("pooling_2x4.json");
    let o = levar(&["reshape", input.to_str().unwrap(), "--shape", "[3,3]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ProdMismatch"));

    let o = levar(&["reshape", input.to_str().unwrap(), "--shape", "[2,2,2]"]);
    assert_eq!(o.status.code(), Some(0));
    let r = format::from_slice(stdout(&o).trim().as_bytes()).unwrap();
    assert_eq!(r.to_vec(), vec![1, 2, 5, 6, 3, 4, 7, 8]);
}

#[test]
fn cut_and_nest_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    levar(&["gen", "--shape", "[2,3]", "-o", a.to_str().unwrap()]);

    let o = levar(&[
        "cut",
        a.to_str().unwrap(),
        "--cut",
        r#"{"slot":0,"split":1}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "left: {\"extents\":[2],\"inner\":{\"extents\":[1],\"inner\":null}}\n\
         right: {\"extents\":[3],\"inner\":{\"extents\":[1],\"inner\":null}}\n\
         cut_count: 3\n"
    );

    let o = levar(&[
        "nest",
        a.to_str().unwrap(),
        "--cut",
        r#"{"slot":0,"split":1}"#,
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("outer: {\"extents\":[2]"), "{text}");
    assert!(text.contains("(0) {\"data\":[0,1,2]"), "{text}");
    assert!(text.contains("(1) {\"data\":[3,4,5]"), "{text}");

    let o = levar(&[
        "cut",
        a.to_str().unwrap(),
        "--cut",
        r#"{"slot":0,"split":9}"#,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CutMismatch"));
}

#[test]
fn format_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"format":"nope"}"#).unwrap();
    assert_eq!(
        levar(&["show", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(
        levar(&["show", "/nonexistent/file.json"]).status.code(),
        Some(3)
    );
    assert_eq!(levar(&["pool"]).status.code(), Some(1));
    assert_eq!(levar(&["bogus"]).status.code(), Some(1));
    assert_eq!(levar(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let o = levar(&["selftest", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains(" 0 failed"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
