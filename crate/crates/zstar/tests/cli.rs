// zstar - exact arithmetic for graphical calculi
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end checks of the command-line interface: exit-code contract,
//! deterministic output, the machine-readable result block, and the error
//! paths for bad parameters and malformed files.

use std::process::{Command, Output};

fn zstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_zw_passes_and_prints_the_not_dualizer() {
    let out = zstar(&["verify", "ZW", "--a", "1", "--b", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("=> all pass"));
    assert!(text.contains("dualizer:"));
    assert!(text.contains("0, 1\n1, 0"));
    assert!(text.contains("passed=true"));
}

#[test]
fn verify_zh_rejects_the_excluded_parameter() {
    let out = zstar(&["verify", "ZH", "--a", "1", "--b", "1"]);
    assert!(!out.status.success());
    let text = stdout(&out);
    assert!(text.contains("a^2 b^2 != 1"));
    assert!(text.contains("passed=false"));
    // the Hadamard instance passes
    let ok = zstar(&["verify", "ZH", "--a", "1", "--b", "r2"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("passed=true"));
}

#[test]
fn verify_qudits() {
    let out = zstar(&["verify", "qudit-zx", "--d", "3"]);
    assert!(out.status.success());
    let out = zstar(&["verify", "qudit-zw", "--d", "3"]);
    assert!(out.status.success());
    let out = zstar(&["verify", "qudit-zx"]);
    assert!(!out.status.success(), "missing --d must fail");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = zstar(&["classify", "qubits"]);
    let second = zstar(&["classify", "qubits"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let first = zstar(&["classify", "linrel", "--prime", "3"]);
    let second = zstar(&["classify", "linrel", "--prime", "3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn classify_qubits_reports_the_staged_counts() {
    let out = zstar(&["classify", "qubits"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank-2 solutions of (B):      12"));
    assert!(text.contains("after swap reduction:         7"));
    assert!(text.contains("associative unital algebras:  4"));
    assert!(text.contains("five pairs in total"));
    assert!(text.contains("rank2=12"));
    assert!(text.contains("reduced=7"));
    assert!(text.contains("algebras=4"));
    assert!(text.contains("pairs=5"));
}

#[test]
fn classify_qubits_golden_comparison() {
    let golden_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../golden");
    let golden_file = format!("{golden_dir}/qubits_bigebra_trace.txt");
    let out = zstar(&["classify", "qubits", "--golden", &golden_file]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("golden_match=true"));
    // the env-var form
    let out = Command::new(env!("CARGO_BIN_EXE_zstar"))
        .args(["classify", "qubits", "--golden"])
        .env("ZSTAR_GOLDEN_DIR", golden_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("golden_match=true"));
    // a corrupted golden file must fail the run
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("qubits_bigebra_trace.txt");
    std::fs::write(&bad, "not the trace\n").unwrap();
    let out = zstar(&["classify", "qubits", "--golden", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("golden_match=false"));
}

#[test]
fn classify_linrel_counts_and_prime_domain() {
    let out = zstar(&["classify", "linrel", "--prime", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("subspaces_k3=16"));
    assert!(text.contains("monoids=2"));
    assert!(text.contains("zstar_NB=true"));
    let out = zstar(&["classify", "linrel", "--prime", "7"]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("unsupported prime 7"));
}

#[test]
fn eval_diagram_prints_matrices_and_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let wire = dir.path().join("wire.zd");
    std::fs::write(&wire, "boundary in 1 out 1\nedge in.1 out.1\n").unwrap();
    let out = zstar(&["eval-diagram", wire.to_str().unwrap(), "--calculus", "ZW"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("morphism d=2 n=1 m=1"));
    assert!(text.contains("1, 0\n0, 1"));

    // spider fusion at the command line: the two-node chain equals the
    // single decorated node
    let fused = dir.path().join("fused.zd");
    std::fs::write(
        &fused,
        "boundary in 1 out 1\nnode v white phase 2 3\nnode w white phase 5 7\n\
         edge in.1 v.1\nedge v.2 w.1\nedge w.2 out.1\n",
    )
    .unwrap();
    let single = dir.path().join("single.zd");
    std::fs::write(
        &single,
        "boundary in 1 out 1\nnode u white phase 10 21\nedge in.1 u.1\nedge u.2 out.1\n",
    )
    .unwrap();
    let a = zstar(&["eval-diagram", fused.to_str().unwrap(), "--calculus", "zw-original"]);
    let b = zstar(&["eval-diagram", single.to_str().unwrap(), "--calculus", "zw-original"]);
    assert!(a.status.success() && b.status.success());
    let matrix = |o: &Output| {
        stdout(o)
            .lines()
            .take_while(|l| !l.starts_with("[result]"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(matrix(&a), matrix(&b));

    let dangling = dir.path().join("dangling.zd");
    std::fs::write(&dangling, "boundary in 2 out 1\nedge in.1 out.1\n").unwrap();
    let out = zstar(&["eval-diagram", dangling.to_str().unwrap(), "--calculus", "ZW"]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("parse error"));

    let badline = dir.path().join("badline.zd");
    std::fs::write(&badline, "boundary in 1 out 1\nedge in.1 w.1\n").unwrap();
    let out = zstar(&["eval-diagram", badline.to_str().unwrap(), "--calculus", "ZW"]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("line 2"), "{}", stdout(&out));
}

#[test]
fn catalog_list_and_dump() {
    let out = zstar(&["catalog", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("zw-original"));
    assert!(text.contains("zh-revisited"));
    assert!(text.contains("ZX5"));
    assert!(text.contains("qudit-zx"));

    let out = zstar(&["catalog", "dump", "zw-original", "--check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("generator black-product black-product.mat"));
    assert!(text.contains("conformance=true"));

    let dir = tempfile::tempdir().unwrap();
    let out = zstar(&[
        "catalog",
        "dump",
        "zh-1",
        "--a",
        "1",
        "--b",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(dir.path().join("manifest.txt").exists());
    assert!(dir.path().join("dualizer.mat").exists());
    let count = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(count, 12, "manifest plus eleven generators");
    // the dumped matrices reparse
    let dumped = std::fs::read_to_string(dir.path().join("white-product.mat")).unwrap();
    let parsed: zstar::Morphism = dumped.parse().unwrap();
    assert_eq!(parsed.to_string(), dumped);

    let out = zstar(&["catalog", "dump", "no-such-table"]);
    assert!(!out.status.success());
}
