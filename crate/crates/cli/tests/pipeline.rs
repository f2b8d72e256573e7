//! End-to-end pipeline tests driving the actual binary:
//! build -> encode -> corrupt -> decode must reproduce the encoded word
//! byte-for-byte, for every seed in a 100-seed sweep on each grid code.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burst-codes"))
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("burst-codes-test-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {:?} failed: {}{}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn seed_sweep(tag: &str, build_args: &[&str]) {
    let dir = tmpdir(tag);
    let spec = dir.join("spec.txt");
    let word = dir.join("word.bw");
    let bad = dir.join("bad.bw");
    let fixed = dir.join("fixed.bw");
    let spec_s = spec.to_str().unwrap();

    let mut args = build_args.to_vec();
    args.extend_from_slice(&["-o", spec_s]);
    run_ok(&args);
    run_ok(&[
        "encode",
        "--spec",
        spec_s,
        "-o",
        word.to_str().unwrap(),
        "--seed",
        "11",
    ]);
    let encoded = fs::read(&word).unwrap();

    for seed in 0..100u64 {
        let seed_s = seed.to_string();
        run_ok(&[
            "corrupt",
            "--spec",
            spec_s,
            "-i",
            word.to_str().unwrap(),
            "-o",
            bad.to_str().unwrap(),
            "--seed",
            &seed_s,
        ]);
        run_ok(&[
            "decode",
            "--spec",
            spec_s,
            "-i",
            bad.to_str().unwrap(),
            "-o",
            fixed.to_str().unwrap(),
        ]);
        let recovered = fs::read(&fixed).unwrap();
        assert_eq!(
            recovered, encoded,
            "{tag}: seed {seed} failed to round-trip"
        );
    }
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn round_trip_linf_basic_4_2_1() {
    seed_sweep(
        "lb421",
        &["build", "--model", "linf", "-n", "4", "-b", "2", "-D", "1"],
    );
}

#[test]
fn round_trip_linf_basic_4_2_2() {
    seed_sweep(
        "lb422",
        &["build", "--model", "linf", "-n", "4", "-b", "2", "-D", "2"],
    );
}

#[test]
fn round_trip_linf_basic_5_3_2() {
    seed_sweep(
        "lb532",
        &["build", "--model", "linf", "-n", "5", "-b", "3", "-D", "2"],
    );
}

#[test]
fn round_trip_linf_basic_3_2_3() {
    seed_sweep(
        "lb323",
        &["build", "--model", "linf", "-n", "3", "-b", "2", "-D", "3"],
    );
}

#[test]
fn round_trip_linf_ext_3_2_2() {
    seed_sweep(
        "le322",
        &[
            "build",
            "--model",
            "linf",
            "--variant",
            "extended",
            "-n",
            "3",
            "-b",
            "2",
            "-D",
            "2",
        ],
    );
}

#[test]
fn round_trip_linf_ext_4_2_1() {
    seed_sweep(
        "le421",
        &[
            "build",
            "--model",
            "linf",
            "--variant",
            "extended",
            "-n",
            "4",
            "-b",
            "2",
            "-D",
            "1",
        ],
    );
}

#[test]
fn round_trip_linf_pow2_4_2_2() {
    seed_sweep(
        "lp422",
        &[
            "build",
            "--model",
            "linf",
            "--variant",
            "extended-pow2",
            "-n",
            "4",
            "-b",
            "2",
            "-D",
            "2",
        ],
    );
}

#[test]
fn round_trip_l1_2_2_2() {
    seed_sweep(
        "l1222",
        &["build", "--model", "l1", "-n", "2", "-b", "2", "-D", "2"],
    );
}

#[test]
fn round_trip_l1_b3_4_2() {
    seed_sweep(
        "l1b3",
        &[
            "build",
            "--model",
            "l1",
            "--variant",
            "b3",
            "-n",
            "4",
            "-b",
            "3",
            "-D",
            "2",
        ],
    );
}

#[test]
fn round_trip_straight_trivial_4_2_3() {
    seed_sweep(
        "st423",
        &[
            "build", "--model", "straight", "-n", "4", "-b", "2", "-D", "3",
        ],
    );
}

#[test]
fn round_trip_straight_steiner_4_2_5() {
    seed_sweep(
        "ss425",
        &[
            "build", "--model", "straight", "--design", "steiner", "-n", "4", "-b", "2", "-D", "5",
        ],
    );
}

#[test]
fn build_prints_summary_and_prime() {
    let out = run_ok(&["build", "--model", "l1", "-n", "2", "-b", "2", "-D", "2"]);
    assert!(out.contains("p=5"), "{out}");
    assert!(out.contains("N=100"), "{out}");
    assert!(out.contains("rows=20"), "{out}");
}

#[test]
fn gcd_violation_exits_nonzero_naming_parameters() {
    let out = bin()
        .args([
            "build",
            "--model",
            "linf",
            "--variant",
            "extended",
            "-n",
            "3",
            "-b",
            "3",
            "-D",
            "1",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gcd(3"), "{err}");
    assert!(err.contains("m = "), "{err}");
}

#[test]
fn bounds_table_includes_1d_reference() {
    let out = run_ok(&["bounds", "-b", "2", "-D", "1"]);
    assert!(out.contains("1D burst code"), "{out}");
    assert!(out.contains("2.0000"), "{out}");
    let csv = run_ok(&["bounds", "-b", "2", "-D", "1", "--csv"]);
    assert!(csv.starts_with("model,label,side,value,source,applicability"));
}

#[test]
fn count_prints_all_three_models() {
    let out = run_ok(&["count", "-n", "4", "-b", "2", "-D", "2"]);
    assert_eq!(out, "linf 59\nl1 41\nstraight 41\n");
}

#[test]
fn verify_passes_on_grid_code() {
    let dir = tmpdir("verify");
    let spec = dir.join("spec.txt");
    run_ok(&[
        "build",
        "--model",
        "linf",
        "-n",
        "4",
        "-b",
        "2",
        "-D",
        "2",
        "-o",
        spec.to_str().unwrap(),
    ]);
    let out = run_ok(&["verify", "--spec", spec.to_str().unwrap(), "--samples", "3"]);
    assert!(out.contains("syndrome-distinctness"), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn design_export_audits_cleanly() {
    let dir = tmpdir("design-audit");
    let spec = dir.join("spec.txt");
    let design = dir.join("design.txt");
    run_ok(&[
        "build",
        "--model",
        "straight",
        "--design",
        "steiner",
        "-n",
        "4",
        "-b",
        "2",
        "-D",
        "5",
        "-o",
        spec.to_str().unwrap(),
        "--design-out",
        design.to_str().unwrap(),
    ]);
    let out = run_ok(&[
        "verify",
        "--spec",
        spec.to_str().unwrap(),
        "--samples",
        "1",
        "--expect-design",
        design.to_str().unwrap(),
    ]);
    assert!(out.contains("design audit"), "{out}");

    // a tampered design file must fail the audit
    let tampered = fs::read_to_string(&design).unwrap().replace("0 1", "0 2");
    fs::write(&design, tampered).unwrap();
    let status = bin()
        .args([
            "verify",
            "--spec",
            spec.to_str().unwrap(),
            "--samples",
            "1",
            "--expect-design",
            design.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!status.status.success());
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn decode_prints_word_without_output_path() {
    let dir = tmpdir("decode-stdout");
    let spec = dir.join("spec.txt");
    let word = dir.join("word.bw");
    let spec_s = spec.to_str().unwrap();
    run_ok(&[
        "build", "--model", "linf", "-n", "4", "-b", "2", "-D", "1", "-o", spec_s,
    ]);
    run_ok(&["encode", "--spec", spec_s, "-o", word.to_str().unwrap()]);
    let out = run_ok(&["decode", "--spec", spec_s, "-i", word.to_str().unwrap()]);
    assert!(out.starts_with("no-error\n"), "{out}");
    assert!(out.contains("BW1 side=4 D=1"), "{out}");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn corrupt_is_deterministic_per_seed() {
    let dir = tmpdir("corrupt-det");
    let spec = dir.join("spec.txt");
    let word = dir.join("word.bw");
    let spec_s = spec.to_str().unwrap();
    run_ok(&[
        "build", "--model", "linf", "-n", "4", "-b", "2", "-D", "2", "-o", spec_s,
    ]);
    run_ok(&["encode", "--spec", spec_s, "-o", word.to_str().unwrap()]);
    let one = corrupt_to_string(&dir, spec_s, &word, 5);
    let two = corrupt_to_string(&dir, spec_s, &word, 5);
    assert_eq!(one, two);
    fs::remove_dir_all(&dir).ok();
}

fn corrupt_to_string(dir: &Path, spec: &str, word: &Path, seed: u64) -> Vec<u8> {
    let out = dir.join(format!("bad{seed}.bw"));
    run_ok(&[
        "corrupt",
        "--spec",
        spec,
        "-i",
        word.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--seed",
        &seed.to_string(),
    ]);
    fs::read(&out).unwrap()
}
