//! Runs the `koszul` binary on the shipped corpus and compares against the
//! expected outputs in `corpus/expected`. Set `KOSZUL_BLESS=1` to rewrite
//! them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use koszul::field::SUPPORTED_PRIMES;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn koszul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul"))
        .current_dir(corpus())
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

const GOLDEN: &[(&str, &[&str])] = &[
    ("dual_exterior1.tsv", &["dual", "--algebra", "exterior1.json", "--window", "0:10"]),
    ("dual_dual_numbers.tsv", &["dual", "--algebra", "dual_numbers.json", "--window", "0:10"]),
    ("dual_exterior2.tsv", &["dual", "--algebra", "exterior2.json", "--window", "0:6"]),
    ("dual_truncated_poly3.tsv", &["dual", "--algebra", "truncated_poly3.json", "--window", "0:8"]),
    ("dual_dg_dual_numbers.tsv", &["dual", "--algebra", "dg_dual_numbers.json", "--window", "0:6"]),
    ("dual_exterior1_f2.json", &["--field", "Fp:2", "--format", "json", "dual", "--algebra", "exterior1.json", "--window", "0:4"]),
    ("bar_exterior1.tsv", &["bar", "--algebra", "exterior1.json", "--window", "0:6"]),
    (
        "bar_regular_free_exterior1.tsv",
        &["bar", "--algebra", "exterior1.json", "--left", "regular_exterior1.json", "--right", "free_exterior1.json", "--window", "0:4"],
    ),
    (
        "reltensor_dual_numbers.tsv",
        &["reltensor", "--left", "regular_dual_numbers.json", "--right", "trivial_dual_numbers.json", "--window", "0:4"],
    ),
    (
        "ext_reltensor_dual_numbers.tsv",
        &["ext-reltensor", "--bimodule", "regular_dual_numbers.json", "--module", "trivial_dual_numbers.json", "--window", "0:4"],
    ),
    ("dual_module_free_exterior1.tsv", &["dual-module", "--module", "free_exterior1.json", "--window", "0:6"]),
    ("dual_module_cone.tsv", &["dual-module", "--module", "cone_module_dg_dual_numbers.json", "--window", "0:4"]),
    ("cobar_exterior1.tsv", &["cobar", "--algebra", "exterior1.json", "--window", "0:6"]),
    ("verify_twarr_chain3.json", &["--format", "json", "verify", "twarr", "--category", "chain3.json"]),
    ("verify_twarr_square.json", &["--format", "json", "verify", "twarr", "--category", "square.json"]),
    ("verify_twarr_idempotent.json", &["--format", "json", "verify", "twarr", "--category", "idempotent.json"]),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("KOSZUL_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in GOLDEN {
        let o = koszul(args);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        let path = corpus().join("expected").join(name);
        if bless {
            std::fs::write(&path, stdout(&o)).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if stdout(&o) != want {
            mismatched.push(format!("{name}:\n{}", stdout(&o)));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

fn ranks(tsv: &str) -> Vec<usize> {
    tsv.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect()
}

#[test]
fn exterior_dual_has_even_rank_one_table() {
    let o = koszul(&["dual", "--algebra", "exterior1.json", "--window", "0:10"]);
    assert!(o.status.success());
    let expect: Vec<usize> = (0..=10).map(|n| usize::from(n % 2 == 0)).collect();
    assert_eq!(ranks(&stdout(&o)), expect);
    assert!(stdout(&o).lines().skip(1).all(|l| l.split('\t').nth(2) == Some("false")));
}

#[test]
fn verify_twarr_on_chain3_has_no_failures() {
    let o = koszul(&["--format", "json", "verify", "twarr", "--category", "chain3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
    assert!(v["cases_checked"].as_u64().unwrap() > 0);
}

#[test]
fn every_supported_prime_dispatches() {
    for p in SUPPORTED_PRIMES {
        let field = format!("Fp:{p}");
        let o = koszul(&["--field", &field, "dual", "--algebra", "dual_numbers.json", "--window", "0:3"]);
        assert!(o.status.success(), "{field}: {}", stderr(&o));
        assert_eq!(ranks(&stdout(&o)), vec![1; 4], "{field}");
    }
    let o = koszul(&["--field", "Fp:4", "dual", "--algebra", "exterior1.json"]);
    assert_eq!(o.status.code(), Some(1));
}

fn temp_doc(name: &str, edit: impl FnOnce(&mut serde_json::Value)) -> PathBuf {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(corpus().join("exterior1.json")).unwrap()).unwrap();
    edit(&mut v);
    let dir = std::env::temp_dir().join(format!("koszul-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    path
}

#[test]
fn missing_product_table_exits_2_with_axiom() {
    let path = temp_doc("no_product.json", |v| {
        v.as_object_mut().unwrap().remove("product");
    });
    let o = koszul(&["dual", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("product-table"), "{}", stderr(&o));
}

#[test]
fn unknown_field_exits_1_with_pointer() {
    let path = temp_doc("unknown_field.json", |v| {
        v["basis"][1]["weight"] = 3.into();
    });
    let o = koszul(&["dual", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/basis/1/weight"), "{}", stderr(&o));
}

#[test]
fn regime_violation_exits_3() {
    // The dual numbers have their coideal in degree 1 after suspension.
    let o = koszul(&["cobar", "--algebra", "dual_numbers.json", "--window", "0:4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cobar"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(koszul(&["bogus"]).status.code(), Some(1));
    assert_eq!(koszul(&["dual", "--algebra", "exterior1.json", "--window", "3:1"]).status.code(), Some(1));
    assert_eq!(koszul(&["dual", "--algebra", "missing.json"]).status.code(), Some(1));
    assert_eq!(koszul(&["--help"]).status.code(), Some(0));
}

#[test]
fn mismatched_algebras_exit_2() {
    let o = koszul(&["ext-reltensor", "--bimodule", "regular_dual_numbers.json", "--module", "cone_module_dg_dual_numbers.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verification_suites_pass_and_are_deterministic() {
    let runs = [
        vec!["--format", "json", "verify", "operads", "--max-n", "2", "--max-k", "1"],
        vec!["--format", "json", "--seed", "3", "verify", "segal", "--n", "2"],
        vec!["--format", "json", "--seed", "5", "verify", "compat", "--instances", "10"],
        vec!["--format", "json", "--field", "Fp:65521", "verify", "assoc"],
    ];
    for args in runs {
        let (a, b) = (koszul(&args), koszul(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        assert_eq!(v["failures"], serde_json::json!([]), "{args:?}");
    }
}

#[test]
fn segal_below_two_is_rejected() {
    assert_eq!(koszul(&["verify", "segal", "--n", "1"]).status.code(), Some(2));
}
