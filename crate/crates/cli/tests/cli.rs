use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pentagon_cli::corpus::write_corpus;
use pentagon_core::bicharacter::from_hopf_hom;
use pentagon_core::groups::{build_group_from_spec, hom_to_hopf, GroupHom, GroupSpec, Picture};
use pentagon_core::io::{read_json, write_json, BicharacterFile, Loader, QgSpec};
use pentagon_core::tensorleg::relative_residual;
use pentagon_core::{ComplexMatrix, Tolerances, C64};
use serde_json::Value;

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn pentagon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentagon")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn corpus_file(rel: &str) -> String {
    shipped().join(rel).display().to_string()
}

fn checks_named<'a>(report: &'a Value, name: &str) -> Vec<&'a Value> {
    report["checks"].as_array().unwrap().iter().filter(|c| c["name"] == name).collect()
}

#[test]
#[ignore = "rewrites the shipped corpus"]
fn regenerate_shipped_corpus() {
    let root = shipped();
    if root.exists() {
        std::fs::remove_dir_all(&root).unwrap();
    }
    let written = write_corpus(&root, &Tolerances::default()).unwrap();
    assert!(!written.is_empty());
}

#[test]
fn generated_corpus_matches_the_shipped_file_list() {
    let dir = tempfile::tempdir().unwrap();
    let written = write_corpus(dir.path(), &Tolerances::default()).unwrap();
    let mut fresh: Vec<PathBuf> = written.iter().map(|p| p.strip_prefix(dir.path()).unwrap().to_path_buf()).collect();
    fresh.sort();
    let mut on_disk: Vec<PathBuf> = pentagon_cli::suite::json_files(&shipped())
        .unwrap()
        .into_iter()
        .map(|p| p.strip_prefix(shipped()).unwrap().to_path_buf())
        .collect();
    on_disk.sort();
    assert_eq!(fresh, on_disk);
}

#[test]
fn verify_a_quantum_group_file() {
    let out = pentagon(&["verify", &corpus_file("qg/unitary/z2-c0.json"), "qg"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["kind"], "qg");
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
    assert!(report["wallTime"].as_f64().unwrap() >= 0.0);
    // the kind is detected when omitted
    assert_eq!(code(&pentagon(&["verify", &corpus_file("groups/s3.json")])), 0);
}

#[test]
fn residuals_are_printed_with_three_significant_digits() {
    let out = pentagon(&["verify", &corpus_file("qg/unitary/s3-cstar.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let residuals: Vec<&str> =
        text.lines().filter_map(|l| l.trim().strip_prefix("\"residual\": ")).map(|r| r.trim_end_matches(',')).collect();
    assert!(!residuals.is_empty());
    for r in residuals {
        let (mantissa, exponent) = r.split_once('e').unwrap_or_else(|| panic!("{r}"));
        assert_eq!(mantissa.trim_start_matches('-').len(), 4, "{r}");
        assert!(exponent.parse::<i32>().is_ok(), "{r}");
    }
}

#[test]
fn a_perturbed_unitary_fails_the_pentagon_equation() {
    let dir = tempfile::tempdir().unwrap();
    let spec: QgSpec = read_json(&shipped().join("qg/unitary/z3-c0.json")).unwrap();
    let QgSpec::Unitary { dim, w } = spec else { panic!("unitary form expected") };
    // rephasing one column keeps W unitary
    let phase = C64::from_polar(1.0, 0.4);
    let broken = ComplexMatrix::from_fn(w.rows(), w.cols(), |r, c| if c == 4 { w[(r, c)] * phase } else { w[(r, c)] });
    let path = dir.path().join("broken_w.json");
    write_json(&path, &QgSpec::Unitary { dim, w: broken }).unwrap();
    let out = pentagon(&["verify", path.to_str().unwrap(), "qg"]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["pass"], false);
    let pentagon_check = checks_named(&report, "pentagon");
    assert_eq!(pentagon_check[0]["violation"], "PentagonViolation");
    assert_eq!(checks_named(&report, "unitarity")[0]["pass"], true);
}

#[test]
fn the_trivial_quantum_group_passes() {
    let out = pentagon(&["--text", "verify", &corpus_file("qg/unitary/trivial.json"), "qg"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS"), "{text}");
    assert!(text.contains("pentagon"));
}

#[test]
fn every_kind_of_shipped_file_verifies() {
    for rel in [
        "bicharacters/z4-quotient-z2-cstar.json",
        "bicharacters/z2-phase-1.json",
        "homs/z2-inclusion-z4-hopf-c0.json",
        "homs/z4-quotient-z2-right-cstar.json",
        "homs/z4-quotient-z2-left-c0.json",
        "coactions/z4-c0-adjoint-regular.json",
    ] {
        let out = pentagon(&["verify", &corpus_file(rel)]);
        assert_eq!(code(&out), 0, "{rel}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn a_tighter_tolerance_can_fail_an_honest_file() {
    let out = pentagon(&["--tol", "1e-30", "verify", &corpus_file("qg/unitary/s3-c0.json")]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn composing_with_the_identity_reproduces_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("vq.json");
    let out = pentagon(&[
        "compose",
        &corpus_file("bicharacters/z4-quotient-z2-cstar.json"),
        &corpus_file("bicharacters/z2-identity-cstar.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let composed: BicharacterFile = read_json(&out_path).unwrap();
    let original: BicharacterFile = read_json(&shipped().join("bicharacters/z4-quotient-z2-cstar.json")).unwrap();
    assert!(relative_residual(&composed.v, &original.v) < 1e-12);
    assert_eq!(composed.source, original.source);
    assert_eq!(composed.target, original.target);
    // the written file verifies on its own
    assert_eq!(code(&pentagon(&["verify", out_path.to_str().unwrap(), "bicharacter"])), 0);
}

#[test]
fn composing_inclusion_and_quotient_matches_the_composed_group_hom() {
    let tol = Tolerances::default();
    let g: GroupSpec = read_json(&shipped().join("groups/z2.json")).unwrap();
    let z2 = build_group_from_spec(&g).unwrap();
    let trivial = GroupHom::new(z2.clone(), z2, vec![0, 0]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    // group algebras follow the group homomorphisms; function algebras reverse them
    for (picture, first, second) in [
        (Picture::Cstar, "z2-inclusion-z4-cstar", "z4-quotient-z2-cstar"),
        (Picture::C0, "z4-quotient-z2-c0", "z2-inclusion-z4-c0"),
    ] {
        let out_path = dir.path().join(format!("{first}.json"));
        let out = pentagon(&[
            "compose",
            &corpus_file(&format!("bicharacters/{first}.json")),
            &corpus_file(&format!("bicharacters/{second}.json")),
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        let composed: BicharacterFile = read_json(&out_path).unwrap();
        let direct = from_hopf_hom(&hom_to_hopf(&trivial, picture, &tol).unwrap(), &tol).unwrap();
        assert!(relative_residual(&composed.v, direct.v()) < 1e-12);
    }
}

#[test]
fn composing_through_a_mismatched_middle_is_a_usage_error() {
    let out = pentagon(&[
        "compose",
        &corpus_file("bicharacters/z4-quotient-z2-cstar.json"),
        &corpus_file("bicharacters/z4-identity-cstar.json"),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SourceTargetMismatch"));
}

#[test]
fn dual_of_a_function_algebra_bicharacter_is_the_group_algebra_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("dual.json");
    let out = pentagon(&["dual", &corpus_file("bicharacters/s3-sign-z2-c0.json"), "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let dual: BicharacterFile = read_json(&out_path).unwrap();
    let want: BicharacterFile = read_json(&shipped().join("bicharacters/s3-sign-z2-cstar.json")).unwrap();
    assert!(relative_residual(&dual.v, &want.v) < 1e-12);
    assert_eq!(dual.source, want.source);
    assert_eq!(dual.target, want.target);
}

#[test]
fn inducing_along_the_restriction_to_z2() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("induced.json");
    let out = pentagon(&[
        "induce",
        &corpus_file("coactions/z4-c0-comultiplication.json"),
        &corpus_file("homs/z2-inclusion-z4-right-c0.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(checks_named(&json(&out), "solve")[0]["pass"] == true);
    let verified = pentagon(&["verify", out_path.to_str().unwrap(), "coaction"]);
    assert_eq!(code(&verified), 0, "{}", String::from_utf8_lossy(&verified.stdout));
    // the same coaction along a bicharacter file gives the same result
    let again = pentagon(&[
        "induce",
        &corpus_file("coactions/z4-c0-comultiplication.json"),
        &corpus_file("bicharacters/z2-inclusion-z4-c0.json"),
    ]);
    assert_eq!(code(&again), 0);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{\"neither\": 1}").unwrap();
    assert_eq!(code(&pentagon(&["verify", path.to_str().unwrap()])), 2);
    assert_eq!(code(&pentagon(&["verify", path.to_str().unwrap(), "qg"])), 2);
    assert_eq!(code(&pentagon(&["verify", "/nonexistent.json"])), 2);
    assert_eq!(code(&pentagon(&["frobnicate"])), 2);
    assert_eq!(code(&pentagon(&["--json", "--text", "verify", "x.json"])), 2);
}

#[test]
fn the_shipped_corpus_passes_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = pentagon(&["suite", shipped().to_str().unwrap(), "--out", report_path.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(code(&out), 0, "{:?}", report["failed"]);
    assert_eq!(report["failed"].as_array().unwrap().len(), 0);
    let subjects = report["reports"].as_array().unwrap();
    assert!(subjects.iter().any(|r| r["subject"] == "<category>"));
    assert!(subjects.len() > 100);
    assert!(report["wallTime"].as_f64().unwrap() < 60.0);
}

#[test]
fn one_corrupted_file_fails_exactly_one_subject() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path(), &Tolerances::default()).unwrap();
    let victim = dir.path().join("bicharacters/z4-quotient-z2-cstar.json");
    let mut file: BicharacterFile = read_json(&victim).unwrap();
    file.v[(1, 1)] = file.v[(1, 1)] * C64::from_polar(1.0, 0.3);
    write_json(&victim, &file).unwrap();

    let out = pentagon(&["--text", "suite", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let out = pentagon(&["suite", dir.path().to_str().unwrap()]);
    let report = json(&out);
    assert_eq!(report["failed"], serde_json::json!(["bicharacters/z4-quotient-z2-cstar.json"]));
}

#[test]
fn an_empty_directory_gives_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = pentagon(&["suite", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let report = json(&out);
    assert_eq!(report["subjects"], 0);
    assert_eq!(report["reports"], serde_json::json!([]));
    assert_eq!(code(&pentagon(&["suite", "/nonexistent-corpus"])), 2);
}

#[test]
fn loader_resolves_inline_references_once() {
    let loader = Loader::new(Tolerances::default());
    let a = loader.load_bicharacter(&shipped().join("bicharacters/z4-identity-cstar.json")).unwrap();
    let b = loader.load_bicharacter(&shipped().join("bicharacters/z4-inverse-cstar.json")).unwrap();
    assert!(std::sync::Arc::ptr_eq(a.source(), b.source()));
}
