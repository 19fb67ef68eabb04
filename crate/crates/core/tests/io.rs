mod common;

use std::path::Path;

use common::{cstar_v, group, q_and_i};
use pentagon_core::bicharacter::check_bicharacter;
use pentagon_core::coactions::{amplified_coaction, comultiplication_coaction};
use pentagon_core::groups::{qg_from_group, Picture};
use pentagon_core::homviews::{left_from_bicharacter, right_from_bicharacter};
use pentagon_core::io::{
    bicharacter_file, coaction_file, hom_file, qg_from_spec, read_json, rebase_ref, write_json, AnyHom, BicharacterFile, HomFile,
    HomKind, Loader, QgRef, QgSpec, BASIS_CONVENTION,
};
use pentagon_core::{ComplexMatrix, Error, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn group_ref(name: &str, picture: Picture) -> QgSpec {
    QgSpec::Group { group: group(name).spec(), picture }
}

fn write_qg(dir: &Path, file: &str, spec: &QgSpec) -> QgRef {
    write_json(&dir.join(file), spec).unwrap();
    QgRef::Path(file.to_string())
}

#[test]
fn quantum_group_specs_in_both_forms() {
    let dir = tempfile::tempdir().unwrap();
    let by_group = group_ref("s3", Picture::Cstar);
    let built = qg_from_spec(&by_group, &tol()).unwrap();
    let by_unitary = QgSpec::Unitary { dim: 6, w: built.w().clone() };
    write_qg(dir.path(), "a.json", &by_group);
    write_qg(dir.path(), "b.json", &by_unitary);
    let loader = Loader::new(tol());
    let a = loader.load_qg(&dir.path().join("a.json")).unwrap();
    let b = loader.load_qg(&dir.path().join("b.json")).unwrap();
    assert!(a.same_as(&b));
    // the cache hands back the same build
    let again = loader.load_qg(&dir.path().join("a.json")).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &again));

    let text = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    assert!(text.contains("\"picture\": \"cstar\""));
    let back: QgSpec = read_json(&dir.path().join("b.json")).unwrap();
    assert_eq!(back, by_unitary);
}

#[test]
fn bicharacters_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (q, _) = q_and_i();
    let c = qg_from_group(&group("z4"), Picture::Cstar, &tol()).unwrap();
    let a = qg_from_group(&group("z2"), Picture::Cstar, &tol()).unwrap();
    let v = check_bicharacter(cstar_v(&q), &c, &a, &tol()).unwrap();
    let src = write_qg(dir.path(), "z4.json", &group_ref("z4", Picture::Cstar));
    // inline target
    let file = bicharacter_file(&v, src, QgRef::Inline(group_ref("z2", Picture::Cstar)));
    write_json(&dir.path().join("v.json"), &file).unwrap();
    let loaded = Loader::new(tol()).load_bicharacter(&dir.path().join("v.json")).unwrap();
    assert_eq!(loaded.v(), v.v());
    assert!(loaded.source().same_as(&c) && loaded.target().same_as(&a));
    let raw: BicharacterFile = read_json(&dir.path().join("v.json")).unwrap();
    assert_eq!(raw, file);
}

#[test]
fn homomorphisms_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (q, _) = q_and_i();
    let c = qg_from_group(&group("z4"), Picture::Cstar, &tol()).unwrap();
    let a = qg_from_group(&group("z2"), Picture::Cstar, &tol()).unwrap();
    let v = check_bicharacter(cstar_v(&q), &c, &a, &tol()).unwrap();
    let src = write_qg(dir.path(), "z4.json", &group_ref("z4", Picture::Cstar));
    let dst = write_qg(dir.path(), "z2.json", &group_ref("z2", Picture::Cstar));

    let dr = right_from_bicharacter(&v, &tol()).unwrap();
    let dl = left_from_bicharacter(&v, &tol()).unwrap();
    let hopf = pentagon_core::groups::hom_to_hopf(&q, Picture::Cstar, &tol()).unwrap();
    for (kind, matrix) in [(HomKind::Right, dr.matrix()), (HomKind::Left, dl.matrix()), (HomKind::Hopf, hopf.matrix())] {
        let path = dir.path().join("h.json");
        write_json(&path, &hom_file(kind, matrix, src.clone(), dst.clone())).unwrap();
        let loaded = Loader::new(tol()).load_hom(&path).unwrap();
        let got = match (&loaded, kind) {
            (AnyHom::Right(h), HomKind::Right) => h.matrix().clone(),
            (AnyHom::Left(h), HomKind::Left) => h.matrix().clone(),
            (AnyHom::Hopf(h), HomKind::Hopf) => h.matrix().clone(),
            _ => panic!("loaded the wrong kind"),
        };
        assert_eq!(&got, matrix);
    }

    let mut bad: HomFile = read_json(&dir.path().join("h.json")).unwrap();
    bad.basis_convention = "standard".into();
    write_json(&dir.path().join("bad.json"), &bad).unwrap();
    assert!(matches!(Loader::new(tol()).load_hom(&dir.path().join("bad.json")), Err(Error::Format(_))));
    assert_eq!(BASIS_CONVENTION, "orthonormalized-slice");
}

#[test]
fn coactions_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let c = qg_from_group(&group("s3"), Picture::C0, &tol()).unwrap();
    let r = write_qg(dir.path(), "s3.json", &group_ref("s3", Picture::C0));
    for gamma in [comultiplication_coaction(&c, &tol()).unwrap(), amplified_coaction(2, &c, &tol()).unwrap()] {
        let path = dir.path().join("g.json");
        write_json(&path, &coaction_file(&gamma, r.clone())).unwrap();
        let loaded = Loader::new(tol()).load_coaction(&path).unwrap();
        assert_eq!(loaded.matrix(), gamma.matrix());
        assert_eq!(loaded.algebra().basis(), gamma.algebra().basis());
    }
}

#[test]
fn malformed_files_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let loader = Loader::new(tol());
    assert!(matches!(loader.load_qg(&dir.path().join("missing.json")), Err(Error::Format(_))));
    std::fs::write(dir.path().join("junk.json"), "{ not json").unwrap();
    assert!(matches!(loader.load_bicharacter(&dir.path().join("junk.json")), Err(Error::Format(_))));
    let wrong_dim = QgSpec::Unitary { dim: 3, w: ComplexMatrix::identity(4) };
    assert!(matches!(qg_from_spec(&wrong_dim, &tol()), Err(Error::DimensionMismatch(_))));

    // a coaction whose algebra basis is not orthonormal
    let c = qg_from_group(&group("z2"), Picture::C0, &tol()).unwrap();
    let r = write_qg(dir.path(), "z2.json", &group_ref("z2", Picture::C0));
    let mut file = coaction_file(&comultiplication_coaction(&c, &tol()).unwrap(), r);
    file.d.basis[0] = file.d.basis[0].scale_real(2.0);
    write_json(&dir.path().join("g.json"), &file).unwrap();
    assert!(matches!(loader.load_coaction(&dir.path().join("g.json")), Err(Error::Format(_))));
}

#[test]
fn references_are_rebased_between_directories() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("qg")).unwrap();
    std::fs::create_dir_all(dir.path().join("out")).unwrap();
    write_qg(&dir.path().join("qg"), "z2.json", &group_ref("z2", Picture::C0));
    let r = QgRef::Path("../qg/z2.json".into());
    let moved = rebase_ref(&r, &dir.path().join("out"), dir.path());
    assert_eq!(moved, QgRef::Path("qg/z2.json".into()));
    let loader = Loader::new(tol());
    assert!(loader.resolve(&moved, dir.path()).is_ok());
    let inline = QgRef::Inline(group_ref("z2", Picture::C0));
    assert_eq!(rebase_ref(&inline, dir.path(), dir.path()), inline);
}
