//! Writes the shipped corpus: the group tables, their quantum groups, and a
//! selection of bicharacters, homomorphisms and coactions between them.
//!
//! Quantum groups inside object files are referenced inline by group table and
//! picture, so every file can be verified on its own.

use std::path::{Path, PathBuf};

use pentagon_core::bicharacter::{check_bicharacter, from_hopf_hom, identity, Bicharacter};
use pentagon_core::coactions::standard_coactions;
use pentagon_core::groups::{all_homs, corpus, hom_to_hopf, qg_from_group, FiniteGroup, GroupHom, Picture};
use pentagon_core::homviews::{left_from_bicharacter, right_from_bicharacter};
use pentagon_core::io::{bicharacter_file, coaction_file, hom_file, write_json, HomKind, QgRef, QgSpec};
use pentagon_core::{ComplexMatrix, Error, Result, Tolerances, C64};

const PICTURES: [(Picture, &str); 2] = [(Picture::C0, "c0"), (Picture::Cstar, "cstar")];

fn group_ref(g: &FiniteGroup, picture: Picture) -> QgRef {
    QgRef::Inline(QgSpec::Group { group: g.spec(), picture })
}

fn find(groups: &[(&'static str, FiniteGroup)], name: &str) -> FiniteGroup {
    groups.iter().find(|(n, _)| *n == name).map(|(_, g)| g.clone()).expect("corpus group")
}

/// The first homomorphism `g → h` accepted by `keep`.
fn pick(g: &FiniteGroup, h: &FiniteGroup, keep: impl Fn(&GroupHom) -> bool) -> GroupHom {
    all_homs(g, h).into_iter().find(keep).expect("homomorphism exists")
}

/// Named group homomorphisms among `Z2`, `Z3`, `Z4`, `Z2²` and `S3`.
fn selected_homs(groups: &[(&'static str, FiniteGroup)]) -> Vec<(&'static str, GroupHom)> {
    let (z2, z4, v4, s3) = (find(groups, "z2"), find(groups, "z4"), find(groups, "z2xz2"), find(groups, "s3"));
    let nontrivial = |phi: &GroupHom| phi.map().iter().any(|&x| x != 0);
    let injective = |phi: &GroupHom| {
        let mut m = phi.map().to_vec();
        m.sort();
        m.dedup();
        m.len() == phi.map().len()
    };
    vec![
        ("z2-identity", GroupHom::identity(&z2)),
        ("z4-identity", GroupHom::identity(&z4)),
        ("s3-identity", GroupHom::identity(&s3)),
        ("z4-quotient-z2", pick(&z4, &z2, |p| p.map() == [0, 1, 0, 1])),
        ("z2-inclusion-z4", pick(&z2, &z4, |p| p.map() == [0, 2])),
        ("z4-inverse", pick(&z4, &z4, |p| p.map() == [0, 3, 2, 1])),
        ("z4-trivial-z2", pick(&z4, &z2, |p| !nontrivial(p))),
        ("s3-sign-z2", pick(&s3, &z2, nontrivial)),
        ("z2-transposition-s3", pick(&z2, &s3, nontrivial)),
        ("z4-via-z2-s3", pick(&z4, &s3, nontrivial)),
        ("z2xz2-projection-z2", pick(&v4, &z2, nontrivial)),
        ("z2-diagonal-z2xz2", pick(&z2, &v4, |p| injective(p) && p.map()[1] == 3)),
    ]
}

/// `Σ χ(a, b) E_aa ⊗ E_bb` from `C*(Z_n)` to `C0(Z_n)` with `χ(a, b) = exp(2πi k ab / n)`.
fn cyclic_phase_bicharacter(g: &FiniteGroup, k: usize, tol: &Tolerances) -> Result<Bicharacter> {
    let n = g.order();
    let values: Vec<C64> = (0..n * n)
        .map(|x| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * (x / n) * (x % n)) as f64 / n as f64))
        .collect();
    let cs = qg_from_group(g, Picture::Cstar, tol)?;
    let c0 = qg_from_group(g, Picture::C0, tol)?;
    check_bicharacter(ComplexMatrix::diagonal(&values), &cs, &c0, tol)
}

fn write(root: &Path, rel: String, value: &impl serde::Serialize, written: &mut Vec<PathBuf>) -> Result<()> {
    let path = root.join(rel);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
    }
    write_json(&path, value)?;
    written.push(path);
    Ok(())
}

/// Writes the corpus below `root` and returns the files written.
pub fn write_corpus(root: &Path, tol: &Tolerances) -> Result<Vec<PathBuf>> {
    let groups = corpus();
    let mut written = Vec::new();
    for (name, g) in &groups {
        write(root, format!("groups/{name}.json"), &g.spec(), &mut written)?;
        for (picture, p) in PICTURES {
            write(root, format!("qg/{name}-{p}.json"), &QgSpec::Group { group: g.spec(), picture }, &mut written)?;
        }
    }
    // a few quantum groups given directly by their unitaries
    for name in ["z2", "z3", "s3"] {
        for (picture, p) in PICTURES {
            let qg = qg_from_group(&find(&groups, name), picture, tol)?;
            let spec = QgSpec::Unitary { dim: qg.dim(), w: qg.w().clone() };
            write(root, format!("qg/unitary/{name}-{p}.json"), &spec, &mut written)?;
        }
    }
    let trivial = QgSpec::Unitary { dim: 1, w: ComplexMatrix::identity(1) };
    write(root, "qg/unitary/trivial.json".into(), &trivial, &mut written)?;

    for (name, phi) in selected_homs(&groups) {
        for (picture, p) in PICTURES {
            let v = from_hopf_hom(&hom_to_hopf(&phi, picture, tol)?, tol)?;
            let (src, dst) = match picture {
                Picture::C0 => (phi.target(), phi.source()),
                Picture::Cstar => (phi.source(), phi.target()),
            };
            let file = bicharacter_file(&v, group_ref(src, picture), group_ref(dst, picture));
            write(root, format!("bicharacters/{name}-{p}.json"), &file, &mut written)?;
        }
    }
    for (name, k) in [("z2", 1), ("z3", 1), ("z4", 3)] {
        let g = find(&groups, name);
        let v = cyclic_phase_bicharacter(&g, k, tol)?;
        let file = bicharacter_file(&v, group_ref(&g, Picture::Cstar), group_ref(&g, Picture::C0));
        write(root, format!("bicharacters/{name}-phase-{k}.json"), &file, &mut written)?;
    }

    let (z2, z4) = (find(&groups, "z2"), find(&groups, "z4"));
    let q = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1])?;
    let i = GroupHom::new(z2.clone(), z4.clone(), vec![0, 2])?;
    for (name, phi) in [("z4-quotient-z2", &q), ("z2-inclusion-z4", &i)] {
        for (picture, p) in PICTURES {
            let f = hom_to_hopf(phi, picture, tol)?;
            let (sref, dref) = match picture {
                Picture::Cstar => (group_ref(phi.source(), picture), group_ref(phi.target(), picture)),
                Picture::C0 => (group_ref(phi.target(), picture), group_ref(phi.source(), picture)),
            };
            let v = from_hopf_hom(&f, tol)?;
            let hopf = hom_file(HomKind::Hopf, f.matrix(), sref.clone(), dref.clone());
            write(root, format!("homs/{name}-hopf-{p}.json"), &hopf, &mut written)?;
            let right = hom_file(HomKind::Right, right_from_bicharacter(&v, tol)?.matrix(), sref.clone(), dref.clone());
            write(root, format!("homs/{name}-right-{p}.json"), &right, &mut written)?;
            let left = hom_file(HomKind::Left, left_from_bicharacter(&v, tol)?.matrix(), sref, dref);
            write(root, format!("homs/{name}-left-{p}.json"), &left, &mut written)?;
        }
    }

    for (g, name) in [(&z2, "z2"), (&z4, "z4")] {
        for (picture, p) in PICTURES {
            let qg = qg_from_group(g, picture, tol)?;
            for (kind, gamma) in standard_coactions(&qg, tol)? {
                let file = coaction_file(&gamma, group_ref(g, picture));
                write(root, format!("coactions/{name}-{p}-{kind}.json"), &file, &mut written)?;
            }
        }
    }
    // the identity arrow of Z2 in both pictures, built from its unitary
    for (picture, p) in PICTURES {
        let qg = qg_from_group(&z2, picture, tol)?;
        let v = identity(&qg, tol)?;
        let file = bicharacter_file(&v, group_ref(&z2, picture), group_ref(&z2, picture));
        write(root, format!("bicharacters/z2-reduced-{p}.json"), &file, &mut written)?;
    }
    Ok(written)
}
