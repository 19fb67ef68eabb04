//! Commands that produce a new object file along with its report.

use std::path::Path;
use std::time::Instant;

use pentagon_core::bicharacter::{compose_with_residual, dual_bicharacter, dual_bicharacter_with, from_hopf_hom, Bicharacter};
use pentagon_core::coactions::induce_coaction_detailed;
use pentagon_core::groups::Picture;
use pentagon_core::homviews::{bicharacter_from_left, right_from_bicharacter, RightQGHom};
use pentagon_core::io::{
    bicharacter_file, coaction_file, parent, read_json, rebase_ref, AnyHom, BicharacterFile, CoactionFile, HomFile, Loader,
    QgRef, QgSpec,
};
use pentagon_core::qgroup::dual_unitary;
use pentagon_core::tensorleg::relative_residual;
use pentagon_core::{Error, Result};
use serde_json::Value;

use crate::report::Report;
use crate::verify::Kind;

fn bicharacter_entries(v: &Bicharacter, loader: &Loader, report: &mut Report) {
    for (name, r, t) in v.residuals().entries(loader.tolerances()) {
        report.push(name, r, t, Some("BicharacterViolation"));
    }
}

/// Where references in the output file resolve from.
fn out_dir(out: Option<&Path>) -> &Path {
    out.map(parent).unwrap_or_else(|| Path::new("."))
}

/// Composes the bicharacters in `v1 : C → B` and `v2 : B → A`.
pub fn compose(v1: &Path, v2: &Path, out: Option<&Path>, loader: &Loader) -> Result<(Report, BicharacterFile)> {
    let start = Instant::now();
    let (a, b) = (loader.load_bicharacter(v1)?, loader.load_bicharacter(v2)?);
    let (f1, f2): (BicharacterFile, BicharacterFile) = (read_json(v1)?, read_json(v2)?);
    let (v, extraction) = compose_with_residual(&a, &b, loader.tolerances())?;
    let mut report = Report::new(format!("{} * {}", v1.display(), v2.display()), Some("bicharacter"));
    report.push("extraction", extraction, loader.tolerances().equation, Some("ExtractionFailure"));
    bicharacter_entries(&v, loader, &mut report);
    report.wall_time = start.elapsed();
    let to = out_dir(out);
    let file = bicharacter_file(&v, rebase_ref(&f1.source, parent(v1), to), rebase_ref(&f2.target, parent(v2), to));
    Ok((report, file))
}

/// The reference to the dual of a quantum group: the other picture for group
/// specifications, otherwise the dual unitary inline.
fn dual_ref(r: &QgRef, base: &Path, loader: &Loader) -> Result<QgRef> {
    let spec = match r {
        QgRef::Inline(spec) => spec.clone(),
        QgRef::Path(p) => read_json(&base.join(p))?,
    };
    Ok(QgRef::Inline(match spec {
        QgSpec::Group { group, picture } => {
            let picture = match picture {
                Picture::C0 => Picture::Cstar,
                Picture::Cstar => Picture::C0,
            };
            QgSpec::Group { group, picture }
        }
        QgSpec::Unitary { .. } => {
            let qg = loader.resolve(r, base)?;
            QgSpec::Unitary { dim: qg.dim(), w: dual_unitary(qg.w(), qg.dim()) }
        }
    }))
}

/// Dualizes the bicharacter in `path`, from `C → A` to `Â → Ĉ`.
pub fn dual(path: &Path, loader: &Loader) -> Result<(Report, BicharacterFile)> {
    let start = Instant::now();
    let tol = loader.tolerances();
    let v = loader.load_bicharacter(path)?;
    let file: BicharacterFile = read_json(path)?;
    let base = parent(path);
    let (source, target) = (dual_ref(&file.target, base, loader)?, dual_ref(&file.source, base, loader)?);
    let (a_hat, c_hat) = (loader.resolve(&source, Path::new("."))?, loader.resolve(&target, Path::new("."))?);
    let d = dual_bicharacter_with(&v, &a_hat, &c_hat, tol)?;
    let mut report = Report::new(path.display().to_string(), Some("bicharacter"));
    bicharacter_entries(&d, loader, &mut report);
    let back = dual_bicharacter(&d, tol).map(|dd| relative_residual(dd.v(), v.v()));
    report.attempt("double-dual", tol.equation, back)?;
    report.wall_time = start.elapsed();
    Ok((report, bicharacter_file(&d, source, target)))
}

/// Loads a right homomorphism from a hom file of any kind or from a bicharacter file,
/// together with its target reference.
fn load_right(path: &Path, loader: &Loader) -> Result<(RightQGHom, QgRef)> {
    let tol = loader.tolerances();
    let value: Value = read_json(path)?;
    match Kind::detect(&value) {
        Some(Kind::Bicharacter) => {
            let file: BicharacterFile = read_json(path)?;
            Ok((right_from_bicharacter(&loader.load_bicharacter(path)?, tol)?, file.target))
        }
        Some(Kind::Hom) => {
            let file: HomFile = read_json(path)?;
            let dr = match loader.load_hom(path)? {
                AnyHom::Right(dr) => dr,
                AnyHom::Hopf(f) => right_from_bicharacter(&from_hopf_hom(&f, tol)?, tol)?,
                AnyHom::Left(dl) => right_from_bicharacter(&bicharacter_from_left(&dl, tol)?, tol)?,
            };
            Ok((dr, file.target))
        }
        _ => Err(Error::Format(format!("{}: expected a homomorphism or bicharacter file", path.display()))),
    }
}

/// Induces the coaction in `coaction` along the homomorphism in `hom`.
pub fn induce(coaction: &Path, hom: &Path, out: Option<&Path>, loader: &Loader) -> Result<(Report, CoactionFile)> {
    let start = Instant::now();
    let gamma = loader.load_coaction(coaction)?;
    let (dr, target) = load_right(hom, loader)?;
    let induced = induce_coaction_detailed(&gamma, &dr, loader.tolerances())?;
    let mut report = Report::new(format!("{} along {}", coaction.display(), hom.display()), Some("coaction"));
    report.push("rank-deficit", induced.rank_deficit as f64, 0.0, Some("SolveFailure"));
    report.extend("", induced.coaction.checks(), "CoactionViolation");
    report.wall_time = start.elapsed();
    Ok((report, coaction_file(&induced.coaction, rebase_ref(&target, parent(hom), out_dir(out)))))
}
