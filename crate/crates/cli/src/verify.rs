//! Full invariant suites for each kind of file.

use std::path::Path;
use std::time::Instant;

use pentagon_core::bicharacter::{
    bicharacter_residuals, check_bicharacter, check_r_invariance, dual_bicharacter, from_hopf_hom, identity,
};
use pentagon_core::coactions::{check_coaction, coaction_checks, induce_coaction_detailed};
use pentagon_core::groups::{build_group_from_spec, hom_to_hopf, qg_from_group, GroupHom, GroupSpec, Picture};
use pentagon_core::homviews::{
    bicharacter_from_left_with_residual, bicharacter_from_right_with_residual, check_hopf_hom, check_left_hom,
    check_left_right_compatibility, check_right_hom, dual_hopf_relation, hopf_hom_checks, left_from_bicharacter, left_hom_checks,
    left_leg_equation, right_from_bicharacter, right_hom_checks, right_leg_equation,
};
use pentagon_core::io::{
    algebra_from_spec, parent, read_json, BicharacterFile, CoactionFile, HomFile, HomKind, Loader, QgSpec, BASIS_CONVENTION,
};
use pentagon_core::qgroup::{
    build_from_unitary, invariant_dimension, manageability_witness, pentagon_residual, transpose_qg, InvariantSide,
};
use pentagon_core::tensorleg::{intertwiner_space, relative_residual};
use pentagon_core::{Error, QuantumGroup, Result, Tolerances};
use serde_json::Value;

use crate::report::Report;

/// Kinds of file the verifier understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Group,
    Qg,
    Bicharacter,
    Hom,
    Coaction,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Qg => "qg",
            Kind::Bicharacter => "bicharacter",
            Kind::Hom => "hom",
            Kind::Coaction => "coaction",
        }
    }

    /// Guesses the kind from the top-level keys of a JSON object.
    pub fn detect(value: &Value) -> Option<Kind> {
        let obj = value.as_object()?;
        let has = |k: &str| obj.contains_key(k);
        if has("order") && has("table") {
            Some(Kind::Group)
        } else if (has("dim") && has("W")) || (has("group") && has("picture")) {
            Some(Kind::Qg)
        } else if has("V") {
            Some(Kind::Bicharacter)
        } else if has("kind") && has("matrix") {
            Some(Kind::Hom)
        } else if has("D") && has("gamma") {
            Some(Kind::Coaction)
        } else {
            None
        }
    }
}

/// Verifies one file. Structural problems are returned as errors; verification
/// failures are recorded in the report.
pub fn verify_file(path: &Path, kind: Option<Kind>, loader: &Loader) -> Result<Report> {
    let start = Instant::now();
    let kind = match kind {
        Some(k) => k,
        None => {
            let value: Value = read_json(path)?;
            Kind::detect(&value).ok_or_else(|| Error::Format(format!("{}: unrecognised file kind", path.display())))?
        }
    };
    let mut report = Report::new(path.display().to_string(), Some(kind.name()));
    let tol = loader.tolerances();
    match kind {
        Kind::Group => group_checks(&read_json(path)?, tol, &mut report)?,
        Kind::Qg => qg_spec_checks(&read_json(path)?, tol, &mut report)?,
        Kind::Bicharacter => bicharacter_file_checks(&read_json(path)?, parent(path), loader, &mut report)?,
        Kind::Hom => hom_file_checks(&read_json(path)?, parent(path), loader, &mut report)?,
        Kind::Coaction => coaction_file_checks(&read_json(path)?, parent(path), loader, &mut report)?,
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Resolves a reference, recording a build failure as a failing entry.
fn resolve(
    loader: &Loader,
    r: &pentagon_core::io::QgRef,
    base: &Path,
    name: &str,
    report: &mut Report,
) -> Result<Option<QuantumGroup>> {
    match loader.resolve(r, base) {
        Ok(qg) => Ok(Some(qg)),
        Err(e) => {
            report.record_error(name, 0.0, &e)?;
            Ok(None)
        }
    }
}

pub fn qg_spec_checks(spec: &QgSpec, tol: &Tolerances, report: &mut Report) -> Result<()> {
    let qg = match spec {
        QgSpec::Unitary { dim, w } => {
            if w.shape() != (dim * dim, dim * dim) {
                return Err(Error::DimensionMismatch(format!("W is {}x{} but dim is {dim}", w.rows(), w.cols())));
            }
            // the builder stops at the first violation; report both basic residuals first
            report.push("unitarity", w.unitarity_residual(), tol.exact, Some("NotUnitary"));
            report.push("pentagon", pentagon_residual(w)?, tol.exact, Some("PentagonViolation"));
            if !report.pass() {
                return Ok(());
            }
            report.checks.clear();
            build_from_unitary(w.clone(), tol)
        }
        QgSpec::Group { group, picture } => match build_group_from_spec(group) {
            Ok(g) => qg_from_group(&g, *picture, tol),
            Err(e) => return report.record_error("group-axioms", 0.0, &e),
        },
    };
    match qg {
        Ok(qg) => qg_checks(&qg, "", tol, report),
        Err(e) => report.record_error("construction", 0.0, &e),
    }
}

/// Build residuals, manageability, the scalar intertwiner and invariant spaces,
/// and antipode invariance of the identity arrow.
pub fn qg_checks(qg: &QuantumGroup, prefix: &str, tol: &Tolerances, report: &mut Report) -> Result<()> {
    let r = qg.residuals();
    let closure = Some("AlgebraNotClosed");
    report.push(format!("{prefix}unitarity"), r.unitarity, tol.exact, Some("NotUnitary"));
    report.push(format!("{prefix}pentagon"), r.pentagon, tol.exact, Some("PentagonViolation"));
    report.push(format!("{prefix}closure-C"), r.closure_c, tol.membership, closure);
    report.push(format!("{prefix}closure-C-hat"), r.closure_chat, tol.membership, closure);
    report.push(format!("{prefix}range-C"), r.range_c, tol.membership, closure);
    report.push(format!("{prefix}range-C-hat"), r.range_chat, tol.membership, closure);
    report.push(format!("{prefix}coassociativity-C"), r.coassociativity_c, tol.equation, closure);
    report.push(format!("{prefix}coassociativity-C-hat"), r.coassociativity_chat, tol.equation, closure);
    report.attempt(&format!("{prefix}manageability"), tol.exact, manageability_witness(qg, tol).map(|m| m.residual))?;

    // dimensions beyond the scalars, which must be zero
    let excess = |d: usize| d.abs_diff(1) as f64;
    let space = intertwiner_space(qg.w(), qg.dim(), tol.rank)?;
    report.push(format!("{prefix}intertwiner-excess"), excess(space.dimension), 0.0, None);
    report.push(format!("{prefix}left-invariant-excess"), excess(invariant_dimension(qg, InvariantSide::Left, tol)), 0.0, None);
    report.push(format!("{prefix}right-invariant-excess"), excess(invariant_dimension(qg, InvariantSide::Right, tol)), 0.0, None);
    report.attempt(
        &format!("{prefix}identity-antipode-invariance"),
        tol.equation,
        identity(qg, tol).and_then(|v| check_r_invariance(&v)),
    )?;
    Ok(())
}

/// Both pictures of the group, the dual Hopf relation of its identity, and the transposes.
pub fn group_checks(spec: &GroupSpec, tol: &Tolerances, report: &mut Report) -> Result<()> {
    let g = match build_group_from_spec(spec) {
        Ok(g) => g,
        Err(e) => return report.record_error("group-axioms", 0.0, &e),
    };
    for (picture, prefix) in [(Picture::C0, "c0/"), (Picture::Cstar, "cstar/")] {
        match qg_from_group(&g, picture, tol) {
            Ok(qg) => {
                qg_checks(&qg, prefix, tol, report)?;
                let transpose = transpose_qg(&qg, tol).map(|(_, v)| {
                    let r = v.residuals();
                    r.operator_source.max(r.operator_target)
                });
                report.attempt(&format!("{prefix}transpose-bicharacter"), tol.exact, transpose)?;
            }
            Err(e) => report.record_error(&format!("{prefix}construction"), 0.0, &e)?,
        }
    }
    let id = GroupHom::identity(&g);
    let relation = hom_to_hopf(&id, Picture::C0, tol)
        .and_then(|f| hom_to_hopf(&id, Picture::Cstar, tol).and_then(|fhat| dual_hopf_relation(&f, &fhat)));
    report.attempt("dual-hopf-relation", tol.equation, relation)?;
    Ok(())
}

pub fn bicharacter_file_checks(file: &BicharacterFile, base: &Path, loader: &Loader, report: &mut Report) -> Result<()> {
    let tol = *loader.tolerances();
    let (Some(c), Some(a)) =
        (resolve(loader, &file.source, base, "source", report)?, resolve(loader, &file.target, base, "target", report)?)
    else {
        return Ok(());
    };
    let residuals = bicharacter_residuals(&file.v, &c, &a)?;
    for (name, r, t) in residuals.entries(&tol) {
        report.push(name, r, t, Some("BicharacterViolation"));
    }
    if !report.pass() {
        return Ok(());
    }
    let v = check_bicharacter(file.v.clone(), &c, &a, &tol)?;
    report.attempt("antipode-invariance", tol.equation, check_r_invariance(&v))?;

    let right = right_from_bicharacter(&v, &tol);
    let right_trip = right.clone().and_then(|dr| {
        let (back, extraction) = bicharacter_from_right_with_residual(&dr, &tol)?;
        Ok(extraction.max(relative_residual(back.v(), v.v())).max(right_leg_equation(&dr, &v)?))
    });
    report.attempt("right-round-trip", tol.equation, right_trip)?;
    let left = left_from_bicharacter(&v, &tol);
    let left_trip = left.clone().and_then(|dl| {
        let (back, extraction) = bicharacter_from_left_with_residual(&dl, &tol)?;
        Ok(extraction.max(relative_residual(back.v(), v.v())).max(left_leg_equation(&dl, &v)?))
    });
    report.attempt("left-round-trip", tol.equation, left_trip)?;
    if let (Ok(dl), Ok(dr)) = (left, right) {
        let compat = check_left_right_compatibility(&dl, &dr, &tol)?;
        report.push("left-right-square", compat.square, tol.equation, None);
        report.push("left-right-cross", compat.cross.unwrap_or(f64::INFINITY), tol.equation, None);
    }
    let double = dual_bicharacter(&v, &tol).and_then(|d| dual_bicharacter(&d, &tol)).map(|dd| relative_residual(dd.v(), v.v()));
    report.attempt("double-dual", tol.equation, double)?;
    Ok(())
}

pub fn hom_file_checks(file: &HomFile, base: &Path, loader: &Loader, report: &mut Report) -> Result<()> {
    let tol = *loader.tolerances();
    if file.basis_convention != BASIS_CONVENTION {
        return Err(Error::Format(format!("unsupported basis convention {:?}", file.basis_convention)));
    }
    let (Some(c), Some(a)) =
        (resolve(loader, &file.source, base, "source", report)?, resolve(loader, &file.target, base, "target", report)?)
    else {
        return Ok(());
    };
    match file.kind {
        HomKind::Hopf => {
            report.extend("", &hopf_hom_checks(&c, &a, &file.matrix, &tol)?, "HopfHomViolation");
            if report.pass() {
                let f = check_hopf_hom(&c, &a, file.matrix.clone(), &tol)?;
                let v = from_hopf_hom(&f, &tol).map(|v| v.residuals().operator_source.max(v.residuals().operator_target));
                report.attempt("bicharacter", tol.equation, v)?;
            }
        }
        HomKind::Right => {
            report.extend("", &right_hom_checks(&c, &a, &file.matrix, &tol)?, "HomViolation");
            if report.pass() {
                let dr = check_right_hom(&c, &a, file.matrix.clone(), &tol)?;
                let trip = bicharacter_from_right_with_residual(&dr, &tol)
                    .and_then(|(v, extraction)| Ok(extraction.max(right_leg_equation(&dr, &v)?)));
                report.attempt("bicharacter", tol.equation, trip)?;
            }
        }
        HomKind::Left => {
            report.extend("", &left_hom_checks(&c, &a, &file.matrix, &tol)?, "HomViolation");
            if report.pass() {
                let dl = check_left_hom(&c, &a, file.matrix.clone(), &tol)?;
                let trip = bicharacter_from_left_with_residual(&dl, &tol)
                    .and_then(|(v, extraction)| Ok(extraction.max(left_leg_equation(&dl, &v)?)));
                report.attempt("bicharacter", tol.equation, trip)?;
            }
        }
    }
    Ok(())
}

pub fn coaction_file_checks(file: &CoactionFile, base: &Path, loader: &Loader, report: &mut Report) -> Result<()> {
    let tol = *loader.tolerances();
    let Some(c) = resolve(loader, &file.qg, base, "qg", report)? else {
        return Ok(());
    };
    let d = algebra_from_spec(&file.d, &tol)?;
    report.extend("", &coaction_checks(&file.gamma, &d, &c, &tol)?, "CoactionViolation");
    if !report.pass() {
        return Ok(());
    }
    // inducing along the identity arrow gives the coaction back
    let gamma = check_coaction(file.gamma.clone(), &d, &c, &tol)?;
    let induced = identity(&c, &tol)
        .and_then(|w| right_from_bicharacter(&w, &tol))
        .and_then(|dr| induce_coaction_detailed(&gamma, &dr, &tol));
    match induced {
        Ok(ind) => {
            report.push("identity-induction-solve", ind.solve_residual, tol.equation, None);
            report.push("identity-induction", relative_residual(ind.coaction.matrix(), gamma.matrix()), tol.equation, None);
        }
        Err(e) => report.record_error("identity-induction", tol.equation, &e)?,
    }
    Ok(())
}
