//! Runs every verification over a corpus directory.
//!
//! Each JSON file is one subject. The bicharacter files that pass on their own
//! are then checked together for the category laws and duality under the subject
//! `<category>`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use pentagon_core::bicharacter::{compose, compose_with_residual, dual_bicharacter, identity, Bicharacter};
use pentagon_core::io::Loader;
use pentagon_core::tensorleg::relative_residual;
use pentagon_core::{Error, Result};
use rayon::prelude::*;

use crate::report::{Report, SuiteReport};
use crate::verify::{verify_file, Kind};

/// Every `.json` file below `dir`, sorted.
pub fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let entries = std::fs::read_dir(&d).map_err(|e| Error::Format(format!("{}: {e}", d.display())))?;
        for entry in entries {
            let path = entry.map_err(|e| Error::Format(e.to_string()))?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|x| x == "json") {
                out.push(path);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Verifies every file under `dir`; problems with individual files are failures
/// of their subjects, not of the run.
pub fn run_suite(dir: &Path, loader: &Loader) -> Result<SuiteReport> {
    let start = Instant::now();
    let files = json_files(dir)?;
    let name = |p: &Path| p.strip_prefix(dir).unwrap_or(p).display().to_string();
    let mut reports: Vec<(Report, Option<Kind>)> = files
        .par_iter()
        .map(|path| {
            let value = pentagon_core::io::read_json::<serde_json::Value>(path).ok();
            let kind = value.as_ref().and_then(Kind::detect);
            let mut report = match verify_file(path, kind, loader) {
                Ok(r) => r,
                Err(e) => {
                    let mut r = Report::new("", kind.map(Kind::name));
                    r.error = Some(e.to_string());
                    r
                }
            };
            report.subject = name(path);
            (report, kind)
        })
        .collect();

    let bicharacters: Vec<Bicharacter> = files
        .iter()
        .zip(&reports)
        .filter(|(_, (r, k))| *k == Some(Kind::Bicharacter) && r.pass())
        .filter_map(|(p, _)| loader.load_bicharacter(p).ok())
        .collect();
    if !bicharacters.is_empty() {
        reports.push((category_report(&bicharacters, loader), None));
    }
    Ok(SuiteReport {
        subject: dir.display().to_string(),
        reports: reports.into_iter().map(|(r, _)| r).collect(),
        wall_time: start.elapsed(),
    })
}

/// Composition, identity laws, associativity and contravariance of duality over
/// all composable chains of the given bicharacters.
pub fn category_report(arrows: &[Bicharacter], loader: &Loader) -> Report {
    let start = Instant::now();
    let tol = loader.tolerances();
    let mut report = Report::new("<category>", None);
    let n = arrows.len();
    let composable = |i: usize, j: usize| arrows[i].target().same_as(arrows[j].source());
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| composable(i, j)).collect();

    let worst = |xs: Vec<f64>| xs.into_iter().fold(0.0f64, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) });
    let composed: Vec<Result<(Bicharacter, f64)>> =
        pairs.par_iter().map(|&(i, j)| compose_with_residual(&arrows[i], &arrows[j], tol)).collect();
    let extraction = worst(composed.iter().map(|r| r.as_ref().map_or(f64::INFINITY, |x| x.1)).collect());
    report.push(format!("composition-extraction ({} pairs)", pairs.len()), extraction, tol.equation, Some("ExtractionFailure"));

    let identities = worst(
        arrows
            .par_iter()
            .map(|v| {
                let laws = || -> Result<f64> {
                    let left = compose(&identity(v.source(), tol)?, v, tol)?;
                    let right = compose(v, &identity(v.target(), tol)?, tol)?;
                    Ok(relative_residual(left.v(), v.v()).max(relative_residual(right.v(), v.v())))
                };
                laws().unwrap_or(f64::INFINITY)
            })
            .collect(),
    );
    report.push("identity-laws", identities, tol.equation, None);

    let triples: Vec<(usize, usize, usize)> =
        pairs.iter().flat_map(|&(i, j)| (0..n).filter(move |&k| composable(j, k)).map(move |k| (i, j, k))).collect();
    let assoc = worst(
        triples
            .par_iter()
            .map(|&(i, j, k)| {
                let (a, b, c) = (&arrows[i], &arrows[j], &arrows[k]);
                let both = || -> Result<f64> {
                    let left = compose(&compose(a, b, tol)?, c, tol)?;
                    let right = compose(a, &compose(b, c, tol)?, tol)?;
                    Ok(relative_residual(left.v(), right.v()))
                };
                both().unwrap_or(f64::INFINITY)
            })
            .collect(),
    );
    report.push(format!("associativity ({} triples)", triples.len()), assoc, tol.equation, None);

    let contra = worst(
        pairs
            .par_iter()
            .zip(&composed)
            .map(|(&(i, j), ab)| {
                let check = || -> Result<f64> {
                    let lhs = dual_bicharacter(&ab.as_ref().map_err(Clone::clone)?.0, tol)?;
                    let (a_hat, b_hat) = (dual_bicharacter(&arrows[i], tol)?, dual_bicharacter(&arrows[j], tol)?);
                    Ok(relative_residual(lhs.v(), compose(&b_hat, &a_hat, tol)?.v()))
                };
                check().unwrap_or(f64::INFINITY)
            })
            .collect(),
    );
    report.push("dual-contravariance", contra, tol.equation, None);
    report.wall_time = start.elapsed();
    report
}
