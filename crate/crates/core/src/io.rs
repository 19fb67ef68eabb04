//! JSON file formats for groups, quantum groups, bicharacters, homomorphisms and coactions.
//!
//! A quantum group reference is either a path (resolved against the directory of
//! the referring file) or an inline quantum group object.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::bicharacter::{check_bicharacter, Bicharacter};
use crate::coactions::{check_coaction, Coaction};
use crate::error::{Error, Result};
use crate::groups::{build_group_from_spec, qg_from_group, GroupSpec, Picture};
use crate::homviews::{check_hopf_hom, check_left_hom, check_right_hom, HopfHom, LeftQGHom, RightQGHom};
use crate::qgroup::{build_from_unitary, QuantumGroup};
use crate::span::OperatorSpan;
use crate::tensorleg::ComplexMatrix;
use crate::tolerance::Tolerances;

/// The only basis convention written and accepted for coefficient matrices.
pub const BASIS_CONVENTION: &str = "orthonormalized-slice";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QgSpec {
    Unitary {
        dim: usize,
        #[serde(rename = "W")]
        w: ComplexMatrix,
    },
    Group {
        group: GroupSpec,
        picture: Picture,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QgRef {
    Path(String),
    Inline(QgSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicharacterFile {
    pub source: QgRef,
    pub target: QgRef,
    #[serde(rename = "V")]
    pub v: ComplexMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    Hopf,
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomFile {
    pub kind: HomKind,
    pub source: QgRef,
    pub target: QgRef,
    pub matrix: ComplexMatrix,
    pub basis_convention: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub basis: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoactionFile {
    #[serde(rename = "D")]
    pub d: AlgebraSpec,
    pub qg: QgRef,
    pub gamma: ComplexMatrix,
}

/// A validated homomorphism of any of the three kinds.
#[derive(Clone, Debug)]
pub enum AnyHom {
    Hopf(HopfHom),
    Right(RightQGHom),
    Left(LeftQGHom),
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn qg_from_spec(spec: &QgSpec, tol: &Tolerances) -> Result<QuantumGroup> {
    match spec {
        QgSpec::Unitary { dim, w } => {
            if w.shape() != (dim * dim, dim * dim) {
                return Err(Error::DimensionMismatch(format!("W is {}x{} but dim is {dim}", w.rows(), w.cols())));
            }
            build_from_unitary(w.clone(), tol)
        }
        QgSpec::Group { group, picture } => qg_from_group(&build_group_from_spec(group)?, *picture, tol),
    }
}

/// Loads files and resolves quantum group references, building each referenced
/// file or inline specification once. Safe to share between threads.
#[derive(Debug)]
pub struct Loader {
    tol: Tolerances,
    files: Mutex<HashMap<PathBuf, QuantumGroup>>,
    inline: Mutex<HashMap<String, QuantumGroup>>,
}

impl Loader {
    pub fn new(tol: Tolerances) -> Self {
        Self { tol, files: Mutex::default(), inline: Mutex::default() }
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn resolve(&self, r: &QgRef, base: &Path) -> Result<QuantumGroup> {
        match r {
            QgRef::Inline(spec) => {
                let key = serde_json::to_string(spec).map_err(|e| Error::Format(e.to_string()))?;
                if let Some(qg) = self.inline.lock().unwrap().get(&key) {
                    return Ok(qg.clone());
                }
                let qg = qg_from_spec(spec, &self.tol)?;
                self.inline.lock().unwrap().insert(key, qg.clone());
                Ok(qg)
            }
            QgRef::Path(p) => self.load_qg(&base.join(p)),
        }
    }

    pub fn load_qg(&self, path: &Path) -> Result<QuantumGroup> {
        let key = path.canonicalize().map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        if let Some(qg) = self.files.lock().unwrap().get(&key) {
            return Ok(qg.clone());
        }
        let spec: QgSpec = read_json(path)?;
        let qg = qg_from_spec(&spec, &self.tol)?;
        self.files.lock().unwrap().insert(key, qg.clone());
        Ok(qg)
    }

    pub fn load_bicharacter(&self, path: &Path) -> Result<Bicharacter> {
        let file: BicharacterFile = read_json(path)?;
        let base = parent(path);
        let c = self.resolve(&file.source, base)?;
        let a = self.resolve(&file.target, base)?;
        check_bicharacter(file.v, &c, &a, &self.tol)
    }

    pub fn load_hom(&self, path: &Path) -> Result<AnyHom> {
        let file: HomFile = read_json(path)?;
        if file.basis_convention != BASIS_CONVENTION {
            return Err(Error::Format(format!("unsupported basis convention {:?}", file.basis_convention)));
        }
        let base = parent(path);
        let c = self.resolve(&file.source, base)?;
        let a = self.resolve(&file.target, base)?;
        Ok(match file.kind {
            HomKind::Hopf => AnyHom::Hopf(check_hopf_hom(&c, &a, file.matrix, &self.tol)?),
            HomKind::Right => AnyHom::Right(check_right_hom(&c, &a, file.matrix, &self.tol)?),
            HomKind::Left => AnyHom::Left(check_left_hom(&c, &a, file.matrix, &self.tol)?),
        })
    }

    pub fn load_coaction(&self, path: &Path) -> Result<Coaction> {
        let file: CoactionFile = read_json(path)?;
        let c = self.resolve(&file.qg, parent(path))?;
        let d = algebra_from_spec(&file.d, &self.tol)?;
        check_coaction(file.gamma, &d, &c, &self.tol)
    }
}

pub fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

pub fn algebra_from_spec(spec: &AlgebraSpec, tol: &Tolerances) -> Result<OperatorSpan> {
    let dim = spec.basis.first().map(|b| b.rows()).ok_or_else(|| Error::Format("algebra basis is empty".into()))?;
    if spec.basis.iter().any(|b| b.shape() != (dim, dim)) {
        return Err(Error::DimensionMismatch("algebra basis elements differ in size".into()));
    }
    OperatorSpan::from_orthonormal(dim, spec.basis.clone(), tol.exact.max(tol.equation))
        .ok_or_else(|| Error::Format("algebra basis is not orthonormal for the Hilbert-Schmidt inner product".into()))
}

pub fn algebra_spec(d: &OperatorSpan) -> AlgebraSpec {
    AlgebraSpec { basis: d.basis().to_vec() }
}

pub fn bicharacter_file(v: &Bicharacter, source: QgRef, target: QgRef) -> BicharacterFile {
    BicharacterFile { source, target, v: v.v().clone() }
}

pub fn hom_file(kind: HomKind, matrix: &ComplexMatrix, source: QgRef, target: QgRef) -> HomFile {
    HomFile { kind, source, target, matrix: matrix.clone(), basis_convention: BASIS_CONVENTION.to_string() }
}

pub fn coaction_file(gamma: &Coaction, qg: QgRef) -> CoactionFile {
    CoactionFile { d: algebra_spec(gamma.algebra()), qg, gamma: gamma.matrix().clone() }
}

/// Rewrites a path reference read relative to `from` so it resolves relative to `to`.
pub fn rebase_ref(r: &QgRef, from: &Path, to: &Path) -> QgRef {
    match r {
        QgRef::Inline(_) => r.clone(),
        QgRef::Path(p) => {
            let joined = from.join(p);
            let abs = joined.canonicalize().unwrap_or(joined);
            let to_abs = to.canonicalize().unwrap_or_else(|_| to.to_path_buf());
            let rel = abs.strip_prefix(&to_abs).map(Path::to_path_buf).unwrap_or(abs);
            QgRef::Path(rel.to_string_lossy().into_owned())
        }
    }
}
