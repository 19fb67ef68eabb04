use thiserror::Error;

/// Failures raised by construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid leg specification: {0}")]
    InvalidLegs(String),
    #[error("leg extraction failed: residual {residual:.3e} exceeds {tolerance:.3e}")]
    ExtractionFailure { residual: f64, tolerance: f64 },
    #[error("not unitary: residual {0:.3e}")]
    NotUnitary(f64),
    #[error("pentagon equation violated: residual {0:.3e}")]
    PentagonViolation(f64),
    #[error("slice span is not a *-algebra or not preserved by the comultiplication: {what} residual {residual:.3e}")]
    AlgebraNotClosed { what: String, residual: f64 },
    #[error("not manageable: transposed unitary has unitarity residual {0:.3e}")]
    NotManageable(f64),
    #[error("not of Kac type: {0}")]
    NotKacType(String),
    #[error("bicharacter equation {equation} violated: residual {residual:.3e}")]
    BicharacterViolation { equation: String, residual: f64 },
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("Hopf *-homomorphism condition {condition} violated: residual {residual:.3e}")]
    HopfHomViolation { condition: String, residual: f64 },
    #[error("right/left homomorphism leaves the expected tensor product: residual {0:.3e}")]
    RangeViolation(f64),
    #[error("quantum group homomorphism condition {condition} violated: residual {residual:.3e}")]
    HomViolation { condition: String, residual: f64 },
    #[error("coaction condition {condition} violated: residual {residual:.3e}")]
    CoactionViolation { condition: String, residual: f64 },
    #[error("induced coaction solve failed: {0}")]
    SolveFailure(String),
    #[error("corepresentation recovery failed: {0}")]
    RecoveryFailure(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group is not abelian: {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("invalid group homomorphism: {0}")]
    InvalidGroupHom(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, as used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidLegs(_) => "InvalidLegs",
            Error::ExtractionFailure { .. } => "ExtractionFailure",
            Error::NotUnitary(_) => "NotUnitary",
            Error::PentagonViolation(_) => "PentagonViolation",
            Error::AlgebraNotClosed { .. } => "AlgebraNotClosed",
            Error::NotManageable(_) => "NotManageable",
            Error::NotKacType(_) => "NotKacType",
            Error::BicharacterViolation { .. } => "BicharacterViolation",
            Error::SourceTargetMismatch(_) => "SourceTargetMismatch",
            Error::HopfHomViolation { .. } => "HopfHomViolation",
            Error::RangeViolation(_) => "RangeViolation",
            Error::HomViolation { .. } => "HomViolation",
            Error::CoactionViolation { .. } => "CoactionViolation",
            Error::SolveFailure(_) => "SolveFailure",
            Error::RecoveryFailure(_) => "RecoveryFailure",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotAbelian(_, _) => "NotAbelian",
            Error::InvalidGroupHom(_) => "InvalidGroupHom",
            Error::Format(_) => "Format",
        }
    }

    /// The offending residual, for violations that carry one.
    pub fn residual(&self) -> Option<f64> {
        match self {
            Error::ExtractionFailure { residual, .. }
            | Error::AlgebraNotClosed { residual, .. }
            | Error::BicharacterViolation { residual, .. }
            | Error::HopfHomViolation { residual, .. }
            | Error::HomViolation { residual, .. }
            | Error::CoactionViolation { residual, .. } => Some(*residual),
            Error::NotUnitary(r) | Error::PentagonViolation(r) | Error::NotManageable(r) | Error::RangeViolation(r) => Some(*r),
            _ => None,
        }
    }

    /// Malformed input as opposed to a failed verification.
    pub fn is_structural(&self) -> bool {
        matches!(self, Error::DimensionMismatch(_) | Error::InvalidLegs(_) | Error::SourceTargetMismatch(_) | Error::Format(_))
    }
}
