/// Thresholds for relative Frobenius residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Unitarity, the pentagon equation and other identities that hold exactly in exact arithmetic.
    pub exact: f64,
    /// Diagram equations, bicharacter equations, leg extraction and round trips.
    pub equation: f64,
    /// Membership of an operator in an algebra span.
    pub membership: f64,
    /// Relative singular value cutoff for ranks and nullspaces.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-10, equation: 1e-9, membership: 1e-8, rank: 1e-9 }
    }
}

impl Tolerances {
    /// Same threshold for every residual; the rank cutoff keeps its default.
    pub fn uniform(tol: f64) -> Self {
        Self { exact: tol, equation: tol, membership: tol, ..Self::default() }
    }
}
