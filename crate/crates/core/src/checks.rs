use serde::Serialize;

/// One named residual and the threshold it is held to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance }
    }

    /// NaN residuals fail.
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Ordered collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.0.push(Check::new(name, residual, tolerance));
    }

    pub fn passed(&self) -> bool {
        self.0.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.0.iter().find(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Check> {
        self.0.iter()
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }
}
