//! Finite quantum groups presented by multiplicative unitaries.
//!
//! A unitary `W` on `H ⊗ H` satisfying `W_23 W_12 = W_12 W_13 W_23` generates a
//! Hopf C*-algebra `C` and its dual `Ĉ`. Homomorphisms between such quantum
//! groups are bicharacters, equivalently right or left homomorphisms, and act on
//! coactions by induction. Everything is finite dimensional and checked by
//! relative Frobenius residuals.

pub mod bicharacter;
pub mod checks;
pub mod coactions;
pub mod error;
pub mod groups;
pub mod homviews;
pub mod io;
pub mod qgroup;
pub mod span;
pub mod tensorleg;
pub mod tolerance;

pub use checks::{Check, Checks};
pub use error::{Error, Result};
pub use qgroup::QuantumGroup;
pub use tensorleg::{ComplexMatrix, C64};
pub use tolerance::Tolerances;
