//! Command-line front end: file verification, composition, duality, induction
//! and corpus-wide suites, reported as JSON or text.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod suite;
pub mod verify;
