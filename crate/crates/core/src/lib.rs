//! Exact tools for symmetric polynomial systems over finite fields.

pub mod counting;
pub mod fields;
pub mod linalg;
pub mod literal;
pub mod multipoly;
pub mod patterns;
pub mod rscodes;
pub mod ring;
pub mod systems;
pub mod unipoly;
pub mod suites;
