//! Exact algebra for decomposable ternary cubics.

pub mod brackets;
pub mod exactla;
pub mod ideals;
pub mod loci;
pub mod polyring;
pub mod repcalc;
pub mod resolution;
pub mod suite;
pub mod tableaux;
