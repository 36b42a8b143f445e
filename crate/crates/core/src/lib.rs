//! Exact root systems, Weyl reflections and affine Weyl reflection
//! decompositions for the simple finite-dimensional Lie algebras
//! `A_r, B_r, C_r, D_r, E_6, E_7, E_8, F_4, G_2`.
//!
//! All arithmetic is over the rationals. Composition of words is read right
//! to left: the rightmost letter acts first.

pub mod affine;
pub mod cli;
pub mod error;
pub mod exec;
pub mod json;
pub mod rational;
pub mod rootsys;
pub mod tables;
pub mod weyl;

pub use affine::{AffineRoot, AffineWeight, AffineWord, CanonicalAffineElement, Token};
pub use error::{Error, Result};
pub use rational::{RationalMatrix, RationalVector, Q};
pub use rootsys::{build_root_system, AlgebraFamily, Family, RootLabel, RootSystem, Sign, SignedLabel};
pub use weyl::{FiniteElement, SimpleWord};
