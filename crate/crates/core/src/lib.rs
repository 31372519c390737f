//! Homology of complexes sandwiched between consecutive skeleta of a simplex.
//!
//! A [`SkeletonComplex`] on `[n]` contains the full `(k-1)`-skeleton and some
//! `k`-faces. Reduced homology is computed over a prime field or the
//! rationals; [`bounds`] compares the top Betti number against sums of link
//! Betti numbers, and [`constructions`] builds the extremal families.

pub mod bounds;
pub mod cli;
pub mod collapse;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod laplacian;
pub mod linalg;
pub mod random;
pub mod report;
pub mod simplex;

pub use complex::{AnyComplex, Complex, FVector, GeneralComplex, SkeletonComplex};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use homology::{betti, betti_report, BettiReport};
pub use simplex::{binomial, Simplex, Vertex};
