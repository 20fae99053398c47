//! Exact-arithmetic machinery for finite-dimensional Cartan factors.
//!
//! The crate builds the classical Cartan factors (rectangular, symplectic,
//! hermitian and spin) as concrete matrix spaces over ℚ(i), their standard
//! grids and 3-graded root systems, and the K-theoretic invariant
//! `(K₀, K₀₊, Σ_ℒ, Σ_ℛ, Δ)` used to classify direct sums of such factors.
//! Morphisms of invariants can be lifted to block-diagonal TRO
//! homomorphisms via [`lifting`].
//!
//! All arithmetic is exact; there are no floating point tolerances anywhere.

pub mod error;
pub mod expr;
pub mod factors;
pub mod grids;
pub mod invariant;
pub mod lifting;
pub mod matrix;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use expr::FactorExpression;
pub use factors::{ConcreteFactor, FactorDescriptor};
pub use grids::Grid;
pub use invariant::{K0Morphism, KJBInvariant, ScaleBox};
pub use lifting::{MultiplicityPlan, TroShape};
pub use matrix::Matrix;
pub use report::VerificationReport;
pub use roots::{GradedRootSystem, RootVector};
pub use scalar::GaussianRational;
