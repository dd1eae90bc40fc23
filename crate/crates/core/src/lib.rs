//! Harmonic analysis on p-adic Vilenkin groups: exact group and character
//! arithmetic, Fourier transforms of step functions on finite coset grids,
//! refinement masks, and orthogonal multiresolution analysis (MRA) checks.
//!
//! The group is the direct sum of cyclic groups of a fixed prime order `p`
//! over integer positions: elements are digit vectors added coordinate-wise
//! mod `p` with no carries. Characters are finite words in the Rademacher
//! functions `r_n`. Everything discrete (digits, exponents, pairings) is
//! computed in exact integer arithmetic; complex values appear only in the
//! dense value tables, entered through a table of the `p`-th roots of unity.
//!
//! All types are immutable after construction and all operations are pure,
//! so values can be shared freely across threads.
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the default
//! `std` feature for embedded or wasm targets.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod group;
pub mod mask;
pub mod mra;
pub mod stepfun;

mod roots;

pub use group::{CharacterWord, GroupElement, GroupParams};
pub use mask::{CoefficientVector, Mask, ValidityReport, ZeroSet};
pub use mra::{AtlasEntry, Catalog, ElementarySpec, EnumerationConfig, MraReport};
pub use num_complex::Complex64;
pub use stepfun::{Grid, SpectralFunction, StepFunction};

/// Default zero tolerance for "vanishes on a coset" and "sums to one"
/// decisions. All sums involved have at most `p^(N+M)` unit-modulus terms,
/// so accumulated rounding stays far below this at desk scales.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("digit {digit} out of range for p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },
    #[error("mismatched group orders: p = {left} vs p = {right}")]
    ParamsMismatch { left: u32, right: u32 },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("table of {0} entries exceeds the addressable size")]
    GridTooLarge(u128),
    #[error("value table has {got} entries, grid needs {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shift by an element with a digit at position {position} leaves the support grid")]
    ShiftOutsideSupport { position: i32 },
    #[error("dilation by {0} leaves the representable grid range")]
    DilationOutOfRange(i32),
    #[error("embedding must not shrink the grid")]
    InvalidEmbedding,
    #[error("mask value at the identity coset must be 1 (got modulus deviation {0:e})")]
    UnitValueRequired(f64),
    #[error("invalid elementary spec: {0}")]
    InvalidSpec(alloc::string::String),
    #[error("no M <= {m_max} gives the scaling product finite support")]
    NoFiniteSupport { m_max: u32 },
    #[error("enumeration of {required} patterns exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
