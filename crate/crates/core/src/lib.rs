//! Jordan derivations of structural matrix rings `R_n(K, J)` over finite rings.
//!
//! The crate evaluates derivation tables on generator sets, solves for the
//! full groups of Jordan derivations and derivations by exact linear algebra,
//! builds the standard families of Jordan derivations from their parameters,
//! and decomposes an arbitrary Jordan derivation into those families.
//!
//! ```
//! use std::sync::Arc;
//! use carpet_jder::classify::{theorem_check, SolverBounds};
//! use carpet_jder::matrix::StructuralMatrixRing;
//! use carpet_jder::ring::FiniteRing;
//!
//! let k = FiniteRing::zmod(9)?;
//! let j = k.ideal_closure(&[k.element(&[3])?])?;
//! let r = Arc::new(StructuralMatrixRing::new(4, k, j)?);
//! let report = theorem_check(&r, SolverBounds::default())?;
//! assert!(report.verdict);
//! assert_eq!(report.extremal.order(), 27u32.into());
//! # Ok::<(), carpet_jder::Error>(())
//! ```

pub mod classify;
pub mod constructions;
pub mod linalg;
pub mod matrix;
pub mod ring;
pub mod table;

use linalg::GroupElement;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid modulus {modulus}")]
    InvalidModulus { modulus: u64 },
    #[error("group order or exponent does not fit in 63 bits")]
    OrderOverflow,
    #[error("elements or subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("coefficient {coefficient} on unknown {index} is not well defined modulo {modulus}")]
    IllDefinedEquation { index: usize, coefficient: i64, modulus: u64 },
    #[error("malformed ring {label}: {msg}")]
    MalformedRing { label: String, msg: String },
    #[error("subgroup is not a two-sided ideal: {witness} escapes under multiplication")]
    NotAnIdeal { witness: GroupElement },
    #[error("element does not belong to this ring")]
    ParentMismatch,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("matrix size {n} is below the minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("entry {value} at ({row},{col}) lies outside its pattern ideal")]
    PatternViolation { row: usize, col: usize, value: GroupElement },
    #[error("matrix size {n} where {expected} is required")]
    DimensionMismatch { n: usize, expected: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(constructions::Violation),
    #[error("image {image} of generator {generator} is not killed by the generator order")]
    IllDefinedImage { generator: String, image: String },
    #[error("pattern is not a carpet: I({i},{j})·I({j},{l}) is not inside I({i},{l})")]
    CarpetViolation { i: usize, j: usize, l: usize },
    #[error("coefficient ring has 2-torsion: 2·{witness} = 0")]
    TwoTorsion { witness: GroupElement },
    #[error("not a Jordan derivation: {0}")]
    NotJordan(Box<table::Counterexample>),
    #[error("stage {stage} failed: {detail}")]
    StageFailure { stage: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
