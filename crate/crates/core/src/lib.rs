//! Exact computations with Eisenbud operators over Artinian local
//! ℚ-algebras that carry an exact pair of zero divisors `(f, g)`.
//!
//! The pipeline runs: a local algebra `Q` and a finite module `M` over
//! `R = Q/(f)`; the Tate algebra `A` resolving `R` over `Q`; a semi-free
//! resolution `U → M` over `A`; its lifting `V` (a complex of free
//! `Q`-modules that becomes a free resolution after `⊗ R`); the Eisenbud
//! operator `τ` on `V ⊗ S` with `S = Q/(f, g)`; its mapping cone `W`; and
//! the two long exact sequences tying `Tor^Q(M, N)`, `Tor^R(M, N)` and
//! `H(W ⊗ N)` together.
//!
//! Everything is exact rational arithmetic. Resolutions are built up to a
//! cap degree; homology is reported only where the truncation does not
//! affect it.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod eisenbud;
pub mod error;
pub mod free;
pub mod linalg;
pub mod modules;
pub mod poincare;
pub mod resolution;
pub mod series;
pub mod tate;

pub use algebra::{AlgElem, AlgIdeal, ExactPairCertificate, LocalAlgebra, QuotientData};
pub use eisenbud::{ExactPairSetup, Pipeline, SequencesReport};
pub use error::{Error, ErrorKind, Result};
pub use linalg::{Mat, Rat, Subspace};
pub use modules::{FDModule, ModMap};
pub use series::TruncatedSeries;
