//! Generalized inverses, Moore–Penrose inverses, Hyers–Ulam stability
//! constants and their behaviour under perturbation, for dense complex
//! matrices.
//!
//! The crate is organized bottom-up:
//!
//! * [`mat`] — complex dense matrices, one-sided Jacobi SVD, tolerant rank,
//!   spectral norm, condition-controlled inversion;
//! * [`subspace`] — null spaces, ranges, orthogonal and oblique complements;
//! * [`projector`] — oblique projectors and their orthogonalization;
//! * [`geninv`] — generalized inverses induced by a choice of complements;
//! * [`pinv`] — the Moore–Penrose inverse by two closed forms and an
//!   independent SVD oracle;
//! * [`stability`] — reduced minimum modulus, stability constants, witnesses;
//! * [`perturb`] — equivalent perturbation conditions, the closed-form
//!   perturbed pseudoinverse, special cases, and continuity sweeps;
//! * [`io`], [`report`], [`cli`] — matrix files, JSON reports, command-line
//!   front end;
//! * [`selftest`] — the seeded property suite behind `hu-stab selftest`.
//!
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod cli;
pub mod error;
pub mod geninv;
pub mod io;
pub mod mat;
pub mod perturb;
pub mod pinv;
pub mod projector;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod selftest;
pub mod stability;
pub mod subspace;

pub use error::{Error, Result};
pub use mat::{C64, Mat, Svd, Tolerances};
pub use subspace::Subspace;
