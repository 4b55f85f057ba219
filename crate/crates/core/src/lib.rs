//! Exact arithmetic in the Grothendieck rings `R(M_n(F2))` and `R(GL_n(F2))`
//! written in the basis of tensor products of exterior powers.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: strict partitions, the bitmask basis order, conjugation, dominance.
//! - [`lambda_ring`]: ring elements and the straightening rewrite system.
//! - [`symmetric_powers`]: Koszul expansion of symmetric powers and rank analysis.
//! - [`exact_linalg`]: big-integer matrices, fraction-free rank, kernels, annihilation.
//! - [`t_operator`]: matrices of multiplication by the sum of all exterior powers.
//! - [`series_lab`]: rational forms and truncated power series.
//! - [`simple_f2`]: Young-symmetrizer images over F2 with bit-packed rank.
//! - [`paper_tables`]: parser for the additive table notation and the shipped golden tables.
//! - [`format`]: paper-style, JSON and CSV rendering shared by the CLI.

pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod format;
pub mod lambda_ring;
pub mod paper_tables;
pub mod partitions;
pub mod series_lab;
pub mod simple_f2;
pub mod symmetric_powers;
pub mod t_operator;

pub use error::{Error, Result};
pub use exact_linalg::{IntMatrix, RationalVector};
pub use lambda_ring::{Mode, ModeKind, RingElement};
pub use partitions::{BasisOrder, Partition};
