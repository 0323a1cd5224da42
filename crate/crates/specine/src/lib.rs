//! Exact enumeration engine for the sibling number and the tuft number on
//! unlabeled connected graphs.
//!
//! The crate has two independent halves that are cross-checked against each
//! other everywhere:
//!
//! * [`symfunc`] and [`species`]: a lazy cycle index series calculus over
//!   exact rationals in the power-sum basis, with a small species-expression
//!   DSL on top.  This side produces counts of connected graphs with bounded
//!   sibling and tuft numbers (optionally refined by the reduction of the
//!   graph) through plethysm, multiplicative and compositional inversion.
//! * [`graphs`]: a bitset graph kernel for up to 64 vertices with the graph
//!   invariants themselves (sibling classes, tufts, leaf removal, sibling
//!   contraction, reduction, patch decomposition, decorated graphs) and an
//!   exhaustive generator of unlabeled graphs at desk scale.
//!
//! [`verify`] runs one side against the other and reports any disagreement
//! with a minimal witness.

pub mod graphs;
pub mod species;
pub mod symfunc;
pub mod verify;
