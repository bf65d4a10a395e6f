//! Exact counting and verification machinery for one-hole domino tilings
//! (equivalently, near-perfect matchings) of odd-by-odd grids.
//!
//! - [`grid`]: lattice geometry, coloring, hole classes, symmetry orbits and
//!   the closed-form parity predicates;
//! - [`matchgen`]: deterministic exhaustive enumeration, reflections and the
//!   union-multigraph decomposition (the oracle side of every check);
//! - [`profile`]: broken-profile bitmask DP counting with exact big integers
//!   (the fast side);
//! - [`linalg`]: GF(2) evenness certificates, Matrix-Tree spanning-tree
//!   counts, and the product-formula cross-check;
//! - [`web`]: spanning webs on the odd-white sublattice, the cycle-reversal
//!   involution, tree reconstruction, and parity/mod-4 scanners;
//! - [`claims`]: the verification harness producing machine-readable
//!   pass/fail reports.

pub mod claims;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod matchgen;
pub mod profile;
pub mod web;

pub use error::{Error, Result};
pub use grid::{Cell, Color, GridSpec, HoleClass, HoleParity, WhiteParity};
pub use matchgen::{Axis, Domino, Matching};

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;
