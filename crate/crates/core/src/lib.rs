//! Finite-dimensional engine for Lie triple systems and symmetric spaces.
//!
//! The crate is `no_std` (it only needs `alloc`). It covers:
//!
//! * [`numerics`]: exact rational and `f64` matrices, nullspaces, spans and the
//!   matrix exponential;
//! * [`lts`]: Lie triple systems as structure-constant tensors, with centers,
//!   ideals, quotients, products, morphisms and grid path/loop systems;
//! * [`symlie`]: symmetric Lie algebras, their `(-1)`-eigenspace triple systems,
//!   the standard embedding and the `g⁺` construction;
//! * [`sympair`]: matrix symmetric pairs `(G, σ, K)` with exponential maps, coset
//!   multiplication, geodesics and translations;
//! * [`period`]: kernel lattices of `Exp` restricted to the center and
//!   discreteness decisions for finitely generated subgroups of `ℝ^d`;
//! * [`gallery`]: builders for the standard fixtures (spheres, `u(n)`, `so(n+1)`,
//!   Heisenberg, flips, ...).

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;

pub mod gallery;
pub mod lts;
pub mod numerics;
pub mod period;
pub mod symlie;
pub mod sympair;

pub use error::{Error, Result};
pub use numerics::{Matrix, Rational, Scalar, ScalarMode, TolerancePolicy};
