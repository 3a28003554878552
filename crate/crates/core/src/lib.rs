//! Exact toric geometry for crepant resolutions of Gorenstein abelian
//! quotient singularities `C^r/G`.
//!
//! The crate is `no_std` (it needs `alloc`). Every number is exact: integers
//! and rationals grow without bound and no floating point is used anywhere.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod bundles;
pub mod cone;
pub mod error;
pub mod guard;
pub mod hilbert;
pub mod intersection;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod quotient;
pub mod series;
pub mod triangulation;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
pub use guard::Guards;
