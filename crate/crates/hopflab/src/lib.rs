//! Exact computer algebra for monogenic local-local Hopf algebras over
//! rational function fields of characteristic p, Hopf-Galois structures on
//! primitive purely inseparable extensions, and their duals.
//!
//! Everything is computed symbolically over `F_p(T_1^{1/p^D}, ..., T_m^{1/p^D})`;
//! there is no floating point anywhere and every verification is an exact
//! identity check.

pub mod dual;
pub mod dump;
pub mod error;
pub mod expr;
pub mod field;
pub mod galois;
pub mod hopf;
pub mod isotest;
pub mod linalg;
pub mod report;
pub mod suite;
pub mod trunc;
pub mod witt;

pub use error::{Error, Result};
pub use field::{FieldCtx, FracPoly, RatFunc};
