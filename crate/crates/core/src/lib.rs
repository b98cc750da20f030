//! Exact polynomial algebra for a weighted elliptic K3 family: resultants,
//! discriminants, weighted degrees, Kodaira fibers and lattice invariants,
//! plus a registry of named verification checks.

pub mod domain;
pub mod elimination;
pub mod error;
pub mod family;
pub mod grading;
pub mod kodaira;
pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod verify;

pub use domain::{Domain, GcdDomain, IntegerRing, PrimeField, RationalField};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{MultiPoly, PolyRing, UniPoly, Value};
