//! Semiring semantics for first-order logic on finite interpretations, with
//! exact solvers for Ehrenfeucht-Fraisse style model-comparison games.

pub mod charform;
pub mod equiv;
pub mod error;
pub mod gallery;
pub mod games;
pub mod homsets;
pub mod interp;
pub mod logic;
pub mod provenance;
pub mod sample;
pub mod semiring;

pub use error::{Error, Result};
pub use semiring::{Ext, Semiring, SemiringHom, Value};
