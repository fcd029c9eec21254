//! Exact computation of poles, pole varieties and radical-line geometries of
//! trilinear alternating forms over prime fields and the rationals.

pub mod constructions;
pub mod error;
pub mod exactfield;
pub mod geomcheck;
pub mod multipoly;
pub mod poles;
pub mod projective;
pub mod report;
pub mod skewlinalg;
pub mod tables;
pub mod triform;

pub use error::{Error, Result};
pub use exactfield::{FieldSpec, Scalar};
pub use multipoly::{Monomial, MultiPoly};
