//! Exact computational model of a Pappian projective plane satisfying
//! Fano's axiom, over the rationals or an odd prime field.
//!
//! The layers build on each other: [`field`] and [`proj`] give exact
//! incidence, [`conic`] adds conics with field-rational intersections,
//! [`involution`] handles involutions on lines and conics,
//! [`correspondence`] provides inversion and the Steiner correspondence,
//! and [`theorem`] ties them into concurrency certificates for the two
//! six-point concurrency theorems.

#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod checks;
pub mod conic;
pub mod correspondence;
pub mod field;
pub mod involution;
pub mod linalg;
pub mod proj;
pub mod roots;
pub mod sample;
pub mod theorem;

pub use conic::{Conic, ConicError, ConicParametrization};
pub use correspondence::{InversionMap, SelfPolarTriangle, SteinerMap};
pub use field::{FieldSpec, Scalar};
pub use involution::{Carrier, Involution, PointPair};
pub use proj::{CrossRatio, Param, ProjLine, ProjPoint};
