//! Command-line front end for the `pappian` library: scene documents,
//! verification campaigns, and SVG figures.

#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod app;
pub mod campaign;
pub mod cert;
pub mod doc;
pub mod render;

pub use app::run;
pub use doc::{Scene, SceneDocument};
