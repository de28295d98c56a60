#![allow(clippy::needless_range_loop)]

pub mod certificate;
pub mod constructions;
pub mod error;
pub mod immersion;
pub mod lattice;
pub mod linalg;
pub mod optimize;
pub mod scalar;

pub use error::{Error, Result};
