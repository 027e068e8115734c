pub mod algebra;
pub mod derivation;
pub mod expr;
pub mod error;

pub use error::{Error, Result};
pub mod geometry;
pub mod proof;
pub mod reference;
pub mod verify;
