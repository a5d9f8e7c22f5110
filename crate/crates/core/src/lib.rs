pub mod error;
pub mod field;
pub mod bundle;
pub mod cli;
pub mod closure;
pub mod gradedmod;
pub mod linalg;
pub mod polyring;

pub use error::{Error, Result};
