pub mod cli;
pub mod config;
pub mod control;
pub mod error;
pub mod harness;
pub mod hedge;
pub mod plant;
pub mod validate;

pub use error::{Error, Result};
