pub mod abelian;
pub mod acceptance;
pub mod boundary;
pub mod cli;
pub mod config;
pub mod currents;
pub mod diagram;
pub mod error;
pub mod fusion;
pub mod lie;
pub mod modular;
pub mod orbit;
pub mod spectrum;
pub mod weyl;

pub use error::{Error, Result};
