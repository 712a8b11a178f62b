//! Exact construction and verification of vectorial p-ary weakly regular
//! bent and plateaued functions.

pub mod cli;
pub mod construct;
pub mod cyclotomic;
pub mod error;
pub mod gf;
pub mod pfunc;
pub mod pu;
pub mod spectral;

pub use error::{Error, Precondition, Result};
