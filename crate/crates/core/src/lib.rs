#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cheb;
pub mod elliptic;
pub mod error;
pub mod geometry;
pub mod param;
pub mod pell;
pub mod roots;

pub use elliptic::EllipticContext;
pub use error::{Error, Result};
