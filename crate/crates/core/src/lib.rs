//! Exact sumsets, difference sets and compressions of finite point sets in
//! `Z^d`, with checks of the classical and recent lower bounds for them.

pub mod bounds;
pub mod cli;
pub mod compression;
pub mod constructions;
pub mod error;
pub mod pointset;
pub mod search;

pub use error::{Error, Result};
