//! Generation invariants `d`, `m`, `δ`, `ℓ` and base invariants `B`, `H`, `I`
//! of explicitly constructed finite groups.

#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod base;
pub mod check;
pub mod counts;
pub mod error;
pub mod genset;
pub mod group;
pub mod lie;

pub use error::{Error, Result};
