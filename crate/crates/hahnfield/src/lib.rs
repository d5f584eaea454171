//! Exact generalized power series `k((G, f))` over grid supports.
//!
//! The crate is `no_std` (it needs `alloc`). Parsing, JSON and the command
//! line live in the `hahnfield-cli` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod cut;
pub mod error;
pub mod extend;
pub mod factor;
pub mod field;
pub mod group;
mod poly;
pub mod series;
pub mod tower;

pub use cut::{Cut, Side};
pub use error::{Error, Result};
pub use factor::{FactorSet, Section};
pub use field::{Coeff, Field};
pub use group::{Elem, Group, Q64};
pub use series::{Ambient, Config, Series};
