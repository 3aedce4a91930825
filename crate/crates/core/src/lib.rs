//! Pomset block metric over `Z_m^n`.
//!
//! The crate covers the multiset algebra behind pomsets, order ideals of
//! poset-induced pomsets, the Lee block support and pomset block weight,
//! r-balls and I-balls with their closed-form sizes, code-level analytics
//! (minimum distance, duals, perfectness, Singleton bound and MDS codes,
//! weight distributions) and a brute-force oracle that checks the closed
//! forms by enumeration.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `pomset-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod balls;
pub mod codes;
mod error;
mod linalg;
pub mod mset;
pub mod oracle;
pub mod pomset;
pub mod space;

pub use crate::balls::{BallShape, BallSpec, DEFAULT_SCAN_BUDGET};
pub use crate::codes::{Code, WeightDistribution, DEFAULT_ANNIHILATOR_BUDGET};
pub use crate::error::{Error, Result};
pub use crate::mset::Mset;
pub use crate::pomset::{Ideal, Pomset};
pub use crate::space::{block_weight, lee_weight, Space, Vector};
