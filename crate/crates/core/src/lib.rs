//! Truncated simplicial sets, simplicially enriched categories, their nerves,
//! and fibered categories over finite bases.

pub mod cases;
pub mod error;
pub mod fincat;
pub mod group;
pub mod models;
pub mod nerves;
pub mod qf;
pub mod scat;
pub mod sset;

pub use error::{Error, Result};
