//! Exact canonical heights on elliptic curves over `F_p(t)`.
//!
//! The crate is layered: [`funcfield`] supplies the scalars, [`elliptic`] the
//! curves and group law, [`reduction`] and [`fibers`] the local data at each
//! place, [`heights`] the local and global canonical heights, and [`lehmer`]
//! the lower-bound and counting checks built on top of them.

pub mod error;
pub mod catalog;
pub mod elliptic;
pub mod fibers;
pub mod funcfield;
pub mod heights;
pub mod io;
pub mod lehmer;
pub mod reduction;
pub mod search;

pub use error::{Error, Result};
