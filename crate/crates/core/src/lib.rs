//! Finite quandles: homology, associated groups, knot colouring invariants
//! and cyclic branched covers.

pub mod algebra;
pub mod chainmaps;
pub mod catalog;
pub mod cover;
pub mod error;
pub mod group;
pub mod knot;
pub mod perm;
pub mod quandle;
pub mod rack;

pub use algebra::{AbGroup, FqContext, IntMatrix};
pub use error::{Error, Result};
pub use quandle::QuandleTable;
