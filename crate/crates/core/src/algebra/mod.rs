//! Exact integer linear algebra and finite fields.

mod abgroup;
mod fq;
mod homology;
mod matrix;
mod snf;

pub use abgroup::{abelianize_presentation, AbGroup};
pub use fq::{FqContext, FqElem};
pub use homology::{homology_at, homology_group, CoordinateMap, Homology};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, Invariants, SmithForm};
