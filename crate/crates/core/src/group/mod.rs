//! Associated groups of quandles and the tools to handle them.

mod assoc;
mod eisermann;
mod extended;
mod stabilizer;
mod todd_coxeter;
mod word;

pub use assoc::{as_presentation, AsElement, AsGroup};
pub use eisermann::{clauwens_model, h2q_eisermann, ClauwensModel};
pub use extended::{abelian_from_orders, covering_kernel, extended_quandle, ExtendedQuandle};
pub use stabilizer::StabilizerPresentation;
pub use todd_coxeter::{enumerate_cosets, CosetTable, DEFAULT_MAX_COSETS};
pub use word::{concat, free_reduce, gen, gen_inv, inverse, power, split, Letter, Presentation, Word};
