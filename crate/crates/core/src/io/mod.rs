//! Input format and serialization.

mod document;
pub mod json;

pub use document::{parse_quiver_file, ArrowDecl, QuiverDocument, Term};
