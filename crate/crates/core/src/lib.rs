#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod expansion;
pub mod finite_sums;
pub mod identities;
pub mod index;
pub mod quadrature;
pub mod series;
pub mod words;

pub use error::{Error, Result};
pub use index::Index;
pub use words::{Word, WordPoly};
pub use series::{Approx, EvalConfig, Route};
