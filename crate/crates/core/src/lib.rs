//! Exact computations on `(n, s, q)`-multigraphs: multigraphs on `n` labeled
//! vertices in which every `s` vertices span at most `q` edges counted with
//! multiplicity.
//!
//! The crate pairs closed-form extremal values ([`formulas`]) and the
//! extremal families they come from ([`constructions`]) with independent
//! exhaustive oracles ([`search`]) and a harness ([`validation`]) that
//! compares the two.

pub mod canon;
pub mod constraints;
pub mod constructions;
pub mod error;
pub mod format;
pub mod formulas;
pub mod fraction;
pub mod multigraph;
pub mod par;
pub mod search;
pub mod simple;
pub mod validation;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use constraints::{classify, ConstraintSpec, Regime};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use multigraph::Multigraph;
pub use par::Parallelism;
pub use simple::SimpleGraph;
