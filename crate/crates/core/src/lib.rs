//! Generalized signotopes: alternating sign maps on the triples of `{1..n}`
//! whose sorted 4-subsets never read `+-+-` or `-+-+`.

pub mod canon;
pub mod checks;
pub mod classes;
pub mod construct;
pub mod cross;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod format;
pub mod kirch;
pub mod listings;
pub mod sign;
pub mod signotope;
pub mod triples;

pub use canon::{canonical_form, CanonMode, DEFAULT_CANON_MODE};
pub use error::{Error, Result};
pub use sign::Sign;
pub use signotope::{validate, Permutation, Signotope, Violation};
pub use triples::{binomial, triple_rank, TripleRank, MAX_ELEMENTS};
