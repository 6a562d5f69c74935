//! Braid group toolkit.
//!
//! Artin braid words, positive permutation braids, the Garside left-canonical
//! normal form, Jacquemard's leading-letter extraction with relation traces,
//! and palindromic decomposition `β = v·rev(v)`. Every algorithm is
//! cross-checked on small instances against a brute-force rewriting oracle
//! ([`oracle`]).

pub mod cli;
pub mod error;
pub mod garside;
pub mod jacquemard;
pub mod oracle;
pub mod palindrome;
pub mod par;
pub mod permutations;
pub mod verify;
pub mod words;

pub use error::BraidError;
pub use garside::{braid_equal, normal_form, LeftCanonicalForm};
pub use jacquemard::{extract, ExtractionResult};
pub use palindrome::{decompose, decompose_positive, square, PalindromicDecomposition};
pub use permutations::{Permutation, PermutationBraid};
pub use words::{BraidWord, Letter, RelationKind, RelationTrace, Sign, TraceStep};

pub type Result<T, E = BraidError> = std::result::Result<T, E>;
