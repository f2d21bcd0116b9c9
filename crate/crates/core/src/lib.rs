//! Generating tree for permutations avoiding the vincular pattern 1-32-4.
//!
//! * [`perm`]: permutations, dashed patterns, occurrence search
//! * [`structure`]: block decomposition of avoiders
//! * [`eco`]: reduction and expansion operators
//! * [`gentree`]: succession rules and tree generation
//! * [`counting`]: count triangles and series checks
//! * [`oracle`]: brute-force enumeration used to validate everything else

pub mod counting;
pub mod eco;
pub mod error;
pub mod gentree;
pub mod oracle;
pub mod perm;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
pub use perm::{DashedPattern, Permutation};
