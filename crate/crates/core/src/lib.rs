//! Genus-one permutations and set partitions.
//!
//! Genus computation, the four-colored noncrossing representation of genus
//! one permutations, trivial-cycle reduction, closed-form counts, bivariate
//! generating series, and brute-force oracles that check all of the above.

pub mod count;
pub mod error;
pub mod fourcolor;
pub mod oracle;
pub mod perm;
pub mod reduce;
pub mod series;
pub mod setpart;

pub use error::{Error, Result};
pub use perm::{parse_permutation, Cycle, Genus1Type, Permutation};
pub use series::BivariateSeries;
pub use setpart::SetPartition;
