//! Permutation group engine: stabiliser chains, structural analysis, and
//! normaliser computation in symmetric groups.

pub mod ample;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod fixtures;
pub mod genmap;
pub mod group;
pub mod groupfile;
pub mod oracle;
pub mod perm;
pub mod pipeline;
pub mod search;
pub mod stabchain;
pub mod structure;
pub mod subsets;

pub use error::{Error, Result};
pub use group::Group;
pub use perm::Permutation;

/// Default cap on explicit element enumerations.
pub const DEFAULT_ENUM_LIMIT: usize = 1_000_000;

/// Default cap on coset tables swept during normaliser computations.
pub const DEFAULT_COSET_LIMIT: usize = 4096;

/// Default cap on nodes visited by a single backtrack search.
pub const DEFAULT_NODE_LIMIT: usize = 10_000_000;
