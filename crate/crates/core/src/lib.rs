//! Permutation group algorithms for building small sets of 2-partitions with
//! trivial joint stabilizer, and for assembling explicit bases of wreath
//! products in product action from them.
//!
//! Conventions shared by every module:
//!
//! * points are `0..n` internally; cycle notation in text is 1-based;
//! * products act on the right, `p.compose(&q)` applies `p` first;
//! * all logarithms are base 2.

pub mod blocks;
pub mod catalog;
pub mod chain;
pub mod coloring;
pub mod documents;
pub mod error;
pub mod group;
pub mod oracles;
pub mod partitions;
pub mod perm;
pub mod product;
pub mod tree;

pub use blocks::BlockSystem;
pub use chain::StabilizerChain;
pub use coloring::{Coloring, TwoPartition};
pub use error::{Error, Result};
pub use group::{GiantKind, PermGroup};
pub use partitions::PartitionCertificate;
pub use perm::Permutation;
pub use tree::{LargeLevel, StructureTree};
