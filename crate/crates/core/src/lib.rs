//! Chain coverings, antichains and incomparability structure of partial orders.
//!
//! Finite posets are stored as transitively closed bit rows. On top of that
//! the crate offers minimum chain covers, decomposition into a lexicographic
//! sum along the components of the incomparability graph, grid pattern search,
//! the cover-number reduction, ideal-chain embeddings of grids and a small
//! symbolic calculus for infinite cardinals.

pub mod cover;
pub mod error;
pub mod format;
pub mod generators;
pub mod ideal_embed;
pub mod incgraph;
pub mod patterns;
pub mod poset;
pub mod reduction;
pub mod selftest;
pub mod symbolic;

pub use cover::{max_antichain, min_chain_cover, width, ChainCover};
pub use error::{Error, Result};
pub use incgraph::{inc_components, recompose, LexDecomposition};
pub use poset::Poset;
