//! Finite completely regular semigroups, their power semigroups, and the
//! reconstruction of a semigroup isomorphism from an isomorphism of power
//! semigroups.
//!
//! Semigroups are given by Cayley tables over `0..n`. Subsets of a semigroup
//! of order at most 32 are `u32` bitmasks.

pub mod breakable;
pub mod error;
pub mod families;
pub mod format;
pub mod globaldet;
pub mod green;
pub mod iso;
pub mod order;
pub mod power;
pub mod structure;
pub mod subset;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use globaldet::Analysis;
pub use iso::IsoMap;
pub use power::PowerSemigroup;
pub use structure::Decomposition;
pub use subset::Subset;
pub use table::CayleyTable;
