//! Exact symbolic engines for dimension functions on definable sets over
//! three concrete ordered structures:
//!
//! - `dlo` — the rationals with the order alone;
//! - `wom:m` — the lexicographically ordered group `Q^{m+1}` with the chain
//!   of convex subgroups `U_1 ⊂ … ⊂ U_m` named by unary predicates;
//! - `concat:m` — `m` copies of the ordered group `Q` glued in a row with
//!   `m−1` named separator constants and a totalized addition.
//!
//! Everything is computed in exact rational arithmetic. The crate is
//! `no_std` (alloc only); IO, CLI and JSON live in the companion binary
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod budget;
pub mod cells;
pub mod census;
pub mod dims;
pub mod error;
pub mod formula;
pub mod harness;
pub mod model;
pub mod qe;
pub mod rat;

pub use error::Error;
pub use model::ModelId;
pub use rat::Rat;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
