//! Quandle colorings, quandle actions and derivations of knot diagrams.
//!
//! The crate is organised bottom-up:
//!
//! * [`quandle`] holds finite quandles as validated operation tables, the
//!   standard constructions and structural property checks.
//! * [`perm`] and [`autgroup`] provide permutations, automorphism groups and
//!   conjugation quandles.
//! * [`diagram`] parses PD and Gauss codes (with optional virtual crossings)
//!   and extracts the arc presentation of the knot quandle.
//! * [`search`] is the propagation-based backtracking engine shared by every
//!   enumeration.
//! * [`coloring`] enumerates quandle homomorphisms and hom quandles.
//! * [`derivations`] enumerates actions and derivations and assembles
//!   derivation quandles, the total derivation quandle, the derivation
//!   multiset and the derivation polynomial.
//! * [`virtual_knot`] carries the same machinery over to virtual quandles.
//!
//! External indices (tables, permutations, colorings printed to users) are
//! 1-based; everything inside the crate is 0-based.

pub mod autgroup;
pub mod coloring;
pub mod derivations;
pub mod diagram;
mod error;
pub mod par;
pub mod perm;
pub mod quandle;
pub mod search;
pub mod virtual_knot;

pub use error::{Error, Result};
pub use search::Limits;
