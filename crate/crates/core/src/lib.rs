//! Finite racks and quandles: axiom checking, inner automorphism groups,
//! congruences, path groups and the covering theory built on them.
//!
//! Tables follow `op(x, y) = x ◁ y`. Permutations act on the right and
//! compose left to right, matching the way a path acts one symmetry at a
//! time.

pub mod congruence;
pub mod corpus;
pub mod covers;
pub mod error;
pub mod free;
pub mod hom;
pub mod io;
pub mod par;
pub mod paths;
pub mod perm;
pub mod random;
pub mod rack;
pub mod smith;
pub mod suite;
pub mod words;

pub use congruence::{Congruence, Relation};
pub use error::{Error, Result};
pub use hom::RackHom;
pub use perm::{Perm, PermGroup, DEFAULT_CLOSURE_CAP};
pub use rack::FiniteRack;
pub use words::{GroupWord, Letter};
