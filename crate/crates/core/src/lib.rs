//! Veech groups of regular origamis.
//!
//! A regular origami is a square-tiled surface whose torus cover is normal.
//! It is described by a finite group `G` with a generating pair `(x, y)`;
//! see [`origami::RegularOrigami`]. This crate computes
//!
//! - cylinder decompositions in rational directions ([`cylinders`]),
//! - the SL(2,Z)-orbit, Veech group, cusp widths and level ([`veech`]),
//! - images of the Veech group in SL(2,Z/nZ) and certificates that it is a
//!   totally non-congruence group ([`congruence`]),
//!
//! along with constructors for alternating, dihedral and PSL(2,q) examples
//! ([`families`]) and JSON formats shared with the command-line tool ([`json`]).

pub mod congruence;
pub mod cylinders;
pub mod error;
pub mod families;
pub mod group;
pub mod json;
pub mod origami;
pub mod perm;
pub mod sl2;
pub mod veech;

pub use congruence::{TncgCertificate, TncgWitness};
pub use cylinders::CylinderDecomposition;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use origami::{PermOrigami, RegularOrigami};
pub use perm::Permutation;
pub use sl2::{Letter, Sl2Matrix, Sl2Word};
pub use veech::{Membership, VeechGroup};
