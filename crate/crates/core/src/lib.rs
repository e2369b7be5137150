//! Exact combinatorics of Mirković–Vilonen polytopes through their
//! Berenstein–Zelevinsky data.
//!
//! Everything hangs off a [`RootSystem`]: its Weyl group, chamber weights,
//! reduced words for `w_0` and the braid graph connecting them. On top of
//! that sit Lusztig data and their piecewise-linear transition maps
//! ([`lusztig`]), assembly and validation of BZ data ([`bz`]), polytope
//! geometry ([`polytope`]), enumeration and multiplicity counting ([`rep`]),
//! prime decompositions ([`primes`]) and the type A collapse algorithm
//! ([`sln`]).

pub mod bz;
pub mod cartan;
pub mod error;
pub mod lusztig;
pub mod polytope;
pub mod primes;
pub mod rep;
pub mod sln;
pub mod system;
pub mod weyl;

pub use cartan::{CartanDatum, Coweight, Family, Weight};
pub use error::{Error, Result};
pub use system::{BraidEdge, BraidGraph, ChamberWeight, RootSystem, WordData};
pub use weyl::{WeylElement, WeylGroup};
