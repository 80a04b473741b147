//! Exact lattice toolkit: integer quadratic forms, discriminant forms and
//! genus, Niemeier and Leech lattices, isometry groups and their
//! (co-)invariant lattices, short-vector enumeration, and Jacobian-ring
//! computations for the Klein cubic fourfold.

pub mod catalog;
pub mod claims;
pub mod error;
pub mod group;
pub mod klein;
pub mod lattice;
pub mod linalg;
pub mod niemeier;
pub mod nikulin;
pub mod short_vectors;

pub use error::{Error, Result};
