//! Bounded complexes of permutation modules over elementary abelian
//! `p`-groups.
//!
//! The crate builds modules for `G = C_p^r` over finite fields of
//! characteristic `p`, decides exactness and contractibility of bounded
//! complexes by exact linear algebra, checks the index-`p` chain condition on
//! subgroup collections, and produces certified exact non-contractible
//! complexes (inflated and induced periodicity complexes) whenever the
//! condition fails. The [`cohomology`] module supplies the supporting
//! machinery: restriction of polynomial cohomology classes, regular pairs
//! obtained by prime avoidance, and cohomology dimensions from minimal free
//! resolutions.

pub mod acceptance;
pub mod cli;
pub mod cohomology;
pub mod complexes;
pub mod counterexamples;
pub mod error;
pub mod exactla;
pub mod gmod;
pub mod groups;
pub mod json;

pub use error::{Error, Result};
