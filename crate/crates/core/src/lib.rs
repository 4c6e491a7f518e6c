//! Exact cohomological Brauer-group invariants of quotients by finite groups.
//!
//! Layers, bottom up: [`groups`] (Cayley tables, subgroups, constructions),
//! [`linalg`] (Smith, Hermite and Howell forms; finite abelian groups),
//! [`cyclotomic`] (exact numbers and matrices over `Q(ζ_m)`),
//! [`cohomology`] (`H^1`, `H^2`, restriction, corestriction, the bicyclic
//! oracle) and [`brauer`] (Bogomolov multipliers, Amitsur classes, stack
//! and unramified Brauer groups). [`io`] parses JSON documents,
//! [`commands`] renders reports, and [`verify`] holds the bundled suites.

pub mod error;
pub mod brauer;
pub mod cohomology;
pub mod commands;
pub mod corpus;
pub mod cyclotomic;
pub mod groups;
pub mod io;
pub mod limits;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/brauer.md")]
    mod brauer {}
    #[doc = include_str!("../../../book/src/projective.md")]
    mod projective {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
