//! Exact computation of local intersection multiplicities of sparse
//! polynomial systems at a torus point, together with the Gale-dual and
//! H-dual systems, Newton diagrams, mixed covolumes and multiplicity bounds.

pub mod cli;
pub mod error;
pub mod families;
pub mod gale;
pub mod geometry;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod polytope;
pub mod rat;
pub mod report;
pub mod support;

pub use error::{Error, Result};

// The guide's chapters double as doc-tests, so the book cannot drift from
// the library surface.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/supports.md")]
    mod supports {}
    #[doc = include_str!("../../../book/src/covolume.md")]
    mod covolume {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
