//! Mesh bandwidth minimization.
//!
//! A mesh is reduced to its node adjacency graph ([`MeshGraph`]). A
//! [`Numbering`] assigns each node a distinct number; its [`Bandwidth`] is
//! the sum, over nodes, of the largest gap to a higher-numbered neighbor.
//! The crate provides the breadth-first baseline ([`gibbs_number`]), genome
//! operators ([`operators`]) and a generational GA / (μ+λ)-ES loop
//! ([`evolve`]) that searches for lower-bandwidth numberings.
//!
//! ```
//! use bandmin::{bandwidth, gibbs_number, MeshFormat, MeshGraph, Numbering};
//!
//! let mesh = MeshGraph::parse(
//!     "(2 3 4)(1 3 5)(1 2 4 5 6)(1 3 6 7)(2 3 6 8)(3 4 5 7 8)(4 6 8)(5 6 7)",
//!     MeshFormat::Inline,
//! )?;
//! assert_eq!(bandwidth(&mesh, &Numbering::identity(8)).value(), 18);
//! assert_eq!(bandwidth(&mesh, &gibbs_number(&mesh)?).value(), 19);
//! # Ok::<(), bandmin::Error>(())
//! ```

pub mod bandwidth;
pub mod engine;
pub mod error;
pub mod generate;
pub mod gibbs;
pub mod mesh;
pub mod numbering;
pub mod operators;
pub mod rng;

pub use bandwidth::{bandwidth, bandwidth_delta, checked_bandwidth, node_contribution, Bandwidth};
pub use engine::{evolve, evolve_with_threads, EvolutionConfig, Individual, RunTrace, Scheme};
pub use error::{Error, Result};
pub use generate::{generate_mesh, MeshSpec};
pub use gibbs::{
    breadth_first_numbering, gibbs_number, level_structure, pseudo_peripheral_ends, LevelStructure,
};
pub use mesh::{MeshFormat, MeshGraph};
pub use numbering::Numbering;
pub use rng::RandomStream;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/meshes.md")]
    mod meshes {}
    #[doc = include_str!("../../../book/src/bandwidth.md")]
    mod bandwidth {}
    #[doc = include_str!("../../../book/src/gibbs.md")]
    mod gibbs {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/evolution.md")]
    mod evolution {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
