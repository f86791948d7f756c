//! Finite completely simple semigroups in Rees matrix form.
//!
//! Groups and semigroups are stored as Cayley tables over dense indices;
//! labels only matter at the boundary. Structures are limited to
//! [`MAX_ELEMENTS`] elements.

pub mod bits;
pub mod corpus;
pub mod error;
pub mod fraisse;
pub mod graph;
pub mod group;
pub mod homogeneity;
pub mod rees;
pub mod rms_morphism;
pub mod semigroup;

pub use bits::{ElemSet, MAX_ELEMENTS};
pub use error::{Error, Result};
pub use graph::{EdgeColouredBipartiteGraph, GraphPattern, Palette};
pub use group::{Elem, FiniteGroup, GroupMorphism};
pub use homogeneity::{ClassificationOutcome, Reason, Verdict};
pub use rees::{ReesMatrixSemigroup, RmsElement, SandwichMatrix};
pub use rms_morphism::RmsMorphism;
pub use semigroup::FiniteSemigroup;
