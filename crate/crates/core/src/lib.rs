//! Linear cuts, extensions and threshold refinements of Boolean networks.
//!
//! States and subspaces are bitmasks over at most 64 components. Every
//! dynamical question is answered by explicit enumeration within [`Caps`].

pub mod dynamics;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod harness;
pub mod implicants;
pub mod netio;
pub mod network;
pub mod random;
pub mod refinement;
pub mod space;
pub mod structure;

pub use dynamics::{Attractor, Caps, PermissiveConfig, Semantics};
pub use error::{Error, Result};
pub use extension::Extension;
pub use implicants::{ImplicantMap, Strength};
pub use netio::{parse_bnet, serialize_bnet, Report};
pub use network::{BooleanNetwork, UpdateFunction};
pub use refinement::{RefinedNetwork, ThresholdMap};
pub use space::{ComponentSet, State, Subspace};
pub use structure::{interaction_graph, InteractionGraph, LinearCut};
