//! Finite stages of Hall's universal locally finite group.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational. It
//! provides:
//!
//! - [`group`]: concrete finite groups given by a multiplication table or by
//!   permutation generators, with a canonical element order.
//! - [`subgroup`]: subgroup handles, closures, centralizers and cyclic
//!   extension enumeration of the subgroup lattice.
//! - [`search`]: backtracking over generator images (automorphisms,
//!   isomorphisms, inner conjugators).
//! - [`tower`]: the stages `G1 = C3`, `G(k+1) = Sym(Gk)` and their regular
//!   embeddings.
//! - [`homogeneity`]: conjugators between isomorphic subgroups one stage up.
//! - [`exaut`]: the bounded two-sorted structure of subgroups with
//!   automorphism groups.
//! - [`discriminators`]: lattice-only recognition of group properties.
//! - [`reconstruction`]: rebuilding automorphisms from their action on
//!   involutions, and related probes.
//!
//! Every value is immutable once built and every operation is deterministic,
//! so groups can be shared across threads behind an [`Arc`](alloc::sync::Arc).
#![no_std]

extern crate alloc;

pub mod budget;
pub mod discriminators;
pub mod error;
pub mod exaut;
pub mod families;
pub mod group;
pub mod homogeneity;
pub mod morphism;
pub mod perm;
pub mod reconstruction;
pub mod search;
pub mod subgroup;
pub mod tower;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use budget::Budget;
pub use error::{Error, NotAGroupReason, Result};
pub use group::{FiniteGroup, Limits, Origin};
pub use morphism::{Morphism, PermRepresentation};
pub use perm::Permutation;
pub use subgroup::SubgroupHandle;
