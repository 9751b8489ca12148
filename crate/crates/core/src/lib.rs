//! Common meadows over finite commutative rings.
//!
//! A meadow here is the disjoint union of the rings sitting on a finite
//! lattice, glued by downward transition homomorphisms, with a total
//! inverse that sends zero to the absorbent element `a`. The crate builds
//! `M(R)` from the ideals of a ring, checks the axiom systems on the finite
//! carrier, and splits `M(R)` into local factors.

pub mod check;
pub mod construct;
pub mod directed_lattice;
pub mod error;
pub mod finite_ring;
pub mod ideals;
pub mod lattice;
pub mod limits;
pub mod meadow;

pub use check::{CheckReport, LawOutcome};
pub use construct::{
    build_group_algebra_meadow, build_m, decompose_local, decompose_local_ordered, lift_surjective_hom, meadow_product,
    meadows_isomorphic, CyclicProduct, Decomposition, MeadowIso,
};
pub use directed_lattice::{DirectedLattice, LatticeDocument};
pub use error::{Error, Result};
pub use finite_ring::{find_ring_isomorphism, FiniteRing, IsoStatus, RingElement, RingHom, RingSpec};
pub use ideals::{enumerate_ideals, maximal_ideals, Ideal};
pub use lattice::FiniteLattice;
pub use limits::Limits;
pub use meadow::{Element, Meadow, MeadowHom, NonCommonWitness, Origin};
