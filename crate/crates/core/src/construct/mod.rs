//! Meadow constructions: `M(R)`, group-algebra meadows, induced maps,
//! products, local decomposition and isomorphism.

mod build;
mod decompose;
mod group;
mod iso;

pub use build::{
    build_group_algebra_meadow, build_group_algebra_meadow_with, build_m, build_m_with, lift_surjective_hom,
    lift_surjective_hom_between, meadow_product, meadow_product_with,
};
pub use decompose::{
    decompose_local, decompose_local_ordered, Decomposition, DecompositionReport, FactorReport, IsoSummary,
};
pub use group::CyclicProduct;
pub use iso::{meadows_isomorphic, verify_meadow_iso, MeadowIso};
