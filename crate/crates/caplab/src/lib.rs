//! caplab: an exact laboratory for capitulation maps over finite abelian
//! p-groups.
//!
//! The crate models the lattice of subfields of an abelian p-extension
//! through its Galois group, builds the canonical subgroup-to-field map
//! from complements of maximal cyclic subgroups, pairs it with Kummer
//! duality and the transfer homomorphism, and audits every claimed
//! property per instance instead of assuming it. Everything is exact
//! integer arithmetic; every run is deterministic.
//!
//! Start with the runnable examples (`cargo run --example ...`):
//! each one demonstrates a major capability, from subgroup lattices to
//! transfer-based capitulation audits. The `caplab` binary exposes the
//! same functionality as subcommands (`check`, `lattice`, `complement`,
//! `orth`, `transfer`, `replay`).

mod linalg;

pub mod export;
pub mod galois;
pub mod group;
pub mod kummer;
pub mod psi;
pub mod report;
pub mod suite;
pub mod transfer;

pub use galois::{field_join, field_meet, restriction_order, ArtinIso, FieldNode};
pub use group::{
    elem_order, enumerate_subgroups, enumerate_subgroups_bounded, for_each_subgroup, intersect,
    join, member, p_height, p_rank, span, GroupElement, GroupError, Height, PGroupType, Subgroup,
};
pub use kummer::{KummerPairing, RadicalGroup, Side};
pub use psi::{canonical_complement, PsiEngine, PsiError, Strategy};
pub use report::{ClaimId, ClaimRow, Instance, Report, SuiteConfig, Verdict};
pub use suite::{abelian_catalog, replay, run_suite};
pub use transfer::{
    capitulation_kernel, derived_subgroup, named_group, transfer, FiniteGroup, SubgroupT,
    TransferError, TransferMap,
};
