//! Exact verification of character-count and Galois-action statements
//! for alternating groups at odd primes.

pub mod abacus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod localchars;
pub mod numtheory;
pub mod partition;
pub mod sequence;
pub mod shift;
pub mod symchars;
pub mod tower;
pub mod verify;

pub use abacus::{reconstruct, Abacus};
pub use cyclotomic::{
    gauss_periods, gauss_sum, quad_embed, quad_sign_oracle, sqrt_embed, CycloElt,
};
pub use error::{Error, Result};
pub use group::{
    build_normalizer, build_sylow, character_table, galois_fixed_count, induce_class_function,
    ExactTable, Perm, PermGroup, DEFAULT_ORDER_CAP,
};
pub use localchars::{
    diffcar_identity_check, eps_local, eps_local_oracle, eps_local_value, is_local_symmetric,
    local_degree, local_label, multipartition_count, split_difference, LevelDifference, LocalLabel,
    LocalSign, LocalSplitDifference, MultiPartition,
};
pub use numtheory::{jacobi, least_nonresidue, parse_aut, NavarroAut, QuadValue, SignClass};
pub use partition::{Hook, Partition};
pub use sequence::PartitionSequence;
pub use shift::{diagonal_hook_structure, shift_data, ShiftData};
pub use symchars::{
    eps_global_direct, eps_global_oracle, eps_global_structural, p_prime_symmetric_labels,
    split_values, GlobalSplitChar,
};
pub use tower::{core_tower, is_p_prime_degree, is_regular, CoreTower};
pub use verify::{
    count_p_prime, fixed_counts, phi, scan, Defect, ScanOptions, ScanSummary, Side, SideCount,
    VerificationReport,
};
