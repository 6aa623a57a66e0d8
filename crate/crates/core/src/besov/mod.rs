//! Homogeneous matrix-weighted Besov norms
//! `(sum_j 2^{jsq} ||psi_j(D) f||_{L^p(W)}^q)^{1/q}` and the comparison of
//! norms built from different dyadic partitions of unity.

mod corpus;
mod equivalence;
mod norm;
mod partition;

pub use corpus::shell_corpus;
pub use equivalence::{
    directed_constant, equivalence_constant, equivalence_experiment, overlap_sets, DirectedConstant,
    EquivalenceConstant, EquivalenceSummary, OverlapSets,
};
pub use norm::{besov_norm, BesovEvaluator, BesovNorm, BesovParams, TruncationWarning, TRUNCATION_TOL};
pub use partition::{make_partition, partition_decay_check, BumpProfile, DyadicPartition, PartitionDecay};
