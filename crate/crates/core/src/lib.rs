//! Rank-maximal matchings under one-sided preferences, and how a single
//! applicant can falsify their list to do better.

pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod rmm;
pub mod signature;
pub mod strategy;

pub use error::{Error, Result};
pub use format::{parse_instance, serialize_instance};
pub use generate::generate_random;
pub use graph::{ApplicantId, BipartiteGraph, PostId, Rank, RankedEdge, RankedGraph};
pub use instance::{Instance, PreferenceList, StrictFullList, TrueRank};
pub use matching::{eou_decompose, is_maximum, max_matching_augment, EouLabels, Label, Matching};
pub use rmm::{
    critical_rank, critical_ranks_all, edge_in_every_rmm, edge_in_some_rmm, f_posts, rank_maximal,
    rank_maximal_with, unreachable_phase, AugmentOrder, PhaseRecord, RmmResult,
};
pub use oracle::{enumerate_rmm, exhaustive_min_max, oracle_critical_rank, oracle_edge_class, EdgeClass, OracleLimits, RmmSet};
pub use signature::{signature_cmp, Signature};
pub use strategy::{
    best_nonfirst, construct_hp, improve_best, min_max, run_strategy, verify_guarantee, Certificate, GuaranteeMode,
    HpConstruction, HpStatus, StrategyKind, StrategyOutcome,
};

#[cfg(test)]
pub(crate) const EXAMPLE: &str = include_str!("../data/example.txt");
