//! Coverage-guided greybox fuzzing with pairwise mutator-interaction scheduling.
//!
//! The fuzzer stacks havoc mutators on corpus seeds and keeps every input
//! that reaches new edges. On top of the classic loop it learns, during a
//! training prefix of the campaign, how often the ordered mutator pair
//! `<i, j>` produces a coverage-increasing input, and then samples mutator
//! sequences from the row-normalized pair counts as a Markov random walk.
//!
//! Crate layout:
//!
//! * [`mutation`] — the 32 havoc mutators, selection weights, and the
//!   fixed-probability baseline sequence generator.
//! * [`harness`] — deterministic instrumented toy targets, edge coverage
//!   maps, and the "interesting input" test.
//! * [`corpus`] — seed corpus bookkeeping, seed selection, and energy.
//! * [`strategy`] — pair-count training, conditional-matrix sampling, the
//!   sequence-length bandit, and all baseline/ablation strategies.
//! * [`campaign`] — trial/experiment orchestration, persistence, budgets.
//! * [`analysis`] — the statistics used to detect and quantify the
//!   interaction effect (two-way ANOVA with HC3 option, goodness of fit,
//!   Mann-Whitney U, Vargha-Delaney A12, time-to-threshold).

pub mod analysis;
pub mod campaign;
pub mod corpus;
pub mod harness;
pub mod mutation;
pub mod rng;
pub mod strategy;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),
    #[error("analysis error: {0}")]
    Analysis(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
