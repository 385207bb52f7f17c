//! Acyclic quantitative bipolar argumentation graphs (QBAGs).
//!
//! Final strengths under modular gradual semantics, argument contributions,
//! instance-level principle checks, and a corpus of worked examples.

pub mod contributions;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod principles;
pub mod random;
pub mod semantics;

pub use contributions::{
    contribution, contribution_table, contributions_to, ContributionTable, ContributionValue, Method,
};
pub use error::{QbagError, Result};
pub use graph::{build_qbag, ArgSet, Qbag};
pub use semantics::{evaluate, gradient_of_topic, Aggregation, Influence, Semantics, StrengthAssignment};
pub use principles::{check, check_with, CheckConfig, PrincipleId, PrincipleReport, Verdict, Witness};
pub use random::{random_qbag, RandomGraphConfig};
