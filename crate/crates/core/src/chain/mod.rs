//! Chaining structures and instance-level checks of method behaviour.
//!
//! Detectors decide whether given subsets are chained, chained by a single
//! edge, or chained through α-smaller blocks, and return the witnessing
//! points. Verifiers evaluate every hypothesis of a scenario on a concrete
//! space and dendrogram, then the conclusion; a conclusion failure counts as
//! a counterexample only when all hypotheses hold.

mod detect;
pub mod generators;
mod verify;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dendrogram::UltrametricError;
use crate::subset::SubsetError;
use crate::unchaining::UnchainingError;

pub use detect::{
    detect_chained, detect_chained_with, detect_single_edge_chained, detect_smaller_block_chained,
    ChainedReading,
};
pub use verify::{
    check_sl_order_dominance, verify_bridge_unchaining, verify_completely_chaining,
    verify_moderate_bridge_theorem, verify_strongly_chaining, verify_weakly_unchaining,
    BridgeScenario, ModerateScenario,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error("dendrogram labels do not match the space")]
    LabelMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ultrametric(#[from] UltrametricError),
    #[error(transparent)]
    Unchaining(#[from] UnchainingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Chained,
    SingleEdge,
    SmallerBlocks,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub kind: ChainKind,
    pub a: f64,
    pub b: f64,
    /// The subsets, labels sorted.
    pub blocks: Vec<Vec<String>>,
    /// `[x0, y0]` pairs at distance `a`, or the chain `x_0..x_k`.
    pub witnesses: Vec<Vec<String>>,
    /// Outcome under the alternative reading of the definition, where one
    /// exists.
    pub literal_reading: Option<bool>,
    #[serde(skip)]
    pub(crate) witness_idx: Vec<Vec<usize>>,
    #[serde(skip)]
    pub(crate) block_idx: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub id: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conclusion {
    pub holds: bool,
    pub height: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// All hypotheses and the conclusion hold.
    Confirmed,
    /// All hypotheses hold and the conclusion fails.
    Counterexample,
    /// Some hypothesis fails.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Confirmed => "confirmed",
            Self::Counterexample => "counterexample",
            Self::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioCheck {
    pub check: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    pub verdict: Verdict,
}

impl ScenarioCheck {
    pub(crate) fn new(check: &str, hypotheses: Vec<Hypothesis>, conclusion: Conclusion) -> Self {
        let verdict = match (hypotheses.iter().all(|h| h.holds), conclusion.holds) {
            (false, _) => Verdict::Vacuous,
            (true, true) => Verdict::Confirmed,
            (true, false) => Verdict::Counterexample,
        };
        Self {
            check: check.to_string(),
            hypotheses,
            conclusion,
            verdict,
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis(&self, id: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.id == id)
    }
}
