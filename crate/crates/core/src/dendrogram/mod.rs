//! Dendrograms as right-continuous nested partition families.
//!
//! Only heights at which the partition changes are stored; the partition at
//! any `t >= 0` is that of the greatest stored height `<= t`.

mod render;
mod ultrametric;

use std::fmt;

use thiserror::Error;

use crate::metric::level_le;
use crate::partition::{Partition, PartitionDefect};

pub use render::{DendrogramDoc, LevelDoc};
pub use ultrametric::{Ultrametric, UltrametricError};

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub height: f64,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoLevels,
    FirstHeightNotZero { height: f64 },
    BaseNotSingletons { height: f64 },
    NotPartition { height: f64, defect: PartitionDefect },
    HeightsNotIncreasing { previous: f64, height: f64 },
    LastNotWhole { height: f64 },
    RefinementBroken { lower: f64, upper: f64, block: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoLevels => write!(f, "dendrogram has no levels"),
            Self::FirstHeightNotZero { height } => {
                write!(f, "first stored height is {height}, expected 0")
            }
            Self::BaseNotSingletons { height } => {
                write!(f, "partition at height {height} is not all singletons")
            }
            Self::NotPartition { height, defect } => {
                write!(f, "level {height} is not a partition: {defect}")
            }
            Self::HeightsNotIncreasing { previous, height } => {
                write!(f, "height {height} does not exceed previous height {previous}")
            }
            Self::LastNotWhole { height } => {
                write!(f, "last level (height {height}) is not the single block")
            }
            Self::RefinementBroken { lower, upper, block } => write!(
                f,
                "block {block:?} at height {lower} is split at height {upper}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DendrogramError {
    #[error("invalid dendrogram: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("height {0} is negative")]
    NegativeHeight(f64),
    #[error("label {0:?} appears more than once")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl Dendrogram {
    /// Builds a dendrogram and checks the four axioms.
    pub fn new(labels: Vec<String>, levels: Vec<(f64, Partition)>) -> Result<Self, DendrogramError> {
        let d = Self::from_levels_unchecked(labels, levels);
        let v = d.validate();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(DendrogramError::Invalid(v))
        }
    }

    /// Builds without validation; use [`Dendrogram::validate`] to check.
    pub fn from_levels_unchecked(labels: Vec<String>, levels: Vec<(f64, Partition)>) -> Self {
        Self {
            labels,
            levels: levels
                .into_iter()
                .map(|(height, partition)| Level { height, partition })
                .collect(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn heights(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.height)
    }

    /// Every violated axiom; empty when the dendrogram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.labels.len();
        let mut out = Vec::new();
        let Some(first) = self.levels.first() else {
            return vec![Violation::NoLevels];
        };
        if first.height != 0.0 {
            out.push(Violation::FirstHeightNotZero {
                height: first.height,
            });
        }
        if first.partition != Partition::singletons(n) {
            out.push(Violation::BaseNotSingletons {
                height: first.height,
            });
        }
        let mut sound = vec![true; self.levels.len()];
        for (i, level) in self.levels.iter().enumerate() {
            for defect in level.partition.defects(n) {
                sound[i] = false;
                out.push(Violation::NotPartition {
                    height: level.height,
                    defect,
                });
            }
        }
        for (i, pair) in self.levels.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            if !(hi.height > lo.height) {
                out.push(Violation::HeightsNotIncreasing {
                    previous: lo.height,
                    height: hi.height,
                });
            }
            if sound[i] && sound[i + 1] {
                for b in lo.partition.blocks() {
                    if hi.partition.block_containing(b).is_none() {
                        out.push(Violation::RefinementBroken {
                            lower: lo.height,
                            upper: hi.height,
                            block: self.block_labels(b),
                        });
                    }
                }
            }
        }
        let last = self.levels.last().unwrap();
        if last.partition != Partition::whole(n) {
            out.push(Violation::LastNotWhole {
                height: last.height,
            });
        }
        out
    }

    fn block_labels(&self, block: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = block.iter().map(|&i| self.labels[i].clone()).collect();
        v.sort();
        v
    }

    /// Partition at the greatest stored height `<= t`.
    pub fn partition_at(&self, t: f64) -> Result<&Partition, DendrogramError> {
        if t < 0.0 || t.is_nan() {
            return Err(DendrogramError::NegativeHeight(t));
        }
        let idx = self
            .levels
            .iter()
            .rposition(|l| level_le(l.height, t))
            .unwrap_or(0);
        Ok(&self.levels[idx].partition)
    }

    /// Same as [`Dendrogram::partition_at`] in label form.
    pub fn labeled_partition_at(&self, t: f64) -> Result<Vec<Vec<String>>, DendrogramError> {
        Ok(self.partition_at(t)?.labeled(&self.labels))
    }

    /// Label-level view used for comparisons that ignore point order:
    /// `(height, blocks)` with blocks in lexicographic order.
    pub fn labeled_levels(&self) -> Vec<(f64, Vec<Vec<String>>)> {
        self.levels
            .iter()
            .map(|l| (l.height, l.partition.labeled(&self.labels)))
            .collect()
    }

    /// Whether some stored level partitions the points exactly as `blocks`.
    pub fn height_of_partition(&self, blocks: &[Vec<usize>]) -> Option<f64> {
        let target = Partition::from_blocks(blocks.to_vec());
        self.levels
            .iter()
            .find(|l| l.partition == target)
            .map(|l| l.height)
    }
}
