use std::fmt;

use crate::union_find::DisjointSet;

/// A partition of the point indices `0..n` into disjoint non-empty blocks.
///
/// Blocks are kept in canonical form: each block sorted ascending, blocks
/// ordered by their smallest element. Two partitions of the same index set
/// are equal iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    EmptyBlock { block: usize },
    Duplicate { point: usize },
    Missing { point: usize },
    OutOfRange { point: usize },
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyBlock { block } => write!(f, "block #{block} is empty"),
            Self::Duplicate { point } => write!(f, "point {point} appears in more than one block"),
            Self::Missing { point } => write!(f, "point {point} is not covered"),
            Self::OutOfRange { point } => write!(f, "point {point} is out of range"),
        }
    }
}

impl Partition {
    /// Builds a partition without checking coverage; blocks are normalized.
    /// Use [`Partition::defects`] to check it against a point count.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by(|a, b| a.first().cmp(&b.first()));
        Self { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            blocks: vec![(0..n).collect()],
        }
    }

    pub(crate) fn from_disjoint_set(ds: &mut DisjointSet) -> Self {
        Self { blocks: ds.groups() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_points(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// `block_of[p]` is the index of the block containing `p`.
    pub fn membership(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &p in b {
                if p < n {
                    out[p] = bi;
                }
            }
        }
        out
    }

    /// Index of the block containing every point of `subset`, if any.
    pub fn block_containing(&self, subset: &[usize]) -> Option<usize> {
        let first = *subset.first()?;
        let bi = self.blocks.iter().position(|b| b.binary_search(&first).is_ok())?;
        let block = &self.blocks[bi];
        subset
            .iter()
            .all(|p| block.binary_search(p).is_ok())
            .then_some(bi)
    }

    /// `true` when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| coarser.block_containing(b).is_some())
    }

    pub fn defects(&self, n: usize) -> Vec<PartitionDefect> {
        let mut out = Vec::new();
        let mut seen = vec![false; n];
        for (bi, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                out.push(PartitionDefect::EmptyBlock { block: bi });
            }
            for &p in b {
                if p >= n {
                    out.push(PartitionDefect::OutOfRange { point: p });
                } else if seen[p] {
                    out.push(PartitionDefect::Duplicate { point: p });
                } else {
                    seen[p] = true;
                }
            }
        }
        for (p, s) in seen.iter().enumerate() {
            if !s {
                out.push(PartitionDefect::Missing { point: p });
            }
        }
        out
    }

    /// Label view: labels sorted within each block, blocks ordered
    /// lexicographically.
    pub fn labeled(&self, labels: &[String]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v: Vec<String> = b.iter().map(|&i| labels[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }
}
