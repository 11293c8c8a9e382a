//! Single, complete and average linkage in the recursive block-graph form:
//! `R_i` is the least linkage value between blocks of `Θ_{i-1}`, and every
//! connected component of the graph of block pairs with linkage `<= R_i`
//! merges at height `R_i`.

use std::fmt;
use std::str::FromStr;

use crate::dendrogram::Dendrogram;
use crate::metric::{level_le, FiniteMetricSpace};
use crate::partition::Partition;
use crate::subset::{disjoint, SubsetError};
use crate::union_find::DisjointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkageKind {
    Single,
    Complete,
    Average,
}

impl FromStr for LinkageKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" | "sl" => Ok(Self::Single),
            "complete" | "cl" => Ok(Self::Complete),
            "average" | "al" => Ok(Self::Average),
            other => Err(format!("unknown linkage {other:?}")),
        }
    }
}

impl fmt::Display for LinkageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Single => "single",
            Self::Complete => "complete",
            Self::Average => "average",
        })
    }
}

pub(crate) fn linkage_idx(space: &FiniteMetricSpace, kind: LinkageKind, left: &[usize], right: &[usize]) -> f64 {
    let cross = left.iter().flat_map(|&i| right.iter().map(move |&j| space.dist(i, j)));
    match kind {
        LinkageKind::Single => cross.fold(f64::INFINITY, f64::min),
        LinkageKind::Complete => cross.fold(0.0, f64::max),
        LinkageKind::Average => cross.sum::<f64>() / (left.len() * right.len()) as f64,
    }
}

/// `ℓ(left, right)` for disjoint non-empty blocks.
pub fn linkage_value(
    space: &FiniteMetricSpace,
    kind: LinkageKind,
    left: &[impl AsRef<str>],
    right: &[impl AsRef<str>],
) -> Result<f64, SubsetError> {
    let l: Vec<&str> = left.iter().map(AsRef::as_ref).collect();
    let r: Vec<&str> = right.iter().map(AsRef::as_ref).collect();
    let sets = disjoint(space, &[&l, &r])?;
    Ok(linkage_idx(space, kind, &sets[0], &sets[1]))
}

pub fn agglomerate(space: &FiniteMetricSpace, kind: LinkageKind) -> Dendrogram {
    let n = space.len();
    let mut current = Partition::singletons(n);
    let mut levels: Vec<(f64, Partition)> = vec![(0.0, current.clone())];
    while current.len() > 1 {
        let blocks = current.blocks();
        let m = blocks.len();
        let mut values = vec![0.0; m * m];
        let mut r = f64::INFINITY;
        for j in 0..m {
            for k in (j + 1)..m {
                let v = linkage_idx(space, kind, &blocks[j], &blocks[k]);
                values[j * m + k] = v;
                r = r.min(v);
            }
        }
        let mut ds = DisjointSet::new(m);
        for j in 0..m {
            for k in (j + 1)..m {
                if level_le(values[j * m + k], r) {
                    ds.union(j, k);
                }
            }
        }
        let next = Partition::from_blocks(
            ds.groups()
                .into_iter()
                .map(|g| g.iter().flat_map(|&b| blocks[b].iter().copied()).collect())
                .collect(),
        );
        let prev = levels.last().unwrap().0;
        // the three linkages are reducible, so R never drops below the
        // previous height; equal heights collapse into one level
        if levels.len() > 1 && level_le(r, prev) {
            levels.last_mut().unwrap().1 = next.clone();
        } else {
            levels.push((r, next.clone()));
        }
        current = next;
    }
    Dendrogram::from_levels_unchecked(space.labels().to_vec(), levels)
}

/// Single linkage as the ε-component filtration: the partition at `t` is
/// the `t`-components of the space.
pub fn single_linkage_components(space: &FiniteMetricSpace) -> Dendrogram {
    let mut levels = vec![(0.0, Partition::singletons(space.len()))];
    for level in 1..space.levels().len() {
        let p = space.components_at_level(level);
        if p != levels.last().unwrap().1 {
            levels.push((space.levels().get(level), p));
        }
    }
    Dendrogram::from_levels_unchecked(space.labels().to_vec(), levels)
}
