//! Vietoris-Rips dimensions via exact maximum cliques.
//!
//! The Rips complex `F_t(Y)` has a simplex for every subset of `Y` with
//! pairwise distances `<= t`, so its dimension is the size of a maximum clique
//! of the `<= t` threshold graph on `Y`, minus one.

use std::collections::HashMap;

use crate::clique::max_clique_size;
use crate::metric::FiniteMetricSpace;
use crate::subset::{disjoint, nonempty, threshold_level, SubsetError};
use crate::unchaining::Alpha;

/// Rips-dimension queries against one space, with block dimensions memoized
/// by `(block, level rank)`.
#[derive(Debug)]
pub struct RipsEngine<'s> {
    space: &'s FiniteMetricSpace,
    cache: HashMap<(Vec<usize>, usize), usize>,
}

impl<'s> RipsEngine<'s> {
    pub fn new(space: &'s FiniteMetricSpace) -> Self {
        Self {
            space,
            cache: HashMap::new(),
        }
    }

    pub fn space(&self) -> &'s FiniteMetricSpace {
        self.space
    }

    /// `dim F_{t_level}(block)`; `block` must be sorted and non-empty.
    pub fn block_dim(&mut self, block: &[usize], level: usize) -> usize {
        if block.len() <= 1 {
            return 0;
        }
        if let Some(&d) = self.cache.get(&(block.to_vec(), level)) {
            return d;
        }
        let d = subset_dim(self.space, block, level);
        self.cache.insert((block.to_vec(), level), d);
        d
    }

    /// Number of memoized block dimensions.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    /// Largest dimension of a simplex of `F_{t_level}(left ∪ right)` meeting
    /// both sides; `None` when no cross pair is within `t_level`.
    pub fn cross_dim(&self, left: &[usize], right: &[usize], level: usize) -> Option<usize> {
        cross_clique(self.space, left, right, level, usize::MAX).map(|size| size - 1)
    }

    /// Conditions i and ii of the α-unchaining block graph: some cross pair is
    /// within `t_level`, and some cross simplex `Δ` satisfies
    /// `α·dim(Δ) >= min(dim F(left), dim F(right))`.
    pub fn admissible(&mut self, left: &[usize], right: &[usize], level: usize, alpha: Alpha) -> bool {
        if self.space.min_cross_rank(left, right) > level {
            return false;
        }
        let min_dim = self.block_dim(left, level).min(self.block_dim(right, level));
        let needed = min_dim.div_ceil(alpha.get());
        // any cross edge is already a 1-simplex meeting both sides
        if needed <= 1 {
            return true;
        }
        match cross_clique(self.space, left, right, level, needed + 1) {
            Some(size) => size > needed,
            None => false,
        }
    }
}

pub(crate) fn subset_dim(space: &FiniteMetricSpace, subset: &[usize], level: usize) -> usize {
    if subset.len() <= 1 {
        return 0;
    }
    let all_close = subset
        .iter()
        .enumerate()
        .all(|(a, &i)| subset[a + 1..].iter().all(|&j| space.within(i, j, level)));
    if all_close {
        return subset.len() - 1;
    }
    let adj = |u: usize, v: usize| u != v && space.within(u, v, level);
    max_clique_size(&adj, subset, 1, usize::MAX) - 1
}

/// Size of the largest clique in the `<= t_level` graph on `left ∪ right`
/// containing a vertex of each side. Every such clique contains a cross edge,
/// so it is found by extending each cross edge inside its common
/// neighborhood.
fn cross_clique(
    space: &FiniteMetricSpace,
    left: &[usize],
    right: &[usize],
    level: usize,
    stop_at: usize,
) -> Option<usize> {
    let adj = |u: usize, v: usize| u != v && space.within(u, v, level);
    let union: Vec<usize> = left.iter().chain(right).copied().collect();
    let mut best = 0usize;
    for &u in left {
        for &v in right {
            if !space.within(u, v, level) {
                continue;
            }
            let common: Vec<usize> = union
                .iter()
                .copied()
                .filter(|&w| w != u && w != v && adj(w, u) && adj(w, v))
                .collect();
            if 2 + common.len() <= best {
                continue;
            }
            let extra = max_clique_size(
                &adj,
                &common,
                best.saturating_sub(2),
                stop_at.saturating_sub(2),
            );
            best = best.max(2 + extra);
            if best >= stop_at {
                return Some(best);
            }
        }
    }
    (best >= 2).then_some(best)
}

fn disjoint_pair(
    space: &FiniteMetricSpace,
    left: &[impl AsRef<str>],
    right: &[impl AsRef<str>],
) -> Result<(Vec<usize>, Vec<usize>), SubsetError> {
    let l: Vec<&str> = left.iter().map(AsRef::as_ref).collect();
    let r: Vec<&str> = right.iter().map(AsRef::as_ref).collect();
    let mut sets = disjoint(space, &[&l, &r])?;
    let r = sets.pop().unwrap();
    Ok((sets.pop().unwrap(), r))
}

/// `dim F_t(subset)`.
pub fn rips_dim(space: &FiniteMetricSpace, subset: &[impl AsRef<str>], t: f64) -> Result<usize, SubsetError> {
    let idx = nonempty(space, subset)?;
    Ok(subset_dim(space, &idx, threshold_level(space, t)?))
}

/// Dimension of the largest simplex of `F_t(left ∪ right)` meeting both sides.
pub fn max_cross_simplex_dim(
    space: &FiniteMetricSpace,
    left: &[impl AsRef<str>],
    right: &[impl AsRef<str>],
    t: f64,
) -> Result<Option<usize>, SubsetError> {
    let (l, r) = disjoint_pair(space, left, right)?;
    Ok(cross_clique(space, &l, &r, threshold_level(space, t)?, usize::MAX).map(|s| s - 1))
}

/// Whether `left` and `right` would be joined by an edge of the block graph
/// at threshold `t`.
pub fn cross_link_admissible(
    space: &FiniteMetricSpace,
    left: &[impl AsRef<str>],
    right: &[impl AsRef<str>],
    t: f64,
    alpha: Alpha,
) -> Result<bool, SubsetError> {
    let (l, r) = disjoint_pair(space, left, right)?;
    let level = threshold_level(space, t)?;
    Ok(RipsEngine::new(space).admissible(&l, &r, level, alpha))
}
