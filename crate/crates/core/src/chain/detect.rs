use crate::metric::{level_le, same_level, FiniteMetricSpace};
use crate::subset::{disjoint, SubsetError};
use crate::unchaining::Alpha;

use super::{ChainKind, ChainReport};

/// Which subsets fix `b` in the plain chained definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainedReading {
    /// `b` is the connectivity threshold of the first subset.
    Literal,
    /// `b` is the larger of the two thresholds.
    Symmetric,
}

fn labels_of(space: &FiniteMetricSpace, idx: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = idx.iter().map(|&i| space.label(i).to_string()).collect();
    v.sort();
    v
}

fn as_strs<S: AsRef<str>>(v: &[S]) -> Vec<&str> {
    v.iter().map(AsRef::as_ref).collect()
}

fn pair(space: &FiniteMetricSpace, b1: &[impl AsRef<str>], b2: &[impl AsRef<str>]) -> Result<(Vec<usize>, Vec<usize>), SubsetError> {
    let (l, r) = (as_strs(b1), as_strs(b2));
    let mut sets = disjoint(space, &[&l, &r])?;
    let right = sets.pop().unwrap();
    Ok((sets.pop().unwrap(), right))
}

fn min_cross(space: &FiniteMetricSpace, b1: &[usize], b2: &[usize]) -> (f64, Vec<(usize, usize)>) {
    let a = space.set_distance(b1, b2);
    let mut at = Vec::new();
    for &x in b1 {
        for &y in b2 {
            if same_level(space.dist(x, y), a) {
                at.push((x, y));
            }
        }
    }
    (a, at)
}

fn report(
    space: &FiniteMetricSpace,
    kind: ChainKind,
    a: f64,
    b: f64,
    blocks: Vec<Vec<usize>>,
    witnesses: Vec<Vec<usize>>,
    literal_reading: Option<bool>,
) -> ChainReport {
    ChainReport {
        kind,
        a,
        b,
        blocks: blocks.iter().map(|blk| labels_of(space, blk)).collect(),
        witnesses: witnesses
            .iter()
            .map(|w| w.iter().map(|&i| space.label(i).to_string()).collect())
            .collect(),
        literal_reading,
        witness_idx: witnesses,
        block_idx: blocks,
    }
}

/// `(a, b)`-chained: both subsets are `b`-connected with `b` the threshold
/// of `B1`, and some cross pair is at distance `a <= b`.
pub fn detect_chained(
    space: &FiniteMetricSpace,
    b1: &[impl AsRef<str>],
    b2: &[impl AsRef<str>],
) -> Result<Option<ChainReport>, SubsetError> {
    detect_chained_with(space, b1, b2, ChainedReading::Literal)
}

pub fn detect_chained_with(
    space: &FiniteMetricSpace,
    b1: &[impl AsRef<str>],
    b2: &[impl AsRef<str>],
    reading: ChainedReading,
) -> Result<Option<ChainReport>, SubsetError> {
    let (l, r) = pair(space, b1, b2)?;
    let table = space.minimax_table();
    let t1 = space.connectivity_threshold_with(&table, &l);
    let t2 = space.connectivity_threshold_with(&table, &r);
    let b = match reading {
        ChainedReading::Literal => t1,
        ChainedReading::Symmetric => t1.max(t2),
    };
    let (a, at) = min_cross(space, &l, &r);
    if !level_le(t2, b) || !level_le(a, b) {
        return Ok(None);
    }
    let literal = level_le(t2, t1) && level_le(a, t1);
    let witnesses = at.into_iter().map(|(x, y)| vec![x, y]).collect();
    Ok(Some(report(
        space,
        ChainKind::Chained,
        a,
        b,
        vec![l, r],
        witnesses,
        Some(literal),
    )))
}

/// `(a, b)`-chained by a single edge: a unique cross pair `(x0, y0)` at
/// distance `a`, every other cross pair farther than `b`, both subsets
/// `b`-connected with `b` the threshold of `B1`. `literal_reading` records
/// whether the threshold of `B1` also equals `a`.
pub fn detect_single_edge_chained(
    space: &FiniteMetricSpace,
    b1: &[impl AsRef<str>],
    b2: &[impl AsRef<str>],
) -> Result<Option<ChainReport>, SubsetError> {
    let (l, r) = pair(space, b1, b2)?;
    let table = space.minimax_table();
    let b = space.connectivity_threshold_with(&table, &l);
    let t2 = space.connectivity_threshold_with(&table, &r);
    let (a, at) = min_cross(space, &l, &r);
    if at.len() != 1 || !level_le(t2, b) || !level_le(a, b) {
        return Ok(None);
    }
    let (x0, y0) = at[0];
    let others_far = l.iter().all(|&x| {
        r.iter()
            .all(|&y| (x, y) == (x0, y0) || !level_le(space.dist(x, y), b))
    });
    if !others_far {
        return Ok(None);
    }
    Ok(Some(report(
        space,
        ChainKind::SingleEdge,
        a,
        b,
        vec![l, r],
        vec![vec![x0, y0]],
        Some(same_level(b, a)),
    )))
}

/// Chained through α-smaller blocks `B_0, ..., B_k`: all blocks are
/// `b`-connected with `b` the threshold of `B_0`, a chain `x_s in B_s` has
/// every link `<= a <= b`, all of `B_0 x B_k` is farther than `b`, and
/// `α·#B_s < min(#B_0, #B_k)` for the inner blocks. `literal_reading` gives
/// the last condition with `min(#B_1, #B_k)` instead.
pub fn detect_smaller_block_chained<S: AsRef<str>>(
    space: &FiniteMetricSpace,
    blocks: &[&[S]],
    alpha: Alpha,
) -> Result<Option<ChainReport>, SubsetError> {
    if blocks.len() < 2 {
        return Err(SubsetError::TooFew(2));
    }
    let strs: Vec<Vec<&str>> = blocks.iter().map(|b| as_strs(b)).collect();
    let refs: Vec<&[&str]> = strs.iter().map(Vec::as_slice).collect();
    let sets = disjoint(space, &refs)?;
    let k = sets.len() - 1;

    let table = space.minimax_table();
    let b = space.connectivity_threshold_with(&table, &sets[0]);
    let connected = sets
        .iter()
        .all(|s| level_le(space.connectivity_threshold_with(&table, s), b));
    let (a, chain) = bottleneck_chain(space, &sets);
    let far = !level_le(space.set_distance(&sets[0], &sets[k]), b);
    let inner = &sets[1..k];
    let smaller = |bound: usize| inner.iter().all(|s| alpha.get() * s.len() < bound);
    let endpoint = smaller(sets[0].len().min(sets[k].len()));
    let literal = smaller(sets[1].len().min(sets[k].len()));
    if !(connected && level_le(a, b) && far && endpoint) {
        return Ok(None);
    }
    Ok(Some(report(
        space,
        ChainKind::SmallerBlocks,
        a,
        b,
        sets,
        vec![chain],
        Some(literal),
    )))
}

/// Chain `x_s in B_s` minimizing the largest link, with that link.
fn bottleneck_chain(space: &FiniteMetricSpace, sets: &[Vec<usize>]) -> (f64, Vec<usize>) {
    let mut cost: Vec<f64> = vec![0.0; sets[0].len()];
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    back.push(vec![0; sets[0].len()]);
    for s in 1..sets.len() {
        let mut next = Vec::with_capacity(sets[s].len());
        let mut from = Vec::with_capacity(sets[s].len());
        for &y in &sets[s] {
            let (best, arg) = sets[s - 1]
                .iter()
                .enumerate()
                .map(|(p, &x)| (cost[p].max(space.dist(x, y)), p))
                .fold((f64::INFINITY, 0), |acc, c| if c.0 < acc.0 { c } else { acc });
            next.push(best);
            from.push(arg);
        }
        cost = next;
        back.push(from);
    }
    let (a, mut pos) = cost
        .iter()
        .enumerate()
        .fold((f64::INFINITY, 0), |acc, (p, &c)| if c < acc.0 { (c, p) } else { acc });
    let mut chain = vec![0; sets.len()];
    for s in (0..sets.len()).rev() {
        chain[s] = sets[s][pos];
        pos = back[s][pos];
    }
    (a, chain)
}
