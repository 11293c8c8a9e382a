//! SL(α) and SL*(α).
//!
//! Both methods walk every distance level `t_1 < ... < t_m`. At level `t_i`
//! the blocks of the previous partition become vertices of the block graph
//! `G_α^{t_i}`; two blocks are adjacent when some cross pair is within `t_i`
//! (condition i) and some cross simplex `Δ` of `F_{t_i}` satisfies
//! `α·dim(Δ) >= min(dim F_{t_i}(B_j), dim F_{t_i}(B_k))` (condition ii).
//!
//! SL(α) merges every connected component of the block graph. SL*(α) splits
//! each component into big blocks (`α·#B >= max #B'` over the component) and
//! small blocks; big blocks joined by big-big edges merge (condition iii),
//! and a connected group of small blocks joins the big class it touches only
//! when that class is unique (condition iv).

use std::fmt;

use thiserror::Error;

use crate::dendrogram::Dendrogram;
use crate::metric::FiniteMetricSpace;
use crate::partition::Partition;
use crate::rips::RipsEngine;
use crate::subset::threshold_level;
use crate::union_find::DisjointSet;
use crate::MetricError;

/// The density parameter α, a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha(usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnchainingError {
    #[error("alpha must be a positive integer, got {0}")]
    BadAlpha(usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Alpha {
    pub fn new(alpha: usize) -> Result<Self, UnchainingError> {
        if alpha == 0 {
            return Err(UnchainingError::BadAlpha(alpha));
        }
        Ok(Self(alpha))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `G_α^{t_i}` over the blocks of the previous partition.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGraph {
    pub level: usize,
    pub t: f64,
    pub blocks: Vec<Vec<usize>>,
    /// `dim F_t(block)` per vertex.
    pub dims: Vec<usize>,
    /// Sorted `(j, k)` with `j < k`.
    pub edges: Vec<(usize, usize)>,
    /// Big/small flags per vertex, filled in by the starred method.
    pub big: Option<Vec<bool>>,
}

impl BlockGraph {
    pub fn cardinality(&self, v: usize) -> usize {
        self.blocks[v].len()
    }

    pub fn has_edge(&self, j: usize, k: usize) -> bool {
        let e = if j < k { (j, k) } else { (k, j) };
        self.edges.binary_search(&e).is_ok()
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.blocks.len()];
        for &(j, k) in &self.edges {
            adj[j].push(k);
            adj[k].push(j);
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_where(|_, _| true)
    }

    fn components_where(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        let mut ds = DisjointSet::new(self.blocks.len());
        for &(j, k) in &self.edges {
            if keep(j, k) {
                ds.union(j, k);
            }
        }
        ds.groups()
    }
}

/// Builds `G_α^t` over the blocks of `prev`.
pub fn block_graph(
    space: &FiniteMetricSpace,
    prev: &Partition,
    t: f64,
    alpha: Alpha,
) -> Result<BlockGraph, UnchainingError> {
    let level = threshold_level(space, t)?;
    let mut engine = RipsEngine::new(space);
    Ok(build_graph(&mut engine, prev, level, alpha))
}

fn build_graph(engine: &mut RipsEngine<'_>, prev: &Partition, level: usize, alpha: Alpha) -> BlockGraph {
    let blocks = prev.blocks().to_vec();
    let dims = blocks.iter().map(|b| engine.block_dim(b, level)).collect();
    let mut edges = Vec::new();
    for j in 0..blocks.len() {
        for k in (j + 1)..blocks.len() {
            if engine.admissible(&blocks[j], &blocks[k], level, alpha) {
                edges.push((j, k));
            }
        }
    }
    BlockGraph {
        level,
        t: engine.space().levels().get(level),
        blocks,
        dims,
        edges,
        big: None,
    }
}

/// Splits a component into big and small blocks. Returns positions into
/// `blocks`; a block is big when `α·#B >= max #B'`.
pub fn classify_blocks<B: AsRef<[T]>, T>(blocks: &[B], alpha: Alpha) -> (Vec<usize>, Vec<usize>) {
    let max = blocks.iter().map(|b| b.as_ref().len()).max().unwrap_or(0);
    (0..blocks.len()).partition(|&i| alpha.get() * blocks[i].as_ref().len() >= max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGroup {
    pub blocks: Vec<usize>,
    /// Positions in [`StarMergePlan::big_components`].
    pub adjacent_big: Vec<usize>,
    pub absorbed_into: Option<usize>,
}

/// Conditions iii and iv applied to one component of the block graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarMergePlan {
    pub big_components: Vec<Vec<usize>>,
    pub small_components: Vec<SmallGroup>,
}

impl StarMergePlan {
    /// Resulting classes of graph vertices, each sorted, ordered by first
    /// vertex.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = self.big_components.clone();
        for s in &self.small_components {
            match s.absorbed_into {
                Some(c) => out[c].extend_from_slice(&s.blocks),
                None => out.extend(s.blocks.iter().map(|&b| vec![b])),
            }
        }
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }
}

/// Plans the starred merge for the component `component` (graph vertices).
pub fn star_merge_plan(
    graph: &BlockGraph,
    component: &[usize],
    alpha: Alpha,
) -> Result<StarMergePlan, UnchainingError> {
    let members: Vec<&Vec<usize>> = component.iter().map(|&v| &graph.blocks[v]).collect();
    let (big_pos, _) = classify_blocks(&members, alpha);
    let mut is_big = vec![false; graph.blocks.len()];
    for p in big_pos {
        is_big[component[p]] = true;
    }
    let mut in_comp = vec![false; graph.blocks.len()];
    for &v in component {
        in_comp[v] = true;
    }

    let groups = graph.components_where(|j, k| is_big[j] == is_big[k]);
    let mut big_components = Vec::new();
    let mut small = Vec::new();
    for g in groups.into_iter().filter(|g| in_comp[g[0]]) {
        if is_big[g[0]] {
            big_components.push(g);
        } else {
            small.push(g);
        }
    }
    let mut big_of = vec![usize::MAX; graph.blocks.len()];
    for (c, g) in big_components.iter().enumerate() {
        for &v in g {
            big_of[v] = c;
        }
    }

    let adj = graph.neighbors();
    let mut small_components = Vec::with_capacity(small.len());
    for blocks in small {
        let mut adjacent_big: Vec<usize> = blocks
            .iter()
            .flat_map(|&v| adj[v].iter())
            .filter(|&&w| is_big[w])
            .map(|&w| big_of[w])
            .collect();
        adjacent_big.sort_unstable();
        adjacent_big.dedup();
        if adjacent_big.is_empty() {
            return Err(UnchainingError::Internal(format!(
                "small blocks {blocks:?} at t = {} touch no big block",
                graph.t
            )));
        }
        let absorbed_into = (adjacent_big.len() == 1).then(|| adjacent_big[0]);
        small_components.push(SmallGroup {
            blocks,
            adjacent_big,
            absorbed_into,
        });
    }
    Ok(StarMergePlan {
        big_components,
        small_components,
    })
}

pub fn sl_alpha(space: &FiniteMetricSpace, alpha: Alpha) -> Dendrogram {
    run(space, alpha, false).expect("SL(alpha) has no failure modes")
}

pub fn sl_star_alpha(space: &FiniteMetricSpace, alpha: Alpha) -> Result<Dendrogram, UnchainingError> {
    run(space, alpha, true)
}

fn run(space: &FiniteMetricSpace, alpha: Alpha, star: bool) -> Result<Dendrogram, UnchainingError> {
    let mut engine = RipsEngine::new(space);
    let mut current = Partition::singletons(space.len());
    let mut levels = vec![(0.0, current.clone())];
    for level in 1..space.levels().len() {
        let mut graph = build_graph(&mut engine, &current, level, alpha);
        let classes = if star {
            let mut classes = Vec::new();
            let mut big = vec![false; graph.blocks.len()];
            for comp in graph.components() {
                let plan = star_merge_plan(&graph, &comp, alpha)?;
                for c in &plan.big_components {
                    for &v in c {
                        big[v] = true;
                    }
                }
                classes.extend(plan.classes());
            }
            graph.big = Some(big);
            classes
        } else {
            graph.components()
        };
        let next = Partition::from_blocks(
            classes
                .iter()
                .map(|c| c.iter().flat_map(|&v| graph.blocks[v].iter().copied()).collect())
                .collect(),
        );
        if next != current {
            levels.push((graph.t, next.clone()));
            current = next;
        }
    }
    Ok(Dendrogram::from_levels_unchecked(space.labels().to_vec(), levels))
}
