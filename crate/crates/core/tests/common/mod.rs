//! Brute-force oracles shared by the integration tests. Each one is written
//! independently of the library algorithms it checks.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unchain::io::EdgeList;
use unchain::{Dendrogram, FiniteMetricSpace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs shortest paths by Floyd-Warshall.
pub fn floyd(g: &EdgeList) -> Vec<Vec<f64>> {
    let n = g.points.len();
    let at = |l: &str| g.points.iter().position(|p| p == l).unwrap();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, w) in &g.edges {
        let (i, j) = (at(u), at(v));
        d[i][j] = d[i][j].min(*w);
        d[j][i] = d[j][i].min(*w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Components of the graph with an edge wherever `d <= eps`, by BFS.
/// Labels sorted inside each component, components sorted.
pub fn bfs_components(s: &FiniteMetricSpace, eps: f64) -> Vec<Vec<String>> {
    let n = s.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(s.label(v).to_string());
            for w in 0..n {
                if !seen[w] && s.dist(v, w) <= eps {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out.sort();
    out
}

/// Least distance value `t` at which `x` and `y` share a BFS component.
pub fn minimax(s: &FiniteMetricSpace, x: usize, y: usize) -> f64 {
    let mut values: Vec<f64> = (0..s.len())
        .flat_map(|i| (0..s.len()).map(move |j| (i, j)))
        .map(|(i, j)| s.dist(i, j))
        .collect();
    values.sort_by(f64::total_cmp);
    let (lx, ly) = (s.label(x), s.label(y));
    for t in values {
        if bfs_components(s, t)
            .iter()
            .any(|c| c.iter().any(|l| l == lx) && c.iter().any(|l| l == ly))
        {
            return t;
        }
    }
    unreachable!("the space is connected at its diameter")
}

fn is_clique(s: &FiniteMetricSpace, pts: &[usize], eps: f64) -> bool {
    pts.iter()
        .enumerate()
        .all(|(a, &i)| pts[a + 1..].iter().all(|&j| s.dist(i, j) <= eps))
}

fn subsets(pts: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u32..(1 << pts.len())).map(move |mask| {
        pts.iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &p)| p)
            .collect()
    })
}

/// Largest simplex of `F_eps(pts)` by enumerating every subset.
pub fn brute_dim(s: &FiniteMetricSpace, pts: &[usize], eps: f64) -> usize {
    subsets(pts)
        .filter(|c| is_clique(s, c, eps))
        .map(|c| c.len() - 1)
        .max()
        .unwrap()
}

/// Largest simplex of `F_eps(left ∪ right)` meeting both sides.
pub fn brute_cross_dim(s: &FiniteMetricSpace, left: &[usize], right: &[usize], eps: f64) -> Option<usize> {
    let all: Vec<usize> = left.iter().chain(right).copied().collect();
    subsets(&all)
        .filter(|c| c.iter().any(|p| left.contains(p)) && c.iter().any(|p| right.contains(p)))
        .filter(|c| is_clique(s, c, eps))
        .map(|c| c.len() - 1)
        .max()
}

pub fn random_space(r: &mut impl Rng, n: usize) -> (EdgeList, FiniteMetricSpace) {
    let g = unchain::chain::generators::random_weighted_graph(r, n);
    let s = g.to_space().unwrap();
    (g, s)
}

/// Random disjoint non-empty index sets covering part of `0..n`.
pub fn random_disjoint(r: &mut impl Rng, n: usize, count: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let used = r.gen_range(count..=n);
    let mut cuts: Vec<usize> = (1..used).collect();
    cuts.shuffle(r);
    let mut cuts: Vec<usize> = cuts[..count - 1].to_vec();
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([used]) {
        out.push(order[start..c].to_vec());
        start = c;
    }
    out
}

pub fn labels_of(s: &FiniteMetricSpace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| s.label(i).to_string()).collect()
}

/// Levels in label form after mapping each label through `map`.
pub fn relabeled(d: &Dendrogram, map: impl Fn(&str) -> String) -> Vec<(f64, Vec<Vec<String>>)> {
    d.labeled_levels()
        .into_iter()
        .map(|(h, blocks)| {
            let mut blocks: Vec<Vec<String>> = blocks
                .into_iter()
                .map(|b| {
                    let mut b: Vec<String> = b.iter().map(|l| map(l)).collect();
                    b.sort();
                    b
                })
                .collect();
            blocks.sort();
            (h, blocks)
        })
        .collect()
}
