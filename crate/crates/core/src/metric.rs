//! Finite metric spaces, their ordered distance levels and ε-components.
//!
//! All algorithms in this crate work on dense point indices `0..n`; labels
//! are kept in a stable table for output. Distances are grouped into a
//! discrete ordered set of levels `t_0 = 0 < t_1 < ... < t_m`, and every
//! threshold comparison `d(x, y) <= t` is answered through the level rank
//! of `d(x, y)`, so all methods agree on ties.

use std::collections::HashMap;

use thiserror::Error;

use crate::partition::Partition;
use crate::union_find::DisjointSet;

/// Relative tolerance under which two distances are the same level.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

/// `true` when `a` and `b` differ by less than [`LEVEL_TOLERANCE`] relative
/// to the larger magnitude.
pub fn same_level(a: f64, b: f64) -> bool {
    if !(a.is_finite() && b.is_finite()) {
        return a == b;
    }
    (a - b).abs() <= LEVEL_TOLERANCE * a.abs().max(b.abs())
}

/// `a <= b` up to [`same_level`].
pub fn level_le(a: f64, b: f64) -> bool {
    a <= b || same_level(a, b)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("space has no points")]
    Empty,
    #[error("matrix has {rows} rows but {labels} labels")]
    RowCount { rows: usize, labels: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("duplicate label {label:?} at positions {first} and {second}")]
    DuplicateLabel {
        label: String,
        first: usize,
        second: usize,
    },
    #[error("entry ({i}, {j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} is negative")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("diagonal entry ({i}, {i}) = {value} is not zero")]
    NonZeroDiagonal { i: usize, value: f64 },
    #[error("entries ({i}, {j}) = {dij} and ({j}, {i}) = {dji} differ")]
    Asymmetric { i: usize, j: usize, dij: f64, dji: f64 },
    #[error("distinct points {i} and {j} are at distance zero")]
    ZeroDistance { i: usize, j: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("edge {u}-{v} has non-positive or non-finite weight {weight}")]
    BadWeight { u: String, v: String, weight: f64 },
    #[error("graph is disconnected; components: {components:?}")]
    Disconnected { components: Vec<Vec<String>> },
    #[error("threshold {0} is negative")]
    NegativeThreshold(f64),
}

/// The ordered set of realized distances, `t_0 = 0 < t_1 < ... < t_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceLevels {
    values: Vec<f64>,
}

impl DistanceLevels {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Rank of the greatest level `<= t` (up to tolerance). `t` must be `>= 0`.
    pub fn floor_index(&self, t: f64) -> usize {
        // values[0] == 0 <= t, so the result is at least 0
        let mut lo = 0;
        let mut hi = self.values.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if level_le(self.values[mid], t) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Rank of the level equal to `t`, if `t` is a realized level.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let i = self.floor_index(t);
        same_level(self.values[i], t).then_some(i)
    }
}

/// A labeled finite metric space `(X, d)`.
#[derive(Debug, Clone)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<f64>,
    levels: DistanceLevels,
    rank: Vec<usize>,
}

impl PartialEq for FiniteMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.dist == other.dist
    }
}

impl FiniteMetricSpace {
    /// Validates a square distance matrix. Triangle inequality is checked
    /// only when `require_triangle` is set.
    pub fn from_distance_matrix(
        labels: Vec<String>,
        matrix: &[Vec<f64>],
        require_triangle: bool,
    ) -> Result<Self, MetricError> {
        let n = labels.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if matrix.len() != n {
            return Err(MetricError::RowCount {
                rows: matrix.len(),
                labels: n,
            });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::RowLength {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        let index = label_index(&labels)?;
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j];
                if !v.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
                if v < 0.0 {
                    return Err(MetricError::Negative { i, j, value: v });
                }
            }
            if matrix[i][i] != 0.0 {
                return Err(MetricError::NonZeroDiagonal {
                    i,
                    value: matrix[i][i],
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (dij, dji) = (matrix[i][j], matrix[j][i]);
                if !same_level(dij, dji) {
                    return Err(MetricError::Asymmetric { i, j, dij, dji });
                }
                if dij == 0.0 {
                    return Err(MetricError::ZeroDistance { i, j });
                }
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                // symmetrize on the upper triangle so d(x,y) == d(y,x) exactly
                dist[i * n + j] = if i <= j { matrix[i][j] } else { matrix[j][i] };
            }
        }
        if require_triangle {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !level_le(dist[i * n + k], dist[i * n + j] + dist[j * n + k]) {
                            return Err(MetricError::TriangleViolation { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(Self::assemble(labels, index, dist))
    }

    /// Shortest-path metric of a connected graph with positive edge weights.
    /// Parallel edges keep the smallest weight.
    pub fn from_weighted_graph<S: AsRef<str>>(
        labels: Vec<String>,
        edges: &[(S, S, f64)],
    ) -> Result<Self, MetricError> {
        let n = labels.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let index = label_index(&labels)?;
        let mut dist = vec![f64::INFINITY; n * n];
        for i in 0..n {
            dist[i * n + i] = 0.0;
        }
        for (u, v, w) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index
                .get(u)
                .ok_or_else(|| MetricError::UnknownLabel(u.to_string()))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| MetricError::UnknownLabel(v.to_string()))?;
            if !(w.is_finite() && *w > 0.0) {
                return Err(MetricError::BadWeight {
                    u: u.to_string(),
                    v: v.to_string(),
                    weight: *w,
                });
            }
            if iu == iv {
                continue;
            }
            if *w < dist[iu * n + iv] {
                dist[iu * n + iv] = *w;
                dist[iv * n + iu] = *w;
            }
        }
        // Floyd-Warshall
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if dik.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let through = dik + dist[k * n + j];
                    if through < dist[i * n + j] {
                        dist[i * n + j] = through;
                    }
                }
            }
        }
        if dist.iter().any(|d| d.is_infinite()) {
            let mut ds = DisjointSet::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if dist[i * n + j].is_finite() {
                        ds.union(i, j);
                    }
                }
            }
            let components = Partition::from_disjoint_set(&mut ds).labeled(&labels);
            return Err(MetricError::Disconnected { components });
        }
        Ok(Self::assemble(labels, index, dist))
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, usize>, dist: Vec<f64>) -> Self {
        let n = labels.len();
        let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((dist[i * n + j], i * n + j));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values = vec![0.0];
        let mut rank = vec![0usize; n * n];
        for (d, slot) in pairs {
            if !same_level(*values.last().unwrap(), d) {
                values.push(d);
            }
            let r = values.len() - 1;
            let (i, j) = (slot / n, slot % n);
            rank[i * n + j] = r;
            rank[j * n + i] = r;
        }
        Self {
            labels,
            index,
            dist,
            levels: DistanceLevels { values },
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves labels to indices, sorted and deduplicated.
    pub fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, MetricError> {
        let mut out = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| MetricError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn dist_by_label(&self, a: &str, b: &str) -> Result<f64, MetricError> {
        let i = self
            .index_of(a)
            .ok_or_else(|| MetricError::UnknownLabel(a.to_string()))?;
        let j = self
            .index_of(b)
            .ok_or_else(|| MetricError::UnknownLabel(b.to_string()))?;
        Ok(self.dist(i, j))
    }

    /// Level rank of `d(i, j)`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.rank[i * self.len() + j]
    }

    /// `d(i, j) <= t_level`.
    pub fn within(&self, i: usize, j: usize, level: usize) -> bool {
        self.rank(i, j) <= level
    }

    pub fn levels(&self) -> &DistanceLevels {
        &self.levels
    }

    pub fn diameter(&self) -> f64 {
        *self.levels.values.last().unwrap()
    }

    /// Largest pairwise distance inside `subset` (0 for fewer than two points).
    pub fn subset_diameter(&self, subset: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// `min { d(x, y) : x in left, y in right }`.
    pub fn set_distance(&self, left: &[usize], right: &[usize]) -> f64 {
        let mut best = f64::INFINITY;
        for &i in left {
            for &j in right {
                best = best.min(self.dist(i, j));
            }
        }
        best
    }

    /// Rank of the smallest cross distance between two sets.
    pub fn min_cross_rank(&self, left: &[usize], right: &[usize]) -> usize {
        let mut best = usize::MAX;
        for &i in left {
            for &j in right {
                best = best.min(self.rank(i, j));
            }
        }
        best
    }

    /// Partition into ε-components: maximal sets whose points are joined by
    /// chains with consecutive distances `<= eps`.
    pub fn epsilon_components(&self, eps: f64) -> Result<Partition, MetricError> {
        if eps < 0.0 || eps.is_nan() {
            return Err(MetricError::NegativeThreshold(eps));
        }
        Ok(self.components_at_level(self.levels.floor_index(eps)))
    }

    pub(crate) fn components_at_level(&self, level: usize) -> Partition {
        let n = self.len();
        let mut ds = DisjointSet::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if self.within(i, j, level) {
                    ds.union(i, j);
                }
            }
        }
        Partition::from_disjoint_set(&mut ds)
    }

    /// Single-linkage ultrametric: `u(x, y)` is the least `t` such that `x`
    /// and `y` are joined by a `t`-chain. Returned as a dense `n*n` table.
    pub fn minimax_table(&self) -> Vec<f64> {
        let n = self.len();
        // Prim's tree, then max edge along tree paths.
        let mut in_tree = vec![false; n];
        let mut best = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        best[0] = 0.0;
        for _ in 0..n {
            let mut v = usize::MAX;
            for u in 0..n {
                if !in_tree[u] && (v == usize::MAX || best[u] < best[v]) {
                    v = u;
                }
            }
            in_tree[v] = true;
            order.push(v);
            for u in 0..n {
                if !in_tree[u] && self.dist(v, u) < best[u] {
                    best[u] = self.dist(v, u);
                    parent[u] = v;
                }
            }
        }
        let mut out = vec![0.0_f64; n * n];
        for (pos, &v) in order.iter().enumerate() {
            for &w in &order[..pos] {
                let via = if parent[v] == w {
                    best[v]
                } else {
                    out[parent[v] * n + w].max(best[v])
                };
                out[v * n + w] = via;
                out[w * n + v] = via;
            }
        }
        out
    }

    /// Least `t` such that all of `subset` lies in one `t`-component of the
    /// whole space.
    pub fn connectivity_threshold(&self, subset: &[usize]) -> f64 {
        let table = self.minimax_table();
        self.connectivity_threshold_with(&table, subset)
    }

    pub(crate) fn connectivity_threshold_with(&self, table: &[f64], subset: &[usize]) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                best = best.max(table[i * n + j]);
            }
        }
        best
    }

    /// Same space with points reordered: point `k` of the result is point
    /// `order[k]` of `self`, relabeled through `rename`.
    pub fn permuted(&self, order: &[usize], rename: impl Fn(&str) -> String) -> Self {
        let n = self.len();
        let labels: Vec<String> = order.iter().map(|&i| rename(&self.labels[i])).collect();
        let index = label_index(&labels).expect("rename must be injective");
        let mut dist = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                dist[a * n + b] = self.dist(order[a], order[b]);
            }
        }
        Self::assemble(labels, index, dist)
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, usize>, MetricError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if let Some(&first) = index.get(l) {
            return Err(MetricError::DuplicateLabel {
                label: l.clone(),
                first,
                second: i,
            });
        }
        index.insert(l.clone(), i);
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_point_space() {
        let s = FiniteMetricSpace::from_distance_matrix(
            names(&["p", "q"]),
            &[vec![0.0, 2.0], vec![2.0, 0.0]],
            true,
        )
        .unwrap();
        assert_eq!(s.dist_by_label("p", "q").unwrap(), 2.0);
        assert_eq!(s.levels().values(), &[0.0, 2.0]);
    }

    #[test]
    fn matrix_errors_name_offending_entries() {
        let err = FiniteMetricSpace::from_distance_matrix(
            names(&["p", "q"]),
            &[vec![0.0, 1.0], vec![2.0, 0.0]],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, MetricError::Asymmetric { i: 0, j: 1, .. }));

        let err = FiniteMetricSpace::from_distance_matrix(
            names(&["p", "q"]),
            &[vec![0.0, -1.0], vec![-1.0, 0.0]],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, MetricError::Negative { i: 0, j: 1, .. }));

        let err = FiniteMetricSpace::from_distance_matrix(
            names(&["p", "q"]),
            &[vec![1.0, 1.0], vec![1.0, 0.0]],
            false,
        )
        .unwrap_err();
        assert_eq!(err, MetricError::NonZeroDiagonal { i: 0, value: 1.0 });

        let err = FiniteMetricSpace::from_distance_matrix(
            names(&["p", "p"]),
            &[vec![0.0, 1.0], vec![1.0, 0.0]],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, MetricError::DuplicateLabel { first: 0, second: 1, .. }));
    }

    #[test]
    fn triangle_checked_only_on_demand() {
        let m = vec![
            vec![0.0, 1.0, 10.0],
            vec![1.0, 0.0, 1.0],
            vec![10.0, 1.0, 0.0],
        ];
        let labels = names(&["a", "b", "c"]);
        let err = FiniteMetricSpace::from_distance_matrix(labels.clone(), &m, true).unwrap_err();
        assert!(matches!(err, MetricError::TriangleViolation { .. }));
        assert!(FiniteMetricSpace::from_distance_matrix(labels, &m, false).is_ok());
    }

    #[test]
    fn path_graph_metric() {
        let s = FiniteMetricSpace::from_weighted_graph(
            names(&["a", "b", "c"]),
            &[("a", "b", 1.0), ("b", "c", 1.0)],
        )
        .unwrap();
        assert_eq!(s.dist_by_label("a", "c").unwrap(), 2.0);
    }

    #[test]
    fn disconnected_graph_names_components() {
        let err = FiniteMetricSpace::from_weighted_graph(
            names(&["a", "b", "c", "d"]),
            &[("a", "b", 1.0), ("c", "d", 1.0)],
        )
        .unwrap_err();
        assert_eq!(
            err,
            MetricError::Disconnected {
                components: vec![names(&["a", "b"]), names(&["c", "d"])]
            }
        );
    }

    #[test]
    fn non_positive_weight_rejected() {
        let err = FiniteMetricSpace::from_weighted_graph(names(&["a", "b"]), &[("a", "b", 0.0)])
            .unwrap_err();
        assert!(matches!(err, MetricError::BadWeight { .. }));
    }

    #[test]
    fn levels_group_near_equal_values() {
        let s = FiniteMetricSpace::from_distance_matrix(
            names(&["a", "b", "c"]),
            &[
                vec![0.0, 0.3, 0.1 + 0.2],
                vec![0.3, 0.0, 1.0],
                vec![0.1 + 0.2, 1.0, 0.0],
            ],
            false,
        )
        .unwrap();
        assert_eq!(s.levels().len(), 3);
        assert_eq!(s.rank(0, 1), s.rank(0, 2));
        assert_eq!(s.levels().floor_index(0.3), 1);
        assert_eq!(s.levels().floor_index(0.29), 0);
        assert_eq!(s.levels().index_of(1.0), Some(2));
        assert_eq!(s.levels().index_of(0.5), None);
    }

    #[test]
    fn eps_zero_gives_singletons_and_negative_is_rejected() {
        let s = FiniteMetricSpace::from_weighted_graph(
            names(&["a", "b", "c"]),
            &[("a", "b", 1.0), ("b", "c", 2.0)],
        )
        .unwrap();
        assert_eq!(s.epsilon_components(0.0).unwrap(), Partition::singletons(3));
        assert_eq!(
            s.epsilon_components(1.0).unwrap().blocks(),
            &[vec![0, 1], vec![2]]
        );
        assert_eq!(s.epsilon_components(2.0).unwrap(), Partition::whole(3));
        assert!(matches!(
            s.epsilon_components(-0.5),
            Err(MetricError::NegativeThreshold(_))
        ));
    }

    #[test]
    fn minimax_matches_components() {
        let s = FiniteMetricSpace::from_weighted_graph(
            names(&["a", "b", "c", "d"]),
            &[("a", "b", 1.0), ("b", "c", 3.0), ("c", "d", 2.0), ("a", "d", 5.0)],
        )
        .unwrap();
        let t = s.minimax_table();
        assert_eq!(t[1], 1.0);
        assert_eq!(t[3], 3.0);
        assert_eq!(t[2 * 4 + 3], 2.0);
        assert_eq!(s.connectivity_threshold(&[0, 1]), 1.0);
        assert_eq!(s.connectivity_threshold(&[0, 2, 3]), 3.0);
    }
}
