//! Flat density-based clustering.
//!
//! `N_ε(p) = { q : d(p, q) <= ε }` includes `p`; `p` is a core point when
//! `#N_ε(p) >= min_pts`. Core points within `ε` of each other share a
//! cluster; a non-core point within `ε` of some core point is a border point
//! and joins the cluster of its lexicographically least core neighbour.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::FiniteMetricSpace;
use crate::subset::threshold_level;
use crate::union_find::DisjointSet;
use crate::MetricError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DbscanError {
    #[error("min_pts must be at least 1")]
    ZeroMinPts,
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbscanLabeling {
    pub clusters: Vec<Vec<String>>,
    pub noise: Vec<String>,
    /// Border points within `ε` of core points of more than one cluster.
    pub border_ambiguous: Vec<String>,
}

pub fn core_points(space: &FiniteMetricSpace, eps: f64, min_pts: usize) -> Result<Vec<bool>, DbscanError> {
    if min_pts == 0 {
        return Err(DbscanError::ZeroMinPts);
    }
    let level = threshold_level(space, eps)?;
    let n = space.len();
    Ok((0..n)
        .map(|p| (0..n).filter(|&q| space.within(p, q, level)).count() >= min_pts)
        .collect())
}

pub fn dbscan(space: &FiniteMetricSpace, eps: f64, min_pts: usize) -> Result<DbscanLabeling, DbscanError> {
    let core = core_points(space, eps, min_pts)?;
    let level = threshold_level(space, eps)?;
    let n = space.len();
    let mut ds = DisjointSet::new(n);
    for p in 0..n {
        for q in (p + 1)..n {
            if core[p] && core[q] && space.within(p, q, level) {
                ds.union(p, q);
            }
        }
    }
    let mut root = vec![usize::MAX; n];
    let mut ambiguous = Vec::new();
    for p in 0..n {
        if core[p] {
            root[p] = ds.find(p);
            continue;
        }
        let neighbours: Vec<usize> = (0..n)
            .filter(|&q| core[q] && space.within(p, q, level))
            .collect();
        let Some(&least) = neighbours.iter().min_by_key(|&&q| space.label(q)) else {
            continue;
        };
        let target = ds.find(least);
        if neighbours.iter().any(|&q| ds.find(q) != target) {
            ambiguous.push(space.label(p).to_string());
        }
        root[p] = target;
    }

    let mut clusters: Vec<Vec<String>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    let mut noise = Vec::new();
    for p in 0..n {
        if root[p] == usize::MAX {
            noise.push(space.label(p).to_string());
            continue;
        }
        if slot[root[p]] == usize::MAX {
            slot[root[p]] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[root[p]]].push(space.label(p).to_string());
    }
    for c in &mut clusters {
        c.sort();
    }
    clusters.sort();
    noise.sort();
    ambiguous.sort();
    Ok(DbscanLabeling {
        clusters,
        noise,
        border_ambiguous: ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_nuclei_is_one_cluster() {
        let s = fixtures::two_nuclei();
        let l = dbscan(&s, 3.0, 4).unwrap();
        assert_eq!(l.clusters.len(), 1);
        assert_eq!(l.clusters[0].len(), 14);
        assert!(l.noise.is_empty());
    }

    #[test]
    fn bridge_point_is_ambiguous_border() {
        let s = fixtures::two_nuclei_bridge();
        let l = dbscan(&s, 2.0, 4).unwrap();
        assert_eq!(
            l.clusters,
            vec![
                names(&["a1", "a2", "a3", "x0", "z0"]),
                names(&["b1", "b2", "b3", "y0"]),
            ]
        );
        assert_eq!(l.noise, names(&["x1", "x2", "x3", "y1", "y2", "y3"]));
        assert_eq!(l.border_ambiguous, names(&["z0"]));
    }

    #[test]
    fn min_pts_one_gives_components() {
        let s = fixtures::two_nuclei();
        let l = dbscan(&s, 1.0, 1).unwrap();
        assert_eq!(l.clusters, s.epsilon_components(1.0).unwrap().labeled(s.labels()));
        assert!(l.noise.is_empty());
    }

    #[test]
    fn bad_parameters() {
        let s = fixtures::two_nuclei();
        assert_eq!(dbscan(&s, 1.0, 0), Err(DbscanError::ZeroMinPts));
        assert!(matches!(dbscan(&s, -1.0, 2), Err(DbscanError::Metric(_))));
    }
}
