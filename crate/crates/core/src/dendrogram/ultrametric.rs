use std::collections::HashMap;

use thiserror::Error;

use super::{Dendrogram, DendrogramError};
use crate::metric::same_level;
use crate::partition::Partition;
use crate::union_find::DisjointSet;

/// A symmetric height function, zero exactly on the diagonal, satisfying
/// `u(x, y) <= max(u(x, z), u(z, y))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ultrametric {
    labels: Vec<String>,
    values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UltrametricError {
    #[error("matrix shape does not match {0} labels")]
    Shape(usize),
    #[error("entry ({i}, {j}) = {value} is invalid")]
    BadEntry { i: String, j: String, value: f64 },
    #[error("entries ({i}, {j}) and ({j}, {i}) differ")]
    Asymmetric { i: String, j: String },
    #[error("u({x}, {y}) > max(u({x}, {z}), u({z}, {y}))")]
    Inequality { x: String, y: String, z: String },
    #[error("labels differ between the two ultrametrics")]
    LabelMismatch,
    #[error(transparent)]
    Dendrogram(#[from] DendrogramError),
}

impl Ultrametric {
    pub fn new(labels: Vec<String>, matrix: &[Vec<f64>]) -> Result<Self, UltrametricError> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(UltrametricError::Shape(n));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(DendrogramError::DuplicateLabel(l.clone()).into());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j];
                let ok = v.is_finite() && if i == j { v == 0.0 } else { v > 0.0 };
                if !ok {
                    return Err(UltrametricError::BadEntry {
                        i: labels[i].clone(),
                        j: labels[j].clone(),
                        value: v,
                    });
                }
                if matrix[j][i] != v {
                    return Err(UltrametricError::Asymmetric {
                        i: labels[i].clone(),
                        j: labels[j].clone(),
                    });
                }
            }
        }
        let u = Self {
            labels,
            values: matrix.iter().flatten().copied().collect(),
        };
        if let Some((x, y, z)) = u.inequality_violation() {
            return Err(UltrametricError::Inequality {
                x: u.labels[x].clone(),
                y: u.labels[y].clone(),
                z: u.labels[z].clone(),
            });
        }
        Ok(u)
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.len().max(1)).map(<[f64]>::to_vec).collect()
    }

    /// First triple `(x, y, z)` with `u(x, y) > max(u(x, z), u(z, y))`.
    pub fn inequality_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let bound = self.get(x, z).max(self.get(z, y));
                    let uxy = self.get(x, y);
                    if uxy > bound && !same_level(uxy, bound) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

impl Dendrogram {
    /// `u(x, x')` is the least stored height at which `x` and `x'` share a
    /// block.
    pub fn to_ultrametric(&self) -> Result<Ultrametric, DendrogramError> {
        let v = self.validate();
        if !v.is_empty() {
            return Err(DendrogramError::Invalid(v));
        }
        let n = self.len();
        let mut values = vec![f64::NAN; n * n];
        for i in 0..n {
            values[i * n + i] = 0.0;
        }
        for level in self.levels() {
            for b in level.partition.blocks() {
                for &i in b {
                    for &j in b {
                        if values[i * n + j].is_nan() {
                            values[i * n + j] = level.height;
                        }
                    }
                }
            }
        }
        Ok(Ultrametric {
            labels: self.labels().to_vec(),
            values,
        })
    }

    /// Blocks at height `t` are the classes of `u(., .) <= t`.
    pub fn from_ultrametric(u: &Ultrametric) -> Self {
        let n = u.len();
        let mut heights: Vec<f64> = u.values.iter().copied().filter(|&v| v > 0.0).collect();
        heights.sort_by(f64::total_cmp);
        heights.dedup();
        let mut levels = vec![(0.0, Partition::singletons(n))];
        for h in heights {
            let mut ds = DisjointSet::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if u.get(i, j) <= h {
                        ds.union(i, j);
                    }
                }
            }
            levels.push((h, Partition::from_disjoint_set(&mut ds)));
        }
        Self::from_levels_unchecked(u.labels.clone(), levels)
    }
}
