use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError};

/// Errors for operations taking label subsets as arguments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubsetError {
    #[error("subset is empty")]
    Empty,
    #[error("subsets overlap at {0:?}")]
    Overlap(String),
    #[error("at least {0} subsets are required")]
    TooFew(usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

pub(crate) fn nonempty(
    space: &FiniteMetricSpace,
    labels: &[impl AsRef<str>],
) -> Result<Vec<usize>, SubsetError> {
    let idx = space.resolve(labels)?;
    if idx.is_empty() {
        return Err(SubsetError::Empty);
    }
    Ok(idx)
}

/// Resolves several subsets and checks that they are pairwise disjoint.
pub(crate) fn disjoint<S: AsRef<str>>(
    space: &FiniteMetricSpace,
    sets: &[&[S]],
) -> Result<Vec<Vec<usize>>, SubsetError> {
    let resolved = sets
        .iter()
        .map(|s| nonempty(space, s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut owner = vec![false; space.len()];
    for set in &resolved {
        for &p in set {
            if owner[p] {
                return Err(SubsetError::Overlap(space.label(p).to_string()));
            }
            owner[p] = true;
        }
    }
    Ok(resolved)
}

pub(crate) fn threshold_level(space: &FiniteMetricSpace, t: f64) -> Result<usize, MetricError> {
    if t < 0.0 || t.is_nan() {
        return Err(MetricError::NegativeThreshold(t));
    }
    Ok(space.levels().floor_index(t))
}
