//! Hierarchical clustering of finite metric spaces with density-sensitive
//! unchaining: SL(α) and SL*(α) alongside single, complete and average
//! linkage and DBSCAN, plus checkers for chaining definitions on concrete
//! instances.

pub mod chain;
pub mod clique;
pub mod dbscan;
pub mod dendrogram;
pub mod fixtures;
pub mod io;
pub mod linkage;
pub mod metric;
pub mod partition;
pub mod rips;
pub mod subset;
pub mod unchaining;
mod union_find;

pub use dendrogram::{Dendrogram, Ultrametric};
pub use metric::{DistanceLevels, FiniteMetricSpace, MetricError};
pub use partition::Partition;
pub use subset::SubsetError;
pub use unchaining::Alpha;
