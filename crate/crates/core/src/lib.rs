//! Estimating the number of clusters `k` directly from a point set.
//!
//! The crate offers three identifiers (exhaustive partition search, SVD
//! peeling, convex relaxation), verifiers for the no-tight-sub-cluster and
//! separation conditions they rely on, seeded data generators, an elbow
//! baseline and a 3-cover hardness gadget.

pub mod baselines;
pub mod clustering;
pub mod convex;
pub mod error;
pub mod gadgets;
pub mod generators;
pub mod linalg;
pub mod means;
pub mod peel;
pub mod verify;

pub use clustering::{min_weight, Clustering};
pub use error::{Error, Result};
pub use linalg::{
    directional_sigma, mean, project, sigma, svd_subspace, ClusterStats, PointSet, Subspace,
};
pub use means::{centered_one_means, outlier_centered_one_means, CenteredOneMeansResult};
pub use peel::{identify_k, identify_k_with_w0, AlgoConstants, RunReport};
