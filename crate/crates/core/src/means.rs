//! Exact centered 1-means and outlier centered 1-means.
//!
//! Both problems restrict the center to one of the input points, so an
//! exhaustive scan over candidate centers is exact.

use crate::error::{Error, Result};
use crate::linalg::{sigma, sq_dist, PointSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct CenteredOneMeansResult {
    pub center_index: usize,
    /// Sum of squared distances from the selected points to the center.
    pub cost: f64,
    /// Selected point indices in increasing order.
    pub selected: Vec<usize>,
}

/// Best center drawn from `subset` for the whole subset; ties go to the
/// smaller point index.
pub fn centered_one_means(x: &PointSet, subset: &[usize]) -> Result<CenteredOneMeansResult> {
    x.check_subset(subset)?;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let cost_of = |c: usize| {
        sorted
            .iter()
            .map(|&i| sq_dist(x.row(i), x.row(c)))
            .sum::<f64>()
    };
    let (center_index, cost) = best_center(&sorted, cost_of);
    Ok(CenteredOneMeansResult {
        center_index,
        cost,
        selected: sorted,
    })
}

/// Best `m`-subset of `subset` together with a center inside it.
///
/// Every candidate center keeps its `m` nearest points (itself first on
/// distance ties, then by point index); the best center wins, ties going to
/// the smaller index.
pub fn outlier_centered_one_means(
    x: &PointSet,
    subset: &[usize],
    m: usize,
) -> Result<CenteredOneMeansResult> {
    x.check_subset(subset)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    if m > subset.len() {
        return Err(Error::MTooLarge {
            m,
            available: subset.len(),
        });
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let (center_index, _) = best_center(&sorted, |c| nearest(x, &sorted, c, m).1);
    let (selected, cost) = nearest(x, &sorted, center_index, m);
    Ok(CenteredOneMeansResult {
        center_index,
        cost,
        selected,
    })
}

/// The `m` points of `pool` nearest to `center` and their summed squared
/// distance (accumulated in index order).
pub(crate) fn nearest(x: &PointSet, pool: &[usize], center: usize, m: usize) -> (Vec<usize>, f64) {
    let c = x.row(center);
    let mut keyed: Vec<(f64, bool, usize)> = pool
        .iter()
        .map(|&i| (sq_dist(x.row(i), c), i != center, i))
        .collect();
    let cmp = |a: &(f64, bool, usize), b: &(f64, bool, usize)| {
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
    };
    if m < keyed.len() {
        keyed.select_nth_unstable_by(m - 1, cmp);
        keyed.truncate(m);
    }
    keyed.sort_unstable_by_key(|k| k.2);
    let cost = keyed.iter().map(|k| k.0).sum();
    (keyed.into_iter().map(|k| k.2).collect(), cost)
}

fn best_center<F>(sorted: &[usize], cost_of: F) -> (usize, f64)
where
    F: Fn(usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    let costs: Vec<f64> = sorted.par_iter().map(|&c| cost_of(c)).collect();
    #[cfg(not(feature = "parallel"))]
    let costs: Vec<f64> = sorted.iter().map(|&c| cost_of(c)).collect();
    let mut best = 0;
    for (k, cost) in costs.iter().enumerate() {
        if *cost < costs[best] {
            best = k;
        }
    }
    (sorted[best], costs[best])
}

/// Checks `sigma^2 <= opt / |S| <= 4 d sigma^2` (up to `1e-9`) with `d` the
/// dimension of the point set.
pub fn sigma_cost_bracket_check(x: &PointSet, subset: &[usize]) -> Result<bool> {
    sigma_cost_bracket_check_with_dim(x, subset, x.d())
}

/// As [`sigma_cost_bracket_check`], with an explicit effective dimension
/// (the rank of the subspace for projected points).
pub fn sigma_cost_bracket_check_with_dim(
    x: &PointSet,
    subset: &[usize],
    dim: usize,
) -> Result<bool> {
    let opt = centered_one_means(x, subset)?.cost / subset.len() as f64;
    let s2 = sigma(x, subset)?.powi(2);
    let slack = 1e-9 * (1.0 + s2.max(opt));
    Ok(s2 <= opt + slack && opt <= 4.0 * dim as f64 * s2 + slack)
}
