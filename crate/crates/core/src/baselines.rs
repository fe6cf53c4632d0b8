//! Lloyd's k-means with k-means++ seeding, the elbow estimator, and the
//! 1-means-versus-sigma contrast on a two-component mixture.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::generators::{sample_gaussian_mixture, MixtureSpec};
use crate::linalg::{mean_unchecked, sigma, sq_dist, PointSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const MAX_LLOYD_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    pub clustering: Clustering,
    /// Row-major `k x d` centers.
    pub centers: Vec<f64>,
    pub cost: f64,
    /// Cost after every Lloyd iteration of the winning run.
    pub trace: Vec<f64>,
}

/// Best of `restarts` k-means++ seeded Lloyd runs.
pub fn lloyd_kmeans(x: &PointSet, k: usize, restarts: usize, seed: u64) -> Result<KMeansResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if k > x.n() {
        return Err(Error::KTooLarge { k, n: x.n() });
    }
    let run = |r: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let init = kmeans_pp(x, k, &mut rng);
        lloyd(x, init, k)
    };
    let restarts = restarts.max(1);
    #[cfg(feature = "parallel")]
    let runs: Vec<_> = (0..restarts).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<_> = (0..restarts).map(run).collect();
    Ok(best_of(runs))
}

fn best_of(runs: Vec<KMeansResult>) -> KMeansResult {
    let mut best: Option<KMeansResult> = None;
    for r in runs {
        if best.as_ref().is_none_or(|b| r.cost < b.cost) {
            best = Some(r);
        }
    }
    best.expect("at least one run")
}

fn kmeans_pp(x: &PointSet, k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = x.n();
    let mut centers = Vec::with_capacity(k * x.d());
    let first = rng.random_range(0..n);
    centers.extend_from_slice(x.row(first));
    let mut d2: Vec<f64> = (0..n).map(|i| sq_dist(x.row(i), x.row(first))).collect();
    for _ in 1..k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut u = rng.random::<f64>() * total;
            let mut pick = n - 1;
            for (i, w) in d2.iter().enumerate() {
                if *w > 0.0 && u < *w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            while d2[pick] == 0.0 {
                pick -= 1;
            }
            pick
        } else {
            rng.random_range(0..n)
        };
        centers.extend_from_slice(x.row(next));
        for (i, v) in d2.iter_mut().enumerate() {
            *v = v.min(sq_dist(x.row(i), x.row(next)));
        }
    }
    centers
}

fn assign(x: &PointSet, centers: &[f64], k: usize, labels: &mut [usize], dist: &mut [f64]) -> f64 {
    let d = x.d();
    let mut cost = 0.0;
    for i in 0..x.n() {
        let row = x.row(i);
        let mut best = (f64::INFINITY, 0);
        for c in 0..k {
            let v = sq_dist(row, &centers[c * d..(c + 1) * d]);
            if v < best.0 {
                best = (v, c);
            }
        }
        labels[i] = best.1;
        dist[i] = best.0;
        cost += best.0;
    }
    cost
}

/// Lloyd iterations from the given centers until the assignment is stable.
pub fn lloyd(x: &PointSet, mut centers: Vec<f64>, k: usize) -> KMeansResult {
    let (n, d) = (x.n(), x.d());
    let mut labels = vec![0; n];
    let mut dist = vec![0.0; n];
    let mut cost = assign(x, &centers, k, &mut labels, &mut dist);
    let mut trace = vec![cost];
    for _ in 0..MAX_LLOYD_ITER {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            members[l].push(i);
        }
        for c in 0..k {
            if members[c].is_empty() {
                // Reseed at the point farthest from its center.
                let far = (0..n).fold(0, |b, i| if dist[i] > dist[b] { i } else { b });
                centers[c * d..(c + 1) * d].copy_from_slice(x.row(far));
                dist[far] = 0.0;
            } else {
                let mu = mean_unchecked(x, &members[c]);
                centers[c * d..(c + 1) * d].copy_from_slice(&mu);
            }
        }
        let old = labels.clone();
        cost = assign(x, &centers, k, &mut labels, &mut dist);
        trace.push(cost);
        if labels == old {
            break;
        }
    }
    let clustering = Clustering::from_labels(&labels).expect("non-empty labels");
    KMeansResult {
        clustering,
        centers,
        cost,
        trace,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElbowResult {
    /// `(k, Delta_k)` for `k = 1..=k_max`.
    pub deltas: Vec<(usize, f64)>,
    /// `(k, Delta_{k-1} / Delta_k)` for `k = 2..=k_max`.
    pub ratios: Vec<(usize, f64)>,
    pub k_star: usize,
}

/// `argmax_k Delta_{k-1} / Delta_k` over `k = 2..=k_max`, ties to the smaller
/// `k`. Each `Delta_k` is the best of fresh restarts and a run started from
/// the `k - 1` solution plus its farthest point, so it never increases.
pub fn elbow_estimate(
    x: &PointSet,
    k_max: usize,
    restarts: usize,
    seed: u64,
) -> Result<ElbowResult> {
    if k_max < 2 || k_max + 1 > x.n() {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k_max <= n - 1, got k_max = {k_max}"
        )));
    }
    let d = x.d();
    let mut deltas = Vec::with_capacity(k_max);
    let mut prev: Option<KMeansResult> = None;
    for k in 1..=k_max {
        let mut best = lloyd_kmeans(x, k, restarts, seed.wrapping_add(k as u64))?;
        if let Some(p) = &prev {
            let far = (0..x.n())
                .map(|i| (nearest_center(x.row(i), &p.centers, d), i))
                .fold((f64::NEG_INFINITY, 0), |b, c| if c.0 > b.0 { c } else { b })
                .1;
            let mut centers = p.centers.clone();
            centers.extend_from_slice(x.row(far));
            let inherited = lloyd(x, centers, k);
            if inherited.cost < best.cost {
                best = inherited;
            }
        }
        deltas.push((k, best.cost));
        prev = Some(best);
    }
    let mut ratios = Vec::with_capacity(k_max - 1);
    let mut k_star = 2;
    let mut best_ratio = f64::NEG_INFINITY;
    for k in 2..=k_max {
        let (a, b) = (deltas[k - 2].1, deltas[k - 1].1);
        let r = if b > 0.0 {
            a / b
        } else if a > 0.0 {
            f64::INFINITY
        } else {
            1.0
        };
        if r > best_ratio {
            best_ratio = r;
            k_star = k;
        }
        ratios.push((k, r));
    }
    Ok(ElbowResult {
        deltas,
        ratios,
        k_star,
    })
}

fn nearest_center(row: &[f64], centers: &[f64], d: usize) -> f64 {
    centers
        .chunks_exact(d)
        .map(|c| sq_dist(row, c))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub seed: u64,
    pub d: usize,
    pub c: f64,
    pub n: usize,
    pub sigma_whole: f64,
    /// Larger of the two components' sigma.
    pub sigma_component: f64,
    pub sigma_ratio: f64,
    /// Average 1-means cost of random halves over that of the whole set.
    pub half_cost_ratio: f64,
    /// Same ratio for one mixture component (diagnostic).
    pub component_cost_ratio: f64,
    /// `d >= c^2 / 4`: the regime where halves look as spread as the whole.
    pub in_regime: bool,
}

const HALF_SAMPLES: usize = 10;

fn average_cost(x: &PointSet, subset: &[usize]) -> f64 {
    let mu = mean_unchecked(x, subset);
    subset.iter().map(|&i| sq_dist(x.row(i), &mu)).sum::<f64>() / subset.len() as f64
}

/// Two unit-variance spherical Gaussians with mean gap `c` in `R^d`.
pub fn tightness_contrast(seed: u64, d: usize, c: f64, n: usize) -> Result<TightnessReport> {
    if d == 0 || n < 4 {
        return Err(Error::InvalidParameter("need d >= 1 and n >= 4".into()));
    }
    let mut a = vec![0.0; d];
    let mut b = vec![0.0; d];
    a[0] = -c / 2.0;
    b[0] = c / 2.0;
    let spec = MixtureSpec::isotropic(vec![a, b], 1.0)?;
    let drawn = sample_gaussian_mixture(&spec, n, seed)?;
    let x = &drawn.points;
    let all = x.all_indices();
    let sigma_whole = sigma(x, &all)?;
    let mut sigma_component: f64 = 0.0;
    let mut first = Vec::new();
    for label in 1..=2 {
        let part: Vec<usize> = (0..n).filter(|&i| drawn.labels[i] == label).collect();
        if !part.is_empty() {
            sigma_component = sigma_component.max(sigma(x, &part)?);
        }
        if label == 1 {
            first = part;
        }
    }
    let whole = average_cost(x, &all);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let half: f64 = (0..HALF_SAMPLES)
        .map(|_| average_cost(x, &sample(&mut rng, n, n / 2).into_vec()))
        .sum::<f64>()
        / HALF_SAMPLES as f64;
    let component_cost_ratio = if first.is_empty() {
        f64::NAN
    } else {
        average_cost(x, &first) / whole
    };
    Ok(TightnessReport {
        seed,
        d,
        c,
        n,
        sigma_whole,
        sigma_component,
        sigma_ratio: sigma_whole / sigma_component,
        half_cost_ratio: half / whole,
        component_cost_ratio,
        in_regime: d as f64 >= c * c / 4.0,
    })
}

/// The default contrast: `d = 200`, `c = 20`, `n = 2000`.
pub fn tightness_contrast_demo(seed: u64) -> Result<TightnessReport> {
    tightness_contrast(seed, 200, 20.0, 2000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_equals_n_costs_nothing() {
        let x = PointSet::from_values(&[0.0, 1.0, 5.0, 9.0]).unwrap();
        assert_eq!(lloyd_kmeans(&x, 4, 3, 0).unwrap().cost, 0.0);
        assert!(matches!(
            lloyd_kmeans(&x, 5, 1, 0),
            Err(Error::KTooLarge { k: 5, n: 4 })
        ));
    }

    #[test]
    fn single_center_is_the_mean() {
        let x = PointSet::from_values(&[0.0, 1.0, 5.0, 10.0]).unwrap();
        let r = lloyd_kmeans(&x, 1, 1, 0).unwrap();
        assert!((r.cost - (16.0 + 9.0 + 1.0 + 36.0)).abs() < 1e-12);
    }

    #[test]
    fn coincident_groups() {
        let x = PointSet::from_values(&[0.0, 0.0, 0.0, 7.0, 7.0]).unwrap();
        let r = lloyd_kmeans(&x, 2, 4, 1).unwrap();
        assert_eq!(r.cost, 0.0);
        let l = r.clustering.labels();
        assert!(l[0] == l[1] && l[1] == l[2] && l[3] == l[4] && l[0] != l[3]);
    }

    #[test]
    fn lloyd_cost_never_increases() {
        let v: Vec<f64> = (0..60)
            .map(|i| ((i * 37) % 23) as f64 + (i % 3) as f64 * 40.0)
            .collect();
        let x = PointSet::from_values(&v).unwrap();
        for k in 1..6 {
            let r = lloyd_kmeans(&x, k, 3, 9).unwrap();
            assert!(r.trace.windows(2).all(|w| w[1] <= w[0] + 1e-9));
        }
    }

    #[test]
    fn elbow_on_three_groups() {
        let mut v = vec![0.0; 4];
        v.extend([100.0; 4]);
        v.extend([-300.0; 4]);
        let x = PointSet::from_values(&v).unwrap();
        let r = elbow_estimate(&x, 6, 4, 0).unwrap();
        assert_eq!(r.k_star, 3);
        assert!(r.deltas.windows(2).all(|w| w[1].1 <= w[0].1));
    }
}
