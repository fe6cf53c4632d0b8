//! Convex-relaxation identifier.
//!
//! `C(m, nu, T)` minimizes `||B_y|| / sqrt(m)` over `y` in the capped simplex
//! `{0 <= y_i <= 1, sum y = m}` supported on `T`, where row `i` of `B_y` is
//! `y_i (x_i - nu)`. It is solved by accelerated projected gradient on the
//! soft maximum `mu ln tr exp(B^T B / mu)`, annealing `mu` down to the
//! tolerance, in the diagonal metric `|x_i - nu|^2`. The exact objective of
//! every iterate is tracked and the best one returned.

use crate::error::{Error, Result};
use crate::linalg::{
    gram_cols, gram_rows, jacobi_eigen, mean_unchecked, sigma, sigma_about, top_right_singular,
    PointSet,
};
use crate::means::outlier_centered_one_means;
use crate::peel::{
    ceil_count, check_weight, floor_count, subspace_for, AlgoConstants, ConvexSpace,
    IterationRecord, RunReport,
};

const PROJECTION_TOL: f64 = 1e-10;
const PLATEAU: usize = 200;
const MU_EVERY: usize = 50;
const SMOOTHING_START: f64 = 0.05;
const WARM_SMOOTHING: f64 = 16.0;
const WEIGHT_CUTOFF: f64 = 1e-18;

/// `lambda_max(M)`, the smoothed maximum `mu ln tr exp(M / mu)` and its
/// gradient in `y`, for `M = sum_i y_i^2 (x_i - nu)(x_i - nu)^T`.
struct Smoothed {
    top: f64,
    value: f64,
    grad: Vec<f64>,
}

fn soft_weights(values: &[f64], mu: f64) -> (f64, Vec<f64>) {
    let top = values[0];
    if mu <= 0.0 {
        let mut w = vec![0.0; values.len()];
        w[0] = 1.0;
        return (top, w);
    }
    let mut w: Vec<f64> = values.iter().map(|l| ((l - top) / mu).exp()).collect();
    let z: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= z);
    (top + mu * z.ln(), w)
}

fn smoothed(p: &PointSet, nu: &[f64], y: &[f64], mu: f64) -> Smoothed {
    let (rows, idx) = weighted_rows(p, nu, y);
    let (s, d) = (idx.len(), p.d());
    let mut grad = vec![0.0; y.len()];
    if s == 0 {
        return Smoothed {
            top: 0.0,
            value: 0.0,
            grad,
        };
    }
    if d <= s {
        let eig = jacobi_eigen(gram_cols(&rows, s, d), d);
        let (value, w) = soft_weights(&eig.values, mu);
        for (r, &i) in idx.iter().enumerate() {
            let row = &rows[r * d..(r + 1) * d];
            let mut acc = 0.0;
            for (k, &wk) in w.iter().enumerate() {
                if wk > WEIGHT_CUTOFF {
                    let proj: f64 = row
                        .iter()
                        .enumerate()
                        .map(|(j, a)| a * eig.vectors[j * d + k])
                        .sum();
                    acc += wk * proj * proj;
                }
            }
            grad[i] = 2.0 * acc / y[i];
        }
        Smoothed {
            top: eig.values[0],
            value,
            grad,
        }
    } else {
        let eig = jacobi_eigen(gram_rows(&rows, s, d), s);
        let (value, w) = soft_weights(&eig.values, mu);
        for (r, &i) in idx.iter().enumerate() {
            let acc: f64 = (0..s)
                .filter(|&k| w[k] > WEIGHT_CUTOFF)
                .map(|k| w[k] * eig.values[k].max(0.0) * eig.vectors[r * s + k].powi(2))
                .sum();
            grad[i] = 2.0 * acc / y[i];
        }
        Smoothed {
            top: eig.values[0],
            value,
            grad,
        }
    }
}

/// A feasible point of `C(m, nu, T)`; `y` has one entry per input point.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSelection {
    pub y: Vec<f64>,
    pub m: usize,
    pub objective: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundedSelection {
    pub selected: Vec<usize>,
    /// `||B_{y'}|| / ||B_y||` (0 when both vanish).
    pub spectral_bound_ratio: f64,
    /// `m - |selected|`, saturating at 0.
    pub mass_deficit: usize,
}

fn weighted_rows(p: &PointSet, nu: &[f64], y: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let d = p.d();
    let mut rows = Vec::new();
    let mut idx = Vec::new();
    for (i, &yi) in y.iter().enumerate() {
        if yi != 0.0 {
            rows.extend(p.row(i).iter().zip(nu).map(|(a, c)| yi * (a - c)));
            idx.push(i);
        }
    }
    if idx.is_empty() {
        rows.resize(d, 0.0);
    }
    (rows, idx)
}

fn check_inputs(p: &PointSet, nu: &[f64], y: &[f64]) -> Result<()> {
    if nu.len() != p.d() {
        return Err(Error::DimMismatch {
            expected: p.d(),
            got: nu.len(),
        });
    }
    if y.len() != p.n() {
        return Err(Error::DimMismatch {
            expected: p.n(),
            got: y.len(),
        });
    }
    Ok(())
}

/// `||B_y||`.
pub fn weighted_spectral_norm(p: &PointSet, nu: &[f64], y: &[f64]) -> Result<f64> {
    check_inputs(p, nu, y)?;
    Ok(norm_and_subgradient(p, nu, y).0)
}

/// `||B_y||` and the subgradient `u_i (v . (x_i - nu))` from its top
/// singular pair.
pub fn weighted_spectral_subgradient(
    p: &PointSet,
    nu: &[f64],
    y: &[f64],
) -> Result<(f64, Vec<f64>)> {
    check_inputs(p, nu, y)?;
    Ok(norm_and_subgradient(p, nu, y))
}

fn norm_and_subgradient(p: &PointSet, nu: &[f64], y: &[f64]) -> (f64, Vec<f64>) {
    let (rows, idx) = weighted_rows(p, nu, y);
    let (s2, v) = top_right_singular(&rows, idx.len().max(1), p.d());
    let s = s2.sqrt();
    let mut g = vec![0.0; y.len()];
    if s > 0.0 {
        for &i in &idx {
            let proj: f64 = p
                .row(i)
                .iter()
                .zip(nu)
                .zip(&v)
                .map(|((a, c), vv)| (a - c) * vv)
                .sum();
            g[i] = y[i] * proj * proj / s;
        }
    }
    (s, g)
}

/// Euclidean projection of `x` (restricted to `support`) onto
/// `{0 <= y <= 1, sum y = m}`, by bisection on the shift.
#[cfg(test)]
fn project_capped_simplex(x: &[f64], support: &[usize], m: usize, out: &mut [f64]) {
    let unit = vec![1.0; x.len()];
    project_scaled(x, &unit, support, m, out);
}

/// Projection in the metric `sum_i (y_i - x_i)^2 / c_i`: `y_i = clamp(x_i -
/// tau c_i, 0, 1)` with `tau` found by bisection.
fn project_scaled(x: &[f64], c: &[f64], support: &[usize], m: usize, out: &mut [f64]) {
    let mf = m as f64;
    let mass = |tau: f64| {
        support
            .iter()
            .map(|&i| (x[i] - tau * c[i]).clamp(0.0, 1.0))
            .sum::<f64>()
    };
    let (mut lo, mut hi) = support
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &i| {
            (a.min((x[i] - 1.0) / c[i]), b.max(x[i] / c[i]))
        });
    while hi - lo > PROJECTION_TOL * (1.0 + lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mass(mid) > mf {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tau = 0.5 * (lo + hi);
    out.iter_mut().for_each(|v| *v = 0.0);
    for &i in support {
        out[i] = (x[i] - tau * c[i]).clamp(0.0, 1.0);
    }
}

/// Solves `C(m, nu, T)` to relative plateau tolerance `tol`.
pub fn solve_convex(
    p: &PointSet,
    t: &[usize],
    m: usize,
    nu: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<FractionalSelection> {
    solve_convex_from(p, t, m, nu, tol, max_iter, None)
}

/// As [`solve_convex`], starting from the projection of `warm` when given.
pub fn solve_convex_from(
    p: &PointSet,
    t: &[usize],
    m: usize,
    nu: &[f64],
    tol: f64,
    max_iter: usize,
    warm: Option<&[f64]>,
) -> Result<FractionalSelection> {
    solve_until(p, t, m, nu, tol, max_iter, warm, -1.0)
}

/// Stops as soon as the objective is at most `target`; the returned
/// objective is then only an upper bound on the optimum.
#[allow(clippy::too_many_arguments)]
fn solve_until(
    p: &PointSet,
    t: &[usize],
    m: usize,
    nu: &[f64],
    tol: f64,
    max_iter: usize,
    warm: Option<&[f64]>,
    target: f64,
) -> Result<FractionalSelection> {
    p.check_subset(t)?;
    if nu.len() != p.d() {
        return Err(Error::DimMismatch {
            expected: p.d(),
            got: nu.len(),
        });
    }
    if m == 0 || !(tol > 0.0) {
        return Err(Error::InvalidParameter("need m >= 1 and tol > 0".into()));
    }
    if m > t.len() {
        return Err(Error::Infeasible {
            m,
            available: t.len(),
        });
    }
    let n = p.n();
    let sqrt_m = (m as f64).sqrt();
    let mut support = t.to_vec();
    support.sort_unstable();
    support.dedup();

    // Integral start: the m points nearest to nu.
    let mut best_y = vec![0.0; n];
    {
        let mut keyed: Vec<(f64, usize)> = support
            .iter()
            .map(|&i| {
                (
                    p.row(i)
                        .iter()
                        .zip(nu)
                        .map(|(a, c)| (a - c) * (a - c))
                        .sum(),
                    i,
                )
            })
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, i) in &keyed[..m] {
            best_y[i] = 1.0;
        }
    }
    let mut best = norm_and_subgradient(p, nu, &best_y).0;

    // Diagonal metric h_i = |x_i - nu|^2; steps are (g_i + tau) / (lip h_i).
    let mut h = vec![1.0; n];
    for &i in &support {
        h[i] = p
            .row(i)
            .iter()
            .zip(nu)
            .map(|(a, c)| (a - c) * (a - c))
            .sum::<f64>();
    }
    let h_floor = 1e-12 * support.iter().map(|&i| h[i]).fold(0.0, f64::max);
    for &i in &support {
        h[i] = h[i].max(h_floor).max(f64::MIN_POSITIVE);
    }
    let warm = warm.filter(|w| w.len() == n);
    if let Some(w) = warm {
        let inv_h: Vec<f64> = h.iter().map(|v| 1.0 / v).collect();
        let mut x = vec![0.0; n];
        project_scaled(w, &inv_h, &support, m, &mut x);
        let fw = norm_and_subgradient(p, nu, &x).0;
        if fw < best {
            best = fw;
            best_y = x;
        }
    }
    let mut x = best_y.clone();
    let mut iterations = 0;
    let bound = target * sqrt_m;
    let mut converged = support.len() == m || best == 0.0 || best <= bound;

    if !converged {
        let top0 = best * best;
        let ln_r = (p.d().min(support.len()).max(2) as f64).ln();
        let mut mu = match warm {
            Some(_) => WARM_SMOOTHING * tol * top0 / (4.0 * ln_r),
            None => SMOOTHING_START * top0,
        };
        let mut lip = 2.0;
        let mut scale = vec![0.0; n];
        let mut x_prev = x.clone();
        let mut tk = 1.0f64;
        let mut fx = smoothed(p, nu, &x, mu).value;
        let mut z = vec![0.0; n];
        let mut cand = vec![0.0; n];
        let mut window_best = best;
        while iterations < max_iter {
            iterations += 1;
            let mu_floor = tol * best * best / (4.0 * ln_r);
            if iterations % MU_EVERY == 0 && mu > mu_floor {
                mu = (0.5 * mu).max(mu_floor);
                tk = 1.0;
                x_prev.copy_from_slice(&x);
                fx = smoothed(p, nu, &x, mu).value;
            }
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * tk * tk).sqrt());
            let beta = (tk - 1.0) / t_next;
            for &i in &support {
                z[i] = x[i] + beta * (x[i] - x_prev[i]);
            }
            let sz = smoothed(p, nu, &z, mu);
            let sc = loop {
                for &i in &support {
                    scale[i] = 1.0 / (lip * h[i]);
                }
                let shifted: Vec<f64> = (0..n).map(|i| z[i] - scale[i] * sz.grad[i]).collect();
                project_scaled(&shifted, &scale, &support, m, &mut cand);
                let sc = smoothed(p, nu, &cand, mu);
                let (mut lin, mut quad) = (0.0, 0.0);
                for &i in &support {
                    let diff = cand[i] - z[i];
                    lin += sz.grad[i] * diff;
                    quad += h[i] * diff * diff;
                }
                if sc.value <= sz.value + lin + 0.5 * lip * quad + 1e-12 * sz.value.abs()
                    || quad == 0.0
                {
                    break sc;
                }
                lip *= 2.0;
            };
            let f = sc.top.max(0.0).sqrt();
            if f < best {
                best = f;
                best_y.copy_from_slice(&cand);
            }
            if sc.value > fx {
                tk = 1.0;
                x_prev.copy_from_slice(&cand);
            } else {
                tk = t_next;
                x_prev.copy_from_slice(&x);
            }
            x.copy_from_slice(&cand);
            fx = sc.value;
            lip *= 0.9;
            if best == 0.0 || best <= bound {
                converged = true;
                break;
            }
            if iterations % PLATEAU == 0 {
                if mu <= 2.0 * tol * best * best / (4.0 * ln_r) && window_best - best <= tol * best
                {
                    converged = true;
                    break;
                }
                window_best = best;
            }
        }
        // The m heaviest entries form a feasible integral candidate.
        let mut order: Vec<usize> = support.clone();
        order.sort_by(|&a, &b| best_y[b].total_cmp(&best_y[a]).then(a.cmp(&b)));
        let mut integral = vec![0.0; n];
        for &i in &order[..m] {
            integral[i] = 1.0;
        }
        let fi = norm_and_subgradient(p, nu, &integral).0;
        if fi < best {
            best = fi;
            best_y = integral;
        }
    }
    let selection = FractionalSelection {
        y: best_y,
        m,
        objective: best / sqrt_m,
        iterations,
    };
    if !converged && best > 0.0 {
        return Err(Error::SolverStalled {
            iterations,
            best: Box::new(selection),
        });
    }
    Ok(selection)
}

/// Keeps the points with `y_i >= w0^2 / 20`.
pub fn round_selection(
    p: &PointSet,
    nu: &[f64],
    y: &FractionalSelection,
    w0: f64,
) -> Result<RoundedSelection> {
    check_inputs(p, nu, &y.y)?;
    let threshold = w0 * w0 / 20.0;
    let selected: Vec<usize> = (0..p.n()).filter(|&i| y.y[i] >= threshold).collect();
    let mut indicator = vec![0.0; p.n()];
    for &i in &selected {
        indicator[i] = 1.0;
    }
    let rounded = norm_and_subgradient(p, nu, &indicator).0;
    let original = norm_and_subgradient(p, nu, &y.y).0;
    let spectral_bound_ratio = if original > 0.0 {
        rounded / original
    } else if rounded > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(RoundedSelection {
        mass_deficit: y.m.saturating_sub(selected.len()),
        selected,
        spectral_bound_ratio,
    })
}

/// Peels clusters by growing the convex selection around each seed while
/// its optimum stays within `convex_coeff / w0^convex_exp` of the seed's.
pub fn identify_k_convex(p: &PointSet, w0: f64, constants: &AlgoConstants) -> Result<RunReport> {
    constants.validate()?;
    check_weight(p.n(), w0)?;
    let n = p.n();
    let nf = n as f64;
    let (m_space, coords) = subspace_for(p, w0)?;
    let space = match constants.convex_space {
        ConvexSpace::Original => p,
        ConvexSpace::Projected => &coords,
    };
    let zero_tol = 1e-12 * sigma(p, &p.all_indices())? * nf.sqrt();
    let factor = constants.convex_coeff / w0.powf(constants.convex_exp);
    let seed_size = ceil_count(constants.seed_fraction * w0 * nf).max(1);
    let stop_at = floor_count(constants.stop_fraction * w0 * nf);
    let (tol, cap) = (constants.convex_tol, constants.convex_max_iter);

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut iterations = Vec::new();
    let mut flags = Vec::new();
    let mut exhausted = false;
    while remaining.len() > stop_at {
        if seed_size > remaining.len() {
            exhausted = true;
            flags.push("exhausted".to_string());
            break;
        }
        let s = outlier_centered_one_means(&coords, &remaining, seed_size)?;
        let nu = mean_unchecked(space, &s.selected);
        let base = solve_convex_from(space, &remaining, seed_size, &nu, tol, cap, None)?;
        let limit = if base.objective <= zero_tol {
            zero_tol
        } else {
            factor * base.objective
        };
        let mut accepted = base;
        for m in seed_size + 1..=remaining.len() {
            let next = solve_until(
                space,
                &remaining,
                m,
                &nu,
                tol,
                cap,
                Some(&accepted.y),
                limit,
            )?;
            if next.objective > limit {
                break;
            }
            accepted = next;
        }
        if accepted.m > seed_size {
            accepted = solve_convex_from(
                space,
                &remaining,
                accepted.m,
                &nu,
                tol,
                cap,
                Some(&accepted.y),
            )?;
        }
        let rounded = round_selection(space, &nu, &accepted, w0)?;
        let mut peeled = rounded.selected.clone();
        if peeled.is_empty() {
            flags.push("rounding-degenerate".to_string());
            peeled = s.selected.clone();
        }
        let mu = mean_unchecked(&coords, &s.selected);
        let seed_sigma = sigma_about(&coords, &s.selected, &mu);
        let peeled_sigma = sigma_about(&coords, &peeled, &mean_unchecked(&coords, &peeled));
        remaining.retain(|i| peeled.binary_search(i).is_err());
        iterations.push(IterationRecord {
            seed: s.selected,
            seed_center: s.center_index,
            seed_mean: mu,
            seed_sigma,
            radius: 0.0,
            peeled,
            peeled_sigma,
            m_star: Some(accepted.m),
            opt: Some(accepted.objective),
            rounding: Some(rounded),
        });
    }
    Ok(RunReport {
        k_hat: iterations.len(),
        iterations,
        residual: remaining,
        exhausted,
        flags,
        rank: m_space.rank(),
        w_hat: w0,
        w_hat_trace: Vec::new(),
        pruned: Vec::new(),
        constants: constants.clone(),
        rng_seed: 0,
    })
}

/// Exhaustive minimum of `||B||/sqrt(m)` over 0/1 selections of size `m`
/// from `t`; only meant for small `t`.
#[cfg(test)]
fn integral_minimum(p: &PointSet, t: &[usize], m: usize, nu: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    let mut y = vec![0.0; p.n()];
    let mut pick: Vec<usize> = (0..m).collect();
    loop {
        y.iter_mut().for_each(|v| *v = 0.0);
        for &k in &pick {
            y[t[k]] = 1.0;
        }
        best = best.min(norm_and_subgradient(p, nu, &y).0);
        let mut k = m;
        while k > 0 && pick[k - 1] == t.len() - m + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        pick[k - 1] += 1;
        for j in k..m {
            pick[j] = pick[j - 1] + 1;
        }
    }
    best / (m as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn full_mass_forces_all_ones() {
        let p = PointSet::from_rows(&[[0.0, 1.0], [2.0, 0.0], [1.0, 1.0]]).unwrap();
        let nu = [1.0, 0.0];
        let r = solve_convex(&p, &[0, 1, 2], 3, &nu, 1e-6, 5000).unwrap();
        assert!(r.y.iter().all(|&v| v == 1.0));
        let direct = weighted_spectral_norm(&p, &nu, &[1.0; 3]).unwrap() / 3f64.sqrt();
        assert_relative_eq!(r.objective, direct, max_relative = 1e-12);
    }

    #[test]
    fn coincident_points_reach_zero() {
        let mut rows = vec![[4.0, 4.0]; 5];
        rows.extend([[0.0, 1.0], [3.0, -2.0], [7.0, 7.0]]);
        let p = PointSet::from_rows(&rows).unwrap();
        let r = solve_convex(&p, &p.all_indices(), 5, &[4.0, 4.0], 1e-6, 5000).unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(&r.y[..5], &[1.0; 5]);
    }

    #[test]
    fn infeasible_mass() {
        let p = PointSet::from_values(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            solve_convex(&p, &[0, 1], 3, &[0.0], 1e-6, 10),
            Err(Error::Infeasible { m: 3, available: 2 })
        ));
    }

    #[test]
    fn projection_hits_mass_and_box() {
        let x = [0.3, 2.0, -1.0, 0.9, 0.5];
        let mut out = [0.0; 5];
        project_capped_simplex(&x, &[0, 1, 2, 3, 4], 2, &mut out);
        assert_relative_eq!(out.iter().sum::<f64>(), 2.0, epsilon = 1e-8);
        assert!(out.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert_eq!(out[1], 1.0);
        assert_eq!(out[2], 0.0);
    }

    #[test]
    fn rounding_examples() {
        let p = PointSet::from_values(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let integral = FractionalSelection {
            y: vec![1.0, 1.0, 0.0, 0.0],
            m: 2,
            objective: 0.0,
            iterations: 0,
        };
        let r = round_selection(&p, &[0.5], &integral, 0.5).unwrap();
        assert_eq!(r.selected, vec![0, 1]);
        assert_eq!(r.mass_deficit, 0);
        assert_relative_eq!(r.spectral_bound_ratio, 1.0);
        let w0: f64 = 0.5;
        let tiny = FractionalSelection {
            y: vec![w0 * w0 / 40.0; 4],
            m: 1,
            objective: 0.0,
            iterations: 0,
        };
        let r = round_selection(&p, &[0.5], &tiny, w0).unwrap();
        assert!(r.selected.is_empty());
        assert_eq!(r.mass_deficit, 1);
    }

    #[test]
    fn coincident_groups_convex() {
        let mut rows = vec![[0.0, 0.0]; 50];
        rows.extend(vec![[1e6, 0.0]; 50]);
        let p = PointSet::from_rows(&rows).unwrap();
        let r = identify_k_convex(&p, 0.4, &AlgoConstants::default()).unwrap();
        assert_eq!(r.k_hat, 2);
        assert_eq!(r.iterations[0].peeled.len(), 50);
        assert_eq!(r.iterations[1].peeled.len(), 50);
    }

    #[test]
    fn single_blob_convex() {
        let p = PointSet::from_rows(&vec![[1.0, 2.0, 3.0]; 30]).unwrap();
        let r = identify_k_convex(&p, 0.5, &AlgoConstants::default()).unwrap();
        assert_eq!(r.k_hat, 1);
    }

    #[test]
    fn relaxation_beats_integral_on_small_instance() {
        let p = PointSet::from_rows(&[
            [0.0, 0.0],
            [1.0, 0.2],
            [0.3, 1.1],
            [5.0, 5.0],
            [-0.4, 0.5],
            [0.9, -0.7],
            [4.0, -3.0],
        ])
        .unwrap();
        let nu = [0.2, 0.1];
        let t = p.all_indices();
        let r = solve_convex(&p, &t, 3, &nu, 1e-4, 5000).unwrap();
        let exact = integral_minimum(&p, &t, 3, &nu);
        assert!(
            r.objective <= exact * (1.0 + 1e-4),
            "{} vs {exact}",
            r.objective
        );
    }
}
