//! SVD-peeling identifiers: `identify_k_with_w0` for a known minimum cluster
//! weight, `prune`, and the `identify_k` sweep over candidate weights.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use crate::convex::RoundedSelection;
use crate::error::{Error, Result};
use crate::linalg::{mean_unchecked, sigma_about, sq_dist, svd_subspace, PointSet, Subspace};
use crate::means::outlier_centered_one_means;

const ROUND_EPS: f64 = 1e-9;

/// Minimum size of a tight subset in `prune`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TightSizeFloor {
    /// `max(2, ceil(sqrt(n) ln n / 100))`.
    SqrtLog,
    Fixed(usize),
}

/// Decrement of the candidate weight in the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WStep {
    InverseN,
    Fixed(f64),
}

/// Space in which the convex identifier forms its weighted matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexSpace {
    Original,
    Projected,
}

/// Every tunable constant of the identifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConstants {
    pub r_coeff: f64,
    pub prune_c: f64,
    pub prune_exp: f64,
    pub sep_test_coeff: f64,
    pub sep_test_exp: f64,
    pub stop_fraction: f64,
    pub seed_fraction: f64,
    pub tight_size_floor: TightSizeFloor,
    pub w_step: WStep,
    pub convex_coeff: f64,
    pub convex_exp: f64,
    pub convex_space: ConvexSpace,
    pub convex_tol: f64,
    pub convex_max_iter: usize,
}

impl Default for AlgoConstants {
    fn default() -> Self {
        AlgoConstants {
            r_coeff: 2000.0,
            prune_c: 1e12,
            prune_exp: 12.0,
            sep_test_coeff: 800.0,
            sep_test_exp: 4.0,
            stop_fraction: 0.1,
            seed_fraction: 0.5,
            tight_size_floor: TightSizeFloor::SqrtLog,
            w_step: WStep::InverseN,
            convex_coeff: 72000.0,
            convex_exp: 3.5,
            convex_space: ConvexSpace::Original,
            convex_tol: 1e-4,
            convex_max_iter: 5000,
        }
    }
}

impl AlgoConstants {
    pub const KEYS: [&'static str; 14] = [
        "r_coeff",
        "prune_c",
        "prune_exp",
        "sep_test_coeff",
        "sep_test_exp",
        "stop_fraction",
        "seed_fraction",
        "tight_size_floor",
        "w_step",
        "convex_coeff",
        "convex_exp",
        "convex_space",
        "convex_tol",
        "convex_max_iter",
    ];

    /// Overrides one constant from its textual form. `tight_size_floor`
    /// accepts `sqrt-log` or an integer, `w_step` accepts `1/n` or a real,
    /// `convex_space` accepts `original` or `projected`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidParameter(format!("bad value {value:?} for {key}"));
        let real = || value.trim().parse::<f64>().map_err(|_| bad());
        let mut next = self.clone();
        match key {
            "r_coeff" => next.r_coeff = real()?,
            "prune_c" => next.prune_c = real()?,
            "prune_exp" => next.prune_exp = real()?,
            "sep_test_coeff" => next.sep_test_coeff = real()?,
            "sep_test_exp" => next.sep_test_exp = real()?,
            "stop_fraction" => next.stop_fraction = real()?,
            "seed_fraction" => next.seed_fraction = real()?,
            "convex_coeff" => next.convex_coeff = real()?,
            "convex_exp" => next.convex_exp = real()?,
            "convex_tol" => next.convex_tol = real()?,
            "convex_max_iter" => next.convex_max_iter = value.trim().parse().map_err(|_| bad())?,
            "tight_size_floor" => {
                next.tight_size_floor = match value.trim() {
                    "sqrt-log" => TightSizeFloor::SqrtLog,
                    v => TightSizeFloor::Fixed(v.parse().map_err(|_| bad())?),
                }
            }
            "w_step" => {
                next.w_step = match value.trim() {
                    "1/n" => WStep::InverseN,
                    v => WStep::Fixed(v.parse().map_err(|_| bad())?),
                }
            }
            "convex_space" => {
                next.convex_space = match value.trim() {
                    "original" => ConvexSpace::Original,
                    "projected" => ConvexSpace::Projected,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(Error::InvalidParameter(format!("unknown constant {key:?}"))),
        }
        next.validate()?;
        *self = next;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("r_coeff", self.r_coeff),
            ("prune_c", self.prune_c),
            ("prune_exp", self.prune_exp),
            ("sep_test_coeff", self.sep_test_coeff),
            ("sep_test_exp", self.sep_test_exp),
            ("convex_coeff", self.convex_coeff),
            ("convex_exp", self.convex_exp),
            ("convex_tol", self.convex_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        for (name, v) in [
            ("stop_fraction", self.stop_fraction),
            ("seed_fraction", self.seed_fraction),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        if let TightSizeFloor::Fixed(0) = self.tight_size_floor {
            return Err(Error::InvalidParameter(
                "tight_size_floor must be positive".into(),
            ));
        }
        if let WStep::Fixed(s) = self.w_step {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "w_step must lie in (0, 1), got {s}"
                )));
            }
        }
        if self.convex_max_iter == 0 {
            return Err(Error::InvalidParameter(
                "convex_max_iter must be positive".into(),
            ));
        }
        Ok(())
    }

    /// `key=value` pairs in a fixed order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let floor = match self.tight_size_floor {
            TightSizeFloor::SqrtLog => "sqrt-log".to_string(),
            TightSizeFloor::Fixed(v) => v.to_string(),
        };
        let step = match self.w_step {
            WStep::InverseN => "1/n".to_string(),
            WStep::Fixed(v) => v.to_string(),
        };
        let space = match self.convex_space {
            ConvexSpace::Original => "original",
            ConvexSpace::Projected => "projected",
        };
        vec![
            ("r_coeff", self.r_coeff.to_string()),
            ("prune_c", self.prune_c.to_string()),
            ("prune_exp", self.prune_exp.to_string()),
            ("sep_test_coeff", self.sep_test_coeff.to_string()),
            ("sep_test_exp", self.sep_test_exp.to_string()),
            ("stop_fraction", self.stop_fraction.to_string()),
            ("seed_fraction", self.seed_fraction.to_string()),
            ("tight_size_floor", floor),
            ("w_step", step),
            ("convex_coeff", self.convex_coeff.to_string()),
            ("convex_exp", self.convex_exp.to_string()),
            ("convex_space", space.to_string()),
            ("convex_tol", self.convex_tol.to_string()),
            ("convex_max_iter", self.convex_max_iter.to_string()),
        ]
    }

    pub fn tight_floor(&self, n: usize) -> usize {
        match self.tight_size_floor {
            TightSizeFloor::SqrtLog => {
                let nf = n as f64;
                let raw = (nf.sqrt() * nf.ln() / 100.0).ceil();
                (raw.max(0.0) as usize).max(2)
            }
            TightSizeFloor::Fixed(v) => v,
        }
    }

    pub fn step(&self, n: usize) -> f64 {
        match self.w_step {
            WStep::InverseN => 1.0 / n as f64,
            WStep::Fixed(s) => s,
        }
    }
}

/// Which acceptance condition rejected a candidate weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    /// Some pair of peeled sets is not separated enough.
    A,
    /// Pruning removed more than half of some peeled set.
    B,
    /// Some peeled set is smaller than `w_hat n / 2`.
    C,
    /// The peeling ran out of points before its stopping size.
    Exhausted,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailedCondition::A => "a",
            FailedCondition::B => "b",
            FailedCondition::C => "c",
            FailedCondition::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WHatAttempt {
    pub w_hat: f64,
    pub rank: usize,
    /// Iterations run before the attempt was decided; a (c) rejection stops
    /// at the first undersized set.
    pub k_hat: usize,
    /// Sizes of the sets peeled before the attempt was decided.
    pub set_sizes: Vec<usize>,
    pub failed: Option<FailedCondition>,
}

/// One peeling step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub seed: Vec<usize>,
    pub seed_center: usize,
    /// Seed mean in subspace coordinates.
    pub seed_mean: Vec<f64>,
    pub seed_sigma: f64,
    pub radius: f64,
    pub peeled: Vec<usize>,
    pub peeled_sigma: f64,
    /// Convex identifier only: the accepted mass and its optimum.
    pub m_star: Option<usize>,
    pub opt: Option<f64>,
    /// Convex identifier only: the rounding outcome for this step.
    pub rounding: Option<RoundedSelection>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub k_hat: usize,
    pub iterations: Vec<IterationRecord>,
    /// Points never peeled, increasing.
    pub residual: Vec<usize>,
    pub exhausted: bool,
    pub flags: Vec<String>,
    pub rank: usize,
    /// The weight the peeling ran with (given or accepted).
    pub w_hat: f64,
    pub w_hat_trace: Vec<WHatAttempt>,
    /// Pruned peeled sets, filled by the sweep.
    pub pruned: Vec<Vec<usize>>,
    pub constants: AlgoConstants,
    pub rng_seed: u64,
}

impl RunReport {
    pub fn peeled_sets(&self) -> Vec<Vec<usize>> {
        self.iterations.iter().map(|it| it.peeled.clone()).collect()
    }
}

pub(crate) fn ceil_count(x: f64) -> usize {
    (x - ROUND_EPS).ceil().max(0.0) as usize
}

pub(crate) fn floor_count(x: f64) -> usize {
    (x + ROUND_EPS).floor().max(0.0) as usize
}

pub(crate) fn check_weight(n: usize, w0: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidPoints(format!(
            "need at least 2 points, got {n}"
        )));
    }
    if !(w0 > 0.0 && w0 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "w0 must lie in (0, 1], got {w0}"
        )));
    }
    let product = w0 * n as f64;
    if product < 2.0 - ROUND_EPS {
        return Err(Error::WeightTooSmall { product });
    }
    Ok(())
}

pub(crate) fn k_bound(w0: f64) -> usize {
    ceil_count(1.0 / w0).max(1)
}

/// Subspace of rank `ceil(1/w)` clamped to `min(n, d)` and the coordinates of
/// every point in it.
pub(crate) fn subspace_for(p: &PointSet, w: f64) -> Result<(Subspace, PointSet)> {
    let rank = k_bound(w).min(p.n().min(p.d()));
    let m = svd_subspace(p, rank)?;
    let coords = m.coordinates(p)?;
    Ok((m, coords))
}

/// Peels clusters from `p` given a lower bound `w0` on every cluster weight.
pub fn identify_k_with_w0(p: &PointSet, w0: f64, constants: &AlgoConstants) -> Result<RunReport> {
    constants.validate()?;
    check_weight(p.n(), w0)?;
    let (m, coords) = subspace_for(p, w0)?;
    Ok(peel_in(&coords, m.rank(), w0, constants, 0).0)
}

/// Runs the peeling loop; stops early (second value `true`) once a peeled
/// set has fewer than `abort_below` points.
fn peel_in(
    coords: &PointSet,
    rank: usize,
    w0: f64,
    constants: &AlgoConstants,
    abort_below: usize,
) -> (RunReport, bool) {
    let n = coords.n();
    let nf = n as f64;
    let kb = k_bound(w0) as f64;
    let seed_size = ceil_count(constants.seed_fraction * w0 * nf).max(1);
    let stop_at = floor_count(constants.stop_fraction * w0 * nf);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut iterations = Vec::new();
    let mut exhausted = false;
    let mut aborted = false;
    while remaining.len() > stop_at {
        if seed_size > remaining.len() {
            exhausted = true;
            break;
        }
        let s = outlier_centered_one_means(coords, &remaining, seed_size)
            .expect("seed size checked against remaining points");
        let mu = mean_unchecked(coords, &s.selected);
        let seed_sigma = sigma_about(coords, &s.selected, &mu);
        let radius = constants.r_coeff * kb * kb * seed_sigma / w0.powi(3);
        let r2 = radius * radius;
        let (peeled, rest): (Vec<usize>, Vec<usize>) = remaining
            .iter()
            .partition(|&&i| i == s.center_index || sq_dist(coords.row(i), &mu) <= r2);
        let peeled_mean = mean_unchecked(coords, &peeled);
        let peeled_sigma = sigma_about(coords, &peeled, &peeled_mean);
        iterations.push(IterationRecord {
            seed: s.selected,
            seed_center: s.center_index,
            seed_mean: mu,
            seed_sigma,
            radius,
            peeled,
            peeled_sigma,
            m_star: None,
            opt: None,
            rounding: None,
        });
        remaining = rest;
        if iterations
            .last()
            .is_some_and(|r: &IterationRecord| r.peeled.len() < abort_below)
        {
            aborted = true;
            break;
        }
    }
    let mut flags = Vec::new();
    if exhausted {
        flags.push("exhausted".to_string());
    }
    let report = RunReport {
        k_hat: iterations.len(),
        iterations,
        residual: remaining,
        exhausted,
        flags,
        rank,
        w_hat: w0,
        w_hat_trace: Vec::new(),
        pruned: Vec::new(),
        constants: constants.clone(),
        rng_seed: 0,
    };
    (report, aborted)
}

/// Removes tight subsets of `x` (measured in the projection onto `m`) until
/// none is left and returns the survivors in increasing order.
pub fn prune(
    p: &PointSet,
    x: &[usize],
    m: &Subspace,
    w_hat: f64,
    constants: &AlgoConstants,
) -> Result<Vec<usize>> {
    p.check_subset(x)?;
    let coords = m.coordinates(p)?;
    Ok(prune_coords(&coords, x, w_hat, constants))
}

pub(crate) fn prune_coords(
    coords: &PointSet,
    x: &[usize],
    w_hat: f64,
    constants: &AlgoConstants,
) -> Vec<usize> {
    let mut alive: Vec<usize> = x.to_vec();
    alive.sort_unstable();
    if alive.is_empty() {
        return alive;
    }
    let floor = constants.tight_floor(coords.n());
    let mu = mean_unchecked(coords, &alive);
    let s = sigma_about(coords, &alive, &mu);
    let size = alive.len() as f64;
    // T is tight iff cost(T) / |T| < theta |T|^2.
    let theta = w_hat.powf(constants.prune_exp) * s * s / (constants.prune_c * size * size);
    if theta <= 0.0 {
        return alive;
    }
    while let Some(tight) = find_tight(coords, &alive, floor, theta) {
        alive.retain(|i| tight.binary_search(i).is_err());
    }
    alive
}

fn find_tight(coords: &PointSet, alive: &[usize], floor: usize, theta: f64) -> Option<Vec<usize>> {
    if alive.len() < floor {
        return None;
    }
    let mut keyed: Vec<(f64, bool, usize)> = Vec::with_capacity(alive.len());
    for &c in alive {
        keyed.clear();
        keyed.extend(
            alive
                .iter()
                .map(|&i| (sq_dist(coords.row(i), coords.row(c)), i != c, i)),
        );
        keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut cost = 0.0;
        for (k, item) in keyed.iter().enumerate() {
            cost += item.0;
            let m = k + 1;
            if m < floor {
                continue;
            }
            let mf = m as f64;
            if cost < theta * mf * mf * mf {
                let mut t: Vec<usize> = keyed[..m].iter().map(|k| k.2).collect();
                t.sort_unstable();
                return Some(t);
            }
        }
    }
    None
}

/// Outcome of the three acceptance conditions for one candidate weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionConditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub pruned: Vec<Vec<usize>>,
}

impl PartitionConditions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

/// Evaluates conditions (a), (b) and (c) on the given disjoint sets.
pub fn check_partition_conditions(
    p: &PointSet,
    sets: &[Vec<usize>],
    m: &Subspace,
    w_hat: f64,
    constants: &AlgoConstants,
) -> Result<PartitionConditions> {
    let mut seen = vec![false; p.n()];
    for set in sets {
        p.check_subset(set)?;
        for &i in set {
            if seen[i] {
                return Err(Error::NotAPartition { index: i });
            }
            seen[i] = true;
        }
    }
    let coords = m.coordinates(p)?;
    let a = condition_a(&coords, sets, w_hat, constants);
    let c = condition_c(sets, w_hat, p.n());
    let pruned: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| prune_coords(&coords, s, w_hat, constants))
        .collect();
    let b = sets
        .iter()
        .zip(&pruned)
        .all(|(s, q)| 2 * q.len() >= s.len());
    Ok(PartitionConditions { a, b, c, pruned })
}

fn condition_a(
    coords: &PointSet,
    sets: &[Vec<usize>],
    w_hat: f64,
    constants: &AlgoConstants,
) -> bool {
    let stats: Vec<(Vec<f64>, f64)> = sets
        .iter()
        .map(|s| {
            let mu = mean_unchecked(coords, s);
            let sg = sigma_about(coords, s, &mu);
            (mu, sg)
        })
        .collect();
    let factor = constants.sep_test_coeff / w_hat.powf(constants.sep_test_exp);
    for h in 0..stats.len() {
        for j in h + 1..stats.len() {
            let dist = sq_dist(&stats[h].0, &stats[j].0).sqrt();
            if dist < factor * (stats[h].1 + stats[j].1) {
                return false;
            }
        }
    }
    true
}

fn condition_c(sets: &[Vec<usize>], w_hat: f64, n: usize) -> bool {
    let need = ceil_count(w_hat * n as f64 / 2.0);
    sets.iter().all(|s| s.len() >= need)
}

/// Sweeps the candidate weight downward from 1 and returns the first run
/// whose peeled sets pass all three conditions.
pub fn identify_k(p: &PointSet, constants: &AlgoConstants) -> Result<RunReport> {
    constants.validate()?;
    let n = p.n();
    if n < 2 {
        return Err(Error::InvalidPoints(format!(
            "need at least 2 points, got {n}"
        )));
    }
    let step = constants.step(n);
    let mut cache: HashMap<usize, PointSet> = HashMap::new();
    let mut trace = Vec::new();
    let mut t = 0usize;
    loop {
        let w_hat = 1.0 - t as f64 * step;
        if w_hat < step - ROUND_EPS || w_hat * (n as f64) < 2.0 - ROUND_EPS {
            break;
        }
        t += 1;
        let rank = k_bound(w_hat).min(n.min(p.d()));
        if let Entry::Vacant(slot) = cache.entry(rank) {
            slot.insert(subspace_for(p, w_hat)?.1);
        }
        let coords = &cache[&rank];
        let need = ceil_count(w_hat * n as f64 / 2.0);
        let (mut run, aborted) = peel_in(coords, rank, w_hat, constants, need);
        let sets = run.peeled_sets();
        let mut pruned = Vec::new();
        let failed = if aborted || !condition_c(&sets, w_hat, n) {
            Some(FailedCondition::C)
        } else if run.exhausted {
            Some(FailedCondition::Exhausted)
        } else if !condition_a(coords, &sets, w_hat, constants) {
            Some(FailedCondition::A)
        } else {
            pruned = sets
                .iter()
                .map(|s| prune_coords(coords, s, w_hat, constants))
                .collect();
            if sets
                .iter()
                .zip(&pruned)
                .all(|(s, q)| 2 * q.len() >= s.len())
            {
                None
            } else {
                Some(FailedCondition::B)
            }
        };
        trace.push(WHatAttempt {
            w_hat,
            rank,
            k_hat: run.k_hat,
            set_sizes: sets.iter().map(Vec::len).collect(),
            failed,
        });
        if failed.is_none() {
            run.w_hat_trace = trace;
            run.pruned = pruned;
            return Ok(run);
        }
    }
    Err(Error::NoAcceptableW { trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_groups() -> PointSet {
        let mut rows = vec![[0.0, 0.0]; 50];
        rows.extend(vec![[1e6, 0.0]; 50]);
        PointSet::from_rows(&rows).unwrap()
    }

    #[test]
    fn coincident_groups_with_known_weight() {
        let r = identify_k_with_w0(&two_groups(), 0.4, &AlgoConstants::default()).unwrap();
        assert_eq!(r.k_hat, 2);
        let sets = r.peeled_sets();
        assert_eq!(sets[0].len(), 50);
        assert_eq!(sets[1].len(), 50);
        assert!(sets[0].iter().all(|&i| i < 50) || sets[0].iter().all(|&i| i >= 50));
        assert!(r.residual.is_empty());
    }

    #[test]
    fn coincident_groups_sweep() {
        let r = identify_k(&two_groups(), &AlgoConstants::default()).unwrap();
        assert_eq!(r.k_hat, 2);
        assert_eq!(r.w_hat_trace.last().unwrap().failed, None);
    }

    #[test]
    fn single_blob_sweep() {
        let p = PointSet::from_rows(&vec![[3.0, -1.0]; 20]).unwrap();
        let r = identify_k(&p, &AlgoConstants::default()).unwrap();
        assert_eq!(r.k_hat, 1);
        assert_eq!(r.w_hat, 1.0);
        assert_eq!(r.iterations[0].peeled.len(), 20);
    }

    #[test]
    fn weight_too_small() {
        let p = PointSet::from_values(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            identify_k_with_w0(&p, 0.25, &AlgoConstants::default()),
            Err(Error::WeightTooSmall { .. })
        ));
    }

    #[test]
    fn prune_leaves_zero_sigma_set() {
        let p = PointSet::from_rows(&[[1.0, 1.0]; 10]).unwrap();
        let m = Subspace::full(2);
        let out = prune(&p, &p.all_indices(), &m, 0.5, &AlgoConstants::default()).unwrap();
        assert_eq!(out.len(), 10);
    }

    #[test]
    fn prune_removes_coincident_block() {
        let mut rows: Vec<[f64; 2]> = (0..100).map(|i| [i as f64, (i * i % 17) as f64]).collect();
        rows.extend(vec![[500.0, 500.0]; 10]);
        let p = PointSet::from_rows(&rows).unwrap();
        let out = prune(
            &p,
            &p.all_indices(),
            &Subspace::full(2),
            1.0,
            &AlgoConstants::default(),
        )
        .unwrap();
        assert!(out.iter().all(|&i| i < 100));
    }

    #[test]
    fn prune_with_vanishing_weight_is_identity() {
        let rows: Vec<[f64; 2]> = (0..30).map(|i| [i as f64, 0.0]).collect();
        let p = PointSet::from_rows(&rows).unwrap();
        let out = prune(
            &p,
            &p.all_indices(),
            &Subspace::full(2),
            1e-300,
            &AlgoConstants::default(),
        )
        .unwrap();
        assert_eq!(out.len(), 30);
    }

    #[test]
    fn partition_conditions() {
        let p = PointSet::from_values(&[0.0, 0.0, 5.0, 5.0, 1.0, -1.0, 1.0, -1.0]).unwrap();
        let m = Subspace::full(1);
        let k = AlgoConstants::default();
        let single = check_partition_conditions(&p, &[vec![0, 1, 2, 3]], &m, 0.5, &k).unwrap();
        assert!(single.a);
        let apart = check_partition_conditions(&p, &[vec![0, 1], vec![2, 3]], &m, 0.5, &k).unwrap();
        assert!(apart.a);
        let same = check_partition_conditions(&p, &[vec![4, 5], vec![6, 7]], &m, 0.5, &k).unwrap();
        assert!(!same.a);
        assert!(matches!(
            check_partition_conditions(&p, &[vec![0, 1], vec![1, 2]], &m, 0.5, &k),
            Err(Error::NotAPartition { index: 1 })
        ));
    }

    #[test]
    fn constants_set_and_reject() {
        let mut k = AlgoConstants::default();
        k.set("r_coeff", "3.5").unwrap();
        k.set("w_step", "0.01").unwrap();
        k.set("tight_size_floor", "4").unwrap();
        assert_eq!(k.r_coeff, 3.5);
        assert_eq!(k.w_step, WStep::Fixed(0.01));
        assert_eq!(k.tight_floor(1000), 4);
        assert!(k.set("nope", "1").is_err());
        assert!(k.set("stop_fraction", "1.5").is_err());
    }

    #[test]
    fn sqrt_log_floor_is_at_least_two() {
        let k = AlgoConstants::default();
        assert_eq!(k.tight_floor(10), 2);
        assert_eq!(k.tight_floor(10_000), 10);
    }
}
