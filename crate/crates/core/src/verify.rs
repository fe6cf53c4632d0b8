//! Checks of the no-tight-sub-cluster conditions and of cluster separation,
//! and the exhaustive identifier built on them.
//!
//! A subset `T` of a cluster `C` with `|T| >= floor` is tight when
//! `sigma(T)^2 < |T|^2 / (125 |C|^2) * sigma(C)^2` (weak form), or when the
//! same inequality holds for the projections onto some line (strong form).

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::linalg::{
    bottom_eigenpair, centered_rows, directional_sigma, gram_cols, gram_rows, mean_unchecked, norm,
    sigma, sq_dist, top_eigenpair, PointSet,
};
use crate::peel::AlgoConstants;

const NTSC_DENOM: f64 = 125.0;
pub const EXACT_CLUSTER_LIMIT: usize = 20;
pub const EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    WeakNtsc,
    Ntsc,
    WeakSeparation,
    StrongSeparation,
}

impl ConditionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::WeakNtsc => "weak-ntsc",
            ConditionKind::Ntsc => "ntsc",
            ConditionKind::WeakSeparation => "weak-separation",
            ConditionKind::StrongSeparation => "strong-separation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    /// Sampling found no violation; this is not a proof.
    SampledNoViolation,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::SampledNoViolation => "sampled-no-violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `lhs < rhs` is the violated inequality (squared deviations).
    Subset {
        cluster: usize,
        subset: Vec<usize>,
        direction: Option<Vec<f64>>,
        lhs: f64,
        rhs: f64,
    },
    /// `distance < bound`.
    Pair {
        first: usize,
        second: usize,
        distance: f64,
        bound: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub condition: ConditionKind,
    pub holds: Verdict,
    pub witness: Option<Witness>,
    /// Subsets examined (sampled mode) or enumerated (exact mode).
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationKind {
    Weak,
    Strong,
}

fn ratio(t: usize, c: usize) -> f64 {
    let (t, c) = (t as f64, c as f64);
    t * t / (NTSC_DENOM * c * c)
}

/// Weak check with the default size floor `max(2, ceil(sqrt(n) ln n / 100))`.
pub fn check_weak_ntsc(
    p: &PointSet,
    clusters: &Clustering,
    mode: CheckMode,
) -> Result<ConditionReport> {
    check_weak_ntsc_with_floor(
        p,
        clusters,
        mode,
        AlgoConstants::default().tight_floor(p.n()),
    )
}

pub fn check_weak_ntsc_with_floor(
    p: &PointSet,
    clusters: &Clustering,
    mode: CheckMode,
    floor: usize,
) -> Result<ConditionReport> {
    check_ntsc_impl(p, clusters, mode, floor.max(1), None)
}

/// Strong check; `directions` random lines are tried per sampled subset.
/// Exact mode tests every line at once through the smallest eigenvalue of
/// `Sigma_T - rho Sigma_C`.
pub fn check_ntsc(
    p: &PointSet,
    clusters: &Clustering,
    mode: CheckMode,
    directions: usize,
) -> Result<ConditionReport> {
    check_ntsc_with_floor(
        p,
        clusters,
        mode,
        directions,
        AlgoConstants::default().tight_floor(p.n()),
    )
}

pub fn check_ntsc_with_floor(
    p: &PointSet,
    clusters: &Clustering,
    mode: CheckMode,
    directions: usize,
    floor: usize,
) -> Result<ConditionReport> {
    check_ntsc_impl(p, clusters, mode, floor.max(1), Some(directions))
}

fn check_ntsc_impl(
    p: &PointSet,
    clusters: &Clustering,
    mode: CheckMode,
    floor: usize,
    directions: Option<usize>,
) -> Result<ConditionReport> {
    clusters.check_against(p)?;
    let condition = if directions.is_some() {
        ConditionKind::Ntsc
    } else {
        ConditionKind::WeakNtsc
    };
    if mode == CheckMode::Exact {
        if let Some(part) = clusters
            .parts()
            .iter()
            .find(|c| c.len() > EXACT_CLUSTER_LIMIT)
        {
            return Err(Error::TooLargeForExact {
                size: part.len(),
                limit: EXACT_CLUSTER_LIMIT,
            });
        }
    }
    let mut trials = 0;
    for (k, part) in clusters.parts().iter().enumerate() {
        let ctx = ClusterCtx::new(p, part);
        let found = match (mode, directions) {
            (CheckMode::Exact, None) => ctx.exact_weak(floor, &mut trials),
            (CheckMode::Exact, Some(_)) => ctx.exact_strong(floor, &mut trials),
            (CheckMode::Sampled { trials: t, seed }, dirs) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                ctx.sampled(floor, t, dirs, &mut rng, &mut trials)
            }
        };
        if let Some((subset, direction, lhs, rhs)) = found {
            return Ok(ConditionReport {
                condition,
                holds: Verdict::Refuted,
                witness: Some(Witness::Subset {
                    cluster: k,
                    subset,
                    direction,
                    lhs,
                    rhs,
                }),
                trials,
            });
        }
    }
    let holds = match mode {
        CheckMode::Exact => Verdict::Verified,
        CheckMode::Sampled { .. } => Verdict::SampledNoViolation,
    };
    Ok(ConditionReport {
        condition,
        holds,
        witness: None,
        trials,
    })
}

type Violation = (Vec<usize>, Option<Vec<f64>>, f64, f64);

struct ClusterCtx<'a> {
    p: &'a PointSet,
    part: &'a [usize],
    /// Gram matrix of the cluster's points centered at the cluster mean.
    gram: Vec<f64>,
    sigma_sq: f64,
    /// Covariance of the cluster (divide by |C|), d x d.
    cov: Vec<f64>,
    top_dir: Vec<f64>,
}

impl<'a> ClusterCtx<'a> {
    fn new(p: &'a PointSet, part: &'a [usize]) -> Self {
        let c = part.len();
        let d = p.d();
        let mu = mean_unchecked(p, part);
        let rows = centered_rows(p, part, &mu);
        let gram = gram_rows(&rows, c, d);
        let mut cov = gram_cols(&rows, c, d);
        cov.iter_mut().for_each(|v| *v /= c as f64);
        let sigma_sq = sigma(p, part).expect("non-empty part").powi(2);
        let (_, top_dir) = top_eigenpair(cov.clone(), d);
        ClusterCtx {
            p,
            part,
            gram,
            sigma_sq,
            cov,
            top_dir,
        }
    }

    fn globals(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&a| self.part[a]).collect()
    }

    /// `tr(Sigma_T)` from the cluster Gram matrix.
    fn trace(&self, local: &[usize]) -> f64 {
        let c = self.part.len();
        let t = local.len() as f64;
        let diag: f64 = local.iter().map(|&a| self.gram[a * c + a]).sum();
        let mut all = 0.0;
        for &a in local {
            for &b in local {
                all += self.gram[a * c + b];
            }
        }
        ((diag - all / t) / t).max(0.0)
    }

    fn weak_violation(&self, local: &[usize]) -> Option<Violation> {
        let rhs = ratio(local.len(), self.part.len()) * self.sigma_sq;
        if rhs <= 0.0 {
            return None;
        }
        let rank = (local.len() - 1).min(self.p.d()).max(1) as f64;
        if self.trace(local) / rank >= rhs {
            return None;
        }
        let subset = self.globals(local);
        let lhs = sigma(self.p, &subset).expect("non-empty subset").powi(2);
        (lhs < rhs).then_some((subset, None, lhs, rhs))
    }

    /// Recomputes the directional inequality from scratch before reporting.
    fn line_violation(&self, local: &[usize], v: &[f64]) -> Option<Violation> {
        let subset = self.globals(local);
        let sc = directional_sigma(self.p, self.part, v).ok()?;
        let rhs = ratio(local.len(), self.part.len()) * sc * sc;
        if rhs <= 0.0 {
            return None;
        }
        let st = directional_sigma(self.p, &subset, v).ok()?;
        let lhs = st * st;
        (lhs < rhs).then(|| (subset, Some(v.to_vec()), lhs, rhs))
    }

    fn exact_weak(&self, floor: usize, trials: &mut usize) -> Option<Violation> {
        let c = self.part.len();
        for mask in 1u32..(1u32 << c) {
            if (mask.count_ones() as usize) < floor {
                continue;
            }
            *trials += 1;
            let local = bits(mask);
            if let Some(v) = self.weak_violation(&local) {
                return Some(v);
            }
        }
        None
    }

    fn exact_strong(&self, floor: usize, trials: &mut usize) -> Option<Violation> {
        let c = self.part.len();
        let d = self.p.d();
        for mask in 1u32..(1u32 << c) {
            let t = mask.count_ones() as usize;
            if t < floor {
                continue;
            }
            *trials += 1;
            let local = bits(mask);
            let subset = self.globals(&local);
            let mu = mean_unchecked(self.p, &subset);
            let mut m = gram_cols(&centered_rows(self.p, &subset, &mu), t, d);
            let rho = ratio(t, c);
            for (a, b) in m.iter_mut().zip(&self.cov) {
                *a = *a / t as f64 - rho * b;
            }
            let (lambda, v) = bottom_eigenpair(m, d);
            if lambda < 0.0 {
                let len = norm(&v);
                let v: Vec<f64> = v.iter().map(|x| x / len).collect();
                if let Some(found) = self.line_violation(&local, &v) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn sampled(
        &self,
        floor: usize,
        count: usize,
        directions: Option<usize>,
        rng: &mut ChaCha8Rng,
        trials: &mut usize,
    ) -> Option<Violation> {
        let c = self.part.len();
        if c < floor {
            return None;
        }
        let d = self.p.d();
        let check = |local: &[usize], rng: &mut ChaCha8Rng| -> Option<Violation> {
            match directions {
                None => self.weak_violation(local),
                Some(k) => {
                    if let Some(v) = self.line_violation(local, &self.top_dir) {
                        return Some(v);
                    }
                    for _ in 0..k {
                        let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
                        let len = norm(&v);
                        if len == 0.0 {
                            continue;
                        }
                        v.iter_mut().for_each(|x| *x /= len);
                        if let Some(found) = self.line_violation(local, &v) {
                            return Some(found);
                        }
                    }
                    None
                }
            }
        };
        // Nearest-neighbour balls of sizes floor * 2^j around every point.
        let mut sizes = Vec::new();
        let mut s = floor;
        while s < c {
            sizes.push(s);
            s *= 2;
        }
        for a in 0..c {
            let mut order: Vec<(f64, usize)> = (0..c)
                .map(|b| {
                    (
                        self.gram[a * c + a] + self.gram[b * c + b] - 2.0 * self.gram[a * c + b],
                        b,
                    )
                })
                .collect();
            order.sort_by(|x, y| {
                x.0.total_cmp(&y.0)
                    .then((x.1 != a).cmp(&(y.1 != a)))
                    .then(x.1.cmp(&y.1))
            });
            for &size in &sizes {
                *trials += 1;
                let mut local: Vec<usize> = order[..size].iter().map(|o| o.1).collect();
                local.sort_unstable();
                if let Some(v) = check(&local, rng) {
                    return Some(v);
                }
            }
        }
        for _ in 0..count {
            *trials += 1;
            let size = rng.random_range(floor..=c);
            let mut local = sample(rng, c, size).into_vec();
            local.sort_unstable();
            if let Some(v) = check(&local, rng) {
                return Some(v);
            }
        }
        None
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

/// Checks every pair of clusters against `gamma (sigma_h + sigma_j)` (weak)
/// or `gamma * max_h sigma_h` (strong).
pub fn check_separation(
    p: &PointSet,
    clusters: &Clustering,
    gamma: f64,
    kind: SeparationKind,
) -> Result<ConditionReport> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let stats = clusters.stats(p)?;
    let sigma0 = stats.iter().map(|s| s.sigma).fold(0.0, f64::max);
    let condition = match kind {
        SeparationKind::Weak => ConditionKind::WeakSeparation,
        SeparationKind::Strong => ConditionKind::StrongSeparation,
    };
    let mut trials = 0;
    for h in 0..stats.len() {
        for j in h + 1..stats.len() {
            trials += 1;
            let distance = sq_dist(&stats[h].mean, &stats[j].mean).sqrt();
            let bound = match kind {
                SeparationKind::Weak => gamma * (stats[h].sigma + stats[j].sigma),
                SeparationKind::Strong => gamma * sigma0,
            };
            if distance < bound {
                return Ok(ConditionReport {
                    condition,
                    holds: Verdict::Refuted,
                    witness: Some(Witness::Pair {
                        first: h,
                        second: j,
                        distance,
                        bound,
                    }),
                    trials,
                });
            }
        }
    }
    Ok(ConditionReport {
        condition,
        holds: Verdict::Verified,
        witness: None,
        trials,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveResult {
    pub k: usize,
    /// The first partition (in enumeration order) with `k` parts that passes.
    pub parts: Vec<Vec<usize>>,
    pub partitions_checked: u64,
}

/// Smallest number of parts of a partition whose every part satisfies the
/// weak condition exactly. Partitions are enumerated as restricted growth
/// strings, by ascending part count.
pub fn exhaustive_identify(p: &PointSet, constants: &AlgoConstants) -> Result<ExhaustiveResult> {
    let n = p.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::ExhaustiveTooLarge {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let floor = constants.tight_floor(n).max(1);
    let mut table = MaskTable::new(p, floor);
    let mut checked = 0u64;
    for s in 1..=n {
        let mut rgs = vec![0usize; n];
        if let Some(parts) = search(&mut table, &mut rgs, 0, 0, s, &mut checked) {
            return Ok(ExhaustiveResult {
                k: s,
                parts,
                partitions_checked: checked,
            });
        }
    }
    unreachable!("the all-singleton partition always passes")
}

struct MaskTable<'a> {
    p: &'a PointSet,
    floor: usize,
    sigma_sq: Vec<f64>,
    valid: Vec<u8>,
}

impl<'a> MaskTable<'a> {
    fn new(p: &'a PointSet, floor: usize) -> Self {
        let size = 1usize << p.n();
        MaskTable {
            p,
            floor,
            sigma_sq: vec![f64::NAN; size],
            valid: vec![2; size],
        }
    }

    fn sigma_sq(&mut self, mask: u32) -> f64 {
        let v = self.sigma_sq[mask as usize];
        if !v.is_nan() {
            return v;
        }
        let v = sigma(self.p, &bits(mask)).expect("non-empty mask").powi(2);
        self.sigma_sq[mask as usize] = v;
        v
    }

    fn valid(&mut self, mask: u32) -> bool {
        match self.valid[mask as usize] {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let c = mask.count_ones() as usize;
        let sc = self.sigma_sq(mask);
        let mut ok = true;
        if sc > 0.0 {
            let mut sub = mask;
            while sub != 0 {
                let t = sub.count_ones() as usize;
                if t >= self.floor && self.sigma_sq(sub) < ratio(t, c) * sc {
                    ok = false;
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        self.valid[mask as usize] = ok as u8;
        ok
    }
}

fn search(
    table: &mut MaskTable<'_>,
    rgs: &mut [usize],
    pos: usize,
    used: usize,
    s: usize,
    checked: &mut u64,
) -> Option<Vec<Vec<usize>>> {
    let n = rgs.len();
    if pos == n {
        if used != s {
            return None;
        }
        *checked += 1;
        let mut masks = vec![0u32; s];
        for (i, &b) in rgs.iter().enumerate() {
            masks[b] |= 1 << i;
        }
        if masks.iter().all(|&m| table.valid(m)) {
            return Some(masks.iter().map(|&m| bits(m)).collect());
        }
        return None;
    }
    // Enough positions must remain to open the missing blocks.
    if s - used > n - pos {
        return None;
    }
    let top = if used < s { used } else { used - 1 };
    for b in 0..=top {
        rgs[pos] = b;
        let next = if b == used { used + 1 } else { used };
        if let Some(found) = search(table, rgs, pos + 1, next, s, checked) {
            return Some(found);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clusters(labels: &[usize]) -> Clustering {
        Clustering::from_labels(labels).unwrap()
    }

    #[test]
    fn coincident_cluster_is_verified() {
        let p = PointSet::from_values(&[2.0; 6]).unwrap();
        let r = check_weak_ntsc(&p, &clusters(&[0; 6]), CheckMode::Exact).unwrap();
        assert_eq!(r.holds, Verdict::Verified);
    }

    #[test]
    fn symmetric_pair_is_verified() {
        let p = PointSet::from_values(&[-1.0, 1.0]).unwrap();
        let r = check_weak_ntsc_with_floor(&p, &clusters(&[0, 0]), CheckMode::Exact, 2).unwrap();
        assert_eq!(r.holds, Verdict::Verified);
        assert_eq!(r.trials, 1);
    }

    #[test]
    fn planted_triple_is_refuted() {
        let mut v: Vec<f64> = (0..10).map(|i| i as f64 * 3.0).collect();
        v.extend([100.0; 3]);
        let p = PointSet::from_values(&v).unwrap();
        let r = check_weak_ntsc_with_floor(&p, &clusters(&[0; 13]), CheckMode::Exact, 3).unwrap();
        assert_eq!(r.holds, Verdict::Refuted);
        match r.witness {
            Some(Witness::Subset { subset, lhs, .. }) => {
                assert_eq!(subset, vec![10, 11, 12]);
                assert_eq!(lhs, 0.0);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn exact_mode_guard() {
        let p = PointSet::from_values(&(0..21).map(f64::from).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            check_weak_ntsc(&p, &clusters(&[0; 21]), CheckMode::Exact),
            Err(Error::TooLargeForExact { size: 21, .. })
        ));
    }

    #[test]
    fn line_tight_but_not_weak_tight() {
        // T = {0,1,2,3} is coincident along e1 and spread along e2.
        let p = PointSet::from_rows(&[
            [0.0, -1.0],
            [0.0, 1.0],
            [0.0, -1.0],
            [0.0, 1.0],
            [-6.0, 0.0],
            [6.0, 0.0],
        ])
        .unwrap();
        let c = clusters(&[0; 6]);
        let strong = check_ntsc_with_floor(&p, &c, CheckMode::Exact, 4, 4).unwrap();
        assert_eq!(strong.holds, Verdict::Refuted);
        let weak = check_weak_ntsc_with_floor(&p, &c, CheckMode::Exact, 4).unwrap();
        assert_eq!(weak.holds, Verdict::Verified);
    }

    #[test]
    fn separation_examples() {
        let p = PointSet::from_values(&[-1.0, 1.0, 9.0, 11.0]).unwrap();
        let c = clusters(&[0, 0, 1, 1]);
        assert_eq!(
            check_separation(&p, &c, 5.0, SeparationKind::Strong)
                .unwrap()
                .holds,
            Verdict::Verified
        );
        assert_eq!(
            check_separation(&p, &c, 11.0, SeparationKind::Strong)
                .unwrap()
                .holds,
            Verdict::Refuted
        );
        // sigma = (1, 3), gap 10.
        let p = PointSet::from_values(&[-1.0, 1.0, 7.0, 13.0]).unwrap();
        assert_eq!(
            check_separation(&p, &c, 3.0, SeparationKind::Strong)
                .unwrap()
                .holds,
            Verdict::Verified
        );
        assert_eq!(
            check_separation(&p, &c, 3.0, SeparationKind::Weak)
                .unwrap()
                .holds,
            Verdict::Refuted
        );
        let p = PointSet::from_values(&[0.0, 0.0, 4.0, 4.0]).unwrap();
        assert_eq!(
            check_separation(&p, &c, 1e9, SeparationKind::Weak)
                .unwrap()
                .holds,
            Verdict::Verified
        );
    }

    #[test]
    fn exhaustive_examples() {
        let k = AlgoConstants::default();
        let p = PointSet::from_values(&[1.5; 5]).unwrap();
        assert_eq!(exhaustive_identify(&p, &k).unwrap().k, 1);
        let p = PointSet::from_values(&[0.0, 0.0, 50.0, 50.0]).unwrap();
        assert_eq!(exhaustive_identify(&p, &k).unwrap().k, 2);
        let p = PointSet::from_rows(&[
            [0.0, 0.0],
            [0.0, 0.0],
            [0.0, 0.0],
            [40.0, 0.0],
            [40.0, 0.0],
            [40.0, 0.0],
            [0.0, 40.0],
            [0.0, 40.0],
            [0.0, 40.0],
        ])
        .unwrap();
        let r = exhaustive_identify(&p, &k).unwrap();
        assert_eq!(r.k, 3);
        let p = PointSet::from_values(&[0.0; 15]).unwrap();
        assert!(matches!(
            exhaustive_identify(&p, &k),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
    }
}
