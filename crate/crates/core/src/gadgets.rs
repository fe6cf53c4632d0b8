//! Exact Bounded 3-Cover instances and their Check-NTSC point sets.
//!
//! Each 3-set over a universe of size `m` becomes a point in `R^m` with
//! `sqrt(h/3)` on its three coordinates (`h = m / 3`). A disjoint cover gives
//! `h` mutually orthogonal points of norm `sqrt(h)`, hence `sigma <= 1`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{sigma, PointSet};

pub const BRUTEFORCE_LIMIT: u64 = 1_000_000;
const DECISION_SLACK: f64 = 1e-9;

/// Sets are stored 0-based; the text format is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeCoverInstance {
    pub universe_size: usize,
    pub sets: Vec<[usize; 3]>,
}

impl ThreeCoverInstance {
    pub fn new(universe_size: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        let inst = ThreeCoverInstance {
            universe_size,
            sets,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.universe_size;
        if m == 0 || !m.is_multiple_of(3) {
            return Err(Error::MalformedThreeCover(format!(
                "universe size {m} is not a positive multiple of 3"
            )));
        }
        let mut degree = vec![0usize; m];
        for (k, s) in self.sets.iter().enumerate() {
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(Error::MalformedThreeCover(format!(
                    "set {} repeats an element",
                    k + 1
                )));
            }
            for &e in s {
                if e >= m {
                    return Err(Error::MalformedThreeCover(format!(
                        "set {} has element {} > {m}",
                        k + 1,
                        e + 1
                    )));
                }
                degree[e] += 1;
            }
        }
        if let Some(e) = degree.iter().position(|&c| c != 3) {
            return Err(Error::MalformedThreeCover(format!(
                "element {} appears in {} sets",
                e + 1,
                degree[e]
            )));
        }
        Ok(())
    }

    pub fn h(&self) -> usize {
        self.universe_size / 3
    }

    /// First line `m`, then one `a b c` line per set.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let m: usize = lines
            .next()
            .ok_or_else(|| Error::MalformedThreeCover("empty input".into()))?
            .parse()
            .map_err(|_| {
                Error::MalformedThreeCover("first line must be the universe size".into())
            })?;
        let mut sets = Vec::new();
        for (k, line) in lines.enumerate() {
            let vals: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| {
                    Error::MalformedThreeCover(format!("set line {}: not integers", k + 1))
                })?;
            if vals.len() != 3 || vals.contains(&0) {
                return Err(Error::MalformedThreeCover(format!(
                    "set line {}: need three 1-based elements",
                    k + 1
                )));
            }
            sets.push([vals[0] - 1, vals[1] - 1, vals[2] - 1]);
        }
        Self::new(m, sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.universe_size);
        for s in &self.sets {
            let _ = writeln!(out, "{} {} {}", s[0] + 1, s[1] + 1, s[2] + 1);
        }
        out
    }
}

/// One point per set; returns the points and `h = m / 3`.
pub fn build_checkntsc_instance(inst: &ThreeCoverInstance) -> Result<(PointSet, usize)> {
    inst.validate()?;
    let m = inst.universe_size;
    let h = inst.h();
    let value = (h as f64 / 3.0).sqrt();
    let mut data = vec![0.0; inst.sets.len() * m];
    for (k, s) in inst.sets.iter().enumerate() {
        for &e in s {
            data[k * m + e] = value;
        }
    }
    Ok((PointSet::from_flat(inst.sets.len(), m, data)?, h))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteforceDecision {
    /// `best_sigma <= 1 + 1e-9`.
    pub holds: bool,
    pub best_subset: Vec<usize>,
    pub best_sigma: f64,
    pub subsets_checked: u64,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Minimum of `sigma` over all `h`-subsets, in lexicographic order (first
/// minimum wins).
pub fn check_ntsc_decision_bruteforce(x: &PointSet, h: usize) -> Result<BruteforceDecision> {
    let n = x.n();
    if h == 0 || h > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= h <= {n}, got {h}"
        )));
    }
    if binomial(n, h) > BRUTEFORCE_LIMIT {
        return Err(Error::TooLargeForBruteforce {
            n,
            h,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut pick: Vec<usize> = (0..h).collect();
    let mut best = (f64::INFINITY, pick.clone());
    let mut checked = 0u64;
    loop {
        checked += 1;
        let s = sigma(x, &pick)?;
        if s < best.0 {
            best = (s, pick.clone());
        }
        let mut k = h;
        while k > 0 && pick[k - 1] == n - h + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        pick[k - 1] += 1;
        for j in k..h {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(BruteforceDecision {
        holds: best.0 <= 1.0 + DECISION_SLACK,
        best_subset: best.1,
        best_sigma: best.0,
        subsets_checked: checked,
    })
}

/// Indices of pairwise disjoint sets covering the universe, by backtracking
/// on the smallest uncovered element.
pub fn exact_cover(inst: &ThreeCoverInstance) -> Option<Vec<usize>> {
    let mut covered = vec![false; inst.universe_size];
    let mut chosen = Vec::new();
    if cover_from(inst, &mut covered, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn cover_from(inst: &ThreeCoverInstance, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let Some(e) = covered.iter().position(|c| !c) else {
        return true;
    };
    for (k, s) in inst.sets.iter().enumerate() {
        if s.contains(&e) && s.iter().all(|&x| !covered[x]) {
            s.iter().for_each(|&x| covered[x] = true);
            chosen.push(k);
            if cover_from(inst, covered, chosen) {
                return true;
            }
            chosen.pop();
            s.iter().for_each(|&x| covered[x] = false);
        }
    }
    false
}

/// A planted disjoint cover plus two more random partitions into triples,
/// so every element has degree 3; sets are shuffled.
pub fn yes_instance(universe_size: usize, seed: u64) -> Result<ThreeCoverInstance> {
    if universe_size == 0 || !universe_size.is_multiple_of(3) {
        return Err(Error::MalformedThreeCover(format!(
            "universe size {universe_size} is not a positive multiple of 3"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(universe_size);
    for _ in 0..3 {
        let mut perm: Vec<usize> = (0..universe_size).collect();
        perm.shuffle(&mut rng);
        for t in perm.chunks_exact(3) {
            let mut s = [t[0], t[1], t[2]];
            s.sort_unstable();
            sets.push(s);
        }
    }
    sets.shuffle(&mut rng);
    ThreeCoverInstance::new(universe_size, sets)
}

/// Random degree-3 instance (three stubs per element grouped into triples)
/// with no exact cover; `None` when `attempts` draws all fail.
pub fn no_instance(universe_size: usize, seed: u64, attempts: usize) -> Option<ThreeCoverInstance> {
    if universe_size == 0 || !universe_size.is_multiple_of(3) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..universe_size).flat_map(|e| [e, e, e]).collect();
    for _ in 0..attempts {
        stubs.shuffle(&mut rng);
        let sets: Vec<[usize; 3]> = stubs
            .chunks_exact(3)
            .map(|t| {
                let mut s = [t[0], t[1], t[2]];
                s.sort_unstable();
                s
            })
            .collect();
        let Ok(inst) = ThreeCoverInstance::new(universe_size, sets) else {
            continue;
        };
        if exact_cover(&inst).is_none() {
            return Some(inst);
        }
    }
    None
}
