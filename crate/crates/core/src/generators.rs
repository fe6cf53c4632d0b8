//! Seeded mixture and stochastic-block-model samplers.
//!
//! Every point draws from its own ChaCha8 stream `(seed, index)`, so samples
//! are reproducible regardless of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, PointSet};

const WEIGHT_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum ComponentKind {
    /// Row-major `d x d` covariance.
    Gaussian { cov: Vec<f64> },
    /// Uniform in the ball of the given radius around the mean.
    UniformBall { radius: f64 },
    /// Independent `+-scale` coordinates around the mean.
    Rademacher { scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub mean: Vec<f64>,
    pub kind: ComponentKind,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub components: Vec<Component>,
}

impl MixtureSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        let spec = MixtureSpec { components };
        spec.validate()?;
        Ok(spec)
    }

    /// Gaussian components with covariance `variance * I` and equal weights.
    pub fn isotropic(means: Vec<Vec<f64>>, variance: f64) -> Result<Self> {
        let k = means.len();
        let components = means
            .into_iter()
            .map(|mean| {
                let d = mean.len();
                let mut cov = vec![0.0; d * d];
                for i in 0..d {
                    cov[i * d + i] = variance;
                }
                Component {
                    mean,
                    kind: ComponentKind::Gaussian { cov },
                    weight: 1.0 / k as f64,
                }
            })
            .collect();
        Self::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.first().map(|c| c.mean.len()).unwrap_or(0)
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    /// Weights may be zero but must be non-negative and sum to 1.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if self.components.is_empty() || d == 0 {
            return Err(Error::InvalidSpec(
                "need at least one component of positive dimension".into(),
            ));
        }
        let mut total = 0.0;
        for (i, c) in self.components.iter().enumerate() {
            if c.mean.len() != d {
                return Err(Error::InvalidSpec(format!(
                    "component {i} has dimension {}",
                    c.mean.len()
                )));
            }
            if c.mean.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidSpec(format!(
                    "component {i} has a non-finite mean"
                )));
            }
            if !(c.weight >= 0.0 && c.weight.is_finite()) {
                return Err(Error::InvalidSpec(format!(
                    "component {i} has weight {}",
                    c.weight
                )));
            }
            total += c.weight;
            match &c.kind {
                ComponentKind::Gaussian { cov } => {
                    if cov.len() != d * d {
                        return Err(Error::InvalidSpec(format!(
                            "component {i}: covariance must be {d} x {d}"
                        )));
                    }
                    for a in 0..d {
                        for b in 0..d {
                            if (cov[a * d + b] - cov[b * d + a]).abs()
                                > PSD_TOL * (1.0 + cov[a * d + b].abs())
                            {
                                return Err(Error::InvalidSpec(format!(
                                    "component {i}: covariance not symmetric"
                                )));
                            }
                        }
                    }
                    let eig = jacobi_eigen(cov.clone(), d);
                    if eig.values[d - 1] < -PSD_TOL {
                        return Err(Error::InvalidSpec(format!(
                            "component {i}: covariance not PSD"
                        )));
                    }
                }
                ComponentKind::UniformBall { radius: s }
                | ComponentKind::Rademacher { scale: s } => {
                    if !(*s >= 0.0 && s.is_finite()) {
                        return Err(Error::InvalidSpec(format!("component {i}: bad scale {s}")));
                    }
                }
            }
        }
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidSpec(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmSpec {
    /// Row-major `k x k` edge probabilities.
    pub prob: Vec<f64>,
    pub weights: Vec<f64>,
    pub n: usize,
}

impl SbmSpec {
    pub fn new(prob: Vec<f64>, weights: Vec<f64>, n: usize) -> Result<Self> {
        let spec = SbmSpec { prob, weights, n };
        spec.validate()?;
        Ok(spec)
    }

    /// Two or more equal-weight communities with constant intra and inter probabilities.
    pub fn planted(k: usize, intra: f64, inter: f64, n: usize) -> Result<Self> {
        let mut prob = vec![inter; k * k];
        for l in 0..k {
            prob[l * k + l] = intra;
        }
        Self::new(prob, vec![1.0 / k as f64; k], n)
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn p(&self, a: usize, b: usize) -> f64 {
        self.prob[a * self.k() + b]
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k == 0 || self.prob.len() != k * k {
            return Err(Error::InvalidSpec(format!(
                "need a {k} x {k} probability matrix"
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        for a in 0..k {
            for b in 0..k {
                let v = self.p(a, b);
                if !(0.0..=0.5).contains(&v) {
                    return Err(Error::InvalidSpec(format!(
                        "P[{a}][{b}] = {v} outside [0, 0.5]"
                    )));
                }
                if v != self.p(b, a) {
                    return Err(Error::InvalidSpec(
                        "probability matrix not symmetric".into(),
                    ));
                }
                if v > self.p(a, a) {
                    return Err(Error::InvalidSpec(format!(
                        "P[{a}][{b}] exceeds the diagonal P[{a}][{a}]"
                    )));
                }
            }
        }
        if self.weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidSpec("weights must be non-negative".into()));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidSpec(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleSource {
    Mixture(MixtureSpec),
    Sbm(SbmSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub points: PointSet,
    /// 1-based component labels.
    pub labels: Vec<usize>,
    pub source: SampleSource,
    pub rng_seed: u64,
}

fn point_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn pick(weights: impl Iterator<Item = f64>, u: f64) -> usize {
    let mut acc = 0.0;
    let mut last = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last
}

/// Symmetric square root with negative eigenvalues clipped to 0.
fn sqrt_psd(cov: &[f64], d: usize) -> Vec<f64> {
    let diagonal = (0..d).all(|a| (0..d).all(|b| a == b || cov[a * d + b] == 0.0));
    let mut root = vec![0.0; d * d];
    if diagonal {
        for a in 0..d {
            root[a * d + a] = cov[a * d + a].max(0.0).sqrt();
        }
        return root;
    }
    let eig = jacobi_eigen(cov.to_vec(), d);
    for j in 0..d {
        let s = eig.values[j].max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        for a in 0..d {
            for b in 0..d {
                root[a * d + b] += s * eig.vectors[a * d + j] * eig.vectors[b * d + j];
            }
        }
    }
    root
}

pub fn sample_gaussian_mixture(spec: &MixtureSpec, n: usize, seed: u64) -> Result<LabeledSample> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let d = spec.dim();
    let roots: Vec<Option<Vec<f64>>> = spec
        .components
        .iter()
        .map(|c| match &c.kind {
            ComponentKind::Gaussian { cov } => Some(sqrt_psd(cov, d)),
            _ => None,
        })
        .collect();
    let mut data = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    let mut z = vec![0.0; d];
    for i in 0..n {
        let mut rng = point_rng(seed, i as u64);
        let l = pick(
            spec.components.iter().map(|c| c.weight),
            rng.random::<f64>(),
        );
        let comp = &spec.components[l];
        labels.push(l + 1);
        let start = data.len();
        data.extend_from_slice(&comp.mean);
        let out = &mut data[start..];
        match &comp.kind {
            ComponentKind::Gaussian { .. } => {
                let root = roots[l].as_ref().expect("gaussian root");
                z.iter_mut()
                    .for_each(|v| *v = StandardNormal.sample(&mut rng));
                for a in 0..d {
                    out[a] += root[a * d..(a + 1) * d]
                        .iter()
                        .zip(&z)
                        .map(|(r, zz)| r * zz)
                        .sum::<f64>();
                }
            }
            ComponentKind::UniformBall { radius } => {
                z.iter_mut()
                    .for_each(|v| *v = StandardNormal.sample(&mut rng));
                let len = z.iter().map(|v| v * v).sum::<f64>().sqrt();
                let r = radius * rng.random::<f64>().powf(1.0 / d as f64);
                if len > 0.0 {
                    out.iter_mut().zip(&z).for_each(|(o, v)| *o += r * v / len);
                }
            }
            ComponentKind::Rademacher { scale } => {
                for o in out.iter_mut() {
                    *o += if rng.random::<bool>() {
                        *scale
                    } else {
                        -*scale
                    };
                }
            }
        }
    }
    Ok(LabeledSample {
        points: PointSet::from_flat(n, d, data)?,
        labels,
        source: SampleSource::Mixture(spec.clone()),
        rng_seed: seed,
    })
}

/// Adjacency rows of a symmetric loop-free random graph as points in `R^n`.
pub fn sample_sbm(spec: &SbmSpec, seed: u64) -> Result<LabeledSample> {
    spec.validate()?;
    let n = spec.n;
    let labels: Vec<usize> = (0..n)
        .map(|i| {
            pick(
                spec.weights.iter().copied(),
                point_rng(seed, i as u64).random::<f64>(),
            )
        })
        .collect();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let mut rng = point_rng(seed, (n + i) as u64);
        for j in i + 1..n {
            let p = spec.p(labels[i], labels[j]);
            if rng.random::<f64>() < p {
                data[i * n + j] = 1.0;
                data[j * n + i] = 1.0;
            }
        }
    }
    Ok(LabeledSample {
        points: PointSet::from_flat(n, n, data)?,
        labels: labels.into_iter().map(|l| l + 1).collect(),
        source: SampleSource::Sbm(spec.clone()),
        rng_seed: seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmSeparation {
    pub holds: bool,
    /// Smallest `(P_ll - P_ll')^2 / P_max` over distinct pairs (infinite for k = 1).
    pub lhs: f64,
    /// `400 max(gamma^2, ln n / w0^2) / n`.
    pub rhs: f64,
}

pub fn check_sbm_separation(spec: &SbmSpec, gamma: f64, w0: f64) -> Result<SbmSeparation> {
    spec.validate()?;
    if !(gamma > 0.0) || !(w0 > 0.0 && w0 <= 1.0) {
        return Err(Error::InvalidParameter(
            "need gamma > 0 and w0 in (0, 1]".into(),
        ));
    }
    let k = spec.k();
    let p_max = spec.prob.iter().copied().fold(0.0, f64::max);
    let nf = spec.n as f64;
    let rhs = 400.0 * (gamma * gamma).max(nf.ln() / (w0 * w0)) / nf;
    let mut lhs = f64::INFINITY;
    for a in 0..k {
        for b in 0..k {
            if a != b {
                let gap = spec.p(a, a) - spec.p(a, b);
                let v = if p_max > 0.0 { gap * gap / p_max } else { 0.0 };
                lhs = lhs.min(v);
            }
        }
    }
    Ok(SbmSeparation {
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSizeKind {
    SubGaussian { kappa: f64, d: usize },
    Generic { sc_max: f64 },
}

/// `ceil(100 ln(ceil(1/w0)) * sc / w0)` with `sc = 100 kappa^4 d^2` for
/// sub-Gaussian components; at least 1.
pub fn recommended_sample_size(kind: SampleSizeKind, w0: f64) -> Result<u64> {
    if !(w0 > 0.0 && w0 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "w0 must lie in (0, 1], got {w0}"
        )));
    }
    let sc = match kind {
        SampleSizeKind::SubGaussian { kappa, d } => {
            if !(kappa >= 1.0) || d == 0 {
                return Err(Error::InvalidParameter("need kappa >= 1 and d >= 1".into()));
            }
            100.0 * kappa.powi(4) * (d * d) as f64
        }
        SampleSizeKind::Generic { sc_max } => {
            if !(sc_max > 0.0) {
                return Err(Error::InvalidParameter("sc_max must be positive".into()));
            }
            sc_max
        }
    };
    let k = (1.0 / w0 - 1e-9).ceil().max(1.0);
    let raw = (100.0 * k.ln() * sc / w0).ceil();
    Ok((raw as u64).max(1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntiConcentration {
    pub holds: bool,
    /// Largest density found on the grid, for the direction with the
    /// tightest ratio to its bound.
    pub worst_peak: f64,
    /// `4 / s^2` for that direction.
    pub worst_bound: f64,
    pub directions: usize,
}

/// Compares the marginal density of a Gaussian component along random unit
/// directions (evaluated on a `grid`-point mesh over `[-4s, 4s]`, which
/// includes the mode) with `4 / s^2`, where `s^2` is the marginal variance.
pub fn check_anti_concentration(
    spec: &MixtureSpec,
    component: usize,
    directions: usize,
    grid: usize,
    seed: u64,
) -> Result<AntiConcentration> {
    spec.validate()?;
    let comp = spec
        .components
        .get(component)
        .ok_or_else(|| Error::InvalidParameter(format!("no component {component}")))?;
    let cov = match &comp.kind {
        ComponentKind::Gaussian { cov } => cov,
        _ => return Err(Error::AnalyticCheckUnsupported(component)),
    };
    let d = spec.dim();
    let half = grid.max(1) as i64;
    let mut rng = point_rng(seed, component as u64);
    let mut out = AntiConcentration {
        holds: true,
        worst_peak: 0.0,
        worst_bound: f64::INFINITY,
        directions: 0,
    };
    let mut worst_ratio = 0.0;
    for _ in 0..directions.max(1) {
        let mut u: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let len = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len == 0.0 {
            continue;
        }
        u.iter_mut().for_each(|v| *v /= len);
        let var: f64 = (0..d)
            .map(|a| {
                u[a] * cov[a * d..(a + 1) * d]
                    .iter()
                    .zip(&u)
                    .map(|(c, v)| c * v)
                    .sum::<f64>()
            })
            .sum();
        if var <= 0.0 {
            continue;
        }
        out.directions += 1;
        let s = var.sqrt();
        let peak = (-half..=half)
            .map(|g| {
                let zeta = 4.0 * s * g as f64 / half as f64;
                (-(zeta * zeta) / (2.0 * var)).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
            })
            .fold(0.0, f64::max);
        let bound = 4.0 / var;
        let ratio = peak / bound;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            out.worst_peak = peak;
            out.worst_bound = bound;
        }
        if peak > bound {
            out.holds = false;
        }
    }
    Ok(out)
}

/// `2k + 1` unit-variance Gaussian components with equal weights at
/// `(4 sqrt(d) / k) l e_1` for `l = -k..=k`.
pub fn elbow_counterexample_spec(k: usize, d: usize) -> Result<MixtureSpec> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter("need k >= 1 and d >= 1".into()));
    }
    let step = 4.0 * (d as f64).sqrt() / k as f64;
    let means = (-(k as i64)..=k as i64)
        .map(|l| {
            let mut m = vec![0.0; d];
            m[0] = step * l as f64;
            m
        })
        .collect();
    MixtureSpec::isotropic(means, 1.0)
}
