//! Point sets, the centered spectral deviation `sigma`, truncated SVD
//! subspaces and projections.
//!
//! `sigma(S)` is the spectral norm of the mean-centered `|S| x d` matrix
//! divided by `sqrt(|S|)`, i.e. the square root of the largest eigenvalue of
//! the biased (divide-by-`|S|`) sample covariance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Gram matrices up to this size are diagonalized exactly with Jacobi
/// rotations; larger ones fall back to power / orthogonal iteration.
const EXACT_EIGEN_LIMIT: usize = 64;
const POWER_TOL: f64 = 1e-10;
const POWER_SEED: u64 = 0x5e_ed0f_5163;

/// An immutable `n x d` set of points with finite coordinates, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl PointSet {
    pub fn from_flat(n: usize, d: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidPoints(format!(
                "need n >= 1 and d >= 1, got n = {n}, d = {d}"
            )));
        }
        if data.len() != n * d {
            return Err(Error::InvalidPoints(format!(
                "expected {} coordinates for {n} x {d}, got {}",
                n * d,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPoints(format!(
                "non-finite coordinate at row {}, column {}",
                pos / d,
                pos % d
            )));
        }
        Ok(Self { n, d, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(n * d);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::InvalidPoints(format!(
                    "row {i} has {} coordinates, expected {d}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(n, d, data)
    }

    /// One-dimensional convenience constructor.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::from_flat(values.len(), 1, values.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    /// Copies the selected rows into a new point set (in the given order).
    pub fn select(&self, subset: &[usize]) -> Result<PointSet> {
        self.check_subset(subset)?;
        let mut data = Vec::with_capacity(subset.len() * self.d);
        for &i in subset {
            data.extend_from_slice(self.row(i));
        }
        PointSet::from_flat(subset.len(), self.d, data)
    }

    /// Adds `offset` to every point.
    pub fn translated(&self, offset: &[f64]) -> Result<PointSet> {
        if offset.len() != self.d {
            return Err(Error::DimMismatch {
                expected: self.d,
                got: offset.len(),
            });
        }
        let data = self
            .rows()
            .flat_map(|r| r.iter().zip(offset).map(|(a, b)| a + b))
            .collect();
        PointSet::from_flat(self.n, self.d, data)
    }

    pub fn scaled(&self, alpha: f64) -> Result<PointSet> {
        PointSet::from_flat(
            self.n,
            self.d,
            self.data.iter().map(|v| v * alpha).collect(),
        )
    }

    pub(crate) fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&index) = subset.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }
}

/// Orthonormal basis (rows) of a `rank`-dimensional subspace of `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    rank: usize,
    d: usize,
    basis: Vec<f64>,
}

impl Subspace {
    /// Builds a subspace from basis rows, rejecting rows that are not
    /// orthonormal to within `1e-9` per entry of `B B^T - I`.
    pub fn from_basis<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rank = rows.len();
        let d = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rank == 0 || d == 0 || rank > d {
            return Err(Error::BadRank { rank, max: d });
        }
        let mut basis = Vec::with_capacity(rank * d);
        for row in rows {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::DimMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            basis.extend_from_slice(row);
        }
        let s = Subspace { rank, d, basis };
        if s.orthonormality_error() > 1e-9 {
            return Err(Error::InvalidParameter(
                "basis rows are not orthonormal".into(),
            ));
        }
        Ok(s)
    }

    /// The whole ambient space `R^d`.
    pub fn full(d: usize) -> Self {
        let mut basis = vec![0.0; d * d];
        for i in 0..d {
            basis[i * d + i] = 1.0;
        }
        Subspace { rank: d, d, basis }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn basis_row(&self, i: usize) -> &[f64] {
        &self.basis[i * self.d..(i + 1) * self.d]
    }

    /// Largest entry of `|B B^T - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                let dot = dot(self.basis_row(i), self.basis_row(j));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Coordinates of every point in this basis: an `n x rank` point set.
    /// Distances, means and sigma are the same as for [`project`].
    pub fn coordinates(&self, x: &PointSet) -> Result<PointSet> {
        if x.d() != self.d {
            return Err(Error::DimMismatch {
                expected: self.d,
                got: x.d(),
            });
        }
        let mut data = Vec::with_capacity(x.n() * self.rank);
        for row in x.rows() {
            for b in 0..self.rank {
                data.push(dot(self.basis_row(b), row));
            }
        }
        PointSet::from_flat(x.n(), self.rank, data)
    }

    fn lift(&self, coords: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (b, c) in coords.iter().enumerate() {
            for (o, bv) in out.iter_mut().zip(self.basis_row(b)) {
                *o += c * bv;
            }
        }
    }
}

/// Mean, sigma and size of one cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    pub mean: Vec<f64>,
    pub sigma: f64,
    pub size: usize,
}

impl ClusterStats {
    pub fn compute(x: &PointSet, subset: &[usize]) -> Result<Self> {
        let mean = mean(x, subset)?;
        let sigma = sigma_about(x, subset, &mean);
        Ok(ClusterStats {
            mean,
            sigma,
            size: subset.len(),
        })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Coordinate-wise average of the selected rows.
pub fn mean(x: &PointSet, subset: &[usize]) -> Result<Vec<f64>> {
    x.check_subset(subset)?;
    Ok(mean_unchecked(x, subset))
}

/// Shifted accumulation: coincident points produce their exact location.
pub(crate) fn mean_unchecked(x: &PointSet, subset: &[usize]) -> Vec<f64> {
    let origin = x.row(subset[0]);
    let mut acc = vec![0.0; x.d()];
    for &i in &subset[1..] {
        for ((a, v), o) in acc.iter_mut().zip(x.row(i)).zip(origin) {
            *a += v - o;
        }
    }
    let m = subset.len() as f64;
    origin.iter().zip(&acc).map(|(o, a)| o + a / m).collect()
}

/// `||A|| / sqrt(|subset|)` where row `i` of `A` is `x_i - mean(subset)`.
pub fn sigma(x: &PointSet, subset: &[usize]) -> Result<f64> {
    let mu = mean(x, subset)?;
    Ok(sigma_about(x, subset, &mu))
}

pub(crate) fn sigma_about(x: &PointSet, subset: &[usize], center: &[f64]) -> f64 {
    let rows = centered_rows(x, subset, center);
    (spectral_norm_sq(&rows, subset.len(), x.d()) / subset.len() as f64).sqrt()
}

pub(crate) fn centered_rows(x: &PointSet, subset: &[usize], center: &[f64]) -> Vec<f64> {
    let mut rows = Vec::with_capacity(subset.len() * x.d());
    for &i in subset {
        rows.extend(x.row(i).iter().zip(center).map(|(a, c)| a - c));
    }
    rows
}

/// Root-mean-square of `v . (x - mean)` over the subset.
pub fn directional_sigma(x: &PointSet, subset: &[usize], v: &[f64]) -> Result<f64> {
    if v.len() != x.d() {
        return Err(Error::DimMismatch {
            expected: x.d(),
            got: v.len(),
        });
    }
    let len = norm(v);
    if (len - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitVector { norm: len });
    }
    let mu = mean(x, subset)?;
    let ss: f64 = subset
        .iter()
        .map(|&i| {
            let p: f64 = x
                .row(i)
                .iter()
                .zip(&mu)
                .zip(v)
                .map(|((a, m), vv)| (a - m) * vv)
                .sum();
            p * p
        })
        .sum();
    Ok((ss / subset.len() as f64).sqrt())
}

/// Top-`rank` right-singular subspace of the raw (uncentered) point matrix.
pub fn svd_subspace(x: &PointSet, rank: usize) -> Result<Subspace> {
    let max = x.n().min(x.d());
    if rank == 0 || rank > max {
        return Err(Error::BadRank { rank, max });
    }
    let (n, d) = (x.n(), x.d());
    let vectors: Vec<Vec<f64>> = if d <= EXACT_EIGEN_LIMIT || n > EXACT_EIGEN_LIMIT {
        let gram = gram_cols(x.as_flat(), n, d);
        top_eigenvectors(gram, d, rank)
    } else {
        // Small n, large d: diagonalize A A^T and map left vectors across.
        let gram = gram_rows(x.as_flat(), n, d);
        let eig = jacobi_eigen(gram, n);
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(rank);
        for j in 0..rank {
            if eig.values[j] <= 1e-12 * eig.values[0].max(f64::MIN_POSITIVE) {
                break;
            }
            let mut v = vec![0.0; d];
            for i in 0..n {
                let u = eig.vectors[i * n + j];
                for (vv, a) in v.iter_mut().zip(x.row(i)) {
                    *vv += u * a;
                }
            }
            let len = norm(&v);
            v.iter_mut().for_each(|c| *c /= len);
            out.push(v);
        }
        complete_orthonormal(out, d, rank)
    };
    let mut basis = Vec::with_capacity(rank * d);
    for mut v in vectors {
        canonical_sign(&mut v);
        basis.extend(v);
    }
    Ok(Subspace { rank, d, basis })
}

/// Projection of every point onto the subspace, in ambient coordinates.
pub fn project(s: &Subspace, x: &PointSet) -> Result<PointSet> {
    let coords = s.coordinates(x)?;
    let mut data = vec![0.0; x.n() * x.d()];
    for (i, out) in data.chunks_exact_mut(x.d()).enumerate() {
        s.lift(coords.row(i), out);
    }
    PointSet::from_flat(x.n(), x.d(), data)
}

fn canonical_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, c) in v.iter().enumerate() {
        if c.abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|c| *c = -*c);
    }
}

/// Extends an orthonormal family to `rank` vectors with Gram-Schmidt over
/// the standard basis.
fn complete_orthonormal(mut vs: Vec<Vec<f64>>, d: usize, rank: usize) -> Vec<Vec<f64>> {
    let mut e = 0;
    while vs.len() < rank && e < d {
        let mut cand = vec![0.0; d];
        cand[e] = 1.0;
        e += 1;
        for v in &vs {
            let p = dot(&cand, v);
            cand.iter_mut().zip(v).for_each(|(c, vv)| *c -= p * vv);
        }
        let len = norm(&cand);
        if len > 1e-8 {
            cand.iter_mut().for_each(|c| *c /= len);
            vs.push(cand);
        }
    }
    vs
}

/// `A^T A` for a row-major `n x d` matrix.
pub(crate) fn gram_cols(a: &[f64], n: usize, d: usize) -> Vec<f64> {
    let mut g = vec![0.0; d * d];
    for i in 0..n {
        let row = &a[i * d..(i + 1) * d];
        for p in 0..d {
            let rp = row[p];
            if rp == 0.0 {
                continue;
            }
            let gp = &mut g[p * d..(p + 1) * d];
            for q in p..d {
                gp[q] += rp * row[q];
            }
        }
    }
    symmetrize_upper(&mut g, d);
    g
}

/// `A A^T` for a row-major `n x d` matrix.
pub(crate) fn gram_rows(a: &[f64], n: usize, d: usize) -> Vec<f64> {
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        let ri = &a[i * d..(i + 1) * d];
        for j in i..n {
            g[i * n + j] = dot(ri, &a[j * d..(j + 1) * d]);
        }
    }
    symmetrize_upper(&mut g, n);
    g
}

fn symmetrize_upper(g: &mut [f64], n: usize) {
    for p in 0..n {
        for q in 0..p {
            g[p * n + q] = g[q * n + p];
        }
    }
}

/// Squared spectral norm of a row-major `m x d` matrix.
pub(crate) fn spectral_norm_sq(rows: &[f64], m: usize, d: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let (g, dim) = if m <= d {
        (gram_rows(rows, m, d), m)
    } else {
        (gram_cols(rows, m, d), d)
    };
    top_eigenpair(g, dim).0.max(0.0)
}

/// Squared top singular value and unit right-singular vector of a row-major
/// `m x d` matrix.
pub(crate) fn top_right_singular(rows: &[f64], m: usize, d: usize) -> (f64, Vec<f64>) {
    if d <= m || d <= EXACT_EIGEN_LIMIT {
        let (s2, v) = top_eigenpair(gram_cols(rows, m, d), d);
        return (s2.max(0.0), v);
    }
    let (s2, u) = top_eigenpair(gram_rows(rows, m, d), m);
    let mut v = vec![0.0; d];
    for (i, ui) in u.iter().enumerate() {
        for (vv, a) in v.iter_mut().zip(&rows[i * d..(i + 1) * d]) {
            *vv += ui * a;
        }
    }
    let len = norm(&v);
    if len > 0.0 {
        v.iter_mut().for_each(|c| *c /= len);
    } else {
        v[0] = 1.0;
    }
    (s2.max(0.0), v)
}

/// Largest eigenvalue and its unit eigenvector of a symmetric `dim x dim` matrix.
pub(crate) fn top_eigenpair(g: Vec<f64>, dim: usize) -> (f64, Vec<f64>) {
    if dim <= EXACT_EIGEN_LIMIT {
        let eig = jacobi_eigen(g, dim);
        let v = (0..dim).map(|i| eig.vectors[i * dim]).collect();
        (eig.values[0], v)
    } else {
        power_iteration(&g, dim, None)
    }
}

/// Smallest eigenvalue and eigenvector; only used on small matrices.
pub(crate) fn bottom_eigenpair(g: Vec<f64>, dim: usize) -> (f64, Vec<f64>) {
    let eig = jacobi_eigen(g, dim);
    let j = dim - 1;
    let v = (0..dim).map(|i| eig.vectors[i * dim + j]).collect();
    (eig.values[j], v)
}

pub(crate) fn power_iteration(g: &[f64], dim: usize, start: Option<&[f64]>) -> (f64, Vec<f64>) {
    let mut v: Vec<f64> = match start {
        Some(s) if norm(s) > 0.0 => s.to_vec(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
            (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect()
        }
    };
    let len = norm(&v);
    v.iter_mut().for_each(|c| *c /= len);
    let cap = (10 * dim).max(1000);
    let mut lambda = f64::NAN;
    let mut w = vec![0.0; dim];
    for _ in 0..cap {
        for (p, wp) in w.iter_mut().enumerate() {
            *wp = dot(&g[p * dim..(p + 1) * dim], &v);
        }
        let next = dot(&v, &w);
        let len = norm(&w);
        if len == 0.0 {
            return (0.0, v);
        }
        v.iter_mut().zip(&w).for_each(|(a, b)| *a = b / len);
        let converged = (next - lambda).abs() <= POWER_TOL * next.abs();
        lambda = next;
        if converged {
            break;
        }
    }
    (lambda, v)
}

/// Top `rank` eigenvectors of a symmetric matrix, descending eigenvalue order.
pub(crate) fn top_eigenvectors(g: Vec<f64>, dim: usize, rank: usize) -> Vec<Vec<f64>> {
    if dim <= EXACT_EIGEN_LIMIT {
        let eig = jacobi_eigen(g, dim);
        return (0..rank)
            .map(|j| (0..dim).map(|i| eig.vectors[i * dim + j]).collect())
            .collect();
    }
    orthogonal_iteration(&g, dim, rank)
}

fn orthogonal_iteration(g: &[f64], dim: usize, rank: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let mut q: Vec<Vec<f64>> = (0..rank)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    q = gram_schmidt(q, dim, rank);
    let cap = (10 * dim).max(1000);
    let mut prev = vec![f64::NAN; rank];
    for _ in 0..cap {
        let z: Vec<Vec<f64>> = q
            .iter()
            .map(|v| {
                (0..dim)
                    .map(|p| dot(&g[p * dim..(p + 1) * dim], v))
                    .collect()
            })
            .collect();
        let ritz: Vec<f64> = q.iter().zip(&z).map(|(v, w)| dot(v, w)).collect();
        q = gram_schmidt(z, dim, rank);
        let converged = ritz
            .iter()
            .zip(&prev)
            .all(|(a, b)| (a - b).abs() <= POWER_TOL * a.abs().max(f64::MIN_POSITIVE));
        prev = ritz;
        if converged {
            break;
        }
    }
    // Rayleigh-Ritz so the returned vectors are ordered eigenvector estimates.
    let mut small = vec![0.0; rank * rank];
    let gq: Vec<Vec<f64>> = q
        .iter()
        .map(|v| {
            (0..dim)
                .map(|p| dot(&g[p * dim..(p + 1) * dim], v))
                .collect()
        })
        .collect();
    for a in 0..rank {
        for b in 0..rank {
            small[a * rank + b] = dot(&q[a], &gq[b]);
        }
    }
    let eig = jacobi_eigen(small, rank);
    (0..rank)
        .map(|j| {
            let mut v = vec![0.0; dim];
            for a in 0..rank {
                let c = eig.vectors[a * rank + j];
                v.iter_mut().zip(&q[a]).for_each(|(o, qa)| *o += c * qa);
            }
            v
        })
        .collect()
}

fn gram_schmidt(vs: Vec<Vec<f64>>, dim: usize, rank: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(rank);
    for mut v in vs {
        for _ in 0..2 {
            for u in &out {
                let p = dot(&v, u);
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
            }
        }
        let len = norm(&v);
        if len > 1e-12 {
            v.iter_mut().for_each(|c| *c /= len);
            out.push(v);
        }
    }
    complete_orthonormal(out, dim, rank)
}

pub(crate) struct SymEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Row-major `n x n`; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<f64>,
}

/// Cyclic Jacobi eigendecomposition of a symmetric row-major matrix.
pub(crate) fn jacobi_eigen(mut a: Vec<f64>, n: usize) -> SymEigen {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob: f64 = a.iter().map(|x| x * x).sum();
    let mut prev_off = f64::INFINITY;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        // Stop at rounding level or once a sweep stops paying off.
        if off <= 1e-30 * frob || off == 0.0 || (off <= 1e-24 * frob && off > 0.25 * prev_off) {
            break;
        }
        prev_off = off;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]).then(i.cmp(&j)));
    let values = order.iter().map(|&j| a[j * n + j]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_j] = v[i * n + old_j];
        }
    }
    SymEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pts(rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn mean_examples() {
        assert_eq!(mean(&pts(&[&[0.0, 0.0]]), &[0]).unwrap(), vec![0.0, 0.0]);
        let x = pts(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert_eq!(mean(&x, &[0, 1]).unwrap(), vec![0.0, 0.0]);
        let x = pts(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, 3.0]]);
        let m = mean(&x, &[0, 1, 2]).unwrap();
        assert_relative_eq!(m[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(m[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mean_rejects_empty_subset() {
        let x = pts(&[&[0.0]]);
        assert!(matches!(mean(&x, &[]), Err(Error::EmptySubset)));
        assert!(matches!(mean(&x, &[3]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn coincident_points_have_exactly_zero_sigma() {
        let x = PointSet::from_values(&[0.1; 7]).unwrap();
        assert_eq!(sigma(&x, &x.all_indices()).unwrap(), 0.0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&pts(&[&[5.0, 5.0]]), &[0]).unwrap(), 0.0);
        let x = pts(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert_relative_eq!(sigma(&x, &[0, 1]).unwrap(), 1.0, epsilon = 1e-12);
        let x = pts(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        assert_relative_eq!(
            sigma(&x, &[0, 1, 2, 3]).unwrap(),
            0.5f64.sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn directional_sigma_examples() {
        let x = pts(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert_eq!(directional_sigma(&x, &[0, 1], &[0.0, 1.0]).unwrap(), 0.0);
        assert_relative_eq!(directional_sigma(&x, &[0, 1], &[1.0, 0.0]).unwrap(), 1.0);
        let x = pts(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        let h = 0.5f64.sqrt();
        assert_relative_eq!(
            directional_sigma(&x, &[0, 1], &[h, h]).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(matches!(
            directional_sigma(&x, &[0, 1], &[1.0, 1.0]),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn svd_subspace_rank_one_data() {
        let x = pts(&[&[1.0, 0.0], &[-3.0, 0.0], &[2.5, 0.0]]);
        let s = svd_subspace(&x, 1).unwrap();
        assert_relative_eq!(s.basis_row(0)[0].abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(s.basis_row(0)[1], 0.0, epsilon = 1e-12);
        assert!(matches!(svd_subspace(&x, 3), Err(Error::BadRank { .. })));
        assert!(matches!(svd_subspace(&x, 0), Err(Error::BadRank { .. })));
    }

    #[test]
    fn full_rank_projection_is_identity() {
        let x = pts(&[&[1.0, 0.1, 0.0], &[0.0, 1.0, 0.2], &[0.3, 0.0, 1.0]]);
        let s = svd_subspace(&x, 3).unwrap();
        let p = project(&s, &x).unwrap();
        for (a, b) in p.as_flat().iter().zip(x.as_flat()) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn project_onto_axis() {
        let s = Subspace::from_basis(&[[1.0, 0.0]]).unwrap();
        let p = project(&s, &pts(&[&[3.0, 4.0]])).unwrap();
        assert_eq!(p.row(0), &[3.0, 0.0]);
        assert!(matches!(
            project(&s, &pts(&[&[1.0, 2.0, 3.0]])),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn wide_matrix_subspace_uses_row_gram() {
        // n = 3 points in d = 80 dimensions takes the A A^T branch.
        let mut rows = vec![vec![0.0; 80]; 3];
        rows[0][5] = 2.0;
        rows[1][5] = -1.0;
        rows[2][7] = 0.5;
        let x = PointSet::from_rows(&rows).unwrap();
        let s = svd_subspace(&x, 3).unwrap();
        assert!(s.orthonormality_error() < 1e-9);
        assert_relative_eq!(s.basis_row(0)[5].abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(s.basis_row(1)[7].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let eig = jacobi_eigen(vec![2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 5.0], 3);
        assert_relative_eq!(eig.values[0], 5.0, epsilon = 1e-14);
        assert_relative_eq!(eig.values[1], 3.0, epsilon = 1e-14);
        assert_relative_eq!(eig.values[2], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn power_iteration_matches_jacobi_on_large_matrix() {
        let dim = 80;
        let mut g = vec![0.0; dim * dim];
        for i in 0..dim {
            g[i * dim + i] = 1.0 + i as f64 * 0.1;
            if i + 1 < dim {
                g[i * dim + i + 1] = 0.05;
                g[(i + 1) * dim + i] = 0.05;
            }
        }
        let (lambda, _) = power_iteration(&g, dim, None);
        let exact = jacobi_eigen(g, dim).values[0];
        assert_relative_eq!(lambda, exact, max_relative = 1e-8);
    }
}
