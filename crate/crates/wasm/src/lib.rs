//! Browser bindings for the demo page: sample a planar mixture, count its
//! clusters by peeling, and compute an elbow curve.

use kfind_core::baselines::elbow_estimate;
use kfind_core::generators::{sample_gaussian_mixture, MixtureSpec};
use kfind_core::peel::WStep;
use kfind_core::{identify_k, identify_k_with_w0, AlgoConstants, PointSet};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Sample {
    points: Vec<f64>,
    labels: Vec<u32>,
}

#[wasm_bindgen]
impl Sample {
    /// Interleaved `x, y` coordinates.
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    /// 1-based component labels.
    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> Vec<u32> {
        self.labels.clone()
    }
}

#[wasm_bindgen]
pub struct Peeling {
    k_hat: usize,
    w_hat: f64,
    labels: Vec<u32>,
}

#[wasm_bindgen]
impl Peeling {
    #[wasm_bindgen(getter)]
    pub fn k_hat(&self) -> usize {
        self.k_hat
    }

    #[wasm_bindgen(getter)]
    pub fn w_hat(&self) -> f64 {
        self.w_hat
    }

    /// Peel index per point, starting at 1; 0 for unpeeled points.
    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> Vec<u32> {
        self.labels.clone()
    }
}

#[wasm_bindgen]
pub struct Elbow {
    deltas: Vec<f64>,
    k_star: usize,
}

#[wasm_bindgen]
impl Elbow {
    /// Best k-means cost for `k = 1..=k_max`.
    #[wasm_bindgen(getter)]
    pub fn deltas(&self) -> Vec<f64> {
        self.deltas.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn k_star(&self) -> usize {
        self.k_star
    }
}

fn js(e: kfind_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `k` unit-variance components on a circle, neighbours `separation` apart.
#[wasm_bindgen]
pub fn sample_mixture(k: usize, separation: f64, n: usize, seed: u64) -> Result<Sample, JsError> {
    mixture(k, separation, n, seed).map_err(js)
}

/// Peels with a known weight bound, or sweeps it when `w0` is 0.
#[wasm_bindgen]
pub fn identify_peel(points: Vec<f64>, w0: f64) -> Result<Peeling, JsError> {
    peel(points, w0).map_err(js)
}

#[wasm_bindgen]
pub fn elbow_curve(points: Vec<f64>, k_max: usize, restarts: usize, seed: u64) -> Result<Elbow, JsError> {
    elbow(points, k_max, restarts, seed).map_err(js)
}

fn mixture(k: usize, separation: f64, n: usize, seed: u64) -> kfind_core::Result<Sample> {
    if k == 0 {
        return Err(kfind_core::Error::InvalidParameter("k must be positive".into()));
    }
    let radius = if k == 1 {
        0.0
    } else {
        separation / (2.0 * (std::f64::consts::PI / k as f64).sin())
    };
    let means = (0..k)
        .map(|j| {
            let a = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
            vec![radius * a.cos(), radius * a.sin()]
        })
        .collect();
    let drawn = sample_gaussian_mixture(&MixtureSpec::isotropic(means, 1.0)?, n, seed)?;
    Ok(Sample {
        points: drawn.points.as_flat().to_vec(),
        labels: drawn.labels.iter().map(|&l| l as u32).collect(),
    })
}

fn planar(points: Vec<f64>) -> kfind_core::Result<PointSet> {
    PointSet::from_flat(points.len() / 2, 2, points)
}

/// Constants scaled for a few hundred points.
fn demo_constants() -> AlgoConstants {
    AlgoConstants {
        r_coeff: 0.02,
        sep_test_coeff: 0.2,
        prune_c: 1.0,
        prune_exp: 2.0,
        w_step: WStep::Fixed(0.01),
        ..AlgoConstants::default()
    }
}

fn peel(points: Vec<f64>, w0: f64) -> kfind_core::Result<Peeling> {
    let p = planar(points)?;
    let constants = demo_constants();
    let run = if w0 > 0.0 {
        identify_k_with_w0(&p, w0, &constants)?
    } else {
        identify_k(&p, &constants)?
    };
    let mut labels = vec![0u32; p.n()];
    for (j, set) in run.peeled_sets().iter().enumerate() {
        for &i in set {
            labels[i] = j as u32 + 1;
        }
    }
    Ok(Peeling {
        k_hat: run.k_hat,
        w_hat: run.w_hat,
        labels,
    })
}

fn elbow(points: Vec<f64>, k_max: usize, restarts: usize, seed: u64) -> kfind_core::Result<Elbow> {
    let e = elbow_estimate(&planar(points)?, k_max, restarts, seed)?;
    Ok(Elbow {
        deltas: e.deltas.iter().map(|d| d.1).collect(),
        k_star: e.k_star,
    })
}
