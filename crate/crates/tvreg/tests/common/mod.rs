//! Naive reference implementations shared by the integration tests.
//!
//! Everything here is written as directly as possible from the defining
//! formulas: full double loops over the sample, the textbook local linear
//! weights and Gaussian elimination for the normal equations. None of it
//! touches the windowing, the stabilized weight formula or the eigenvalue
//! based solver of the library.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvreg::kernels::Kernel1D;
use tvreg::locstat::Dataset;
use tvreg::smooth::Region;

pub fn epa(v: f64) -> f64 {
    if v.abs() <= 1.0 {
        0.75 * (1.0 - v * v)
    } else {
        0.0
    }
}

/// `k_i {S₂ - (t - i/n) S₁} / (S₂S₀ - S₁²)` with the moments summed over all `i`.
pub fn naive_weights(times: &[f64], t: f64, b: f64) -> Vec<f64> {
    let k: Vec<f64> = times.iter().map(|&s| epa((s - t) / b)).collect();
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for (&s, &kj) in times.iter().zip(&k) {
        let d = t - s;
        s0 += kj;
        s1 += kj * d;
        s2 += kj * d * d;
    }
    let den = s2 * s0 - s1 * s1;
    times
        .iter()
        .zip(&k)
        .map(|(&s, &kj)| kj * (s2 - (t - s) * s1) / den)
        .collect()
}

pub fn naive_spatial(u: &[f64], x: &[f64], h: f64) -> f64 {
    u.iter()
        .zip(x)
        .map(|(a, b)| epa((a - b) / h) / h)
        .product()
}

pub fn naive_model_i(data: &Dataset, u: &[f64], t: f64, b: f64, h: f64) -> Option<f64> {
    let w = naive_weights(data.times(), t, b);
    let mut f = 0.0;
    let mut num = 0.0;
    for j in 0..data.n() {
        let k = naive_spatial(u, data.row(j), h) * w[j];
        f += k;
        num += k * data.y()[j];
    }
    (f > 1e-12).then(|| num / f)
}

pub fn naive_model_ii(data: &Dataset, u: &[f64], h: f64) -> Option<f64> {
    let mut f = 0.0;
    let mut num = 0.0;
    for j in 0..data.n() {
        let k = naive_spatial(u, data.row(j), h);
        f += k;
        num += k * data.y()[j];
    }
    let n = data.n() as f64;
    (f / n > 1e-12).then(|| num / f)
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Vec<f64> {
    let p = rhs.len();
    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..p {
            let factor = a[row][col] / a[col][col];
            for c in col..p {
                a[row][c] -= factor * a[col][c];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut out = vec![0.0; p];
    for row in (0..p).rev() {
        let s: f64 = (row + 1..p).map(|c| a[row][c] * out[c]).sum();
        out[row] = (rhs[row] - s) / a[row][row];
    }
    out
}

fn regressors(row: &[f64], intercept: bool) -> Vec<f64> {
    let mut z = Vec::new();
    if intercept {
        z.push(1.0);
    }
    z.extend_from_slice(row);
    z
}

fn weighted_ls(data: &Dataset, weight: impl Fn(usize) -> f64, intercept: bool) -> Vec<f64> {
    let p = data.d() + usize::from(intercept);
    let mut g = vec![vec![0.0; p]; p];
    let mut r = vec![0.0; p];
    for i in 0..data.n() {
        let z = regressors(data.row(i), intercept);
        let w = weight(i);
        for a in 0..p {
            r[a] += z[a] * data.y()[i] * w;
            for c in 0..p {
                g[a][c] += z[a] * z[c] * w;
            }
        }
    }
    gauss_solve(g, r)
}

pub fn naive_beta(data: &Dataset, t: f64, b: f64, intercept: bool) -> Vec<f64> {
    let n = data.n() as f64;
    weighted_ls(data, |i| epa((data.times()[i] - t) / b) / b / n, intercept)
}

pub fn naive_theta(data: &Dataset, intercept: bool) -> Vec<f64> {
    weighted_ls(data, |_| 1.0, intercept)
}

pub fn linear(beta: &[f64], u: &[f64], intercept: bool) -> f64 {
    let z = regressors(u, intercept);
    z.iter().zip(beta).map(|(a, b)| a * b).sum()
}

/// A random instance for the oracle comparisons.
#[derive(Debug, Clone)]
pub struct Instance {
    pub data: Dataset,
    pub region: Region,
    pub b_i: f64,
    pub h_i: f64,
    pub h_ii: f64,
    pub b_iii: f64,
    pub intercept: bool,
}

pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(40..=200);
    let d = rng.random_range(1..=2);
    let x: Vec<f64> = (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let t = (i + 1) as f64 / n as f64;
            x[i * d] * (1.0 + t) + rng.random_range(-0.5..0.5)
        })
        .collect();
    let data = Dataset::new(y, x, d).unwrap();
    let spatial = if d == 1 { 0.3..0.9 } else { 0.6..1.2 };
    Instance {
        region: Region::cube(d, -0.7, 0.7, 0.2, 0.8).unwrap(),
        b_i: rng.random_range(0.1..0.4),
        h_i: rng.random_range(spatial.clone()),
        h_ii: rng.random_range(spatial),
        b_iii: rng.random_range(0.1..0.4),
        intercept: rng.random_bool(0.5),
        data,
    }
}

/// Largest relative discrepancy between the library's four restricted fits and
/// the oracles, or `None` if the library or an oracle reports a degenerate fit.
pub fn oracle_discrepancy(inst: &Instance) -> Option<f64> {
    use tvreg::smooth::{fit_model_i, fit_model_ii, fit_model_iii, fit_model_iv};
    let k = Kernel1D::Epanechnikov;
    let data = &inst.data;
    let fits = [
        fit_model_i(data, &inst.region, inst.b_i, inst.h_i, k).ok()?,
        fit_model_ii(data, &inst.region, inst.h_ii, k).ok()?,
        fit_model_iii(data, &inst.region, inst.b_iii, k, inst.intercept).ok()?,
        fit_model_iv(data, &inst.region, inst.intercept).ok()?,
    ];
    let theta = naive_theta(data, inst.intercept);
    let mut worst: f64 = 0.0;
    for (m, fit) in fits.iter().enumerate() {
        for (&i, &got) in fit.indices.iter().zip(&fit.fitted) {
            let u = data.row(i);
            let t = data.times()[i];
            let want = match m {
                0 => naive_model_i(data, u, t, inst.b_i, inst.h_i)?,
                1 => naive_model_ii(data, u, inst.h_ii)?,
                2 => linear(&naive_beta(data, t, inst.b_iii, inst.intercept), u, inst.intercept),
                _ => linear(&theta, u, inst.intercept),
            };
            worst = worst.max((got - want).abs() / (1.0 + want.abs()));
        }
    }
    Some(worst)
}

/// Root mean squared error of the matching estimator against the true surface
/// over the restricted set, with rule-of-thumb bandwidths.
pub fn restricted_rmse(design: tvreg::locstat::Design, n: usize, seed: u64) -> f64 {
    use tvreg::locstat::{simulate, GeneratorSpec};
    use tvreg::select::default_bandwidths;
    use tvreg::smooth::{fit_model_i, fit_model_ii, fit_model_iii, fit_model_iv, ModelKind};
    let (data, truth) = simulate(&GeneratorSpec::design(design, n, 1.0, seed)).unwrap();
    let plan = default_bandwidths(&data).unwrap();
    let region = Region::simulation_default();
    let k = Kernel1D::Epanechnikov;
    let fit = match design.kind() {
        ModelKind::I => fit_model_i(&data, &region, plan.b_i, plan.h_i, k),
        ModelKind::II => fit_model_ii(&data, &region, plan.h_ii, k),
        ModelKind::III => fit_model_iii(&data, &region, plan.b_iii, k, true),
        ModelKind::IV => fit_model_iv(&data, &region, true),
    }
    .unwrap();
    let sse: f64 = fit
        .indices
        .iter()
        .zip(&fit.fitted)
        .map(|(&i, &f)| {
            let e = f - truth.m(data.row(i), data.times()[i]);
            e * e
        })
        .sum();
    (sse / fit.n_used as f64).sqrt()
}

/// `n·b·h` times the Monte-Carlo variance of `f̂(0.5, 0.5)` for i.i.d. U(0,1)
/// regressors and `b = h = n^{-1/6}`, alongside the exact finite-sample value
/// `n·b·Σw_i²·(λ - h)` of the same quantity.
pub fn density_variance(n: usize, replications: usize, seed: u64) -> (f64, f64) {
    use tvreg::smooth::{eval_density, local_linear_weights};
    let bw = (n as f64).powf(-1.0 / 6.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let values: Vec<f64> = (0..replications)
        .map(|_| {
            x.iter_mut().for_each(|v| *v = rng.random::<f64>());
            let data = Dataset::univariate(vec![0.0; n], x.clone()).unwrap();
            eval_density(&data, &[0.5], 0.5, bw, bw, Kernel1D::Epanechnikov).unwrap()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / replications as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (replications - 1) as f64;
    let w = local_linear_weights(n, 0.5, bw, Kernel1D::Epanechnikov).unwrap();
    let sum_w2: f64 = w.values.iter().map(|v| v * v).sum();
    let nb = n as f64 * bw;
    (nb * bw * var, nb * sum_w2 * (0.6 - bw))
}
