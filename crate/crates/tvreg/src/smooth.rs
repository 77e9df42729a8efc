//! The four nested estimators and the local linear temporal weights they share.
//!
//! | model | regression function | estimator |
//! |-------|---------------------|-----------|
//! | I     | `m(x, t)`           | time-varying kernel regression `T̂/f̂` |
//! | II    | `μ(x)`              | Nadaraya–Watson `T̃/f̃` |
//! | III   | `xᵀβ(t)`            | Priestley–Chao kernel least squares |
//! | IV    | `xᵀθ`               | ordinary least squares |
//!
//! Fits evaluate each estimator at the sample points `(x_i, t_i)` that fall
//! in a [`Region`] and report the restricted residual sum of squares. Each
//! point's kernel sum runs sequentially in a fixed order; only distinct
//! points are spread across threads, so results do not depend on the thread
//! count.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{scaled_product, Kernel1D};
use crate::locstat::Dataset;

/// Candidate model, from most to least general.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    I,
    II,
    III,
    IV,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::I, ModelKind::II, ModelKind::III, ModelKind::IV];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Position in the parsimony order used to break exact ties: IV beats
    /// III beats II beats I.
    pub fn parsimony_rank(self) -> usize {
        3 - self.index()
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelKind::I => "I",
            ModelKind::II => "II",
            ModelKind::III => "III",
            ModelKind::IV => "IV",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(ModelKind::I),
            "II" | "2" => Ok(ModelKind::II),
            "III" | "3" => Ok(ModelKind::III),
            "IV" | "4" => Ok(ModelKind::IV),
            other => Err(Error::invalid(format!("unknown model '{other}'"))),
        }
    }
}

/// Compact evaluation region: a predictor box and an interior time interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    x_box: Vec<(f64, f64)>,
    t_interval: (f64, f64),
}

impl Region {
    pub fn new(x_box: Vec<(f64, f64)>, t_interval: (f64, f64)) -> Result<Self> {
        if x_box.is_empty() {
            return Err(Error::invalid("region needs at least one predictor interval"));
        }
        for (k, &(lo, hi)) in x_box.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::invalid(format!(
                    "predictor interval {k} must satisfy lo < hi"
                )));
            }
        }
        let (t_lo, t_hi) = t_interval;
        if !(0.0 < t_lo && t_lo < t_hi && t_hi < 1.0) {
            return Err(Error::invalid("time interval must satisfy 0 < lo < hi < 1"));
        }
        Ok(Self { x_box, t_interval })
    }

    /// The box `[lo, hi]^d` with time interval `[t_lo, t_hi]`.
    pub fn cube(d: usize, lo: f64, hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi); d], (t_lo, t_hi))
    }

    /// `𝒳 = [-2, 2]`, `𝒯 = [0.2, 0.8]`.
    pub fn simulation_default() -> Self {
        Self::cube(1, -2.0, 2.0, 0.2, 0.8).expect("valid constant region")
    }

    pub fn x_box(&self) -> &[(f64, f64)] {
        &self.x_box
    }

    pub fn t_interval(&self) -> (f64, f64) {
        self.t_interval
    }

    pub fn contains_x(&self, u: &[f64]) -> bool {
        u.len() == self.x_box.len()
            && u
                .iter()
                .zip(&self.x_box)
                .all(|(&v, &(lo, hi))| lo <= v && v <= hi)
    }

    pub fn contains_t(&self, t: f64) -> bool {
        self.t_interval.0 <= t && t <= self.t_interval.1
    }

    /// Indices `i` with `t_i ∈ 𝒯` and `x_i ∈ 𝒳`.
    pub fn restricted_indices(&self, data: &Dataset) -> Result<Vec<usize>> {
        if data.d() != self.x_box.len() {
            return Err(Error::invalid(format!(
                "region has {} predictor intervals, data has d = {}",
                self.x_box.len(),
                data.d()
            )));
        }
        Ok((0..data.n())
            .filter(|&i| self.contains_t(data.times()[i]) && self.contains_x(data.row(i)))
            .collect())
    }
}

/// Local linear weights `w_{b,i}(t)` over a contiguous window of observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalWeights {
    pub t: f64,
    pub b: f64,
    /// Index of the first observation in the window.
    pub offset: usize,
    /// Weights of observations `offset..offset + values.len()`.
    pub values: Vec<f64>,
}

impl TemporalWeights {
    pub fn get(&self, i: usize) -> f64 {
        i.checked_sub(self.offset)
            .and_then(|j| self.values.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    /// Weights of all `n` observations.
    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Local linear weights on the grid `i/n`, `i = 1..n`.
pub fn local_linear_weights(n: usize, t: f64, b: f64, k: Kernel1D) -> Result<TemporalWeights> {
    let times: Vec<f64> = (1..=n).map(|i| i as f64 / n as f64).collect();
    local_linear_weights_at(&times, t, b, k)
}

/// Local linear weights for arbitrary nondecreasing observation times.
pub fn local_linear_weights_at(
    times: &[f64],
    t: f64,
    b: f64,
    k: Kernel1D,
) -> Result<TemporalWeights> {
    if !(b > 0.0 && b.is_finite()) || !t.is_finite() {
        return Err(Error::invalid("temporal bandwidth must be positive"));
    }
    let mut values = Vec::new();
    let offset = window_weights(times, t, b, k, &mut values)?;
    Ok(TemporalWeights {
        t,
        b,
        offset,
        values,
    })
}

/// Temporal kernel at `v = (t_j - t)/b`. Arguments within `1e-12` of the
/// support edge are snapped onto it, so grid points that sit on the edge of
/// the window get exactly the edge value whichever side they fall on.
#[inline]
fn temporal_kernel(k: Kernel1D, v: f64) -> f64 {
    if (v.abs() - 1.0).abs() <= 1e-12 {
        k.eval(v.signum())
    } else {
        k.eval(v)
    }
}

/// `[lo, hi)` such that every observation with `|t_j - t| <= b` lies inside.
#[inline]
fn time_window(times: &[f64], t: f64, b: f64) -> (usize, usize) {
    let reach = b * (1.0 + 1e-12);
    let lo = times.partition_point(|&s| s < t - reach);
    let hi = times.partition_point(|&s| s <= t + reach);
    (lo, hi.max(lo))
}

/// Fills `out` with the window's weights and returns the window offset.
///
/// Uses `w_j = (k_j/S₀){1 - d̄(d_j - d̄)/V}` with `d_j = t - t_j`,
/// `d̄ = S₁/S₀` and `V = Σ k_j(d_j - d̄)²/S₀`, which is algebraically the
/// textbook `k_j{S₂ - d_j S₁}/{S₂S₀ - S₁²}` but never forms the cancelling
/// difference `S₂S₀ - S₁²`.
fn window_weights(
    times: &[f64],
    t: f64,
    b: f64,
    k: Kernel1D,
    out: &mut Vec<f64>,
) -> Result<usize> {
    let (lo, hi) = time_window(times, t, b);
    out.clear();
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut distinct = 0usize;
    let mut last_time = f64::NAN;
    for &tj in &times[lo..hi] {
        let kj = temporal_kernel(k, (tj - t) / b);
        if kj > 0.0 {
            if tj != last_time {
                distinct += 1;
                last_time = tj;
            }
            s0 += kj;
            s1 += kj * (t - tj);
        }
        out.push(kj);
    }
    if distinct < 2 {
        return Err(Error::DegenerateWindow { t, b });
    }
    let dbar = s1 / s0;
    let mut var = 0.0;
    let mut s2 = 0.0;
    for (&tj, &kj) in times[lo..hi].iter().zip(out.iter()) {
        let dj = t - tj;
        var += kj * (dj - dbar) * (dj - dbar);
        s2 += kj * dj * dj;
    }
    if var <= 1e-14 * s2 {
        return Err(Error::DegenerateWindow { t, b });
    }
    let var = var / s0;
    for (&tj, w) in times[lo..hi].iter().zip(out.iter_mut()) {
        let dj = t - tj;
        *w = (*w / s0) * (1.0 - dbar * (dj - dbar) / var);
    }
    Ok(lo)
}

fn check_bandwidth(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("bandwidth {name} must be positive, got {v}")))
    }
}

fn check_point(data: &Dataset, u: &[f64]) -> Result<()> {
    if u.len() != data.d() {
        return Err(Error::invalid(format!(
            "evaluation point has {} coordinates, data has d = {}",
            u.len(),
            data.d()
        )));
    }
    Ok(())
}

const DENSITY_FLOOR: f64 = 1e-12;

/// Model I: `m̂(u, t) = T̂(u, t) / f̂(u, t)` with local linear weights in time.
#[derive(Debug, Clone, Copy)]
pub struct TimeVaryingKernel<'a> {
    data: &'a Dataset,
    b: f64,
    h: f64,
    kernel: Kernel1D,
}

impl<'a> TimeVaryingKernel<'a> {
    pub fn new(data: &'a Dataset, b: f64, h: f64, kernel: Kernel1D) -> Result<Self> {
        check_bandwidth("b", b)?;
        check_bandwidth("h", h)?;
        Ok(Self { data, b, h, kernel })
    }

    /// `(f̂, T̂)` at `(u, t)`.
    fn sums(&self, u: &[f64], t: f64, buf: &mut Vec<f64>) -> Result<(f64, f64)> {
        let offset = window_weights(self.data.times(), t, self.b, self.kernel, buf)?;
        let y = self.data.y();
        let mut f = 0.0;
        let mut tn = 0.0;
        for (j, &w) in buf.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let i = offset + j;
            let ks = scaled_product(self.kernel, u, self.data.row(i), self.h);
            if ks != 0.0 {
                f += ks * w;
                tn += ks * w * y[i];
            }
        }
        Ok((f, tn))
    }

    pub fn density(&self, u: &[f64], t: f64) -> Result<f64> {
        check_point(self.data, u)?;
        Ok(self.sums(u, t, &mut Vec::new())?.0)
    }

    pub fn regression(&self, u: &[f64], t: f64) -> Result<f64> {
        check_point(self.data, u)?;
        self.regression_with(u, t, &mut Vec::new(), None)
    }

    fn regression_with(
        &self,
        u: &[f64],
        t: f64,
        buf: &mut Vec<f64>,
        index: Option<usize>,
    ) -> Result<f64> {
        let (f, tn) = self.sums(u, t, buf)?;
        if !(f > DENSITY_FLOOR) {
            return Err(Error::DegenerateDensity { index });
        }
        Ok(tn / f)
    }
}

/// Observations sorted by their first predictor coordinate, for windowed
/// spatial kernel sums.
#[derive(Debug, Clone)]
struct SpatialIndex {
    order: Vec<usize>,
    keys: Vec<f64>,
}

impl SpatialIndex {
    fn new(data: &Dataset) -> Self {
        let mut order: Vec<usize> = (0..data.n()).collect();
        order.sort_by(|&a, &b| data.row(a)[0].total_cmp(&data.row(b)[0]).then(a.cmp(&b)));
        let keys = order.iter().map(|&i| data.row(i)[0]).collect();
        Self { order, keys }
    }

    /// Observations whose first coordinate lies within `h` of `u0`.
    fn neighbours(&self, u0: f64, h: f64, out: &mut Vec<usize>) {
        let reach = h * (1.0 + 1e-12);
        let lo = self.keys.partition_point(|&v| v < u0 - reach);
        let hi = self.keys.partition_point(|&v| v <= u0 + reach);
        out.clear();
        out.extend_from_slice(&self.order[lo..hi.max(lo)]);
    }
}

/// Model II: Nadaraya–Watson `μ̂(u) = T̃(u) / f̃(u)`.
#[derive(Debug, Clone)]
pub struct NadarayaWatson<'a> {
    data: &'a Dataset,
    h: f64,
    kernel: Kernel1D,
    index: SpatialIndex,
}

impl<'a> NadarayaWatson<'a> {
    pub fn new(data: &'a Dataset, h: f64, kernel: Kernel1D) -> Result<Self> {
        check_bandwidth("h", h)?;
        Ok(Self {
            data,
            h,
            kernel,
            index: SpatialIndex::new(data),
        })
    }

    /// `(f̃, T̃)` at `u`.
    fn sums(&self, u: &[f64], scratch: &mut Vec<usize>) -> (f64, f64) {
        self.index.neighbours(u[0], self.h, scratch);
        let y = self.data.y();
        let mut f = 0.0;
        let mut tn = 0.0;
        for &i in scratch.iter() {
            let ks = scaled_product(self.kernel, u, self.data.row(i), self.h);
            if ks != 0.0 {
                f += ks;
                tn += ks * y[i];
            }
        }
        let n = self.data.n() as f64;
        (f / n, tn / n)
    }

    pub fn density(&self, u: &[f64]) -> Result<f64> {
        check_point(self.data, u)?;
        Ok(self.sums(u, &mut Vec::new()).0)
    }

    pub fn regression(&self, u: &[f64]) -> Result<f64> {
        check_point(self.data, u)?;
        self.regression_with(u, &mut Vec::new(), None)
    }

    fn regression_with(&self, u: &[f64], scratch: &mut Vec<usize>, index: Option<usize>) -> Result<f64> {
        let (f, tn) = self.sums(u, scratch);
        if !(f > DENSITY_FLOOR) {
            return Err(Error::DegenerateDensity { index });
        }
        Ok(tn / f)
    }
}

/// Regressor vector `z = (1, x)` or `z = x`.
#[inline]
fn design_row(row: &[f64], intercept: bool, out: &mut Vec<f64>) {
    out.clear();
    if intercept {
        out.push(1.0);
    }
    out.extend_from_slice(row);
}

/// Solves `G β = g` for a symmetric positive semi-definite `G` (row-major).
///
/// A ridge of `1e-10·tr(G)/p` is added only when the eigenvalue ratio falls
/// below `1e-10`; if the ridged matrix is still that ill-conditioned the
/// system is reported singular.
pub(crate) fn solve_gram(gram: &[f64], rhs: &[f64], t: Option<f64>) -> Result<Vec<f64>> {
    let p = rhs.len();
    let mut g = DMatrix::from_row_slice(p, p, gram);
    let rhs = DVector::from_column_slice(rhs);
    if g.iter().any(|v| !v.is_finite()) || rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularGram { t });
    }
    let well_conditioned = |m: &DMatrix<f64>| {
        let eig = m.clone().symmetric_eigenvalues();
        let max = eig.max();
        let min = eig.min();
        max > 0.0 && min >= 1e-10 * max
    };
    if !well_conditioned(&g) {
        let ridge = 1e-10 * g.trace() / p as f64;
        for k in 0..p {
            g[(k, k)] += ridge;
        }
        if !well_conditioned(&g) {
            return Err(Error::SingularGram { t });
        }
    }
    let beta = match g.clone().cholesky() {
        Some(chol) => chol.solve(&rhs),
        None => g.lu().solve(&rhs).ok_or(Error::SingularGram { t })?,
    };
    Ok(beta.iter().copied().collect())
}

/// Model III: `β̂(t) = {n⁻¹Σ z_i z_iᵀ K_{T,b}(t_i - t)}⁻¹ {n⁻¹Σ z_i y_i K_{T,b}(t_i - t)}`.
#[derive(Debug, Clone, Copy)]
pub struct VaryingCoefficient<'a> {
    data: &'a Dataset,
    b: f64,
    kernel: Kernel1D,
    intercept: bool,
}

impl<'a> VaryingCoefficient<'a> {
    pub fn new(data: &'a Dataset, b: f64, kernel: Kernel1D, intercept: bool) -> Result<Self> {
        check_bandwidth("b", b)?;
        Ok(Self {
            data,
            b,
            kernel,
            intercept,
        })
    }

    pub fn dim(&self) -> usize {
        self.data.d() + usize::from(self.intercept)
    }

    pub fn coefficients(&self, t: f64) -> Result<Vec<f64>> {
        let p = self.dim();
        let n = self.data.n() as f64;
        let (lo, hi) = time_window(self.data.times(), t, self.b);
        let mut gram = vec![0.0; p * p];
        let mut rhs = vec![0.0; p];
        let mut z = Vec::with_capacity(p);
        for i in lo..hi {
            let kw = temporal_kernel(self.kernel, (self.data.times()[i] - t) / self.b) / self.b;
            if kw == 0.0 {
                continue;
            }
            design_row(self.data.row(i), self.intercept, &mut z);
            let yi = self.data.y()[i];
            for a in 0..p {
                rhs[a] += z[a] * yi * kw / n;
                for c in a..p {
                    gram[a * p + c] += z[a] * z[c] * kw / n;
                }
            }
        }
        for a in 0..p {
            for c in 0..a {
                gram[a * p + c] = gram[c * p + a];
            }
        }
        solve_gram(&gram, &rhs, Some(t))
    }

    pub fn predict(&self, u: &[f64], t: f64) -> Result<f64> {
        check_point(self.data, u)?;
        let beta = self.coefficients(t)?;
        Ok(linear_predictor(&beta, u, self.intercept))
    }
}

#[inline]
fn linear_predictor(beta: &[f64], u: &[f64], intercept: bool) -> f64 {
    let (b0, slopes) = if intercept {
        (beta[0], &beta[1..])
    } else {
        (0.0, beta)
    };
    b0 + slopes.iter().zip(u).map(|(b, x)| b * x).sum::<f64>()
}

/// Model IV: `θ̂ = (n⁻¹Σ z_i z_iᵀ)⁻¹ (n⁻¹Σ z_i y_i)` over the full sample.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub theta: Vec<f64>,
    pub intercept: bool,
}

impl LinearFit {
    pub fn new(data: &Dataset, intercept: bool) -> Result<Self> {
        let p = data.d() + usize::from(intercept);
        let n = data.n() as f64;
        let mut gram = vec![0.0; p * p];
        let mut rhs = vec![0.0; p];
        let mut z = Vec::with_capacity(p);
        for i in 0..data.n() {
            design_row(data.row(i), intercept, &mut z);
            let yi = data.y()[i];
            for a in 0..p {
                rhs[a] += z[a] * yi / n;
                for c in a..p {
                    gram[a * p + c] += z[a] * z[c] / n;
                }
            }
        }
        for a in 0..p {
            for c in 0..a {
                gram[a * p + c] = gram[c * p + a];
            }
        }
        let theta = solve_gram(&gram, &rhs, None)?;
        Ok(Self { theta, intercept })
    }

    pub fn predict(&self, u: &[f64]) -> f64 {
        linear_predictor(&self.theta, u, self.intercept)
    }
}

/// Bandwidths a fit used.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Smoothing {
    pub b: Option<f64>,
    pub h: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub kind: ModelKind,
    /// Restricted index set, ascending.
    pub indices: Vec<usize>,
    /// `ŷ_i` for each restricted index.
    pub fitted: Vec<f64>,
    pub rss: f64,
    /// `Σ y_i²` over the restricted set, the scale of `rss`.
    pub sum_sq: f64,
    pub n_used: usize,
    pub smoothing: Smoothing,
}

impl FitResult {
    fn assemble(
        kind: ModelKind,
        data: &Dataset,
        indices: Vec<usize>,
        fitted: Vec<f64>,
        smoothing: Smoothing,
    ) -> Self {
        let rss = indices
            .iter()
            .zip(&fitted)
            .map(|(&i, &f)| {
                let r = data.y()[i] - f;
                r * r
            })
            .sum();
        let sum_sq = indices.iter().map(|&i| data.y()[i] * data.y()[i]).sum();
        FitResult {
            kind,
            sum_sq,
            n_used: indices.len(),
            indices,
            fitted,
            rss,
            smoothing,
        }
    }
}

/// Below this many evaluation points a fit runs on the calling thread.
const PARALLEL_POINTS: usize = 4096;

fn evaluate_points<S, F>(indices: &[usize], init: impl Fn() -> S + Sync + Send, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut S, usize) -> Result<f64> + Sync + Send,
{
    if indices.len() < PARALLEL_POINTS {
        let mut state = init();
        indices.iter().map(|&i| f(&mut state, i)).collect()
    } else {
        indices
            .par_iter()
            .map_init(&init, |state, &i| f(state, i))
            .collect()
    }
}

/// Restricted fit of model I at the sample points.
pub fn fit_model_i(data: &Dataset, region: &Region, b: f64, h: f64, k: Kernel1D) -> Result<FitResult> {
    let est = TimeVaryingKernel::new(data, b, h, k)?;
    let indices = region.restricted_indices(data)?;
    let fitted = evaluate_points(&indices, Vec::new, |buf, i| {
        est.regression_with(data.row(i), data.times()[i], buf, Some(i))
    })?;
    Ok(FitResult::assemble(
        ModelKind::I,
        data,
        indices,
        fitted,
        Smoothing {
            b: Some(b),
            h: Some(h),
        },
    ))
}

/// Restricted fit of model II at the sample points.
pub fn fit_model_ii(data: &Dataset, region: &Region, h: f64, k: Kernel1D) -> Result<FitResult> {
    let est = NadarayaWatson::new(data, h, k)?;
    let indices = region.restricted_indices(data)?;
    let fitted = evaluate_points(&indices, Vec::new, |buf, i| {
        est.regression_with(data.row(i), buf, Some(i))
    })?;
    Ok(FitResult::assemble(
        ModelKind::II,
        data,
        indices,
        fitted,
        Smoothing { b: None, h: Some(h) },
    ))
}

/// Restricted fit of model III at the sample points.
pub fn fit_model_iii(
    data: &Dataset,
    region: &Region,
    b: f64,
    k: Kernel1D,
    intercept: bool,
) -> Result<FitResult> {
    let est = VaryingCoefficient::new(data, b, k, intercept)?;
    let indices = region.restricted_indices(data)?;
    let fitted = evaluate_points(&indices, || (), |_, i| {
        let beta = est.coefficients(data.times()[i])?;
        Ok(linear_predictor(&beta, data.row(i), intercept))
    })?;
    Ok(FitResult::assemble(
        ModelKind::III,
        data,
        indices,
        fitted,
        Smoothing { b: Some(b), h: None },
    ))
}

/// Model IV estimated on the full sample, residuals restricted.
pub fn fit_model_iv(data: &Dataset, region: &Region, intercept: bool) -> Result<FitResult> {
    let fit = LinearFit::new(data, intercept)?;
    let indices = region.restricted_indices(data)?;
    let fitted = indices.iter().map(|&i| fit.predict(data.row(i))).collect();
    Ok(FitResult::assemble(
        ModelKind::IV,
        data,
        indices,
        fitted,
        Smoothing::default(),
    ))
}

/// `f̂(u, t) = Σ K_{S,h}(u - x_i) w_{b,i}(t)`.
pub fn eval_density(data: &Dataset, u: &[f64], t: f64, b: f64, h: f64, k: Kernel1D) -> Result<f64> {
    TimeVaryingKernel::new(data, b, h, k)?.density(u, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::epanechnikov;
    use crate::locstat::{simulate, Design, GeneratorSpec};

    fn toy(n: usize, d: usize, seed: u64) -> Dataset {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        Dataset::new(y, x, d).unwrap()
    }

    #[test]
    fn weights_support_at_midpoint() {
        let w = local_linear_weights(100, 0.5, 0.05, epanechnikov()).unwrap();
        let positive: Vec<usize> = (0..100).filter(|&i| w.get(i) > 0.0).map(|i| i + 1).collect();
        assert_eq!(positive, (46..=54).collect::<Vec<_>>());
        assert!((w.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weights_match_printed_formula() {
        let k = epanechnikov();
        for &(n, t, b) in &[(200usize, 0.3, 0.1), (57, 0.02, 0.2), (1000, 0.97, 0.05)] {
            let w = local_linear_weights(n, t, b, k).unwrap().to_dense(n);
            let kv: Vec<f64> = (1..=n).map(|j| k.eval((j as f64 / n as f64 - t) / b)).collect();
            let s = |l: i32| -> f64 {
                (1..=n)
                    .map(|j| (t - j as f64 / n as f64).powi(l) * kv[j - 1])
                    .sum()
            };
            let (s0, s1, s2) = (s(0), s(1), s(2));
            for i in 1..=n {
                let naive = kv[i - 1] * (s2 - (t - i as f64 / n as f64) * s1) / (s2 * s0 - s1 * s1);
                assert!((naive - w[i - 1]).abs() < 1e-12, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn degenerate_window() {
        let err = local_linear_weights(100, 0.5, 0.009, epanechnikov()).unwrap_err();
        assert!(matches!(err, Error::DegenerateWindow { .. }));
        assert!(local_linear_weights(100, 0.5, -1.0, epanechnikov()).is_err());
    }

    #[test]
    fn constant_response_has_zero_rss() {
        let base = toy(150, 1, 1);
        let data = base.with_responses(vec![3.25; 150]).unwrap();
        let region = Region::cube(1, -0.8, 0.8, 0.2, 0.8).unwrap();
        let k = epanechnikov();
        let i = fit_model_i(&data, &region, 0.2, 0.4, k).unwrap();
        let ii = fit_model_ii(&data, &region, 0.4, k).unwrap();
        for fit in [&i, &ii] {
            assert!(fit.rss < 1e-20);
            assert!(fit.fitted.iter().all(|v| (v - 3.25).abs() < 1e-12));
        }
        assert!(i.n_used > 0 && i.n_used <= 150);
    }

    #[test]
    fn linear_truth_is_reproduced() {
        let base = toy(120, 1, 2);
        let y: Vec<f64> = base.x().iter().map(|x| 2.0 + 3.0 * x).collect();
        let data = base.with_responses(y).unwrap();
        let region = Region::cube(1, -1.0, 1.0, 0.2, 0.8).unwrap();
        let iv = LinearFit::new(&data, true).unwrap();
        assert!((iv.theta[0] - 2.0).abs() < 1e-12 && (iv.theta[1] - 3.0).abs() < 1e-12);
        assert!(fit_model_iv(&data, &region, true).unwrap().rss < 1e-20);
        let vc = VaryingCoefficient::new(&data, 0.15, epanechnikov(), true).unwrap();
        for t in [0.1, 0.33, 0.5, 0.9] {
            let beta = vc.coefficients(t).unwrap();
            assert!((beta[0] - 2.0).abs() < 1e-8 && (beta[1] - 3.0).abs() < 1e-8);
        }
    }

    #[test]
    fn singular_gram() {
        let data = Dataset::univariate(vec![1.0; 30], vec![0.5; 30]).unwrap();
        assert!(matches!(
            LinearFit::new(&data, true).unwrap_err(),
            Error::SingularGram { t: None }
        ));
        let zero = Dataset::univariate(vec![1.0; 30], vec![0.0; 30]).unwrap();
        assert!(LinearFit::new(&zero, false).is_err());
    }

    #[test]
    fn density_vanishes_far_away() {
        let data = toy(200, 1, 3);
        assert_eq!(eval_density(&data, &[50.0], 0.5, 0.2, 0.3, epanechnikov()).unwrap(), 0.0);
        let nw = NadarayaWatson::new(&data, 0.3, epanechnikov()).unwrap();
        assert!(matches!(
            nw.regression(&[50.0]).unwrap_err(),
            Error::DegenerateDensity { index: None }
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let data = toy(50, 2, 4);
        let region = Region::simulation_default();
        assert!(fit_model_iv(&data, &region, true).is_err());
        assert!(eval_density(&data, &[0.0], 0.5, 0.2, 0.3, epanechnikov()).is_err());
    }

    #[test]
    fn region_validation() {
        assert!(Region::cube(1, 1.0, 0.0, 0.2, 0.8).is_err());
        assert!(Region::cube(1, 0.0, 1.0, 0.0, 0.8).is_err());
        assert!(Region::cube(1, 0.0, 1.0, 0.5, 0.4).is_err());
        assert!(Region::new(vec![], (0.2, 0.8)).is_err());
    }

    #[test]
    fn model_kind_strings() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.to_string().parse::<ModelKind>().unwrap(), kind);
        }
        assert!("V".parse::<ModelKind>().is_err());
    }

    #[test]
    fn parallel_and_sequential_fits_agree() {
        let (data, _) = simulate(&GeneratorSpec::design(Design::A, 9000, 1.0, 5)).unwrap();
        let region = Region::simulation_default();
        let k = epanechnikov();
        let fit = fit_model_ii(&data, &region, 0.3, k).unwrap();
        assert!(fit.indices.len() >= PARALLEL_POINTS);
        let nw = NadarayaWatson::new(&data, 0.3, k).unwrap();
        for (&i, &f) in fit.indices.iter().zip(&fit.fitted).step_by(97) {
            assert_eq!(nw.regression(data.row(i)).unwrap(), f);
        }
    }
}
