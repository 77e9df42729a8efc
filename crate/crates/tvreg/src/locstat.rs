//! Datasets and generators for locally stationary regression data.
//!
//! The regressor process used throughout the simulation study is the
//! time-varying linear process `x_i = Σ_{l≥0} a(i/n)^l ξ_{i-l}` with
//! `a(t) = (t - 1/2)²`, truncated once `(1/4)^L` drops below a cutoff.
//! Innovations `ξ` and errors `η` come from disjoint seeded streams.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, Stream};
use crate::smooth::ModelKind;

/// Responses, predictors and their rescaled observation times.
///
/// Predictors are stored row-major. Times are nondecreasing; for a full
/// sample they are `i/n`, `i = 1..n`, and subsets keep the times of the
/// observations they retain.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    y: Vec<f64>,
    x: Vec<f64>,
    d: usize,
    times: Vec<f64>,
}

impl Dataset {
    /// Builds a dataset on the grid `i/n`.
    pub fn new(y: Vec<f64>, x: Vec<f64>, d: usize) -> Result<Self> {
        let n = y.len();
        let times = (1..=n).map(|i| i as f64 / n as f64).collect();
        Self::with_times(y, x, d, times)
    }

    pub fn with_times(y: Vec<f64>, x: Vec<f64>, d: usize, times: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("predictor dimension must be at least 1"));
        }
        if y.is_empty() {
            return Err(Error::invalid("dataset is empty"));
        }
        if x.len() != y.len() * d {
            return Err(Error::invalid(format!(
                "predictor matrix has {} entries, expected {} x {}",
                x.len(),
                y.len(),
                d
            )));
        }
        if times.len() != y.len() {
            return Err(Error::invalid("times and responses differ in length"));
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        if let Some(j) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: j / d });
        }
        if let Some(i) = times.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("observation times must be nondecreasing"));
        }
        Ok(Self { y, x, d, times })
    }

    /// Single-predictor convenience constructor.
    pub fn univariate(y: Vec<f64>, x: Vec<f64>) -> Result<Self> {
        Self::new(y, x, 1)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Row-major predictor matrix.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Predictor coordinate `k` as a column.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.x.iter().skip(k).step_by(self.d).copied().collect()
    }

    /// Keeps the observations at `indices` (ascending), with their times.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let mut y = Vec::with_capacity(indices.len());
        let mut x = Vec::with_capacity(indices.len() * self.d);
        let mut times = Vec::with_capacity(indices.len());
        for &i in indices {
            y.push(self.y[i]);
            x.extend_from_slice(self.row(i));
            times.push(self.times[i]);
        }
        Dataset {
            y,
            x,
            d: self.d,
            times,
        }
    }

    /// Same predictors and times with new responses.
    pub fn with_responses(&self, y: Vec<f64>) -> Result<Dataset> {
        Dataset::with_times(y, self.x.clone(), self.d, self.times.clone())
    }
}

/// A function of `(u, t)`.
pub type Surface = Arc<dyn Fn(&[f64], f64) -> f64 + Send + Sync>;

/// Regression and volatility surfaces that generated a dataset.
#[derive(Clone)]
pub struct TrueModel {
    pub mean: Surface,
    pub sigma: Surface,
    pub kind: ModelKind,
}

impl TrueModel {
    pub fn m(&self, u: &[f64], t: f64) -> f64 {
        (self.mean)(u, t)
    }

    pub fn sigma(&self, u: &[f64], t: f64) -> f64 {
        (self.sigma)(u, t)
    }
}

impl fmt::Debug for TrueModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrueModel").field("kind", &self.kind).finish_non_exhaustive()
    }
}

/// The four regression designs of the simulation study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Design {
    A,
    B,
    C,
    D,
}

impl Design {
    pub const ALL: [Design; 4] = [Design::A, Design::B, Design::C, Design::D];

    /// The candidate model the design belongs to.
    pub fn kind(self) -> ModelKind {
        match self {
            Design::A => ModelKind::I,
            Design::B => ModelKind::II,
            Design::C => ModelKind::III,
            Design::D => ModelKind::IV,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Design::A => "a",
            Design::B => "b",
            Design::C => "c",
            Design::D => "d",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Design::A),
            "b" => Ok(Design::B),
            "c" => Ok(Design::C),
            "d" => Ok(Design::D),
            other => Err(Error::invalid(format!("unknown design '{other}'"))),
        }
    }
}

/// Which synthetic process to draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Process {
    Design(Design),
    /// Time-varying AR(1) with coefficient `0.2 + 0.3t` and error scale `φ`.
    Autoregressive,
    /// Discretized time-varying mean-reverting short-rate diffusion.
    Diffusion,
}

pub const DEFAULT_MA_EPS: f64 = 1e-8;
pub const DEFAULT_BURN_IN: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub process: Process,
    pub n: usize,
    /// Noise level `φ`.
    pub phi: f64,
    pub seed: u64,
    pub ma_truncation_eps: f64,
}

impl GeneratorSpec {
    pub fn design(design: Design, n: usize, phi: f64, seed: u64) -> Self {
        Self {
            process: Process::Design(design),
            n,
            phi,
            seed,
            ma_truncation_eps: DEFAULT_MA_EPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 10 {
            return Err(Error::invalid(format!("sample size {} < 10", self.n)));
        }
        if !(self.phi > 0.0 && self.phi.is_finite()) {
            return Err(Error::invalid("noise level must be positive"));
        }
        if !(self.ma_truncation_eps > 0.0 && self.ma_truncation_eps <= 1e-6) {
            return Err(Error::invalid("MA truncation cutoff must lie in (0, 1e-6]"));
        }
        Ok(())
    }
}

/// `a(t) = (t - 1/2)²`.
#[inline]
pub fn ma_coefficient(t: f64) -> f64 {
    (t - 0.5) * (t - 0.5)
}

/// Smallest `L` with `(1/4)^L < eps`.
pub fn truncation_lags(eps: f64) -> usize {
    let mut lags = 0;
    let mut bound = 1.0f64;
    while bound >= eps {
        bound *= 0.25;
        lags += 1;
    }
    lags
}

/// Draws `x_i = G(i/n; H_i)`, `i = 1..n`, keeping lags `0..=L`.
///
/// `ξ_1..ξ_n` are drawn first and the pre-sample innovations `ξ_0, ξ_{-1},
/// …` afterwards, so tightening `eps` only appends draws and leaves the
/// in-sample innovations untouched.
pub fn gen_regressors_ma(n: usize, seed: u64, eps: f64) -> Result<Vec<f64>> {
    if n < 10 {
        return Err(Error::invalid(format!("sample size {n} < 10")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid("truncation cutoff must lie in (0, 1)"));
    }
    let lags = truncation_lags(eps);
    let mut rng = rng::stream(seed, Stream::Regressors);
    // buffer[lags + k - 1] = ξ_k for k = 1 - lags ..= n
    let mut buffer = vec![0.0; n + lags];
    for slot in buffer[lags..].iter_mut() {
        *slot = rng.sample(StandardNormal);
    }
    for slot in buffer[..lags].iter_mut().rev() {
        *slot = rng.sample(StandardNormal);
    }
    let x = (1..=n)
        .map(|i| {
            let a = ma_coefficient(i as f64 / n as f64);
            let current = lags + i - 1;
            // Horner in a over ξ_{i-L}, …, ξ_i
            let mut acc = 0.0;
            for l in (0..=lags).rev() {
                acc = acc * a + buffer[current - l];
            }
            acc
        })
        .collect();
    Ok(x)
}

/// Regression and volatility surfaces of design (a)–(d) at noise level `φ`.
pub fn make_design(design: Design, phi: f64) -> TrueModel {
    use std::f64::consts::PI;
    let (mean, sigma): (Surface, Surface) = match design {
        Design::A => (
            Arc::new(|u: &[f64], t: f64| 2.5 * (2.0 * PI * t).sin() * (PI * u[0]).cos()),
            Arc::new(move |u: &[f64], t: f64| phi * (t * u[0]).abs() / 2.0),
        ),
        Design::B => (
            Arc::new(|u: &[f64], _t: f64| u[0].exp()),
            Arc::new(move |u: &[f64], t: f64| phi * t * (u[0] / 3.0).exp()),
        ),
        Design::C => (
            Arc::new(|u: &[f64], t: f64| 5.0 * t + 4.0 * (2.0 * PI * t).cos() * u[0]),
            Arc::new(move |u: &[f64], t: f64| phi * (t * u[0] / 2.0).exp()),
        ),
        Design::D => (
            Arc::new(|u: &[f64], _t: f64| 2.0 + 3.0 * u[0]),
            Arc::new(move |u: &[f64], t: f64| phi * (u[0] / 3.0 + t).abs()),
        ),
    };
    TrueModel {
        mean,
        sigma,
        kind: design.kind(),
    }
}

/// Draws one dataset from design (a)–(d).
pub fn simulate(spec: &GeneratorSpec) -> Result<(Dataset, TrueModel)> {
    spec.validate()?;
    let Process::Design(design) = spec.process else {
        return Err(Error::invalid(
            "simulate covers the regression designs; use generate for other processes",
        ));
    };
    let n = spec.n;
    let x = gen_regressors_ma(n, spec.seed, spec.ma_truncation_eps)?;
    let truth = make_design(design, spec.phi);
    let mut eta = rng::stream(spec.seed, Stream::Errors);
    let y = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let t = (i + 1) as f64 / n as f64;
            let u = [xi];
            let e: f64 = eta.sample(StandardNormal);
            truth.m(&u, t) + truth.sigma(&u, t) * e
        })
        .collect();
    Ok((Dataset::univariate(y, x)?, truth))
}

/// Draws a dataset for any [`Process`].
pub fn generate(spec: &GeneratorSpec) -> Result<Dataset> {
    spec.validate()?;
    match spec.process {
        Process::Design(_) => simulate(spec).map(|(data, _)| data),
        Process::Autoregressive => {
            let phi = spec.phi;
            simulate_ar(
                spec.n,
                &|x: &[f64], t: f64| (0.2 + 0.3 * t) * x[0],
                &move |_x: &[f64], _t: f64| phi,
                1,
                spec.seed,
                DEFAULT_BURN_IN,
            )
        }
        Process::Diffusion => {
            let rates = simulate_diffusion(&DiffusionSpec::default_with(spec.n, spec.phi, spec.seed))?;
            difference_rates(&rates)
        }
    }
}

/// Time-varying nonlinear autoregression `y_i = m(x_i, i/n) + σ(x_i, i/n)η_i`
/// with `x_i = (y_{i-1}, …, y_{i-d})`.
///
/// Initial values come from `burn_in` steps of the frozen `t = 0`
/// recursion started at zero. Contraction of `(m, σ)` is the caller's
/// responsibility; a recursion whose magnitude passes `1e12` is reported.
pub fn simulate_ar(
    n: usize,
    m: &dyn Fn(&[f64], f64) -> f64,
    sigma: &dyn Fn(&[f64], f64) -> f64,
    d: usize,
    seed: u64,
    burn_in: usize,
) -> Result<Dataset> {
    if n < 2 || d == 0 {
        return Err(Error::invalid("need n >= 2 and d >= 1"));
    }
    let mut eta = rng::stream(seed, Stream::Autoregression);
    // lags[0] = y_{i-1}, …, lags[d-1] = y_{i-d}
    let mut lags = vec![0.0; d];
    let mut step = |lags: &mut Vec<f64>, t: f64, index: usize| -> Result<f64> {
        let e: f64 = eta.sample(StandardNormal);
        let y = m(lags, t) + sigma(lags, t) * e;
        if !y.is_finite() || y.abs() > 1e12 {
            return Err(Error::Divergent { step: index, value: y });
        }
        Ok(y)
    };
    for k in 0..burn_in {
        let y = step(&mut lags, 0.0, k)?;
        lags.rotate_right(1);
        lags[0] = y;
    }
    let mut ys = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n * d);
    for i in 1..=n {
        let t = i as f64 / n as f64;
        let y = step(&mut lags, t, burn_in + i - 1)?;
        xs.extend_from_slice(&lags);
        ys.push(y);
        lags.rotate_right(1);
        lags[0] = y;
    }
    Dataset::new(ys, xs, d)
}

/// Turns a rate series into `(x_i, y_i) = (r_i, r_{i+1} - r_i)`.
pub fn difference_rates(r: &[f64]) -> Result<Dataset> {
    if let Some(i) = r.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index: i });
    }
    if r.len() < 11 {
        return Err(Error::invalid(format!(
            "rate series has {} entries, need at least 11",
            r.len()
        )));
    }
    let x = r[..r.len() - 1].to_vec();
    let y = r.windows(2).map(|w| w[1] - w[0]).collect();
    Dataset::univariate(y, x)
}

/// Euler scheme `r_{i+1} = r_i + μ(r_i, i/n)Δ + σ(r_i, i/n)Δ^{1/2}η_i`.
#[derive(Clone)]
pub struct DiffusionSpec {
    /// Number of increments; the series has `n + 1` points.
    pub n: usize,
    pub r0: f64,
    /// Step length in years.
    pub delta: f64,
    pub drift: Surface,
    pub volatility: Surface,
    pub seed: u64,
}

impl DiffusionSpec {
    /// Mean reversion towards a level `5 + 2 sin(2πt)` with square-root
    /// volatility scaled by `φ`, daily steps.
    pub fn default_with(n: usize, phi: f64, seed: u64) -> Self {
        use std::f64::consts::PI;
        Self {
            n,
            r0: 5.0,
            delta: 1.0 / 250.0,
            drift: Arc::new(|r: &[f64], t: f64| 0.8 * (5.0 + 2.0 * (2.0 * PI * t).sin() - r[0])),
            volatility: Arc::new(move |r: &[f64], _t: f64| 0.3 * phi * r[0].abs().sqrt()),
            seed,
        }
    }
}

pub fn simulate_diffusion(spec: &DiffusionSpec) -> Result<Vec<f64>> {
    if spec.n < 10 || !(spec.delta > 0.0) {
        return Err(Error::invalid("diffusion needs n >= 10 and a positive step"));
    }
    let mut rng = rng::stream(spec.seed, Stream::Diffusion);
    let sqrt_delta = spec.delta.sqrt();
    let mut r = Vec::with_capacity(spec.n + 1);
    let mut current = spec.r0;
    r.push(current);
    for i in 1..=spec.n {
        let t = i as f64 / spec.n as f64;
        let e: f64 = rng.sample(StandardNormal);
        let u = [current];
        current += (spec.drift)(&u, t) * spec.delta + (spec.volatility)(&u, t) * sqrt_delta * e;
        if !current.is_finite() || current.abs() > 1e12 {
            return Err(Error::Divergent { step: i, value: current });
        }
        r.push(current);
    }
    Ok(r)
}
