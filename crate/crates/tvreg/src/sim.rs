//! Monte-Carlo replication of the model-selection study.
//!
//! A cell is one `(design, n, φ)` configuration. Each replication draws a
//! dataset, tunes the penalty by cross-validation, records the selected
//! model and the realized signal-to-noise ratio. Replication seeds are
//! derived from the base seed and the cell coordinates, so the table does
//! not depend on how replications are scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Kernel1D;
use crate::locstat::{simulate, Dataset, Design, GeneratorSpec, TrueModel, DEFAULT_MA_EPS};
use crate::rng::derive_seed;
use crate::select::{default_bandwidths, select_tau_cv, CvPlan};
use crate::smooth::{ModelKind, Region};

/// Share of replications allowed to fail before a cell is rejected.
pub const FAILURE_BUDGET: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyGrid {
    pub designs: Vec<Design>,
    pub sample_sizes: Vec<usize>,
    pub noise_levels: Vec<f64>,
    pub replications: usize,
    pub base_seed: u64,
    pub cv: CvPlan,
    pub region: Region,
}

impl StudyGrid {
    /// Designs (a)–(d), `n ∈ {250, 500, 1000}`, `φ ∈ {1, 2}`, 200 replications.
    pub fn desk_scale(base_seed: u64) -> Self {
        Self {
            designs: Design::ALL.to_vec(),
            sample_sizes: vec![250, 500, 1000],
            noise_levels: vec![1.0, 2.0],
            replications: 200,
            base_seed,
            cv: CvPlan::default(),
            region: Region::simulation_default(),
        }
    }

    /// `n ∈ {250, 500, 1000, 2000}`, `φ ∈ {1, 2, 3}`, 1000 replications.
    pub fn full_scale(base_seed: u64) -> Self {
        Self {
            sample_sizes: vec![250, 500, 1000, 2000],
            noise_levels: vec![1.0, 2.0, 3.0],
            replications: 1000,
            ..Self::desk_scale(base_seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::invalid("at least one replication is required"));
        }
        if self.designs.is_empty() || self.sample_sizes.is_empty() || self.noise_levels.is_empty() {
            return Err(Error::invalid("study grid has an empty axis"));
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < 100) {
            return Err(Error::invalid(format!("sample size {n} < 100")));
        }
        if self.noise_levels.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return Err(Error::invalid("noise levels must be positive"));
        }
        self.cv.validate()
    }

    /// Cells in output order: by `n`, then design, then `φ`.
    pub fn cells(&self) -> Vec<(Design, usize, f64)> {
        let mut cells = Vec::new();
        for &n in &self.sample_sizes {
            for &design in &self.designs {
                for &phi in &self.noise_levels {
                    cells.push((design, n, phi));
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub design: Design,
    pub n: usize,
    pub phi: f64,
    pub replications: usize,
    /// Selection counts in the order I, II, III, IV.
    pub counts: [usize; 4],
    /// Selection frequencies over successful replications.
    pub proportions: [f64; 4],
    pub snr_median: f64,
    pub failures: usize,
}

impl CellResult {
    pub fn proportion(&self, kind: ModelKind) -> f64 {
        self.proportions[kind.index()]
    }

    /// Frequency of selecting the model that generated the data.
    pub fn correct(&self) -> f64 {
        self.proportion(self.design.kind())
    }
}

/// `{Σ m(x_i, t_i)² / Σ e_i²}^{1/2}` with `e_i = y_i - m(x_i, t_i)`.
pub fn snr(data: &Dataset, truth: &TrueModel) -> Result<f64> {
    let mut signal = 0.0;
    let mut noise = 0.0;
    for i in 0..data.n() {
        let m = truth.m(data.row(i), data.times()[i]);
        let e = data.y()[i] - m;
        signal += m * m;
        noise += e * e;
    }
    if noise == 0.0 {
        return Err(Error::ZeroNoise);
    }
    Ok((signal / noise).sqrt())
}

/// Seed of replication `r` in cell `(design, n, φ)`.
pub fn replication_seed(base_seed: u64, design: Design, n: usize, phi: f64, r: usize) -> u64 {
    derive_seed(&[base_seed, design.index() as u64, n as u64, phi.to_bits(), r as u64])
}

/// Selected model and SNR of one replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    pub chosen: ModelKind,
    pub snr: f64,
    pub c_hat: f64,
}

pub fn run_replication(
    design: Design,
    n: usize,
    phi: f64,
    seed: u64,
    cv: &CvPlan,
    region: &Region,
) -> Result<Replication> {
    let spec = GeneratorSpec {
        ma_truncation_eps: DEFAULT_MA_EPS,
        ..GeneratorSpec::design(design, n, phi, seed)
    };
    let (data, truth) = simulate(&spec)?;
    let plan = default_bandwidths(&data)?;
    let (c_hat, report) = select_tau_cv(&data, region, &plan, cv, Kernel1D::Epanechnikov, true)?;
    Ok(Replication {
        chosen: report.chosen,
        snr: snr(&data, &truth)?,
        c_hat,
    })
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

fn summarize(
    design: Design,
    n: usize,
    phi: f64,
    outcomes: &[Result<Replication>],
) -> Result<CellResult> {
    let replications = outcomes.len();
    let failures = outcomes.iter().filter(|o| o.is_err()).count();
    if failures as f64 > FAILURE_BUDGET * replications as f64 || failures == replications {
        return Err(Error::CellFailed {
            cell: format!("design {design}, n = {n}, phi = {phi}"),
            failures,
            replications,
        });
    }
    let mut counts = [0usize; 4];
    let mut snrs = Vec::with_capacity(replications - failures);
    for rep in outcomes.iter().flatten() {
        counts[rep.chosen.index()] += 1;
        snrs.push(rep.snr);
    }
    let ok = (replications - failures) as f64;
    Ok(CellResult {
        design,
        n,
        phi,
        replications,
        counts,
        proportions: counts.map(|c| c as f64 / ok),
        snr_median: median(&mut snrs),
        failures,
    })
}

/// Runs `replications` replications of one cell.
pub fn run_cell(
    design: Design,
    n: usize,
    phi: f64,
    replications: usize,
    base_seed: u64,
    cv: &CvPlan,
    region: &Region,
) -> Result<CellResult> {
    if replications == 0 {
        return Err(Error::invalid("at least one replication is required"));
    }
    let outcomes: Vec<Result<Replication>> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let seed = replication_seed(base_seed, design, n, phi, r);
            run_replication(design, n, phi, seed, cv, region)
        })
        .collect();
    summarize(design, n, phi, &outcomes)
}

/// Runs every cell of the grid; cells are ordered by `(n, design, φ)`.
///
/// All replications of all cells form one parallel work list. A failing
/// cell fails the grid, naming every failed cell.
pub fn run_grid(grid: &StudyGrid) -> Result<Vec<CellResult>> {
    grid.validate()?;
    let cells = grid.cells();
    let work: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..grid.replications).map(move |r| (c, r)))
        .collect();
    let outcomes: Vec<Result<Replication>> = work
        .par_iter()
        .map(|&(c, r)| {
            let (design, n, phi) = cells[c];
            let seed = replication_seed(grid.base_seed, design, n, phi, r);
            run_replication(design, n, phi, seed, &grid.cv, &grid.region)
        })
        .collect();
    let mut results = Vec::with_capacity(cells.len());
    let mut failed = Vec::new();
    for (c, chunk) in outcomes.chunks(grid.replications).enumerate() {
        let (design, n, phi) = cells[c];
        match summarize(design, n, phi, chunk) {
            Ok(cell) => results.push(cell),
            Err(Error::CellFailed { cell, failures, .. }) => {
                failed.push(format!("{cell} ({failures} failures)"))
            }
            Err(e) => return Err(e),
        }
    }
    if !failed.is_empty() {
        let total = failed.len();
        return Err(Error::CellFailed {
            cell: failed.join("; "),
            failures: total,
            replications: cells.len(),
        });
    }
    Ok(results)
}
