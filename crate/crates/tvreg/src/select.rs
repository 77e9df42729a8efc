//! Bandwidth plans, model complexities, the generalized information
//! criterion and the cross-validated choice of its penalty.
//!
//! For candidate model `ρ` the criterion is
//!
//! ```text
//! gic(ρ) = log{rss(𝒳, 𝒯, ρ) / n} + τ_n df(ρ)
//! ```
//!
//! with `τ_n = c n^{-(d+3)/(d+4)} log n`. The constant `c` is picked by
//! K-fold cross-validation over contiguous time blocks, scoring held-out
//! predictions inside the region `𝒳 × 𝒯`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Kernel1D;
use crate::locstat::Dataset;
use crate::smooth::{
    fit_model_i, fit_model_ii, fit_model_iii, fit_model_iv, LinearFit, ModelKind,
    NadarayaWatson, Region, TimeVaryingKernel, VaryingCoefficient,
};

/// Proportionality constants of the four bandwidths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthConstants {
    pub c_b_i: f64,
    pub c_h_i: f64,
    pub c_h_ii: f64,
    pub c_b_iii: f64,
}

impl BandwidthConstants {
    /// `c_b = 1/2` for both temporal bandwidths, `c_h = ∏ IQR_k` for both
    /// spatial ones.
    pub fn rule_of_thumb(iqr: &[f64]) -> Self {
        let c_h: f64 = iqr.iter().product();
        Self {
            c_b_i: 0.5,
            c_h_i: c_h,
            c_h_ii: c_h,
            c_b_iii: 0.5,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c_b(I)", self.c_b_i),
            ("c_h(I)", self.c_h_i),
            ("c_h(II)", self.c_h_ii),
            ("c_b(III)", self.c_b_iii),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Bandwidths at their AMSE-optimal rates:
/// `b(I), h(I) ∝ n^{-1/(d+5)}`, `h(II) ∝ n^{-1/(d+4)}`, `b(III) ∝ n^{-1/5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthPlan {
    pub n: usize,
    pub d: usize,
    /// Componentwise interquartile ranges of the predictors.
    pub iqr: Vec<f64>,
    pub constants: BandwidthConstants,
    pub b_i: f64,
    pub h_i: f64,
    pub h_ii: f64,
    pub b_iii: f64,
}

impl BandwidthPlan {
    pub fn from_constants(
        n: usize,
        d: usize,
        iqr: Vec<f64>,
        constants: BandwidthConstants,
    ) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(Error::invalid("bandwidth plan needs n >= 2 and d >= 1"));
        }
        if iqr.len() != d {
            return Err(Error::invalid("one interquartile range per predictor is required"));
        }
        if let Some(k) = iqr.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::ZeroIqr { coordinate: k });
        }
        constants.validate()?;
        let nf = n as f64;
        let df = d as f64;
        let rate_i = nf.powf(-1.0 / (df + 5.0));
        Ok(Self {
            n,
            d,
            iqr,
            constants,
            b_i: constants.c_b_i * rate_i,
            h_i: constants.c_h_i * rate_i,
            h_ii: constants.c_h_ii * nf.powf(-1.0 / (df + 4.0)),
            b_iii: constants.c_b_iii * nf.powf(-0.2),
        })
    }

    /// Same constants and IQRs, rates evaluated at a new sample size.
    pub fn rescaled(&self, n: usize) -> Result<Self> {
        Self::from_constants(n, self.d, self.iqr.clone(), self.constants)
    }
}

/// Sample quantile with linear interpolation between order statistics.
pub fn quantile(values: &[f64], p: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, p)
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn interquartile_range(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25)
}

/// Rule-of-thumb bandwidths for a dataset.
pub fn default_bandwidths(data: &Dataset) -> Result<BandwidthPlan> {
    if data.n() < 20 {
        return Err(Error::invalid(format!(
            "bandwidth rule needs n >= 20, got {}",
            data.n()
        )));
    }
    let iqr: Vec<f64> = (0..data.d())
        .map(|k| interquartile_range(&data.column(k)))
        .collect();
    if let Some(k) = iqr.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::ZeroIqr { coordinate: k });
    }
    let constants = BandwidthConstants::rule_of_thumb(&iqr);
    BandwidthPlan::from_constants(data.n(), data.d(), iqr, constants)
}

/// Model complexity. `d_eff` counts the intercept when one is fitted.
///
/// ```text
/// df(IV)  = d_eff
/// df(III) = d_eff / b(III)
/// df(II)  = ∏(2 IQR_k) / h(II)^d
/// df(I)   = ∏(2 IQR_k) / (b(I) h(I)^d)
/// ```
pub fn model_df(kind: ModelKind, plan: &BandwidthPlan, d_eff: usize) -> f64 {
    let volume: f64 = plan.iqr.iter().map(|q| 2.0 * q).product();
    let d = plan.d as i32;
    match kind {
        ModelKind::IV => d_eff as f64,
        ModelKind::III => d_eff as f64 / plan.b_iii,
        ModelKind::II => volume / plan.h_ii.powi(d),
        ModelKind::I => volume / (plan.b_i * plan.h_i.powi(d)),
    }
}

/// `τ_n = c n^{-(d+3)/(d+4)} log n`.
///
/// `n` is real-valued so the schedule can be evaluated off the integers.
pub fn tau_schedule(n: f64, d: usize, c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(format!("penalty constant must be positive, got {c}")));
    }
    if !(n >= 2.0) || d == 0 {
        return Err(Error::invalid("penalty schedule needs n >= 2 and d >= 1"));
    }
    let df = d as f64;
    Ok(c * n.powf(-(df + 3.0) / (df + 4.0)) * n.ln())
}

/// Residual sums at or below `RSS_ROUNDING · Σy²` are rounding noise of an
/// exact fit and count as zero.
pub const RSS_ROUNDING: f64 = 1e-24;

/// `rss` with rounding-level values mapped to zero.
pub fn effective_rss(rss: f64, sum_sq: f64) -> f64 {
    if rss <= RSS_ROUNDING * sum_sq {
        0.0
    } else {
        rss
    }
}

/// `log(rss/n)` with a floor of -745 when the residuals vanish.
pub fn log_rss_over_n(rss: f64, n: usize) -> f64 {
    if rss > 0.0 {
        (rss / n as f64).ln().max(LOG_FLOOR)
    } else {
        LOG_FLOOR
    }
}

pub const LOG_FLOOR: f64 = -745.0;

/// One row of the selection table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRow {
    pub model: ModelKind,
    pub log_rss_over_n: f64,
    pub df: f64,
    pub gic: f64,
    pub rss: f64,
    pub n_used: usize,
}

/// Outcome of the cross-validated penalty search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvSummary {
    pub k_folds: usize,
    pub c_grid: Vec<f64>,
    /// `CV(c)` for each grid value.
    pub cv: Vec<f64>,
    pub c_hat: f64,
    /// Held-out predictions at `ĉ` that fell back to the training mean.
    pub fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    /// Rows in the order I, II, III, IV.
    pub rows: Vec<ModelRow>,
    pub chosen: ModelKind,
    pub tau: f64,
    pub bandwidths: BandwidthPlan,
    pub intercept: bool,
    pub cv: Option<CvSummary>,
}

impl SelectionReport {
    pub fn row(&self, kind: ModelKind) -> &ModelRow {
        &self.rows[kind.index()]
    }
}

/// Residual sums of the four candidates on one dataset; everything the
/// criterion needs apart from `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateFits {
    pub n: usize,
    pub rss: [f64; 4],
    pub n_used: [usize; 4],
    pub df: [f64; 4],
    pub plan: BandwidthPlan,
    pub intercept: bool,
}

/// Fits all four models on `data` with the bandwidths of `plan`.
///
/// Complexities come from `plan` as given, so a plan rescaled to a
/// training subset keeps the full-sample IQRs.
pub fn fit_candidates(
    data: &Dataset,
    region: &Region,
    plan: &BandwidthPlan,
    k: Kernel1D,
    intercept: bool,
) -> Result<CandidateFits> {
    if plan.d != data.d() {
        return Err(Error::invalid("bandwidth plan and data disagree on d"));
    }
    let fits = [
        fit_model_i(data, region, plan.b_i, plan.h_i, k).map_err(|e| e.in_model(ModelKind::I))?,
        fit_model_ii(data, region, plan.h_ii, k).map_err(|e| e.in_model(ModelKind::II))?,
        fit_model_iii(data, region, plan.b_iii, k, intercept)
            .map_err(|e| e.in_model(ModelKind::III))?,
        fit_model_iv(data, region, intercept).map_err(|e| e.in_model(ModelKind::IV))?,
    ];
    let d_eff = data.d() + usize::from(intercept);
    Ok(CandidateFits {
        n: data.n(),
        rss: fits.each_ref().map(|f| effective_rss(f.rss, f.sum_sq)),
        n_used: fits.each_ref().map(|f| f.n_used),
        df: ModelKind::ALL.map(|m| model_df(m, plan, d_eff)),
        plan: plan.clone(),
        intercept,
    })
}

impl CandidateFits {
    pub fn gic_values(&self, tau: f64) -> [f64; 4] {
        ModelKind::ALL.map(|m| log_rss_over_n(self.rss[m.index()], self.n) + tau * self.df[m.index()])
    }

    pub fn choose(&self, tau: f64) -> ModelKind {
        argmin_model(&self.gic_values(tau))
    }

    pub fn report(&self, tau: f64) -> SelectionReport {
        let gic = self.gic_values(tau);
        let rows = ModelKind::ALL
            .iter()
            .map(|&m| {
                let i = m.index();
                ModelRow {
                    model: m,
                    log_rss_over_n: log_rss_over_n(self.rss[i], self.n),
                    df: self.df[i],
                    gic: gic[i],
                    rss: self.rss[i],
                    n_used: self.n_used[i],
                }
            })
            .collect();
        SelectionReport {
            rows,
            chosen: argmin_model(&gic),
            tau,
            bandwidths: self.plan.clone(),
            intercept: self.intercept,
            cv: None,
        }
    }
}

/// Minimizer of the criterion; exact ties go to the simpler model.
pub fn argmin_model(gic: &[f64; 4]) -> ModelKind {
    let mut best = ModelKind::IV;
    for m in [ModelKind::III, ModelKind::II, ModelKind::I] {
        if gic[m.index()] < gic[best.index()] {
            best = m;
        }
    }
    best
}

/// Fits the four candidates and evaluates the criterion at a fixed `τ`.
pub fn gic(
    data: &Dataset,
    region: &Region,
    plan: &BandwidthPlan,
    tau: f64,
    k: Kernel1D,
    intercept: bool,
) -> Result<SelectionReport> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::invalid(format!("penalty must be nonnegative, got {tau}")));
    }
    Ok(fit_candidates(data, region, plan, k, intercept)?.report(tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum FoldStyle {
    /// Folds are consecutive blocks of observation times.
    #[default]
    ContiguousBlocks,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvPlan {
    pub k_folds: usize,
    pub c_grid: Vec<f64>,
    pub fold_style: FoldStyle,
}

impl Default for CvPlan {
    /// Tenfold, with `c ∈ {0.025, 0.05, …, 1.6}`.
    fn default() -> Self {
        Self {
            k_folds: 10,
            c_grid: default_c_grid(),
            fold_style: FoldStyle::ContiguousBlocks,
        }
    }
}

pub fn default_c_grid() -> Vec<f64> {
    (0..7).map(|j| 0.025 * f64::powi(2.0, j)).collect()
}

impl CvPlan {
    pub fn new(k_folds: usize, c_grid: Vec<f64>) -> Result<Self> {
        let plan = Self {
            k_folds,
            c_grid,
            fold_style: FoldStyle::ContiguousBlocks,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_folds < 2 {
            return Err(Error::invalid("cross-validation needs at least two folds"));
        }
        if self.c_grid.is_empty() || self.c_grid.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
            return Err(Error::invalid("penalty grid must be nonempty and positive"));
        }
        Ok(())
    }

    /// Half-open index ranges of the folds over `0..n`.
    pub fn folds(&self, n: usize) -> Vec<std::ops::Range<usize>> {
        let k = self.k_folds;
        (0..k).map(|j| j * n / k..(j + 1) * n / k).collect()
    }
}

/// Minimum training-set size for the rule-of-thumb bandwidths.
const MIN_TRAIN: usize = 20;

/// Per-fold outcome: the candidates' criterion inputs on the training part
/// and each candidate's squared prediction error on the held-out block.
struct FoldOutcome {
    fits: CandidateFits,
    sse: [f64; 4],
    fallbacks: [usize; 4],
}

/// Held-out squared errors of the four candidates trained on `train`.
///
/// Only held-out points inside the region are scored, the same points the
/// restricted residual sum of squares uses. Outside it, model I would be
/// extrapolating in time across the removed block.
fn held_out_predictions(
    train: &Dataset,
    test: &Dataset,
    region: &Region,
    plan: &BandwidthPlan,
    k: Kernel1D,
    intercept: bool,
) -> Result<([f64; 4], [usize; 4])> {
    let mean = train.y().iter().sum::<f64>() / train.n() as f64;
    let model_i = TimeVaryingKernel::new(train, plan.b_i, plan.h_i, k)?;
    let model_ii = NadarayaWatson::new(train, plan.h_ii, k)?;
    let model_iii = VaryingCoefficient::new(train, plan.b_iii, k, intercept)?;
    let model_iv = LinearFit::new(train, intercept).map_err(|e| e.in_model(ModelKind::IV))?;
    let mut sse = [0.0; 4];
    let mut fallbacks = [0usize; 4];
    let mut record = |m: usize, pred: Result<f64>, y: f64| {
        let p = match pred {
            Ok(v) => v,
            Err(_) => {
                fallbacks[m] += 1;
                mean
            }
        };
        sse[m] += (y - p) * (y - p);
    };
    for i in region.restricted_indices(test)? {
        let u = test.row(i);
        let t = test.times()[i];
        let y = test.y()[i];
        record(0, model_i.regression(u, t), y);
        record(1, model_ii.regression(u), y);
        record(2, model_iii.predict(u, t), y);
        record(3, Ok(model_iv.predict(u)), y);
    }
    Ok((sse, fallbacks))
}

/// Picks `c` from `cv.c_grid` by K-fold cross-validation and returns it with
/// the full-sample report at `τ = tau_schedule(n, d, ĉ)`.
///
/// In each fold the candidates are fitted once on the retained blocks; the
/// penalty only decides which of the four held-out predictions is charged,
/// so `CV(c)` changes only where some fold switches model. Exact ties in
/// `CV` go to the earliest grid value.
pub fn select_tau_cv(
    data: &Dataset,
    region: &Region,
    plan: &BandwidthPlan,
    cv: &CvPlan,
    k: Kernel1D,
    intercept: bool,
) -> Result<(f64, SelectionReport)> {
    cv.validate()?;
    let n = data.n();
    let folds = cv.folds(n);
    let smallest = folds.iter().map(|r| r.len()).min().unwrap_or(0);
    let largest = folds.iter().map(|r| r.len()).max().unwrap_or(0);
    if smallest == 0 {
        return Err(Error::FoldTooSmall(format!(
            "{} folds over {n} observations leaves an empty fold",
            cv.k_folds
        )));
    }
    if n - largest < MIN_TRAIN {
        return Err(Error::FoldTooSmall(format!(
            "training part has {} observations, need {MIN_TRAIN}",
            n - largest
        )));
    }
    let d = data.d();

    let run_fold = |range: &std::ops::Range<usize>| -> Result<FoldOutcome> {
        let train_idx: Vec<usize> = (0..n).filter(|i| !range.contains(i)).collect();
        let test_idx: Vec<usize> = range.clone().collect();
        let train = data.subset(&train_idx);
        let test = data.subset(&test_idx);
        let train_plan = plan.rescaled(train.n())?;
        let fits = fit_candidates(&train, region, &train_plan, k, intercept)?;
        let (sse, fallbacks) = held_out_predictions(&train, &test, region, &train_plan, k, intercept)?;
        Ok(FoldOutcome {
            fits,
            sse,
            fallbacks,
        })
    };

    let (outcomes, full) = rayon::join(
        || folds.par_iter().map(run_fold).collect::<Result<Vec<_>>>(),
        || fit_candidates(data, region, plan, k, intercept),
    );
    let outcomes = outcomes?;
    let full = full?;

    let mut scores = Vec::with_capacity(cv.c_grid.len());
    let mut fallback_counts = Vec::with_capacity(cv.c_grid.len());
    for &c in &cv.c_grid {
        let mut total = 0.0;
        let mut fallbacks = 0;
        for fold in &outcomes {
            let tau = tau_schedule(fold.fits.n as f64, d, c)?;
            let chosen = fold.fits.choose(tau).index();
            total += fold.sse[chosen];
            fallbacks += fold.fallbacks[chosen];
        }
        scores.push(total);
        fallback_counts.push(fallbacks);
    }
    let best = scores
        .iter()
        .enumerate()
        .fold(0, |best, (j, &s)| if s < scores[best] { j } else { best });
    let c_hat = cv.c_grid[best];
    let mut report = full.report(tau_schedule(n as f64, d, c_hat)?);
    report.cv = Some(CvSummary {
        k_folds: cv.k_folds,
        c_grid: cv.c_grid.clone(),
        cv: scores,
        c_hat,
        fallbacks: fallback_counts[best],
    });
    Ok((c_hat, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::epanechnikov;
    use crate::locstat::{simulate, Design, GeneratorSpec};

    fn table2_plan() -> BandwidthPlan {
        let c = BandwidthConstants::rule_of_thumb(&[3.419]);
        BandwidthPlan::from_constants(5256, 1, vec![3.419], c).unwrap()
    }

    #[test]
    fn interest_rate_bandwidths() {
        let plan = table2_plan();
        assert!((plan.b_i - 0.120).abs() < 5e-4);
        assert!((plan.h_i - 0.820).abs() < 5e-4);
        assert!((plan.h_ii - 0.616).abs() < 5e-4);
        assert!((plan.b_iii - 0.090).abs() < 5e-4);
    }

    #[test]
    fn rate_arithmetic() {
        let c = BandwidthConstants::rule_of_thumb(&[1.0]);
        let plan = BandwidthPlan::from_constants(1024, 1, vec![1.0], c).unwrap();
        assert!((plan.h_ii - 0.25).abs() < 1e-15);
    }

    #[test]
    fn quantiles_interpolate() {
        let v: Vec<f64> = (1..=5).map(f64::from).collect();
        assert_eq!(quantile(&v, 0.25), 2.0);
        assert_eq!(quantile(&v, 0.1), 1.4);
        assert_eq!(interquartile_range(&v), 2.0);
    }

    #[test]
    fn degenerate_plans() {
        let tiny = Dataset::univariate(vec![1.0], vec![0.0]).unwrap();
        assert!(default_bandwidths(&tiny).is_err());
        let flat = Dataset::univariate(vec![0.0; 40], vec![1.0; 40]).unwrap();
        assert_eq!(default_bandwidths(&flat).unwrap_err(), Error::ZeroIqr { coordinate: 0 });
    }

    #[test]
    fn df_column() {
        let plan = table2_plan();
        let df = ModelKind::ALL.map(|m| model_df(m, &plan, 2));
        let want = [69.54, 11.10, 22.19, 2.00];
        for (got, want) in df.iter().zip(want) {
            assert!((got - want).abs() / want < 5e-3, "{got} vs {want}");
        }
        let c = BandwidthConstants {
            c_b_i: 0.5,
            c_h_i: 1.0,
            c_h_ii: 1.0,
            c_b_iii: 1e12,
        };
        let mut plan = BandwidthPlan::from_constants(100, 1, vec![0.5], c).unwrap();
        assert!(model_df(ModelKind::III, &plan, 1) < 1e-10);
        plan.h_ii = 1.0;
        assert_eq!(model_df(ModelKind::II, &plan, 1), 1.0);
    }

    #[test]
    fn tau_values() {
        let e2 = std::f64::consts::E.powi(2);
        let got = tau_schedule(e2, 1, 1.0).unwrap();
        assert!((got - 2.0 * (-1.6f64).exp()).abs() < 1e-15);
        assert!(tau_schedule(100.0, 1, 0.0).is_err());
        let t = tau_schedule(5256.0, 1, 1.0).unwrap();
        assert!((t - 0.00903).abs() < 2e-4, "{t}");
        // ĉ ≈ 0.1 reproduces τ̂ = 0.00090
        assert!((tau_schedule(5256.0, 1, 0.1).unwrap() - 0.00090).abs() < 1e-5);
    }

    #[test]
    fn tie_break_prefers_simpler_model() {
        assert_eq!(argmin_model(&[1.0, 1.0, 1.0, 1.0]), ModelKind::IV);
        assert_eq!(argmin_model(&[0.0, 0.0, 1.0, 1.0]), ModelKind::II);
        assert_eq!(argmin_model(&[-1.0, 0.0, 0.0, 1.0]), ModelKind::I);
        assert_eq!(argmin_model(&[0.5, 0.4, 0.4, 0.6]), ModelKind::III);
    }

    #[test]
    fn log_floor() {
        assert_eq!(log_rss_over_n(0.0, 10), LOG_FLOOR);
        assert!((log_rss_over_n(10.0, 10)).abs() < 1e-15);
    }

    #[test]
    fn noise_free_line_selects_iv() {
        let (base, _) = simulate(&GeneratorSpec::design(Design::D, 300, 1.0, 1)).unwrap();
        let y = base.x().iter().map(|x| 2.0 + 3.0 * x).collect();
        let data = base.with_responses(y).unwrap();
        let plan = default_bandwidths(&data).unwrap();
        let region = Region::simulation_default();
        let report = gic(&data, &region, &plan, 0.01, epanechnikov(), true).unwrap();
        assert_eq!(report.chosen, ModelKind::IV);
        assert_eq!(report.row(ModelKind::IV).df, 2.0);
    }

    #[test]
    fn folds_partition() {
        let cv = CvPlan::default();
        for n in [20usize, 99, 100, 101, 1000] {
            let folds = cv.folds(n);
            assert_eq!(folds.first().unwrap().start, 0);
            assert_eq!(folds.last().unwrap().end, n);
            for w in folds.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
            let base = n as f64 / 10.0;
            assert!(folds.iter().all(|r| (r.len() as f64 - base).abs() <= 1.0));
        }
        assert!(CvPlan::new(1, vec![1.0]).is_err());
        assert!(CvPlan::new(5, vec![]).is_err());
        assert!(CvPlan::new(5, vec![-1.0]).is_err());
    }

    #[test]
    fn small_folds_are_rejected() {
        let (data, _) = simulate(&GeneratorSpec::design(Design::D, 24, 1.0, 1)).unwrap();
        let plan = default_bandwidths(&data).unwrap();
        let cv = CvPlan::new(4, vec![1.0]).unwrap();
        let err = select_tau_cv(&data, &Region::simulation_default(), &plan, &cv, epanechnikov(), true)
            .unwrap_err();
        assert!(matches!(err, Error::FoldTooSmall(_)));
    }
}
