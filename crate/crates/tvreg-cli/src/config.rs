//! Command-line arguments and their validated form.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tvreg::kernels::Kernel1D;
use tvreg::locstat::{Dataset, Design};
use tvreg::select::{default_bandwidths, default_c_grid, quantile, BandwidthPlan, CvPlan};
use tvreg::smooth::{ModelKind, Region};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "tvreg", version, about = "Time-varying regression and nested model selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a synthetic dataset or rate series.
    Simulate(SimulateArgs),
    /// Run the Monte-Carlo model-selection study.
    Study(StudyArgs),
    /// Select among the four models for a dataset.
    Select(SelectArgs),
    /// Evaluate a fitted model on a lattice.
    Fit(FitArgs),
    /// Print the rule-of-thumb bandwidths and model complexities.
    Bandwidths(BandwidthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessArg {
    /// One of the regression designs a-d.
    Design,
    /// Time-varying linear autoregression.
    Ar,
    /// Mean-reverting short-rate diffusion, written as a rate series.
    Diffusion,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    /// Predictor box, one `lo:hi` per coordinate.
    #[arg(long)]
    pub region_x: Option<String>,
    /// Time interval `lo:hi`.
    #[arg(long)]
    pub region_t: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CvArgs {
    #[arg(long, default_value_t = 10)]
    pub cv_folds: usize,
    /// Comma-separated penalty constants.
    #[arg(long)]
    pub c_grid: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BandwidthOverrides {
    #[arg(long)]
    pub c_b_i: Option<f64>,
    #[arg(long)]
    pub c_h_i: Option<f64>,
    #[arg(long)]
    pub c_h_ii: Option<f64>,
    #[arg(long)]
    pub c_b_iii: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, value_enum, default_value_t = ProcessArg::Design)]
    pub process: ProcessArg,
    #[arg(long, default_value = "a")]
    pub designs: String,
    #[arg(long, default_value = "500")]
    pub sizes: String,
    #[arg(long, default_value = "1")]
    pub noise: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct StudyArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[command(flatten)]
    pub cv: CvArgs,
    #[arg(long)]
    pub designs: Option<String>,
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long)]
    pub noise: Option<String>,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long, default_value_t = 2014)]
    pub seed: u64,
    /// n up to 2000, three noise levels and 1000 replications.
    #[arg(long)]
    pub full_scale: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// CSV with header `date,value` (a rate series) or `y,x1,...`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub intercept: Switch,
    #[command(flatten)]
    pub bandwidths: BandwidthOverrides,
}

#[derive(Debug, Clone, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    #[command(flatten)]
    pub cv: CvArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub region: RegionArgs,
    /// Model to evaluate: I, II, III or IV.
    #[arg(long)]
    pub model: String,
    /// Lattice over the predictors, one `lo:hi` per coordinate; the region by default.
    #[arg(long)]
    pub grid_x: Option<String>,
    /// Lattice times `lo:hi`; the region by default.
    #[arg(long)]
    pub grid_t: Option<String>,
    /// Lattice points per axis.
    #[arg(long, default_value_t = 21)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BandwidthArgs {
    #[command(flatten)]
    pub out: OutputArgs,
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub cv: CvArgs,
}

/// Central share of each predictor's sample kept in the default region.
pub const DEFAULT_X_COVERAGE: f64 = 0.955;
pub const DEFAULT_T: (f64, f64) = (0.2, 0.8);

/// Parses `lo:hi`.
pub fn parse_interval(s: &str) -> CliResult<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::config(format!("interval '{s}' is not of the form lo:hi")))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| CliError::config(format!("'{v}' in interval '{s}' is not a number")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::config(format!("interval '{s}' needs lo < hi")));
    }
    Ok((lo, hi))
}

pub fn parse_intervals(s: &str) -> CliResult<Vec<(f64, f64)>> {
    s.split(',').map(parse_interval).collect()
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    let out: Vec<T> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::config(format!("'{v}' is not a valid {what}")))
        })
        .collect::<CliResult<_>>()?;
    if out.is_empty() {
        return Err(CliError::config(format!("empty {what} list")));
    }
    Ok(out)
}

pub fn parse_designs(s: &str) -> CliResult<Vec<Design>> {
    s.split(',')
        .map(|v| v.parse::<Design>().map_err(CliError::config))
        .collect()
}

pub fn parse_model(s: &str) -> CliResult<ModelKind> {
    s.parse().map_err(CliError::config)
}

impl CvArgs {
    pub fn plan(&self) -> CliResult<CvPlan> {
        let grid = match &self.c_grid {
            Some(s) => parse_list(s, "penalty constant")?,
            None => default_c_grid(),
        };
        CvPlan::new(self.cv_folds, grid).map_err(CliError::config)
    }
}

impl RegionArgs {
    /// Region for a dataset: the central 95.5% of each predictor unless overridden.
    pub fn for_data(&self, data: &Dataset) -> CliResult<Region> {
        let x_box = match &self.region_x {
            Some(s) => parse_intervals(s)?,
            None => {
                let tail = 0.5 * (1.0 - DEFAULT_X_COVERAGE);
                (0..data.d())
                    .map(|k| {
                        let col = data.column(k);
                        (quantile(&col, tail), quantile(&col, 1.0 - tail))
                    })
                    .collect()
            }
        };
        if x_box.len() != data.d() {
            return Err(CliError::config(format!(
                "--region-x has {} intervals, data has {} predictors",
                x_box.len(),
                data.d()
            )));
        }
        Region::new(x_box, self.t_interval()?).map_err(CliError::config)
    }

    /// Region for the simulation study: `[-2, 2] × [0.2, 0.8]` unless overridden.
    pub fn for_study(&self) -> CliResult<Region> {
        let default = Region::simulation_default();
        let x_box = match &self.region_x {
            Some(s) => parse_intervals(s)?,
            None => default.x_box().to_vec(),
        };
        if x_box.len() != 1 {
            return Err(CliError::config("study designs have one predictor"));
        }
        Region::new(x_box, self.t_interval()?).map_err(CliError::config)
    }

    fn t_interval(&self) -> CliResult<(f64, f64)> {
        self.region_t.as_deref().map_or(Ok(DEFAULT_T), parse_interval)
    }
}

impl DataArgs {
    pub fn intercept(&self) -> bool {
        self.intercept == Switch::On
    }

    /// Rule-of-thumb plan with any constants replaced by the overrides.
    pub fn plan(&self, data: &Dataset) -> CliResult<BandwidthPlan> {
        let base = default_bandwidths(data)?;
        let o = &self.bandwidths;
        let mut constants = base.constants;
        constants.c_b_i = o.c_b_i.unwrap_or(constants.c_b_i);
        constants.c_h_i = o.c_h_i.unwrap_or(constants.c_h_i);
        constants.c_h_ii = o.c_h_ii.unwrap_or(constants.c_h_ii);
        constants.c_b_iii = o.c_b_iii.unwrap_or(constants.c_b_iii);
        BandwidthPlan::from_constants(base.n, base.d, base.iqr, constants).map_err(|e| match e {
            tvreg::Error::InvalidInput(msg) => CliError::Config(msg),
            other => other.into(),
        })
    }
}

pub const KERNEL: Kernel1D = Kernel1D::Epanechnikov;

/// Worker count from `TVREG_THREADS`, if set.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var("TVREG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::config(format!("TVREG_THREADS='{v}' is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("-2:2").unwrap(), (-2.0, 2.0));
        assert_eq!(parse_intervals("0:1, 2:3").unwrap(), vec![(0.0, 1.0), (2.0, 3.0)]);
        assert!(parse_interval("1:0").is_err());
        assert!(parse_interval("1").is_err());
        assert!(parse_interval("a:1").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<usize>("250,500", "size").unwrap(), vec![250, 500]);
        assert!(parse_list::<f64>("0.1,x", "noise").is_err());
        assert_eq!(parse_designs("a,D").unwrap(), vec![Design::A, Design::D]);
        assert!(parse_designs("e").is_err());
        assert_eq!(parse_model("iii").unwrap(), ModelKind::III);
    }

    #[test]
    fn cv_overrides() {
        let cv = CvArgs {
            cv_folds: 5,
            c_grid: Some("0.1,0.2".into()),
        };
        let plan = cv.plan().unwrap();
        assert_eq!(plan.k_folds, 5);
        assert_eq!(plan.c_grid, vec![0.1, 0.2]);
        let bad = CvArgs {
            cv_folds: 1,
            c_grid: None,
        };
        assert_eq!(bad.plan().unwrap_err().exit_code(), 4);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
