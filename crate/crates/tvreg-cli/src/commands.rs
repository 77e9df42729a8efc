//! The five subcommands. Each returns the rendered output.

use serde::Serialize;
use tvreg::locstat::{generate, Dataset, DiffusionSpec, GeneratorSpec, Process};
use tvreg::select::{model_df, select_tau_cv, BandwidthPlan, SelectionReport};
use tvreg::sim::{run_grid, CellResult, StudyGrid};
use tvreg::smooth::{
    LinearFit, ModelKind, NadarayaWatson, Region, TimeVaryingKernel, VaryingCoefficient,
};

use crate::config::{
    parse_designs, parse_interval, parse_intervals, parse_list, parse_model, BandwidthArgs,
    FitArgs, Format, ProcessArg, SelectArgs, SimulateArgs, StudyArgs, KERNEL,
};
use crate::emit::{number, optional, to_json, Table};
use crate::error::{CliError, CliResult};
use crate::ingest::ingest_csv;

fn single<T: Copy>(values: &[T], flag: &str) -> CliResult<T> {
    match values {
        [v] => Ok(*v),
        _ => Err(CliError::config(format!("simulate takes exactly one value for --{flag}"))),
    }
}

fn dataset_table(data: &Dataset) -> Table {
    let mut table = Table::new(
        std::iter::once("y".to_string()).chain((1..=data.d()).map(|k| format!("x{k}"))),
    );
    for i in 0..data.n() {
        let mut row = vec![number(data.y()[i])];
        row.extend(data.row(i).iter().map(|&v| number(v)));
        table.push(row);
    }
    table
}

#[derive(Serialize)]
struct DatasetJson<'a> {
    d: usize,
    y: &'a [f64],
    x: &'a [f64],
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    values: &'a [f64],
}

pub fn cmd_simulate(args: &SimulateArgs) -> CliResult<String> {
    let n = single(&parse_list::<usize>(&args.sizes, "sample size")?, "sizes")?;
    let phi = single(&parse_list::<f64>(&args.noise, "noise level")?, "noise")?;
    let process = match args.process {
        ProcessArg::Design => Process::Design(single(&parse_designs(&args.designs)?, "designs")?),
        ProcessArg::Ar => Process::Autoregressive,
        ProcessArg::Diffusion => {
            let spec = DiffusionSpec::default_with(n, phi, args.seed);
            let rates = tvreg::locstat::simulate_diffusion(&spec)?;
            return match args.out.format {
                Format::Json => to_json(&SeriesJson { values: &rates }),
                Format::Csv => {
                    let mut table = Table::new(["date", "value"]);
                    for (i, &r) in rates.iter().enumerate() {
                        table.push(vec![i.to_string(), number(r)]);
                    }
                    table.to_csv()
                }
            };
        }
    };
    let spec = GeneratorSpec {
        process,
        ..GeneratorSpec::design(tvreg::locstat::Design::A, n, phi, args.seed)
    };
    spec.validate().map_err(CliError::config)?;
    let data = generate(&spec)?;
    match args.out.format {
        Format::Csv => dataset_table(&data).to_csv(),
        Format::Json => to_json(&DatasetJson {
            d: data.d(),
            y: data.y(),
            x: data.x(),
        }),
    }
}

/// The grid a `study` invocation runs.
pub fn study_grid(args: &StudyArgs) -> CliResult<StudyGrid> {
    let mut grid = if args.full_scale {
        StudyGrid::full_scale(args.seed)
    } else {
        StudyGrid::desk_scale(args.seed)
    };
    if let Some(s) = &args.designs {
        grid.designs = parse_designs(s)?;
    }
    if let Some(s) = &args.sizes {
        grid.sample_sizes = parse_list(s, "sample size")?;
    }
    if let Some(s) = &args.noise {
        grid.noise_levels = parse_list(s, "noise level")?;
    }
    if let Some(r) = args.replications {
        grid.replications = r;
    }
    grid.cv = args.cv.plan()?;
    grid.region = args.region.for_study()?;
    grid.validate().map_err(CliError::config)?;
    Ok(grid)
}

#[derive(Serialize)]
struct StudyJson<'a> {
    grid: &'a StudyGrid,
    cells: &'a [CellResult],
}

pub fn render_study(grid: &StudyGrid, cells: &[CellResult], format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(&StudyJson { grid, cells }),
        Format::Csv => {
            let mut table = Table::new([
                "design",
                "n",
                "phi",
                "replications",
                "base_seed",
                "failures",
                "p_I",
                "p_II",
                "p_III",
                "p_IV",
                "snr_median",
            ]);
            for c in cells {
                let mut row = vec![
                    c.design.to_string(),
                    c.n.to_string(),
                    number(c.phi),
                    c.replications.to_string(),
                    grid.base_seed.to_string(),
                    c.failures.to_string(),
                ];
                row.extend(c.proportions.iter().map(|&p| number(p)));
                row.push(number(c.snr_median));
                table.push(row);
            }
            table.to_csv()
        }
    }
}

pub fn cmd_study(args: &StudyArgs) -> CliResult<String> {
    let grid = study_grid(args)?;
    let cells = run_grid(&grid)?;
    render_study(&grid, &cells, args.out.format)
}

/// Runs the selection on an in-memory dataset.
pub fn select_report(
    data: &Dataset,
    region: &Region,
    plan: &BandwidthPlan,
    args: &SelectArgs,
) -> CliResult<SelectionReport> {
    let cv = args.cv.plan()?;
    let (_, report) = select_tau_cv(data, region, plan, &cv, KERNEL, args.data.intercept())?;
    Ok(report)
}

pub fn render_report(report: &SelectionReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut table = Table::new([
                "model",
                "log_rss_over_n",
                "df",
                "gic",
                "rss",
                "n_used",
                "selected",
            ]);
            for row in &report.rows {
                table.push(vec![
                    row.model.to_string(),
                    number(row.log_rss_over_n),
                    number(row.df),
                    number(row.gic),
                    number(row.rss),
                    row.n_used.to_string(),
                    u8::from(row.model == report.chosen).to_string(),
                ]);
            }
            table.to_csv()
        }
    }
}

pub fn cmd_select(args: &SelectArgs) -> CliResult<String> {
    let data = ingest_csv(&args.data.input)?.into_dataset()?;
    let region = args.region.for_data(&data)?;
    let plan = args.data.plan(&data)?;
    let report = select_report(&data, &region, &plan, args)?;
    render_report(&report, args.out.format)
}

/// Evenly spaced points over `[lo, hi]`.
fn linspace((lo, hi): (f64, f64), points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..points)
        .map(|j| lo + (hi - lo) * j as f64 / (points - 1) as f64)
        .collect()
}

/// Cartesian product of per-coordinate axes, last coordinate fastest.
fn lattice(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

#[derive(Serialize)]
struct SurfacePoint {
    t: f64,
    x: Vec<f64>,
    value: Option<f64>,
}

#[derive(Serialize)]
struct CoefficientPoint {
    t: f64,
    beta: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct FitJson<T> {
    model: ModelKind,
    bandwidths: BandwidthPlan,
    intercept: bool,
    points: Vec<T>,
}

/// Numerical failures at a lattice point become missing values.
fn missing_on_numerical<T>(r: tvreg::Result<T>) -> CliResult<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_numerical() => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn fit_export(data: &Dataset, region: &Region, plan: &BandwidthPlan, args: &FitArgs) -> CliResult<String> {
    let model = parse_model(&args.model)?;
    if args.points == 0 {
        return Err(CliError::config("--points must be positive"));
    }
    let intercept = args.data.intercept();
    let t_axis = linspace(
        args.grid_t.as_deref().map_or(Ok(region.t_interval()), parse_interval)?,
        args.points,
    );
    if model == ModelKind::III {
        let est = VaryingCoefficient::new(data, plan.b_iii, KERNEL, intercept)?;
        let mut points = Vec::with_capacity(t_axis.len());
        for &t in &t_axis {
            let beta = if region.contains_t(t) {
                missing_on_numerical(est.coefficients(t))?
            } else {
                None
            };
            points.push(CoefficientPoint { t, beta });
        }
        return match args.out.format {
            Format::Json => to_json(&FitJson {
                model,
                bandwidths: plan.clone(),
                intercept,
                points,
            }),
            Format::Csv => {
                let first = usize::from(!intercept);
                let p = est.dim();
                let mut table = Table::new(
                    std::iter::once("t".to_string()).chain((first..first + p).map(|k| format!("beta{k}"))),
                );
                for pt in &points {
                    let mut row = vec![number(pt.t)];
                    match &pt.beta {
                        Some(b) => row.extend(b.iter().map(|&v| number(v))),
                        None => row.extend(std::iter::repeat_n(String::new(), p)),
                    }
                    table.push(row);
                }
                table.to_csv()
            }
        };
    }

    let x_box = match &args.grid_x {
        Some(s) => parse_intervals(s)?,
        None => region.x_box().to_vec(),
    };
    if x_box.len() != data.d() {
        return Err(CliError::config(format!(
            "--grid-x has {} intervals, data has {} predictors",
            x_box.len(),
            data.d()
        )));
    }
    let axes: Vec<Vec<f64>> = x_box.iter().map(|&iv| linspace(iv, args.points)).collect();
    let xs = lattice(&axes);
    let model_i = TimeVaryingKernel::new(data, plan.b_i, plan.h_i, KERNEL)?;
    let model_ii = NadarayaWatson::new(data, plan.h_ii, KERNEL)?;
    let model_iv = if model == ModelKind::IV {
        Some(LinearFit::new(data, intercept)?)
    } else {
        None
    };
    let mut points = Vec::with_capacity(t_axis.len() * xs.len());
    for &t in &t_axis {
        for u in &xs {
            let value = if !(region.contains_t(t) && region.contains_x(u)) {
                None
            } else {
                match model {
                    ModelKind::I => missing_on_numerical(model_i.regression(u, t))?,
                    ModelKind::II => missing_on_numerical(model_ii.regression(u))?,
                    _ => model_iv.as_ref().map(|f| f.predict(u)),
                }
            };
            points.push(SurfacePoint {
                t,
                x: u.clone(),
                value,
            });
        }
    }
    match args.out.format {
        Format::Json => to_json(&FitJson {
            model,
            bandwidths: plan.clone(),
            intercept,
            points,
        }),
        Format::Csv => {
            let mut table = Table::new(
                std::iter::once("t".to_string())
                    .chain((1..=data.d()).map(|k| format!("x{k}")))
                    .chain(std::iter::once("m".to_string())),
            );
            for pt in &points {
                let mut row = vec![number(pt.t)];
                row.extend(pt.x.iter().map(|&v| number(v)));
                row.push(optional(pt.value));
                table.push(row);
            }
            table.to_csv()
        }
    }
}

pub fn cmd_fit(args: &FitArgs) -> CliResult<String> {
    let data = ingest_csv(&args.data.input)?.into_dataset()?;
    let region = args.region.for_data(&data)?;
    let plan = args.data.plan(&data)?;
    fit_export(&data, &region, &plan, args)
}

#[derive(Serialize)]
struct BandwidthJson<'a> {
    plan: &'a BandwidthPlan,
    d_eff: usize,
    df: [f64; 4],
    tau: Vec<(f64, f64)>,
}

pub fn cmd_bandwidths(args: &BandwidthArgs) -> CliResult<String> {
    let data = ingest_csv(&args.data.input)?.into_dataset()?;
    let plan = args.data.plan(&data)?;
    let d_eff = data.d() + usize::from(args.data.intercept());
    let df = ModelKind::ALL.map(|m| model_df(m, &plan, d_eff));
    let tau = args
        .cv
        .plan()?
        .c_grid
        .iter()
        .map(|&c| Ok((c, tvreg::select::tau_schedule(plan.n as f64, plan.d, c)?)))
        .collect::<CliResult<Vec<_>>>()?;
    match args.out.format {
        Format::Json => to_json(&BandwidthJson {
            plan: &plan,
            d_eff,
            df,
            tau,
        }),
        Format::Csv => {
            let mut table = Table::new(["quantity", "value"]);
            let mut push = |name: String, v: f64| table.push(vec![name, number(v)]);
            push("n".into(), plan.n as f64);
            push("d".into(), plan.d as f64);
            for (k, q) in plan.iqr.iter().enumerate() {
                push(format!("iqr{}", k + 1), *q);
            }
            push("b_I".into(), plan.b_i);
            push("h_I".into(), plan.h_i);
            push("h_II".into(), plan.h_ii);
            push("b_III".into(), plan.b_iii);
            for (m, v) in ModelKind::ALL.iter().zip(df) {
                push(format!("df_{m}"), v);
            }
            for (c, t) in tau {
                push(format!("tau_c={}", number(c)), t);
            }
            table.to_csv()
        }
    }
}
