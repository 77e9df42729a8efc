//! Time-varying nonparametric regression and consistent selection among
//! four nested regression models.
//!
//! * Model I, `y_i = m(x_i, i/n) + e_i`: time-varying nonparametric.
//! * Model II, `y_i = μ(x_i) + e_i`: time-constant nonparametric.
//! * Model III, `y_i = x_iᵀβ(i/n) + e_i`: time-varying coefficients.
//! * Model IV, `y_i = x_iᵀθ + e_i`: linear.
//!
//! [`smooth`] holds the estimators, [`select`] the bandwidth rules and the
//! generalized information criterion, [`locstat`] the data generators and
//! [`sim`] the Monte-Carlo harness. The `book/` directory at the repository
//! root walks through the methods with runnable snippets.
//!
//! ```
//! use tvreg::prelude::*;
//!
//! let spec = GeneratorSpec::design(Design::C, 500, 1.0, 42);
//! let (data, _truth) = simulate(&spec)?;
//! let plan = default_bandwidths(&data)?;
//! let region = Region::simulation_default();
//! let (_c, report) = select_tau_cv(&data, &region, &plan, &CvPlan::default(), epanechnikov(), true)?;
//! assert_eq!(report.chosen, ModelKind::III);
//! # Ok::<(), tvreg::Error>(())
//! ```

pub mod error;
pub mod kernels;
pub mod locstat;
pub mod rng;
pub mod select;
pub mod sim;
pub mod smooth;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::kernels::{constants, epanechnikov, product_kernel, Kernel1D, KernelConstants};
    pub use crate::locstat::{
        difference_rates, gen_regressors_ma, generate, make_design, simulate, simulate_ar,
        Dataset, Design, GeneratorSpec, Process, TrueModel,
    };
    pub use crate::select::{
        default_bandwidths, gic, model_df, select_tau_cv, tau_schedule, BandwidthPlan, CvPlan,
        SelectionReport,
    };
    pub use crate::sim::{run_cell, run_grid, snr, CellResult, StudyGrid};
    pub use crate::smooth::{
        eval_density, fit_model_i, fit_model_ii, fit_model_iii, fit_model_iv,
        local_linear_weights, FitResult, ModelKind, Region, TemporalWeights,
    };
}

// The guide under `book/` is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/temporal-weights.md")]
    mod temporal_weights {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    mod estimators {}
    #[doc = include_str!("../../../book/src/selection.md")]
    mod selection {}
    #[doc = include_str!("../../../book/src/cross-validation.md")]
    mod cross_validation {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/rates.md")]
    mod rates {}
}
