mod common;

use approx::assert_relative_eq;
use common::*;
use proptest::prelude::*;
use tvreg::kernels::Kernel1D;
use tvreg::smooth::{local_linear_weights, LinearFit, VaryingCoefficient};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn estimators_match_naive_oracles(seed in any::<u64>()) {
        let inst = random_instance(seed);
        if let Some(err) = oracle_discrepancy(&inst) {
            prop_assert!(err <= 1e-10, "discrepancy {err:e}");
        }
    }

    #[test]
    fn weights_match_textbook_formula(n in 20usize..400, t in 0.05f64..0.95, b in 0.05f64..0.4) {
        let times: Vec<f64> = (1..=n).map(|i| i as f64 / n as f64).collect();
        let Ok(w) = local_linear_weights(n, t, b, Kernel1D::Epanechnikov) else {
            return Ok(());
        };
        let naive = naive_weights(&times, t, b);
        for (i, want) in naive.iter().enumerate() {
            prop_assert!((w.get(i) - want).abs() <= 1e-10, "i = {i}: {} vs {want}", w.get(i));
        }
    }
}

#[test]
fn degenerate_instances_are_rare() {
    let skipped = (0..100).filter(|&s| oracle_discrepancy(&random_instance(s)).is_none()).count();
    assert!(skipped <= 5, "{skipped} of 100 instances degenerate");
}

#[test]
fn coefficients_match_normal_equations() {
    let inst = random_instance(11);
    let est = VaryingCoefficient::new(&inst.data, 0.25, Kernel1D::Epanechnikov, true).unwrap();
    for t in [0.2, 0.35, 0.5, 0.77] {
        let got = est.coefficients(t).unwrap();
        let want = naive_beta(&inst.data, t, 0.25, true);
        for (g, w) in got.iter().zip(&want) {
            assert_relative_eq!(g, w, max_relative = 1e-10, epsilon = 1e-12);
        }
    }
    let fit = LinearFit::new(&inst.data, false).unwrap();
    for (g, w) in fit.theta.iter().zip(&naive_theta(&inst.data, false)) {
        assert_relative_eq!(g, w, max_relative = 1e-10);
    }
}

#[test]
fn gauss_oracle_solves_small_system() {
    let x = gauss_solve(vec![vec![0.0, 2.0], vec![3.0, 1.0]], vec![4.0, 5.0]);
    assert_relative_eq!(x[0], 1.0, epsilon = 1e-15);
    assert_relative_eq!(x[1], 2.0, epsilon = 1e-15);
}
