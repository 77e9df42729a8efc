//! Compactly supported smoothing kernels on `[-1, 1]`.
//!
//! Every kernel here is symmetric, integrates to one and vanishes outside
//! its support. Multivariate spatial kernels are products of identical 1-D
//! factors sharing one scalar bandwidth.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// A symmetric kernel supported on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Kernel1D {
    /// `3(1 - v²)/4`
    #[default]
    Epanechnikov,
    /// `1/2`
    Uniform,
    /// `15(1 - v²)²/16`
    Biweight,
    /// `35(1 - v²)³/32`
    Triweight,
}

impl Kernel1D {
    #[inline]
    pub fn eval(self, v: f64) -> f64 {
        if !(-1.0..=1.0).contains(&v) {
            return 0.0;
        }
        let s = 1.0 - v * v;
        match self {
            Kernel1D::Epanechnikov => 0.75 * s,
            Kernel1D::Uniform => 0.5,
            Kernel1D::Biweight => 0.9375 * s * s,
            Kernel1D::Triweight => 1.09375 * s * s * s,
        }
    }

    /// Largest value of the kernel, attained at the origin.
    pub fn peak(self) -> f64 {
        self.eval(0.0)
    }
}

/// The Epanechnikov kernel `K(v) = 3(1 - v²)/4`.
pub fn epanechnikov() -> Kernel1D {
    Kernel1D::Epanechnikov
}

/// Moment constants of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelConstants {
    /// `∫ K(v)² dv`, the variance factor.
    pub lambda: f64,
    /// `∫ K(v) v² dv`, the bias factor.
    pub kappa: f64,
}

const GL_ORDER: usize = 64;

/// Nodes and weights of the 64-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(GL_ORDER))
}

fn legendre_rule(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    let mut rule = vec![(0.0, 0.0); order];
    for i in 0..order.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(order, x);
            deriv = dp;
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(order, x);
        if dp != 0.0 {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule[i] = (-x, w);
        rule[order - 1 - i] = (x, w);
    }
    rule
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates `f` over `[-1, 1]` with the 64-point Gauss–Legendre rule.
pub fn integrate(f: impl Fn(f64) -> f64) -> f64 {
    gauss_legendre().iter().map(|&(x, w)| w * f(x)).sum()
}

/// `λ = ∫K²` and `κ = ∫K v²` by quadrature.
///
/// The rule is exact for polynomial integrands up to degree 127, which
/// covers every kernel in [`Kernel1D`].
pub fn constants(k: Kernel1D) -> KernelConstants {
    KernelConstants {
        lambda: integrate(|v| {
            let kv = k.eval(v);
            kv * kv
        }),
        kappa: integrate(|v| k.eval(v) * v * v),
    }
}

/// `∏ k(u_j)`.
#[inline]
pub fn product_kernel(k: Kernel1D, u: &[f64]) -> f64 {
    let mut acc = 1.0;
    for &v in u {
        if !(-1.0..=1.0).contains(&v) {
            return 0.0;
        }
        acc *= k.eval(v);
    }
    acc
}

/// Scaled product kernel `h^{-d} ∏ k((u_j - x_j)/h)`.
#[inline]
pub(crate) fn scaled_product(k: Kernel1D, u: &[f64], x: &[f64], h: f64) -> f64 {
    let mut acc = 1.0;
    for (a, b) in u.iter().zip(x) {
        let v = (a - b) / h;
        if !(-1.0..=1.0).contains(&v) {
            return 0.0;
        }
        acc *= k.eval(v) / h;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Kernel1D; 4] = [
        Kernel1D::Epanechnikov,
        Kernel1D::Uniform,
        Kernel1D::Biweight,
        Kernel1D::Triweight,
    ];

    #[test]
    fn epanechnikov_values() {
        let k = epanechnikov();
        assert_eq!(k.eval(0.0), 0.75);
        assert_eq!(k.eval(1.0), 0.0);
        assert_eq!(k.eval(1.5), 0.0);
        assert_eq!(k.eval(-1.5), 0.0);
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        // ∫ v^{2m} = 2/(2m+1)
        for m in 0..60 {
            let got = integrate(|v| v.powi(2 * m));
            let want = 2.0 / (2 * m + 1) as f64;
            assert!((got - want).abs() < 1e-13, "m={m} got={got} want={want}");
        }
        let wsum: f64 = gauss_legendre().iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kernels_are_normalized_and_symmetric() {
        for k in ALL {
            let mass = integrate(|v| k.eval(v));
            assert!((mass - 1.0).abs() <= 1e-9, "{k:?} mass {mass}");
            for i in 0..=100 {
                let v = i as f64 / 100.0;
                assert_eq!(k.eval(v), k.eval(-v));
            }
            assert_eq!(k.eval(1.0 + 1e-12), 0.0);
        }
    }

    #[test]
    fn analytic_constants() {
        let c = constants(epanechnikov());
        assert!((c.lambda - 0.6).abs() < 1e-10);
        assert!((c.kappa - 0.2).abs() < 1e-10);
        let u = constants(Kernel1D::Uniform);
        assert!((u.lambda - 0.5).abs() < 1e-10);
        assert!((u.kappa - 1.0 / 3.0).abs() < 1e-10);
        // biweight: λ = 5/7, κ = 1/7
        let bw = constants(Kernel1D::Biweight);
        assert!((bw.lambda - 5.0 / 7.0).abs() < 1e-10);
        assert!((bw.kappa - 1.0 / 7.0).abs() < 1e-10);
        for k in ALL {
            let c = constants(k);
            assert!(c.lambda > 0.0 && c.kappa > 0.0 && c.kappa < 1.0);
        }
    }

    #[test]
    fn product_kernel_cases() {
        let k = epanechnikov();
        assert_eq!(product_kernel(k, &[0.0]), 0.75);
        assert_eq!(product_kernel(k, &[0.0, 0.0]), 0.5625);
        assert_eq!(product_kernel(k, &[0.0, 2.0]), 0.0);
        for i in -20..=20 {
            let v = i as f64 / 10.0;
            assert_eq!(product_kernel(k, &[v]), k.eval(v));
        }
    }

    #[test]
    fn product_lambda_is_power_of_lambda() {
        let rule = gauss_legendre();
        for k in ALL {
            let lambda = constants(k).lambda;
            let l2: f64 = rule
                .iter()
                .flat_map(|&(a, wa)| {
                    rule.iter()
                        .map(move |&(b, wb)| wa * wb * product_kernel(k, &[a, b]).powi(2))
                })
                .sum();
            assert!((l2 - lambda.powi(2)).abs() < 1e-10);
            let mut l3 = 0.0;
            for &(a, wa) in rule {
                for &(b, wb) in rule {
                    for &(c, wc) in rule {
                        l3 += wa * wb * wc * product_kernel(k, &[a, b, c]).powi(2);
                    }
                }
            }
            assert!((l3 - lambda.powi(3)).abs() < 1e-10);
        }
    }

    #[test]
    fn scaled_product_matches_definition() {
        let k = epanechnikov();
        let h = 0.3;
        let u = [0.1, -0.2];
        let x = [0.0, 0.0];
        let want = product_kernel(k, &[(0.1) / h, (-0.2) / h]) / (h * h);
        assert!((scaled_product(k, &u, &x, h) - want).abs() < 1e-14);
    }
}
