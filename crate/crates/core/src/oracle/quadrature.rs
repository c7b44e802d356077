//! Adaptive Gauss–Legendre quadrature.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 20;
const MAX_INTERVALS: usize = 200_000;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::new(ORDER))
}

/// Integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// `∫_a^b f` to absolute tolerance `tol`.
///
/// Each interval is compared against the sum over its two halves and split
/// until the difference is below its share of `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    let rule = rule();
    let width = b - a;
    if width == 0.0 {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let mut stack = vec![(a, b, rule.apply(&f, a, b))];
    let mut total = Integral { value: 0.0, error: 0.0 };
    let mut visited = 0;
    while let Some((lo, hi, whole)) = stack.pop() {
        visited += 1;
        let mid = 0.5 * (lo + hi);
        let left = rule.apply(&f, lo, mid);
        let right = rule.apply(&f, mid, hi);
        let err = (left + right - whole).abs();
        let share = tol * ((hi - lo) / width).abs();
        if err <= share || mid <= lo || mid >= hi || visited > MAX_INTERVALS {
            if visited > MAX_INTERVALS && err > share {
                return Err(Error::Quadrature {
                    a,
                    b,
                    tol,
                    estimate: total.error + err,
                });
            }
            total.value += left + right;
            total.error += err;
        } else {
            stack.push((lo, mid, left));
            stack.push((mid, hi, right));
        }
    }
    Ok(total)
}

/// `∫_a^b f` to absolute tolerance `tol`, value only.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate(f, a, b, tol).map(|i| i.value)
}

/// The coordinate `x = ln(1 + alpha rho) / alpha` (the identity at `alpha = 0`),
/// in which `d rho = f d x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleMap {
    alpha: f64,
}

impl LiouvilleMap {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self, x: f64) -> f64 {
        if self.alpha == 0.0 {
            x
        } else {
            (self.alpha * x).exp_m1() / self.alpha
        }
    }

    pub fn x(&self, rho: f64) -> f64 {
        if self.alpha == 0.0 {
            rho
        } else {
            (self.alpha * rho).ln_1p() / self.alpha
        }
    }

    /// `d rho / d x = 1 + alpha rho`.
    pub fn jacobian(&self, x: f64) -> f64 {
        (self.alpha * x).exp()
    }
}

/// `∫_0^{rho(x_max)} g(rho) d rho` evaluated in the mapped coordinate over
/// panels `[0, 1/2], [1/2, 1], [1, 2], [2, 4], ...`.
pub fn integrate_mapped<F: Fn(f64) -> f64>(g: F, map: &LiouvilleMap, x_max: f64, tol: f64) -> Result<f64> {
    let mut edges = vec![0.0, 0.5];
    let mut x = 1.0;
    while x < x_max {
        edges.push(x);
        x *= 2.0;
    }
    edges.push(x_max);
    let share = tol / edges.len() as f64;
    let integrand = |x: f64| g(map.rho(x)) * map.jacobian(x);
    let mut sum = 0.0;
    for w in edges.windows(2) {
        sum += integrate(integrand, w[0], w[1], share)?.value;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_high_degree() {
        let r = GaussRule::new(ORDER);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // degree 38 monomial
        let v = r.apply(&|x: f64| x.powi(38), -1.0, 1.0);
        assert!((v - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = quadrature(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() < 1e-8);
    }

    #[test]
    fn mapped_half_line() {
        let map = LiouvilleMap::new(0.5);
        // ∫_0^∞ (1 + rho/2)^-4 d rho = 2/3
        let v = integrate_mapped(|r: f64| (1.0 + 0.5 * r).powi(-4), &map, 200.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
        let plain = LiouvilleMap::new(0.0);
        let v = integrate_mapped(|r: f64| (-r).exp(), &plain, 60.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!((map.x(map.rho(3.0)) - 3.0).abs() < 1e-13);
    }
}
