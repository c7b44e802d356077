//! Fourth-order central finite-difference stencils.

/// Fourth-order central first derivative.
pub fn d1<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
pub fn d2<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_on_polynomials() {
        let p = |x: f64| x.powi(4) - 2.0 * x.powi(3) + x;
        let dp = |x: f64| 4.0 * x.powi(3) - 6.0 * x.powi(2) + 1.0;
        let ddp = |x: f64| 12.0 * x.powi(2) - 12.0 * x;
        for x in [0.3, 1.0, 2.5] {
            assert!((d1(p, x, 1e-3) - dp(x)).abs() < 1e-9);
            assert!((d2(p, x, 1e-3) - ddp(x)).abs() < 1e-6);
        }
    }
}
