//! Generalized Laguerre polynomials and the `alpha -> 0` limit of the ladder
//! polynomials.
//!
//! In the undeformed limit `P_k(rho)` reduces to `a_kl L_k^{(2l+1)}(t)` with
//! `t = 2 Z rho / n`, and the derivative relation of the `P_k` recursion becomes
//!
//! ```text
//! (2l+2) t d/dt L_{k-1}^{(2l+3)}(t)
//!     = k (k+2l+2) L_k^{(2l+1)}(t) + [-(2l+2)(2l+3) + (k+2l+2) t] L_{k-1}^{(2l+3)}(t)
//! ```

use num::{BigRational, ToPrimitive};

use crate::polynomial::Scalar;

/// `L_k^{(a)}(t)` by the three-term recurrence.
pub fn laguerre<T: Scalar>(k: u32, a: &T, t: &T) -> T {
    if k == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut cur = T::one() + a.clone() - t.clone();
    for j in 1..k {
        let jj = T::from_int(j);
        let next = ((jj.clone() + jj.clone() + T::one() + a.clone() - t.clone()) * cur.clone()
            - (jj.clone() + a.clone()) * prev)
            / (jj + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dt L_k^{(a)}(t) = -L_{k-1}^{(a+1)}(t)`.
pub fn laguerre_derivative<T: Scalar>(k: u32, a: &T, t: &T) -> T {
    if k == 0 {
        T::zero()
    } else {
        -laguerre(k - 1, &(a.clone() + T::one()), t)
    }
}

/// Left and right sides of the limiting relation for channel `l`, `k >= 1`.
pub fn relation_sides<T: Scalar>(l: u32, k: u32, t: &T) -> (T, T) {
    assert!(k >= 1, "relation starts at k = 1");
    let u = T::from_int;
    let a_hi = u(2 * l + 3);
    let a_lo = u(2 * l + 1);
    let lhs = u(2 * l + 2) * t.clone() * laguerre_derivative(k - 1, &a_hi, t);
    let m = u(k + 2 * l + 2);
    let rhs = u(k) * m.clone() * laguerre(k, &a_lo, t)
        + (-(u(2 * l + 2) * u(2 * l + 3)) + m * t.clone()) * laguerre(k - 1, &a_hi, t);
    (lhs, rhs)
}

/// Largest `|lhs - rhs|` of [`relation_sides`] over the samples.
pub fn laguerre_limit_check(l: u32, k: u32, samples: &[f64]) -> f64 {
    samples
        .iter()
        .map(|t| {
            let (a, b) = relation_sides(l, k, t);
            (a - b).abs()
        })
        .fold(0.0, f64::max)
}

/// [`laguerre_limit_check`] evaluated in exact rational arithmetic at the
/// (exactly representable) sample points.
pub fn laguerre_limit_check_exact(l: u32, k: u32, samples: &[f64]) -> f64 {
    samples
        .iter()
        .filter_map(|&t| BigRational::from_float(t))
        .map(|t| {
            let (a, b) = relation_sides(l, k, &t);
            (a - b).to_f64().map_or(f64::INFINITY, f64::abs)
        })
        .fold(0.0, f64::max)
}

/// Largest `|lhs - rhs| / max(1, |lhs|, |rhs|)` in floating point.
pub fn laguerre_limit_check_relative(l: u32, k: u32, samples: &[f64]) -> f64 {
    samples
        .iter()
        .map(|t| {
            let (a, b) = relation_sides(l, k, t);
            (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
        })
        .fold(0.0, f64::max)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| f64::from(i).ln()).sum()
}

fn ln_double_factorial(n: u32) -> f64 {
    (1..=n).rev().step_by(2).map(|i| f64::from(i).ln()).sum()
}

/// `a_kl = (-1)^k k! (2l)!! (2k+2l+1)! / [(2k+2l)!! (k+2l+1)!]`, the ratio of
/// `P_k` to `L_k^{(2l+1)}` in the hydrogen limit.
pub fn laguerre_prefactor(l: u32, k: u32) -> f64 {
    let ln = ln_factorial(k) + ln_double_factorial(2 * l) + ln_factorial(2 * k + 2 * l + 1)
        - ln_double_factorial(2 * k + 2 * l)
        - ln_factorial(k + 2 * l + 1);
    if k % 2 == 0 {
        ln.exp()
    } else {
        -ln.exp()
    }
}

/// Textbook hydrogen-like normalization
/// `N_kl = (-1)^{n-l-1} [(2Z/n) (n-l-1)! / (2n (n+l)!)]^{1/2} (2Z/n)^{l+1}`.
pub fn hydrogen_norm(z: f64, l: u32, k: u32) -> f64 {
    let n = k + l + 1;
    let q = 2.0 * z / f64::from(n);
    let ln = 0.5 * (q.ln() + ln_factorial(n - l - 1) - (2.0 * f64::from(n)).ln() - ln_factorial(n + l))
        + f64::from(l + 1) * q.ln();
    if k % 2 == 0 {
        ln.exp()
    } else {
        -ln.exp()
    }
}

/// `R_nl(rho) = N_kl rho^{l+1} e^{-Z rho / n} L_k^{(2l+1)}(2 Z rho / n)`.
pub fn hydrogen_radial(z: f64, l: u32, k: u32, rho: f64) -> f64 {
    let n = f64::from(k + l + 1);
    let t = 2.0 * z * rho / n;
    hydrogen_norm(z, l, k)
        * rho.powi((l + 1) as i32)
        * (-z * rho / n).exp()
        * laguerre(k, &f64::from(2 * l + 1), &t)
}
