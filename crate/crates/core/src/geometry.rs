//! Geometry of the conformally flat space `g_ij = delta_ij / f^2(rho)`.
//!
//! The curvature tensor uses the sign convention
//! `R_ik = d_k Gamma^l_il - d_l Gamma^l_ik + Gamma^r_il Gamma^l_kr - Gamma^r_ik Gamma^l_lr`,
//! under which `f = 1 + alpha rho` gives the negative scalar curvature
//! `R = -2 alpha (4/rho + alpha)`.

use crate::error::{require_positive_rho, Result};
use crate::model::DeformedCoulombModel;
use crate::numdiff;
use crate::oracle::quadrature;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];
/// `gamma[i][k][l] = Gamma^i_kl`.
pub type Christoffel = [[[f64; 3]; 3]; 3];

/// Curvature, Coulomb potential and metric factor at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySample {
    pub rho: f64,
    pub curvature: f64,
    pub coulomb_phi: f64,
    pub metric: f64,
}

/// Finite-difference step for geometric derivatives at radius `rho`.
fn step(rho: f64) -> f64 {
    1e-3 * rho
}

/// Conformal factor `g(rho) = 1 / f^2(rho)`.
pub fn metric_factor(model: &DeformedCoulombModel, rho: f64) -> Result<f64> {
    let f = model.deformation(rho)?.f;
    Ok(1.0 / (f * f))
}

fn metric_unchecked(model: &DeformedCoulombModel, rho: f64) -> f64 {
    let f = 1.0 + model.alpha() * rho;
    1.0 / (f * f)
}

/// `R = 2 (-(4/rho) f f' - 2 f f'' + 3 f'^2)`.
pub fn curvature_closed(model: &DeformedCoulombModel, rho: f64) -> Result<f64> {
    let d = model.deformation(rho)?;
    Ok(2.0 * (-4.0 / rho * d.f * d.df - 2.0 * d.f * d.d2f + 3.0 * d.df * d.df))
}

/// `R = (2/g) [4a + 2 (rho a)' + rho^2 a^2]` with `a = g' / (2 rho g)`, all
/// derivatives of the metric taken numerically.
pub fn curvature_numeric(model: &DeformedCoulombModel, rho: f64) -> Result<f64> {
    require_positive_rho(rho)?;
    let h = step(rho);
    let g = |r: f64| metric_unchecked(model, r);
    let a = |r: f64| numdiff::d1(g, r, 0.25 * h) / (2.0 * r * g(r));
    let rho_a_prime = numdiff::d1(|r| r * a(r), rho, h);
    let a0 = a(rho);
    Ok(2.0 / g(rho) * (4.0 * a0 + 2.0 * rho_a_prime + rho * rho * a0 * a0))
}

fn norm(x: Vec3) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

fn shifted(x: Vec3, axis: usize, by: f64) -> Vec3 {
    let mut y = x;
    y[axis] += by;
    y
}

/// `Gamma^i_kl` of the metric `delta_ij g(|X|)`, from finite differences of `g`.
pub fn christoffel(model: &DeformedCoulombModel, x: Vec3) -> Result<Christoffel> {
    let rho = norm(x);
    require_positive_rho(rho)?;
    Ok(christoffel_with_step(model, x, 0.25 * step(rho)))
}

fn christoffel_with_step(model: &DeformedCoulombModel, x: Vec3, h: f64) -> Christoffel {
    let g = |y: Vec3| metric_unchecked(model, norm(y));
    let g0 = g(x);
    let dg: Vec3 = std::array::from_fn(|m| numdiff::d1(|t| g(shifted(x, m, t - x[m])), x[m], h));
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                // Gamma_{i,kl} = (d_l g_ik + d_k g_il - d_i g_kl) / 2, raised with g^ii = 1/g
                0.5 * (delta(i, k) * dg[l] + delta(i, l) * dg[k] - delta(k, l) * dg[i]) / g0
            })
        })
    })
}

/// Contracted curvature tensor `R_ik` at `x`, assembled from numerically
/// differentiated Christoffel symbols.
#[allow(clippy::needless_range_loop)]
pub fn ricci_tensor(model: &DeformedCoulombModel, x: Vec3) -> Result<Mat3> {
    let rho = norm(x);
    require_positive_rho(rho)?;
    let (h_in, h_out) = (0.25 * step(rho), step(rho));
    let gam = christoffel_with_step(model, x, h_in);
    // dgam[m][i][k][l] = d_m Gamma^i_kl
    let dgam: [Christoffel; 3] = std::array::from_fn(|m| {
        let at = |t: f64| christoffel_with_step(model, shifted(x, m, t), h_in);
        let (a, b, c, d) = (at(-2.0 * h_out), at(-h_out), at(h_out), at(2.0 * h_out));
        std::array::from_fn(|i| {
            std::array::from_fn(|k| {
                std::array::from_fn(|l| {
                    (a[i][k][l] - 8.0 * b[i][k][l] + 8.0 * c[i][k][l] - d[i][k][l]) / (12.0 * h_out)
                })
            })
        })
    });
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let mut r = 0.0;
            for l in 0..3 {
                r += dgam[k][l][i][l] - dgam[l][l][i][k];
                for s in 0..3 {
                    r += gam[s][i][l] * gam[l][k][s] - gam[s][i][k] * gam[l][l][s];
                }
            }
            r
        })
    }))
}

/// `R_ik = (a'/rho - a^2) X^i X^k + delta_ik [4a + rho a' + rho^2 a^2]` with
/// `a = -f' / (rho f)` in closed form.
pub fn ricci_tensor_closed(model: &DeformedCoulombModel, x: Vec3) -> Result<Mat3> {
    let rho = norm(x);
    let d = model.deformation(rho)?;
    let a = -d.df / (rho * d.f);
    // a' = -f''/(rho f) + f'/(rho^2 f) + f'^2/(rho f^2)
    let da = -d.d2f / (rho * d.f) + d.df / (rho * rho * d.f) + d.df * d.df / (rho * d.f * d.f);
    let diag = 4.0 * a + rho * da + rho * rho * a * a;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            (da / rho - a * a) * x[i] * x[k] + if i == k { diag } else { 0.0 }
        })
    }))
}

/// `R = g^ik R_ik` through [`ricci_tensor`].
pub fn curvature_from_tensor(model: &DeformedCoulombModel, x: Vec3) -> Result<f64> {
    let r = ricci_tensor(model, x)?;
    Ok((r[0][0] + r[1][1] + r[2][2]) / metric_unchecked(model, norm(x)))
}

/// `phi(rho) = q / rho - q alpha ln(rho)`.
pub fn coulomb_potential_curved(model: &DeformedCoulombModel, rho: f64, q: f64) -> Result<f64> {
    require_positive_rho(rho)?;
    Ok(q / rho - q * model.alpha() * rho.ln())
}

/// `phi(rho) = -q ∫^rho f(r) / r^2 dr` for an arbitrary deforming function,
/// with the constant fixed by `phi(1) = q`.
pub fn coulomb_potential_integral<F: Fn(f64) -> f64>(f: F, rho: f64, q: f64) -> Result<f64> {
    require_positive_rho(rho)?;
    let integral = quadrature::quadrature(|r| f(r) / (r * r), 1.0_f64.min(rho), 1.0_f64.max(rho), 1e-13)?;
    let signed = if rho >= 1.0 { integral } else { -integral };
    Ok(q - q * signed)
}

/// `phi'' + (2/rho - f'/f) phi'` by finite differences.
pub fn laplace_residual(model: &DeformedCoulombModel, rho: f64, q: f64) -> Result<f64> {
    let d = model.deformation(rho)?;
    let h = step(rho);
    let phi = |r: f64| q / r - q * model.alpha() * r.ln();
    let d1 = numdiff::d1(phi, rho, h);
    let d2 = numdiff::d2(phi, rho, h);
    Ok(d2 + (2.0 / rho - d.df / d.f) * d1)
}

pub fn geometry_sample(model: &DeformedCoulombModel, rho: f64, q: f64) -> Result<GeometrySample> {
    Ok(GeometrySample {
        rho,
        curvature: curvature_closed(model, rho)?,
        coulomb_phi: coulomb_potential_curved(model, rho, q)?,
        metric: metric_factor(model, rho)?,
    })
}
