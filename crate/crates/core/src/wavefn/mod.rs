//! Bound-state radial wavefunctions of the deformed Coulomb problem.
//!
//! For a hierarchy rooted at `(g, s)` the `k`-th state is
//!
//! ```text
//! R_k(g, s; rho) = N_k(g, s) P_k(g, s; rho) rho^s (1 + alpha rho)^-(g_k/alpha + s_k + 1/2)
//! ```
//!
//! where `P_k` is a degree-`k` polynomial generated by the ladder recursion and
//! `N_k` is built from the closed-form ground-state normalization by the
//! matching recursion. Evaluation happens in the log domain.
//!
//! The scalar product is the undeformed `∫_0^∞ dρ`, with no weight.

pub mod laguerre;

use num::BigRational;

use crate::error::{require_positive_rho, Error, Result};
use crate::ladder::{base_g, check_bound, picture_hierarchy, rung_g, BoundStateKey, Hierarchy};
use crate::model::{DeformedCoulombModel, Picture};
use crate::oracle::quadrature;
use crate::polynomial::{Polynomial, Scalar};

/// Below this deformation the power-law envelope is replaced by its
/// `alpha -> 0` limit `exp(-g_k rho)`.
pub const SMALL_ALPHA: f64 = 1e-8;

/// Tail mass neglected by [`overlap`] beyond its cutoff.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// `P_k(g, s; rho)` for the hierarchy rooted at `(g, s)`.
///
/// Built bottom-up: `P_0 = 1` at rung `k`, then
/// `P_{j+1}(g_b, s_b) = -rho f P_j'(g_{b+1}, s_{b+1}) + [-(2 s_b + 1) + (g_k + g_b + j alpha) rho] P_j(g_{b+1}, s_{b+1})`
/// for `b = k-1, ..., 0`.
pub fn ladder_polynomial<T: Scalar>(g: &T, s: &T, alpha: &T, k: u32) -> Polynomial<T> {
    let g_k = rung_g(g, s, alpha, k);
    let mut p = Polynomial::one();
    for j in 0..k {
        let b = k - j - 1;
        let s_b = s.clone() + T::from_int(b);
        let g_b = rung_g(g, s, alpha, b);
        let drift = p
            .derivative()
            .mul_linear(&T::zero(), &-T::one())
            .mul_linear(&T::one(), alpha);
        let constant = -(s_b.clone() + s_b + T::one());
        let slope = g_k.clone() + g_b + alpha.clone() * T::from_int(j);
        p = drift + p.mul_linear(&constant, &slope);
    }
    p
}

/// The polynomial `P_k` of channel `l` in the deformed picture.
pub fn polynomial_recursion(model: &DeformedCoulombModel, l: u32, k: u32) -> Polynomial<f64> {
    let h = Hierarchy::for_channel(model.z(), model.alpha(), l);
    ladder_polynomial(&h.g, &h.s, &h.alpha, k)
}

/// [`polynomial_recursion`] in exact rational arithmetic.
pub fn polynomial_recursion_exact(
    z: &BigRational,
    alpha: &BigRational,
    l: u32,
    k: u32,
) -> Polynomial<BigRational> {
    let g = base_g(z, alpha, l);
    let s = BigRational::from_integer((l + 1).into());
    ladder_polynomial(&g, &s, alpha, k)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| f64::from(i).ln()).sum()
}

/// `ln N_0(g, s)`, from `N_0^2 = prod_{j=0}^{2s} (2g + j alpha) / (2s)!`, the
/// integer-`s` form of the Gamma-function ratio. Finite at `alpha = 0`.
fn ln_ground_norm(g: f64, s: f64, alpha: f64) -> f64 {
    let two_s = (2.0 * s).round() as u32;
    debug_assert!((2.0 * s - f64::from(two_s)).abs() < 1e-12, "s must be a half-integer");
    let ln_prod: f64 = (0..=two_s).map(|j| (2.0 * g + f64::from(j) * alpha).ln()).sum();
    0.5 * (ln_prod - ln_factorial(two_s))
}

/// `ln N_k(g, s)` from the normalization recursion
/// `N_{j+1}(g,s) = (s+j+1) {(j+1)(2s+j+1)[g + (alpha/2)(2s+j+1)][g - (alpha/2)(j+1)]}^{-1/2} N_j(g_1, s_1)`.
fn ln_norm(h: &Hierarchy, k: u32) -> f64 {
    let top = h.shifted(k);
    let mut ln_n = ln_ground_norm(top.g, top.s, h.alpha);
    for j in 0..k {
        let base = h.shifted(k - j - 1);
        let (g, s, a) = (base.g, base.s, h.alpha);
        let j = f64::from(j);
        let m = 2.0 * s + j + 1.0;
        let inner = (j + 1.0) * m * (g + 0.5 * a * m) * (g - 0.5 * a * (j + 1.0));
        ln_n += (s + j + 1.0).ln() - 0.5 * inner.ln();
    }
    ln_n
}

/// `R_k(g, s; rho)` for an arbitrary root `(g, s)` of the hierarchy.
///
/// Physical states use the root of their channel; shifted roots describe the
/// eigenfunctions of the partner Hamiltonians that the ladder operators act on.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    base: Hierarchy,
    k: u32,
    poly: Polynomial<f64>,
    ln_norm: f64,
    g_k: f64,
    s_k: f64,
}

impl RadialFunction {
    pub fn new(base: Hierarchy, k: u32) -> Result<Self> {
        let g_k = base.g_at(k);
        if !base.normalizable(k) {
            return Err(Error::Domain {
                what: "g_k",
                requirement: "g_k > 0 (square integrable)",
                value: g_k,
            });
        }
        Ok(Self {
            poly: ladder_polynomial(&base.g, &base.s, &base.alpha, k),
            ln_norm: ln_norm(&base, k),
            g_k,
            s_k: base.s_at(k),
            base,
            k,
        })
    }

    pub fn base(&self) -> &Hierarchy {
        &self.base
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn poly(&self) -> &Polynomial<f64> {
        &self.poly
    }

    pub fn norm(&self) -> f64 {
        self.ln_norm.exp()
    }

    pub fn g_k(&self) -> f64 {
        self.g_k
    }

    pub fn s_k(&self) -> f64 {
        self.s_k
    }

    /// Exponent `g_k / alpha + s_k + 1/2` of the decaying factor.
    pub fn decay_exponent(&self) -> f64 {
        self.g_k / self.base.alpha + self.s_k + 0.5
    }

    /// `ln[rho^s (1 + alpha rho)^-(g_k/alpha + s_k + 1/2)]`.
    fn ln_envelope(&self, rho: f64) -> f64 {
        let a = self.base.alpha;
        let log1p = (a * rho).ln_1p();
        let exponential = if a < SMALL_ALPHA {
            self.g_k * rho
        } else {
            self.g_k / a * log1p
        };
        self.base.s * rho.ln() - exponential - (self.s_k + 0.5) * log1p
    }

    /// Value at `rho > 0` (not checked).
    pub fn value(&self, rho: f64) -> f64 {
        let p = self.poly.eval(&rho);
        if p == 0.0 {
            return 0.0;
        }
        p.signum() * (self.ln_norm + self.ln_envelope(rho) + p.abs().ln()).exp()
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        require_positive_rho(rho)?;
        Ok(self.value(rho))
    }
}

/// A bound state `R_kl` of a picture. For the position-dependent mass and
/// curved-space pictures this is the deformed-picture state with the
/// picture's effective charge.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub key: BoundStateKey,
    pub picture: Picture,
    pub radial: RadialFunction,
}

impl RadialState {
    pub fn eval(&self, rho: f64) -> Result<f64> {
        self.radial.eval(rho)
    }

    pub fn norm(&self) -> f64 {
        self.radial.norm()
    }

    pub fn poly(&self) -> &Polynomial<f64> {
        self.radial.poly()
    }
}

pub fn radial_state(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> Result<RadialState> {
    check_bound(model, picture, key)?;
    let h = picture_hierarchy(model, picture, key.l);
    if h.g_at(key.k) <= 0.0 {
        return Err(Error::NotBound {
            k: key.k,
            l: key.l,
            lhs: key.counting_lhs(),
            bound: f64::INFINITY,
        });
    }
    Ok(RadialState {
        key,
        picture,
        radial: RadialFunction::new(h, key.k)?,
    })
}

pub fn ground_state(model: &DeformedCoulombModel, l: u32) -> Result<RadialState> {
    radial_state(model, Picture::Deformed, BoundStateKey::new(0, l))
}

pub fn excited_state(model: &DeformedCoulombModel, l: u32, k: u32) -> Result<RadialState> {
    radial_state(model, Picture::Deformed, BoundStateKey::new(k, l))
}

pub fn eval_radial(state: &RadialState, rho: f64) -> Result<f64> {
    state.eval(rho)
}

/// `psi_klm = R_kl(rho) Y_lm / rho`; only the radial factor is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    pub state: RadialState,
    pub m: i32,
}

impl FullState {
    pub fn new(state: RadialState, m: i32) -> Result<Self> {
        if m.unsigned_abs() > state.key.l {
            return Err(Error::Domain {
                what: "m",
                requirement: "|m| <= l",
                value: f64::from(m),
            });
        }
        Ok(Self { state, m })
    }

    /// `R_kl(rho) / rho`.
    pub fn radial_factor(&self, rho: f64) -> Result<f64> {
        Ok(self.state.eval(rho)? / rho)
    }
}

/// Upper bound on `ln ∫_{rho_c}^∞ |R_a R_b| dρ` for `rho_c >= 1`.
fn ln_tail_bound(a: &RadialFunction, b: &RadialFunction, rho_c: f64) -> f64 {
    let alpha = a.base.alpha;
    let ln_c = a.ln_norm + b.ln_norm + a.poly.abs_coeff_sum().ln() + b.poly.abs_coeff_sum().ln();
    let m = a.base.s + f64::from(a.k) + b.base.s + f64::from(b.k);
    let gamma = a.g_k + b.g_k;
    if alpha < SMALL_ALPHA {
        // ∫ ρ^m e^{-γρ} ≤ ρc^m e^{-γρc} / (γ - m/ρc)
        let rate = gamma - m / rho_c;
        if rate <= 0.0 {
            return f64::INFINITY;
        }
        ln_c + m * rho_c.ln() - gamma * rho_c - rate.ln()
    } else {
        // ρ ≤ y/α with y = 1 + αρ, and q - m - 1 = γ/α
        let y_c = 1.0 + alpha * rho_c;
        let excess = gamma / alpha;
        ln_c - (m + 1.0) * alpha.ln() - excess * y_c.ln() - excess.ln()
    }
}

/// `∫_0^∞ R_a R_b dρ` by adaptive Gauss–Legendre in the coordinate
/// `x = ln(1 + alpha rho) / alpha`, truncated where the analytic tail bound
/// drops below [`TAIL_TOLERANCE`].
pub fn overlap(a: &RadialFunction, b: &RadialFunction) -> Result<f64> {
    let alpha = a.base.alpha;
    debug_assert_eq!(alpha, b.base.alpha);
    let map = quadrature::LiouvilleMap::new(if alpha < SMALL_ALPHA { 0.0 } else { alpha });
    let target = TAIL_TOLERANCE.ln();
    let mut x_c = 8.0;
    loop {
        let rho_c = map.rho(x_c);
        if rho_c >= 1.0 && ln_tail_bound(a, b, rho_c) < target {
            break;
        }
        x_c *= 1.5;
        if !map.rho(x_c).is_finite() || x_c > 1e7 {
            return Err(Error::Quadrature {
                a: 0.0,
                b: rho_c,
                tol: TAIL_TOLERANCE,
                estimate: ln_tail_bound(a, b, rho_c).exp(),
            });
        }
    }
    quadrature::integrate_mapped(|r| a.value(r) * b.value(r), &map, x_c, 1e-12)
}

/// `∫_0^∞ |R|^2 dρ`.
pub fn norm_audit(state: &RadialState) -> Result<f64> {
    overlap(&state.radial, &state.radial)
}

/// Gram matrix of the bound states `k = 0..count` of channel `l`.
pub fn gram_matrix(model: &DeformedCoulombModel, picture: Picture, l: u32, count: u32) -> Result<Vec<Vec<f64>>> {
    let states = (0..count)
        .map(|k| radial_state(model, picture, BoundStateKey::new(k, l)))
        .collect::<Result<Vec<_>>>()?;
    let mut gram = vec![vec![0.0; states.len()]; states.len()];
    for i in 0..states.len() {
        for j in 0..=i {
            let v = overlap(&states[i].radial, &states[j].radial)?;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    Ok(gram)
}
