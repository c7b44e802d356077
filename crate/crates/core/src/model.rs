//! Physical configuration and the maps that reduce the position-dependent
//! mass and curved-space pictures to the deformed-commutator picture.
//!
//! Everything is dimensionless: lengths are measured in units of a
//! characteristic length `a` (the Bohr radius for the Coulomb problem) and
//! energies in units of `V0 = hbar^2 / (m0 a^2)`, which for the Coulomb problem
//! equals twice the Rydberg energy. Converting back to physical units is left
//! to the caller: `E = V0 * e`, `r = a * rho`, `alpha_phys = alpha / a`.
//!
//! The deforming function is fixed to the affine family `f(rho) = 1 + alpha rho`.
//! It enters the three pictures through
//!
//! ```text
//! f(rho)^2 = 1 / M(rho) = 1 / g(rho)
//! ```
//!
//! with `M` the dimensionless position-dependent mass and `g` the conformal
//! factor of the diagonal metric.

use crate::error::{require_positive_rho, Error, Result};

/// Charge and deformation of a deformed Coulomb problem.
///
/// The potential is `U(rho) = -Z / rho` and the deforming function is
/// `f(rho) = 1 + alpha rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedCoulombModel {
    z: f64,
    alpha: f64,
}

impl DeformedCoulombModel {
    pub fn new(z: f64, alpha: f64) -> Result<Self> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::Domain {
                what: "Z",
                requirement: "0 < Z < inf",
                value: z,
            });
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::Domain {
                what: "alpha",
                requirement: "0 <= alpha < inf",
                value: alpha,
            });
        }
        Ok(Self { z, alpha })
    }

    /// The undeformed hydrogen-like problem.
    pub fn hydrogen_like(z: f64) -> Result<Self> {
        Self::new(z, 0.0)
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `f`, `f'` and `f''` at `rho`.
    pub fn deformation(&self, rho: f64) -> Result<Deformation> {
        require_positive_rho(rho)?;
        Ok(self.deformation_unchecked(rho))
    }

    pub(crate) fn deformation_unchecked(&self, rho: f64) -> Deformation {
        let f = 1.0 + self.alpha * rho;
        debug_assert!(f > 0.0);
        Deformation {
            f,
            df: self.alpha,
            d2f: 0.0,
        }
    }

    /// Dimensionless position-dependent mass `M(rho) = 1 / f(rho)^2`.
    pub fn mass(&self, rho: f64) -> Result<f64> {
        let f = self.deformation(rho)?.f;
        Ok(1.0 / (f * f))
    }
}

/// Value and first two derivatives of the deforming function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deformation {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

impl Deformation {
    /// `f (2 f' / rho + f'')`, the radial form of `f div grad f`.
    fn f_div_grad(&self, rho: f64) -> f64 {
        self.f * (2.0 * self.df / rho + self.d2f)
    }
}

/// `f(rho) = 1 + alpha rho`.
pub fn deform_f(model: &DeformedCoulombModel, rho: f64) -> Result<f64> {
    Ok(model.deformation(rho)?.f)
}

/// von Roos ordering parameters; `kappa = 2 - delta - lambda` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingParams {
    pub delta: f64,
    pub lambda: f64,
}

impl OrderingParams {
    pub fn new(delta: f64, lambda: f64) -> Self {
        Self { delta, lambda }
    }

    /// `delta = lambda = 0`, `kappa = 2`: the kinetic term `-(1/2) div f^2 grad`.
    pub fn ben_daniel_duke() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn kappa(&self) -> f64 {
        2.0 - self.delta - self.lambda
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.lambda, self.delta)
    }
}

/// Which of the three equivalent Schrödinger equations is being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Picture {
    /// Deformed canonical commutators, `pi = sqrt(f) p sqrt(f)`.
    Deformed,
    /// Mass `m0 / f^2` with a von Roos kinetic ordering.
    PositionDependentMass(OrderingParams),
    /// Diagonal metric `g = 1 / f^2`.
    CurvedSpace,
}

impl Picture {
    pub fn name(&self) -> &'static str {
        match self {
            Picture::Deformed => "deformed",
            Picture::PositionDependentMass(_) => "pdm",
            Picture::CurvedSpace => "curved",
        }
    }

    pub fn ordering(&self) -> Option<OrderingParams> {
        match self {
            Picture::PositionDependentMass(o) => Some(*o),
            _ => None,
        }
    }
}

/// Coulomb strength and additive constant of a picture's effective potential,
/// `U_eff(rho) = -z_eff / rho + const_shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoulomb {
    pub z_eff: f64,
    pub const_shift: f64,
}

pub fn effective_charge(model: &DeformedCoulombModel, picture: Picture) -> EffectiveCoulomb {
    let (z, alpha) = (model.z, model.alpha);
    match picture {
        Picture::Deformed => EffectiveCoulomb {
            z_eff: z,
            const_shift: 0.0,
        },
        Picture::PositionDependentMass(o) => {
            let c = 1.0 - o.delta - o.lambda;
            EffectiveCoulomb {
                z_eff: z - 0.5 * alpha * c,
                const_shift: 0.5 * alpha * alpha * (c + (0.5 - o.delta) * (0.5 - o.lambda)),
            }
        }
        Picture::CurvedSpace => EffectiveCoulomb {
            z_eff: z + alpha,
            const_shift: -0.5 * alpha * alpha,
        },
    }
}

/// Radial effective potential of the position-dependent mass picture,
/// evaluated from the general ordering-dependent correction terms.
pub fn effective_potential_pdm(
    model: &DeformedCoulombModel,
    ordering: OrderingParams,
    rho: f64,
) -> Result<f64> {
    let d = model.deformation(rho)?;
    let correction = 0.5 * (1.0 - ordering.delta - ordering.lambda) * d.f_div_grad(rho)
        + (0.5 - ordering.delta) * (0.5 - ordering.lambda) * d.df * d.df;
    Ok(-model.z / rho + 0.5 * correction)
}

/// Radial effective potential of the curved-space picture after the
/// `psi~ = f^{3/2} psi` rescaling.
pub fn effective_potential_curved(model: &DeformedCoulombModel, rho: f64) -> Result<f64> {
    let d = model.deformation(rho)?;
    Ok(-model.z / rho - 0.5 * d.f_div_grad(rho) + 0.5 * d.df * d.df)
}

/// Effective potential of any picture, i.e. the `U_1` it is equivalent to.
pub fn effective_potential(
    model: &DeformedCoulombModel,
    picture: Picture,
    rho: f64,
) -> Result<f64> {
    match picture {
        Picture::Deformed => {
            require_positive_rho(rho)?;
            Ok(-model.z / rho)
        }
        Picture::PositionDependentMass(o) => effective_potential_pdm(model, o, rho),
        Picture::CurvedSpace => effective_potential_curved(model, rho),
    }
}

/// Full radial potential of the channel `l`:
/// `(1/2)(f^2 L^2 / rho^2 + f f' / rho) + U_eff(rho)` with `L^2 = l(l+1)`.
pub fn radial_potential(
    model: &DeformedCoulombModel,
    picture: Picture,
    l: u32,
    rho: f64,
) -> Result<f64> {
    let d = model.deformation(rho)?;
    let l2 = angular_eigenvalue(l);
    let f_over_rho = d.f / rho;
    let geometric = 0.5 * (f_over_rho * f_over_rho * l2 + f_over_rho * d.df);
    Ok(geometric + effective_potential(model, picture, rho)?)
}

/// Limit of [`radial_potential`] as `rho -> inf`: `alpha^2 (L^2 + 1) / 2` plus
/// the picture's constant shift.
pub fn continuum_threshold(model: &DeformedCoulombModel, picture: Picture, l: u32) -> f64 {
    let a = model.alpha;
    0.5 * a * a * (angular_eigenvalue(l) + 1.0) + effective_charge(model, picture).const_shift
}

/// `L^2 = l (l + 1)`.
pub fn angular_eigenvalue(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}
