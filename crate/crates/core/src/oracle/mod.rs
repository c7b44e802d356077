//! Independent finite-difference eigen-oracle for the radial problem.
//!
//! The radial Hamiltonian is discretized on a grid with Dirichlet ends and
//! diagonalized with a tridiagonal Sturm-sequence solver. Nothing here uses the
//! ladder-operator solution, so the two routes check each other.

pub mod grid;
pub mod quadrature;
pub mod tridiag;

pub use grid::{GridOperator, RadialGrid, Spacing, DEFAULT_RHO_MIN};
pub use quadrature::{integrate, quadrature, GaussRule, Integral, LiouvilleMap};
pub use tridiag::{EigenPair, SymTridiagonal};

use crate::error::Result;
use crate::ladder::{enumerate_bound_states, picture_hierarchy, BoundStateKey};
use crate::model::{DeformedCoulombModel, Picture};

/// Target step in the grid coordinate for a state with decay rate `g ~ 1`.
const BASE_STEP: f64 = 0.02;
/// Decay lengths kept inside the box.
const DECAY_LENGTHS: f64 = 30.0;
/// Largest `alpha x` allowed at the outer edge.
const MAX_ALPHA_X: f64 = 600.0;

/// `(4 E(h/2) - E(h)) / 3`.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// An eigenvalue on a grid and on its refinement, with the extrapolated value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonEstimate {
    pub coarse: f64,
    pub fine: f64,
    pub extrapolated: f64,
}

/// Lowest `count` eigenvalues of channel `l` on `grid` and on `grid.refined()`.
pub fn richardson_lowest(
    model: &DeformedCoulombModel,
    picture: Picture,
    l: u32,
    grid: &RadialGrid,
    count: usize,
) -> Result<Vec<RichardsonEstimate>> {
    let coarse = GridOperator::assemble(model, picture, l, grid)?.eigenvalues_lowest(count);
    let fine = GridOperator::assemble(model, picture, l, &grid.refined())?.eigenvalues_lowest(count);
    Ok(coarse
        .into_iter()
        .zip(fine)
        .map(|(c, f)| RichardsonEstimate {
            coarse: c,
            fine: f,
            extrapolated: richardson(c, f),
        })
        .collect())
}

/// Grid for channel `l` that keeps `DECAY_LENGTHS` decay lengths of the
/// slowest-decaying state with `k <= k_top` inside the box.
///
/// With `alpha > 0` the nodes are equally spaced in the Liouville coordinate;
/// at `alpha = 0` they are equally spaced in `rho`. At least `min_points`
/// nodes are used.
pub fn channel_grid(
    model: &DeformedCoulombModel,
    picture: Picture,
    l: u32,
    k_top: u32,
    min_points: usize,
) -> Result<RadialGrid> {
    let h = picture_hierarchy(model, picture, l);
    let alpha = model.alpha();
    let g_0 = h.g.max(1e-3);
    let g_min = (0..=k_top)
        .map(|k| h.g_at(k))
        .filter(|g| *g > 0.0)
        .fold(f64::INFINITY, f64::min);
    let n = f64::from(k_top + l + 1);
    let extent = if g_min.is_finite() {
        DECAY_LENGTHS / g_min + 2.0 * n * n / (g_0 * h.s)
    } else {
        200.0
    };
    let step = BASE_STEP / g_0.max(1.0);
    if alpha > 0.0 {
        let x_max = extent.min(MAX_ALPHA_X / alpha);
        let rho_max = (alpha * x_max).exp_m1() / alpha;
        let points = ((x_max / step).ceil() as usize + 1).max(min_points);
        RadialGrid::liouville(alpha, DEFAULT_RHO_MIN, rho_max, points)
    } else {
        let points = ((extent / step).ceil() as usize + 1).max(min_points);
        RadialGrid::uniform(DEFAULT_RHO_MIN, extent, points)
    }
}

/// Grid able to hold every bound state of channel `l` (the first few levels
/// at `alpha = 0`).
pub fn channel_grid_all(
    model: &DeformedCoulombModel,
    picture: Picture,
    l: u32,
    min_points: usize,
) -> Result<RadialGrid> {
    let k_top = match enumerate_bound_states(model, picture).table() {
        Some(t) => t.k_max.get(l as usize).copied().unwrap_or(0),
        None => 4,
    };
    channel_grid(model, picture, l, k_top, min_points)
}

/// Richardson-extrapolated grid eigenvalue for one state.
pub fn oracle_energy(
    model: &DeformedCoulombModel,
    picture: Picture,
    key: BoundStateKey,
    min_points: usize,
) -> Result<RichardsonEstimate> {
    let grid = channel_grid(model, picture, key.l, key.k, min_points)?;
    let est = richardson_lowest(model, picture, key.l, &grid, key.k as usize + 1)?;
    Ok(est[key.k as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::energy;

    #[test]
    fn richardson_cancels_h_squared() {
        // E(h) = E + c h^2
        assert!((richardson(1.0 + 4e-2, 1.0 + 1e-2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hydrogen_levels() {
        let m = DeformedCoulombModel::new(1.0, 0.0).unwrap();
        for key in [BoundStateKey::new(0, 0), BoundStateKey::new(1, 0), BoundStateKey::new(0, 1)] {
            let e = oracle_energy(&m, Picture::Deformed, key, 2000).unwrap();
            let exact = energy(&m, Picture::Deformed, key).unwrap();
            assert!((e.extrapolated - exact).abs() < 1e-5, "{key:?}: {e:?} vs {exact}");
        }
    }

    #[test]
    fn deformed_ground_state() {
        let m = DeformedCoulombModel::new(1.0, 0.1).unwrap();
        let key = BoundStateKey::new(0, 0);
        let e = oracle_energy(&m, Picture::Deformed, key, 2000).unwrap();
        let exact = energy(&m, Picture::Deformed, key).unwrap();
        // the Dirichlet point at rho_min = 1e-6 lifts the level by ~ R'(0)^2 rho_min / 2
        assert!((e.extrapolated - exact).abs() < 5e-6, "{e:?} vs {exact}");
    }
}
