//! Radial grids and the finite-difference Hamiltonian on them.

use crate::error::{Error, Result};
use crate::model::{radial_potential, DeformedCoulombModel, Picture};
use crate::oracle::quadrature::LiouvilleMap;
use crate::oracle::tridiag::{EigenPair, SymTridiagonal};

/// Default inner Dirichlet point.
pub const DEFAULT_RHO_MIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    /// Equal steps in `rho`.
    Uniform,
    /// Equal steps in `x = ln(1 + alpha rho) / alpha`, where the kinetic term
    /// becomes `-(1/2) d^2/dx^2` and bound states decay like `exp(-g_k x)`.
    Liouville { alpha: f64 },
}

/// Grid nodes `rho_0 < ... < rho_{n-1}`; both ends carry Dirichlet conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    spacing: Spacing,
    rho_min: f64,
    rho_max: f64,
    nodes: Vec<f64>,
    mids: Vec<f64>,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 100;

    pub fn uniform(rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        Self::build(Spacing::Uniform, rho_min, rho_max, n_points)
    }

    pub fn liouville(alpha: f64, rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "Liouville spacing needs alpha > 0, got {alpha}"
            )));
        }
        Self::build(Spacing::Liouville { alpha }, rho_min, rho_max, n_points)
    }

    fn build(spacing: Spacing, rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        if n_points < Self::MIN_POINTS {
            return Err(Error::GridTooCoarse {
                n_points,
                min: Self::MIN_POINTS,
            });
        }
        if !(rho_min >= 0.0 && rho_max > rho_min && rho_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= rho_min < rho_max < inf, got [{rho_min}, {rho_max}]"
            )));
        }
        let map = match spacing {
            Spacing::Uniform => LiouvilleMap::new(0.0),
            Spacing::Liouville { alpha } => LiouvilleMap::new(alpha),
        };
        let (x0, x1) = (map.x(rho_min), map.x(rho_max));
        let h = (x1 - x0) / (n_points - 1) as f64;
        let mut nodes: Vec<f64> = (0..n_points).map(|i| map.rho(x0 + h * i as f64)).collect();
        nodes[0] = rho_min;
        nodes[n_points - 1] = rho_max;
        let mids = (0..n_points - 1)
            .map(|i| map.rho(x0 + h * (i as f64 + 0.5)))
            .collect();
        Ok(Self {
            spacing,
            rho_min,
            rho_max,
            nodes,
            mids,
        })
    }

    /// Same extent and spacing with the step halved (`2 (n - 1) + 1` nodes).
    pub fn refined(&self) -> Self {
        Self::build(self.spacing, self.rho_min, self.rho_max, 2 * (self.len() - 1) + 1)
            .expect("refining a valid grid")
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Step in the grid's own coordinate (`rho` or `x`).
    pub fn step(&self) -> f64 {
        let map = self.map();
        (map.x(self.rho_max) - map.x(self.rho_min)) / (self.len() - 1) as f64
    }

    fn map(&self) -> LiouvilleMap {
        match self.spacing {
            Spacing::Uniform => LiouvilleMap::new(0.0),
            Spacing::Liouville { alpha } => LiouvilleMap::new(alpha),
        }
    }

    /// Lumped quadrature weights `(rho_{j+1} - rho_{j-1}) / 2` of the interior nodes.
    pub fn weights(&self) -> Vec<f64> {
        (1..self.len() - 1)
            .map(|j| 0.5 * (self.nodes[j + 1] - self.nodes[j - 1]))
            .collect()
    }
}

/// `H = (1/2) sqrt(f) p f p sqrt(f) + U_1^{(l)}` on a grid, discretized from
/// the quadratic form `(1/2) ∫ f [(sqrt(f) psi)']^2 + ∫ U psi^2` with one
/// difference per cell and lumped weights, then symmetrized as
/// `W^{-1/2} K W^{-1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator {
    grid: RadialGrid,
    l: u32,
    matrix: SymTridiagonal,
    weights: Vec<f64>,
}

impl GridOperator {
    pub fn assemble(model: &DeformedCoulombModel, picture: Picture, l: u32, grid: &RadialGrid) -> Result<Self> {
        let nodes = grid.nodes();
        let n = nodes.len();
        let alpha = model.alpha();
        let f = |r: f64| 1.0 + alpha * r;
        let weights = grid.weights();
        // c_j = f(rho_{j+1/2}) / (rho_{j+1} - rho_j)
        let cell: Vec<f64> = (0..n - 1)
            .map(|j| f(grid.mids[j]) / (nodes[j + 1] - nodes[j]))
            .collect();
        let sqrt_f: Vec<f64> = nodes.iter().map(|&r| f(r).sqrt()).collect();
        let mut diag = Vec::with_capacity(n - 2);
        for j in 1..n - 1 {
            let k = 0.5 * sqrt_f[j] * sqrt_f[j] * (cell[j - 1] + cell[j]);
            let u = radial_potential(model, picture, l, nodes[j])?;
            diag.push(k / weights[j - 1] + u);
        }
        let off = (1..n - 2)
            .map(|j| {
                let k = -0.5 * sqrt_f[j] * sqrt_f[j + 1] * cell[j];
                k / (weights[j - 1].sqrt() * weights[j].sqrt())
            })
            .collect();
        Ok(Self {
            grid: grid.clone(),
            l,
            matrix: SymTridiagonal::new(diag, off)?,
            weights,
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn matrix(&self) -> &SymTridiagonal {
        &self.matrix
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.matrix.count_below(threshold)
    }

    pub fn eigenvalues_lowest(&self, count: usize) -> Vec<f64> {
        self.matrix.eigenvalues_lowest(count)
    }

    /// Lowest eigenpairs with vectors given as `psi` at the interior nodes,
    /// normalized so that `sum_j w_j psi_j^2 = 1`.
    pub fn eigen_lowest(&self, count: usize) -> Result<Vec<EigenPair>> {
        let mut pairs = self.matrix.eigen_lowest(count)?;
        for p in &mut pairs {
            for (v, w) in p.vector.iter_mut().zip(&self.weights) {
                *v /= w.sqrt();
            }
        }
        Ok(pairs)
    }
}
