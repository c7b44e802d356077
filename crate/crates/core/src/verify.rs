//! Self-check suite: each check compares a closed-form result with an
//! independent route and reports the measured deviation.

use std::thread;

use crate::error::Result;
use crate::geometry;
use crate::ladder::{energy, enumerate_bound_states, picture_hierarchy, BoundStateKey, SpectrumTable};
use crate::model::{continuum_threshold, DeformedCoulombModel, Picture};
use crate::oracle::{self, GridOperator, RadialGrid};
use crate::wavefn::{laguerre, overlap, RadialFunction};

/// Tolerances of the individual checks.
pub const SPECTRUM_TOL: f64 = 1e-4;
pub const ORTHONORMALITY_TOL: f64 = 1e-6;
pub const ANNIHILATION_TOL: f64 = 1e-4;
pub const LADDER_TOL: f64 = 1e-6;
pub const LAGUERRE_RELATION_TOL: f64 = 1e-10;
pub const LAGUERRE_LIMIT_TOL: f64 = 1e-4;
pub const CURVATURE_TOL: f64 = 1e-6;
pub const LAPLACE_TOL: f64 = 1e-6;

/// Deformation used for the `alpha -> 0` wavefunction comparison.
pub const LIMIT_ALPHA: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Self {
            name,
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Multiplies every tolerance.
    pub tolerance_scale: f64,
    /// Lower bound on grid sizes used by the oracle.
    pub min_points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance_scale: 1.0,
            min_points: 2000,
        }
    }
}

type Check = fn(&DeformedCoulombModel, Picture, &VerifyOptions) -> Result<(f64, f64)>;

/// Runs the suite. With `alpha = 0` only the hydrogen-limit subset applies.
///
/// Checks run concurrently; the report order is fixed. A check that cannot be
/// evaluated reports an infinite deviation.
pub fn run_checks(model: &DeformedCoulombModel, picture: Picture, options: &VerifyOptions) -> Vec<CheckOutcome> {
    let mut checks: Vec<(&'static str, Check)> = vec![
        ("spectrum_vs_oracle", check_spectrum),
        ("orthonormality", check_orthonormality),
        ("annihilation", check_annihilation),
        ("ladder_recursion", check_ladder),
        ("laguerre_relation", check_laguerre_relation),
        ("laguerre_limit", check_laguerre_limit),
    ];
    if model.alpha() > 0.0 {
        checks.insert(1, ("bound_state_count", check_count));
        checks.push(("curvature", check_curvature));
        checks.push(("laplace", check_laplace));
    }
    thread::scope(|scope| {
        let handles: Vec<_> = checks
            .iter()
            .map(|(name, check)| {
                let name = *name;
                scope.spawn(move || {
                    let (measured, tol) = check(model, picture, options).unwrap_or((f64::INFINITY, 0.0));
                    CheckOutcome::new(name, measured, tol * options.tolerance_scale)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}

/// Bound states a check runs over: the full table, or `n <= 3` at `alpha = 0`.
fn states(model: &DeformedCoulombModel, picture: Picture) -> Vec<BoundStateKey> {
    match enumerate_bound_states(model, picture).table() {
        Some(t) => t.entries.iter().map(|e| e.key).collect(),
        None => (1..=3u32)
            .flat_map(|n| (0..n).map(move |l| BoundStateKey::new(n - l - 1, l)))
            .collect(),
    }
}

fn channels(keys: &[BoundStateKey]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for key in keys {
        match out.iter_mut().find(|(l, _)| *l == key.l) {
            Some((_, k)) => *k = (*k).max(key.k),
            None => out.push((key.l, key.k)),
        }
    }
    out
}

/// Largest `|e_analytic - e_grid|` with Richardson extrapolation.
pub fn spectrum_deviation(model: &DeformedCoulombModel, picture: Picture, min_points: usize) -> Result<f64> {
    let keys = states(model, picture);
    let mut worst: f64 = 0.0;
    for (l, k_top) in channels(&keys) {
        let grid = oracle::channel_grid(model, picture, l, k_top, min_points)?;
        let est = oracle::richardson_lowest(model, picture, l, &grid, k_top as usize + 1)?;
        for key in keys.iter().filter(|key| key.l == l) {
            let exact = energy(model, picture, *key)?;
            worst = worst.max((est[key.k as usize].extrapolated - exact).abs());
        }
    }
    Ok(worst)
}

fn check_spectrum(model: &DeformedCoulombModel, picture: Picture, o: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((spectrum_deviation(model, picture, o.min_points)?, SPECTRUM_TOL))
}

/// Per channel `l <= l_max + 1`, the grid count of eigenvalues below the
/// continuum threshold against the table. Returns the number of mismatches.
pub fn count_mismatches(model: &DeformedCoulombModel, picture: Picture, min_points: usize) -> Result<usize> {
    let Some(table) = enumerate_bound_states(model, picture).table().cloned() else {
        return Ok(0);
    };
    let top = table.l_max.map_or(0, |l| l + 1);
    let mut mismatches = 0;
    for l in 0..=top {
        if grid_count(model, picture, l, &table, min_points)? != table.count_for_l(l) {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Grid eigenvalues of channel `l` below its continuum threshold.
pub fn grid_count(
    model: &DeformedCoulombModel,
    picture: Picture,
    l: u32,
    table: &SpectrumTable,
    min_points: usize,
) -> Result<usize> {
    let k_top = table.k_max.get(l as usize).copied().unwrap_or(0);
    let grid = oracle::channel_grid(model, picture, l, k_top, min_points)?;
    let op = GridOperator::assemble(model, picture, l, &grid)?;
    Ok(op.count_below(continuum_threshold(model, picture, l)))
}

fn check_count(model: &DeformedCoulombModel, picture: Picture, o: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((count_mismatches(model, picture, o.min_points)? as f64, 0.0))
}

fn radial(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> Result<RadialFunction> {
    RadialFunction::new(picture_hierarchy(model, picture, key.l), key.k)
}

/// Largest `|<R_k|R_k'> - delta_kk'|` within each channel.
pub fn orthonormality_deviation(model: &DeformedCoulombModel, picture: Picture) -> Result<f64> {
    let keys = states(model, picture);
    let mut worst: f64 = 0.0;
    for (l, k_top) in channels(&keys) {
        let fs = (0..=k_top)
            .map(|k| radial(model, picture, BoundStateKey::new(k, l)))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..fs.len() {
            for j in 0..=i {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((overlap(&fs[i], &fs[j])? - expected).abs());
            }
        }
    }
    Ok(worst)
}

fn check_orthonormality(model: &DeformedCoulombModel, picture: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((orthonormality_deviation(model, picture)?, ORTHONORMALITY_TOL))
}

/// `|B- R_0| / |R_0|` on a uniform grid of step `h` with second-order differences.
pub fn annihilation_ratio(model: &DeformedCoulombModel, picture: Picture, l: u32, h: f64) -> Result<f64> {
    let r0 = radial(model, picture, BoundStateKey::new(0, l))?;
    let base = *r0.base();
    let rho_cut = (40.0 / base.g).clamp(50.0, 500.0);
    let n = (rho_cut / h) as usize;
    let rho: Vec<f64> = (1..=n).map(|i| i as f64 * h).collect();
    let values: Vec<f64> = rho.iter().map(|&r| r0.value(r)).collect();
    let lowered = base.lower_sampled(&rho, &values);
    let num: f64 = lowered.iter().map(|v| v * v).sum();
    let den: f64 = values[1..n - 1].iter().map(|v| v * v).sum();
    Ok((num / den).sqrt())
}

fn check_annihilation(model: &DeformedCoulombModel, picture: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    let mut worst: f64 = 0.0;
    for (l, _) in channels(&states(model, picture)) {
        worst = worst.max(annihilation_ratio(model, picture, l, 1e-3)?);
    }
    Ok((worst, ANNIHILATION_TOL))
}

/// Sample radii for pointwise comparisons.
pub const SAMPLE_RHO: [f64; 9] = [0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 15.0, 30.0, 60.0];

/// Largest pointwise `|B+ R_k(g1, s1) / sqrt(e_{k+1} - e_0) - R_{k+1}(g, s)|`.
pub fn ladder_deviation(model: &DeformedCoulombModel, picture: Picture) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for key in states(model, picture).into_iter().filter(|k| k.k > 0) {
        let h = picture_hierarchy(model, picture, key.l);
        let partner = RadialFunction::new(h.shifted(1), key.k - 1)?;
        let target = RadialFunction::new(h, key.k)?;
        let factor = h.excitation(key.k).sqrt();
        for rho in SAMPLE_RHO {
            let climbed = h.raise(|r| partner.value(r), rho, 1e-3 * rho.min(1.0)) / factor;
            worst = worst.max((climbed - target.value(rho)).abs());
        }
    }
    Ok(worst)
}

fn check_ladder(model: &DeformedCoulombModel, picture: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((ladder_deviation(model, picture)?, LADDER_TOL))
}

/// Largest deviation of the limiting Laguerre relation for `l <= 3`,
/// `1 <= k <= 10` at 100 points of `[0, 10]`, in exact arithmetic.
pub fn laguerre_relation_deviation() -> f64 {
    let samples: Vec<f64> = (0..100).map(|i| 0.1 * f64::from(i) + 0.0371).collect();
    let mut worst: f64 = 0.0;
    for l in 0..=3 {
        for k in 1..=10 {
            worst = worst.max(laguerre::laguerre_limit_check_exact(l, k, &samples));
        }
    }
    worst
}

fn check_laguerre_relation(_: &DeformedCoulombModel, _: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((laguerre_relation_deviation(), LAGUERRE_RELATION_TOL))
}

/// Max-norm distance on `(0, 50]` between the `alpha = LIMIT_ALPHA` states with
/// `k + l <= 3` and the textbook hydrogen-like functions.
pub fn laguerre_limit_deviation(z: f64) -> Result<f64> {
    let model = DeformedCoulombModel::new(z, LIMIT_ALPHA)?;
    let mut worst: f64 = 0.0;
    for l in 0..=3u32 {
        for k in 0..=(3 - l) {
            let r = radial(&model, Picture::Deformed, BoundStateKey::new(k, l))?;
            for i in 1..=500 {
                let rho = 0.1 * f64::from(i);
                worst = worst.max((r.value(rho) - laguerre::hydrogen_radial(z, l, k, rho)).abs());
            }
        }
    }
    Ok(worst)
}

fn check_laguerre_limit(model: &DeformedCoulombModel, _: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((laguerre_limit_deviation(model.z())?, LAGUERRE_LIMIT_TOL))
}

/// Sample radii for the geometry checks, spanning `[0.1, 100]`.
pub fn geometry_samples() -> Vec<f64> {
    (0..=60).map(|i| 0.1 * 1000f64.powf(f64::from(i) / 60.0)).collect()
}

/// Largest disagreement between the closed-form curvature and the two
/// numerical routes (radial formula, Christoffel contraction along an axis
/// and along fixed oblique directions). Also fails if `R >= 0` anywhere.
pub fn curvature_deviation(model: &DeformedCoulombModel) -> Result<f64> {
    const DIRECTIONS: [[f64; 3]; 4] = [
        [1.0, 0.0, 0.0],
        [0.48, -0.6, 0.64],
        [-0.36, 0.48, 0.8],
        [0.0, 0.6, -0.8],
    ];
    let mut worst: f64 = 0.0;
    for rho in geometry_samples() {
        let closed = geometry::curvature_closed(model, rho)?;
        if model.alpha() > 0.0 && closed >= 0.0 {
            return Ok(f64::INFINITY);
        }
        worst = worst.max((geometry::curvature_numeric(model, rho)? - closed).abs());
        for d in DIRECTIONS {
            let x = [d[0] * rho, d[1] * rho, d[2] * rho];
            worst = worst.max((geometry::curvature_from_tensor(model, x)? - closed).abs());
        }
    }
    Ok(worst)
}

fn check_curvature(model: &DeformedCoulombModel, _: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((curvature_deviation(model)?, CURVATURE_TOL))
}

/// Largest curved-Laplacian residual of the Coulomb potential at 100 radii in `[0.1, 10]`.
pub fn laplace_deviation(model: &DeformedCoulombModel) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 1..=100 {
        let rho = 0.1 * f64::from(i);
        worst = worst.max(geometry::laplace_residual(model, rho, 1.0)?.abs());
    }
    Ok(worst)
}

fn check_laplace(model: &DeformedCoulombModel, _: Picture, _: &VerifyOptions) -> Result<(f64, f64)> {
    Ok((laplace_deviation(model)?, LAPLACE_TOL))
}

/// A uniform grid sized like the hydrogen-limit regression.
pub fn hydrogen_grid() -> Result<RadialGrid> {
    RadialGrid::uniform(oracle::DEFAULT_RHO_MIN, 200.0, 4000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_subset_passes() {
        let m = DeformedCoulombModel::new(1.0, 0.0).unwrap();
        let out = run_checks(&m, Picture::Deformed, &VerifyOptions::default());
        assert_eq!(out.len(), 6);
        for c in &out {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn corrupted_tolerance_fails() {
        let m = DeformedCoulombModel::new(1.0, 0.0).unwrap();
        let opts = VerifyOptions {
            tolerance_scale: 1e-30,
            ..Default::default()
        };
        assert!(run_checks(&m, Picture::Deformed, &opts).iter().any(|c| !c.passed));
    }

    #[test]
    fn laguerre_relation_in_floating_point() {
        assert!(laguerre_relation_deviation() < LAGUERRE_RELATION_TOL, "{}", laguerre_relation_deviation());
    }
}
