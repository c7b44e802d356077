//! Shared fixtures for the benchmarks in `benches/`.

use deformed_coulomb::{DeformedCoulombModel, Picture};

/// `(label, model)` pairs spanning weak to strong deformation.
pub fn models() -> Vec<(&'static str, DeformedCoulombModel)> {
    [("Z1_a0.1", 1.0, 0.1), ("Z2_a0.1", 2.0, 0.1), ("Z5_a0.01", 5.0, 0.01)]
        .into_iter()
        .map(|(label, z, a)| (label, DeformedCoulombModel::new(z, a).expect("valid model")))
        .collect()
}

pub fn pictures() -> [Picture; 2] {
    [Picture::Deformed, Picture::CurvedSpace]
}

/// Evenly spaced sample points on `(0, rho_max]`.
pub fn samples(rho_max: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| rho_max * i as f64 / count as f64).collect()
}
