use thiserror::Error;

/// Errors produced by the solver, the wavefunction builder and the grid oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the formulas are defined.
    #[error("{what} must satisfy {requirement}, got {value}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The requested (k, l) pair violates the counting inequality of the picture.
    #[error(
        "(k={k}, l={l}) is not a bound state: (l+k+1)^2 + l(l+1) = {lhs} >= {bound}"
    )]
    NotBound { k: u32, l: u32, lhs: u64, bound: f64 },

    #[error("grid too coarse: {n_points} points, at least {min} required")]
    GridTooCoarse { n_points: usize, min: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("eigensolver did not converge: residual norms {residuals:?}")]
    Convergence { residuals: Vec<f64> },

    #[error("quadrature on [{a}, {b}] did not reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, tol: f64, estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "rho",
            requirement: "0 < rho < inf",
            value: rho,
        })
    }
}
