use thiserror::Error;

/// Everything that can go wrong while building a wedge, tracing rays or
/// evaluating cross sections.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("opening angle {0} rad is outside (0, pi]")]
    InvalidOpeningAngle(f64),

    #[error("wedge index N={0} must be a positive integer")]
    InvalidWedgeIndex(u32),

    #[error("rho={0} must be a positive, finite distance in bohr radii")]
    InvalidRho(f64),

    #[error("beta={beta} rad is outside the open wedge interval (0, {alpha})")]
    BetaOutsideWedge { beta: f64, alpha: f64 },

    #[error("beta={beta} rad violates the surface guard: beta must lie in [{min}, {max}] (beta_min={beta_min})")]
    BetaGuard {
        beta: f64,
        min: f64,
        max: f64,
        beta_min: f64,
    },

    #[error(
        "photon energy {photon_ev} eV is at or below the detachment threshold {threshold_ev} eV"
    )]
    BelowThreshold { photon_ev: f64, threshold_ev: f64 },

    #[error("electron energy {0} hartree must be positive")]
    NonPositiveEnergy(f64),

    #[error("direction is parallel to the {0} surface")]
    DegenerateIncidence(&'static str),

    #[error("start point ({x}, {y}) is not strictly inside the wedge")]
    StartOnSurface { x: f64, y: f64 },

    #[error("ray passes within {distance:e} a0 of the wedge apex")]
    ApexSingularity { distance: f64 },

    #[error("closed orbit has non-positive length {0}")]
    ZeroLengthOrbit(f64),

    #[error("closed forms assume hard walls (delta=pi); got delta={0}")]
    ClosedFormRequiresHardWall(f64),

    #[error("analytic orbits need an opening angle pi/N; alpha={0} is not of that form")]
    NotIntegerWedge(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("k grid is not uniform: {0}")]
    NonUniformGrid(String),

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e} ({detail})")]
    Convergence {
        estimate: f64,
        tolerance: f64,
        detail: String,
    },

    #[error("dataset contains a non-finite value in column '{column}' at row {row}")]
    NonFinite { column: String, row: usize },

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag used in CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOpeningAngle(_) => "invalid_alpha",
            Error::InvalidWedgeIndex(_) => "invalid_n",
            Error::InvalidRho(_) => "invalid_rho",
            Error::BetaOutsideWedge { .. } => "beta_outside_wedge",
            Error::BetaGuard { .. } => "beta_guard",
            Error::BelowThreshold { .. } => "below_threshold",
            Error::NonPositiveEnergy(_) => "below_threshold",
            Error::DegenerateIncidence(_) => "degenerate_incidence",
            Error::StartOnSurface { .. } => "start_on_surface",
            Error::ApexSingularity { .. } => "apex_singularity",
            Error::ZeroLengthOrbit(_) => "zero_length_orbit",
            Error::ClosedFormRequiresHardWall(_) => "closed_form_delta",
            Error::NotIntegerWedge(_) => "not_integer_wedge",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NonUniformGrid(_) => "non_uniform_grid",
            Error::Convergence { .. } => "convergence",
            Error::NonFinite { .. } => "non_finite",
            Error::Io(_) => "io",
        }
    }

    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::ApexSingularity { .. }
                | Error::Convergence { .. }
                | Error::NonFinite { .. }
                | Error::DegenerateIncidence(_)
                | Error::ZeroLengthOrbit(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
