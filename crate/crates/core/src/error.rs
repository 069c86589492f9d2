use thiserror::Error;

/// Errors raised by the curvature pipeline, the profile constructors and the
/// linear Weingarten solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The top view of the chart is singular, so the tangent plane is isotropic.
    #[error("non-admissible point (u={u}, v={v}): top-view Jacobian {det:e}")]
    Admissibility { u: f64, v: f64, det: f64 },

    #[error("degenerate first fundamental form: EG - F^2 = {0:e}")]
    DegenerateMetric(f64),

    /// A finite-difference stencil would leave the sampled grid or the domain.
    #[error("stencil at {at} leaves the available samples")]
    Stencil { at: String },

    #[error("point (u={u}, v={v}) is outside the surface domain")]
    OutOfDomain { u: f64, v: f64 },

    #[error("parabolic sphere requires A != 0")]
    NotASphere,

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// The integrator reached the locus g' = m0 u where the ODE right-hand side blows up.
    #[error("singular branch: g' = m0*u reached at u={u}")]
    SingularBranch { u: f64 },

    #[error("non-finite value at u={u}")]
    NonFinite { u: f64 },

    #[error("malformed profile file: {0}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
