use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation.
    Domain(&'static str),
    /// κ₀² < λ + 2: no elastica with this vertex curvature.
    NoElastica { lambda: f64, kappa0_sq: f64 },
    /// Parameters on (or within tolerance of) the excluded locus κ₀² = λ + 4.
    Degenerate { lambda: f64, kappa0_sq: f64 },
    /// Constant-curvature input where a non-circular profile is required.
    Circular,
    /// Sampled parametrization failed its unit-speed certificate.
    NotAnElastica { residual: f64 },
    /// Polygon has a zero-length difference at this sample.
    DegenerateSegment { index: usize },
    /// Invalid sample (non-positive height, too few points, non-finite).
    InvalidCurve(&'static str),
    /// Exterior-angle sum too far from an integer multiple of 2π.
    AmbiguousTurning { residual: f64 },
    /// Tangent vector is not of unit hyperbolic length.
    NotUnitTangent { norm: f64 },
    /// Determinant of a Möbius map is not 1.
    BadMobius { det: f64 },
    /// Root finder found no sign change for the requested closing condition.
    NoRoot(&'static str),
    /// Closing root exists only for |m| beyond the search window.
    MOutOfWindow { n: u32, theta: f64 },
    /// Quadrature failed to reach its tolerance.
    Quadrature { estimate: f64, error: f64 },
    /// Closed-form vs discrete cross-check failed.
    Certificate { what: &'static str, value: f64 },
    /// Flow time step underflow.
    Stiffness { time: f64, dt: f64 },
    /// Flow left the upper half-plane or blew up numerically.
    ModelBreakdown { time: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NoElastica { lambda, kappa0_sq } => {
                write!(f, "no elastica: kappa0^2 = {kappa0_sq} < lambda + 2 = {}", lambda + 2.0)
            }
            Error::Degenerate { lambda, kappa0_sq } => write!(
                f,
                "degenerate parameters: kappa0^2 = {kappa0_sq} is on the excluded locus lambda + 4 = {}",
                lambda + 4.0
            ),
            Error::Circular => write!(f, "circular profile: Killing reduction needs non-constant curvature"),
            Error::NotAnElastica { residual } => {
                write!(f, "not an elastica: unit-speed residual {residual:e}")
            }
            Error::DegenerateSegment { index } => write!(f, "degenerate segment at sample {index}"),
            Error::InvalidCurve(why) => write!(f, "invalid curve: {why}"),
            Error::AmbiguousTurning { residual } => {
                write!(f, "ambiguous turning number (residual {residual:.3})")
            }
            Error::NotUnitTangent { norm } => {
                write!(f, "tangent is not unit in the hyperbolic metric (norm {norm})")
            }
            Error::BadMobius { det } => write!(f, "Mobius determinant {det} != 1"),
            Error::NoRoot(what) => write!(f, "no root in bracket: {what}"),
            Error::MOutOfWindow { n, theta } => {
                write!(f, "m out of window for n = {n} (winding per period {theta})")
            }
            Error::Quadrature { estimate, error } => {
                write!(f, "quadrature did not converge (estimate {estimate}, error {error:e})")
            }
            Error::Certificate { what, value } => write!(f, "certificate failed: {what} = {value:e}"),
            Error::Stiffness { time, dt } => write!(f, "stiffness failure at t = {time}: dt = {dt:e}"),
            Error::ModelBreakdown { time } => write!(f, "model breakdown at t = {time}"),
        }
    }
}

impl core::error::Error for Error {}
