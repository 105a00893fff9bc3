use crate::geometry::Complex;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the construction pipeline can report.
///
/// Variants are grouped by the subsystem that raises them; callers that need
/// to distinguish them (the CLI maps them to exit codes) match on the variant.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // geometry
    #[error("point {0} lies on the branch cut (-inf, 0]")]
    BranchCutViolation(Complex),
    #[error("point {point} is outside the domain of {what}")]
    DomainViolation { what: String, point: Complex },
    #[error("point {0} lies on the curve")]
    PointOnCurve(Complex),
    #[error("winding number residue {0} exceeds 0.1; curve is undersampled")]
    Undersampled(f64),

    // moebius
    #[error("degenerate linear fractional transformation")]
    Degenerate,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("evaluation at a pole: {0}")]
    Pole(Complex),

    // teardrop / products
    #[error("no exponent >= {floor} satisfies the collapse target (rho={rho}, delta={delta})")]
    SearchFailed { rho: f64, delta: f64, floor: f64 },
    #[error("|z| = {0} exceeds the admissible radius 0.999")]
    NotInDomain(f64),

    // region
    #[error("classification differs between resolution h and h/2 at {0}")]
    ResolutionDisagreement(Complex),
    #[error("no exterior point found near {0}; refine the resolution")]
    NoExteriorPointFound(Complex),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("point {0} is not on the boundary of K")]
    NotOnBoundary(Complex),

    // chains
    #[error("the cover does not link the two points")]
    NotLinked,
    #[error("sequence is not a weak chain")]
    NotWeakChain,

    // kissing path
    #[error("no complement path between the endpoints")]
    NoPath,
    #[error("disk chain degenerated")]
    DegenerateChain,
    #[error("circle intersection not found: {0}")]
    IntersectionNotFound(String),
    #[error("kissing path certificate failed: {0}")]
    PathCertificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),

    // conformal
    #[error("numerical breakdown in the slit-map composition: {0}")]
    NumericalBreakdown(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(Complex),

    // peaking
    #[error("no squeeze parameter beta pushes the anchor below the target")]
    BetaSearchFailed,
    #[error("no certified exclusion radius found")]
    RhoSearchFailed,
    #[error("invalid schedule: {0}")]
    ScheduleInvalid(String),
    #[error("non-isolated type II boundary point {0} is out of scope")]
    TypeIIUnsupported(Complex),
    #[error("image leaves the cone C_1/2 at {0}")]
    ConePrecondViolated(Complex),
    #[error("boundary point {0} is not circularly accessible")]
    NotCircularlyAccessible(Complex),
    #[error("grid certificate failed: {0}")]
    CertificateFailed(String),

    // boundary sets
    #[error("{0}: maximum modulus principle forbids this for interior points")]
    InteriorPoint(Complex),
    #[error("sup of |g| off the neighbourhood is {0}, not below 1")]
    RhoNotBelowOne(f64),
    #[error("convergence surrogate failed: {0}")]
    SurrogateFailed(String),
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),
}
