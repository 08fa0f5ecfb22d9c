use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A NaN or infinity appeared while evaluating at the given point.
    NonFinite { at: Vec<f64> },
    /// `f_N(y) <= 0`: the point is not covered by the Minkowskian chart.
    OutsideChart { at: Vec<f64> },
    /// The embedding function is not positive at the null lift of a chart point.
    NonPositiveEmbedding { at: Vec<f64> },
    /// Scale factor evaluated outside its domain.
    ScaleFactorDomain { t: f64, rho: f64 },
    /// The conformal factor is not positive.
    NonPositiveConformalFactor { at: Vec<f64> },
    /// A test field was evaluated where it is not defined (e.g. `k·y <= 0` with a real exponent).
    FieldDomain { at: Vec<f64> },
    /// A vector required to be null is not.
    NonNullVector { square: f64 },
    /// `Δ = f² − F²D²` vanishes: the adapted frame degenerates.
    DegenerateFrame { at: Vec<f64> },
    /// `r = −1`: the conformal field needs no constraint.
    ConformalDegenerate,
    /// `r = 0` makes the off-cone extension coefficient singular.
    DegreeZeroDegenerate,
    /// `F² = 0`: no mass term can come from `Fφ = 0`.
    MinkowskiNoMass,
    /// The homogeneity degree would be complex.
    NonRealDegree { discriminant: f64 },
    /// The operation requires a linear (maximally symmetric) embedding.
    NotMaximallySymmetric { family: String },
    /// No null vector orthogonal to `F` could be built for this embedding.
    NoAdmissibleVector,
    UnknownFamily(String),
    InvalidParameter { name: &'static str, value: f64 },
    /// Rejection sampling could not find enough admissible chart points.
    SamplingExhausted { wanted: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { at } => write!(f, "non-finite value at {at:?}"),
            Error::OutsideChart { at } => write!(f, "f_N <= 0 at {at:?}, point outside chart"),
            Error::NonPositiveEmbedding { at } => {
                write!(f, "embedding function is not positive at null lift of {at:?}")
            }
            Error::ScaleFactorDomain { t, rho } => {
                write!(f, "scale factor undefined at t={t}, rho={rho}")
            }
            Error::NonPositiveConformalFactor { at } => {
                write!(f, "conformal factor is not positive at {at:?}")
            }
            Error::FieldDomain { at } => write!(f, "test field undefined at {at:?}"),
            Error::NonNullVector { square } => write!(f, "vector is not null (k·k = {square})"),
            Error::DegenerateFrame { at } => write!(f, "degenerate frame (Δ = 0) at {at:?}"),
            Error::ConformalDegenerate => {
                write!(f, "degree r = -1 is conformal; no constraint function exists")
            }
            Error::DegreeZeroDegenerate => write!(f, "degree r = 0 is not allowed here"),
            Error::MinkowskiNoMass => write!(f, "F² = 0: no mass term can be obtained"),
            Error::NonRealDegree { discriminant } => {
                write!(f, "homogeneity degree is not real (discriminant {discriminant})")
            }
            Error::NotMaximallySymmetric { family } => {
                write!(f, "family `{family}` is not maximally symmetric")
            }
            Error::NoAdmissibleVector => {
                write!(f, "no null vector orthogonal to F is available for this embedding")
            }
            Error::UnknownFamily(name) => write!(f, "unknown family `{name}`"),
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::SamplingExhausted { wanted, found } => {
                write!(f, "only {found} of {wanted} admissible sample points found")
            }
        }
    }
}

impl core::error::Error for Error {}
