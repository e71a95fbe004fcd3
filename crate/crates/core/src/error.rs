use thiserror::Error;

/// Errors raised by the solid-angle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector norm {norm} deviates from 1 by more than the renormalization tolerance")]
    NotUnit { norm: f64 },

    #[error("cannot project a zero or non-finite vector onto the unit sphere")]
    ZeroVector,

    #[error("degenerate corner: an adjacent side has zero length")]
    DegenerateSide,

    #[error("zero tangent vector at a corner")]
    ZeroTangent,

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("polygon needs at least 3 distinct vertices, got {count}")]
    TooFewVertices { count: usize },

    #[error("consecutive vertices {index} and {next} are antipodal; the connecting arc is ambiguous")]
    AntipodalEdge { index: usize, next: usize },

    #[error("degenerate triangle: vertices are coplanar with the origin and the enclosed region is ambiguous")]
    DegenerateTriangle,

    #[error("curve passes through the origin at t = {t}")]
    OriginCrossing { t: f64 },

    #[error("stationary point (zero tangential velocity) at t = {t}")]
    StationaryPoint { t: f64 },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("quadrature did not converge on [{start}, {end}]: estimated error {estimate:e} exceeds {tolerance:e}")]
    QuadratureNonConvergence {
        start: f64,
        end: f64,
        estimate: f64,
        tolerance: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
