use thiserror::Error;

/// Errors produced by the geometric kernel, the chart and the constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point ({x}, {y}): upper half-plane points need finite x and y > 0")]
    InvalidPoint { x: f64, y: f64 },

    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,

    #[error("points coincide; no unique geodesic through them")]
    CoincidentPoints,

    #[error("point ({x}, {y}) does not lie on the geodesic")]
    PointNotOnGeodesic { x: f64, y: f64 },

    #[error("geodesics intersect; no common perpendicular")]
    Intersecting,

    #[error("geodesics share an ideal endpoint; no common perpendicular")]
    Asymptotic,

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("no such quadrilateral: {0}")]
    NoSuchQuadrilateral(String),

    #[error("matrix is not a unit-determinant isometry (det = {0})")]
    NotUnimodular(f64),

    #[error("(t, s) = ({t}, {s}) is outside the chart: {reason}")]
    OutsideV { t: f64, s: f64, reason: String },

    #[error("bisection did not reach area residual 1e-12 (residual {residual:e} after {iterations} iterations)")]
    BisectionFailure { residual: f64, iterations: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("boundary sequence exhausted double precision at k = {k}")]
    CaseExhausted { k: u32 },

    #[error("no real trace z for (x, y) = ({x}, {y}): discriminant {discriminant} < 0")]
    Infeasible { x: f64, y: f64, discriminant: f64 },

    #[error("trace {0} is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic(f64),

    #[error("invalid word: {0}")]
    InvalidWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
