//! Upper half-plane kernel: points, ideal points, geodesics, isometries,
//! distances, angles and polygon areas.
//!
//! Every computation happens in the upper half-plane with metric
//! `(dx² + dy²) / y²`. The Poincaré disk only appears through
//! [`HPoint::to_disk`] / [`HPoint::from_disk`] (Cayley map) for rendering.
//!
//! Geodesics are stored by their ideal endpoints. Operations that need a
//! normal form conjugate the geodesic onto the imaginary axis `{0, ∞}` with
//! [`Isometry::sending_to_axis`], which keeps far-away points (near `0` or
//! `∞`) at full relative precision.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Incidence tolerance (hyperbolic distance) for "point lies on geodesic".
pub const INCIDENCE_TOL: f64 = 1e-9;
/// Tolerance for algebraic identities such as unit determinants.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Areas at or below this value count as degenerate.
pub const AREA_TOL: f64 = 1e-12;

/// A point of the upper half-plane (`y > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(Self { x, y })
        } else {
            Err(Error::InvalidPoint { x, y })
        }
    }

    /// `i`, the base point of every normalized frame in this crate.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Cayley map `w = (z − i) / (z + i)` into the unit disk.
    pub fn to_disk(self) -> (f64, f64) {
        let z = self.to_complex();
        let w = (z - Complex64::i()) / (z + Complex64::i());
        (w.re, w.im)
    }

    /// Inverse Cayley map `z = i (1 + w) / (1 − w)`.
    pub fn from_disk(u: f64, v: f64) -> Result<Self> {
        let w = Complex64::new(u, v);
        if w.norm() >= 1.0 {
            return Err(Error::InvalidPoint { x: u, y: v });
        }
        Self::from_complex(Complex64::i() * (1.0 + w) / (1.0 - w))
    }

    /// Multiplies both coordinates by `k > 0` (the dilation `z ↦ k z`).
    pub fn scaled(self, k: f64) -> Self {
        debug_assert!(k > 0.0);
        Self {
            x: self.x * k,
            y: self.y * k,
        }
    }

    pub fn distance(self, other: HPoint) -> f64 {
        dist(self, other)
    }
}

/// Hyperbolic distance, `2 asinh(|p − q| / (2 √(p_y q_y)))`.
///
/// Equivalent to `arccosh(1 + |p − q|² / (2 p_y q_y))` but accurate for
/// nearby points.
pub fn dist(p: HPoint, q: HPoint) -> f64 {
    let chord = (p.x - q.x).hypot(p.y - q.y);
    2.0 * (chord / (2.0 * p.y.sqrt() * q.y.sqrt())).asinh()
}

/// A point on the boundary `ℝ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

impl IdealPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, IdealPoint::Infinity)
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            IdealPoint::Finite(v) => Some(v),
            IdealPoint::Infinity => None,
        }
    }

    /// Equality up to a relative tolerance; infinity only equals infinity.
    pub fn approx_eq(&self, other: &IdealPoint, tol: f64) -> bool {
        match (*self, *other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
            }
            _ => false,
        }
    }
}

/// A complete geodesic, stored by its ideal endpoints.
///
/// Canonical order: infinity last, otherwise `e1 < e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    e1: IdealPoint,
    e2: IdealPoint,
}

impl Geodesic {
    pub fn new(a: IdealPoint, b: IdealPoint) -> Result<Self> {
        use IdealPoint::*;
        match (a, b) {
            (Infinity, Infinity) => Err(Error::DegenerateGeodesic),
            (Finite(x), Infinity) | (Infinity, Finite(x)) if x.is_finite() => Ok(Self {
                e1: Finite(x),
                e2: Infinity,
            }),
            (Finite(x), Finite(y)) if x.is_finite() && y.is_finite() => {
                if x == y {
                    Err(Error::DegenerateGeodesic)
                } else {
                    Ok(Self {
                        e1: Finite(x.min(y)),
                        e2: Finite(x.max(y)),
                    })
                }
            }
            _ => Err(Error::DegenerateGeodesic),
        }
    }

    /// The vertical line `{x, ∞}`.
    pub fn vertical(x: f64) -> Self {
        Self {
            e1: IdealPoint::Finite(x),
            e2: IdealPoint::Infinity,
        }
    }

    /// The imaginary axis `{0, ∞}`.
    pub fn imaginary_axis() -> Self {
        Self::vertical(0.0)
    }

    /// The semicircle with the given Euclidean center and radius.
    pub fn semicircle(center: f64, radius: f64) -> Result<Self> {
        Self::new(
            IdealPoint::Finite(center - radius),
            IdealPoint::Finite(center + radius),
        )
    }

    /// The unique geodesic through two distinct points.
    pub fn through(p: HPoint, q: HPoint) -> Result<Self> {
        if p == q {
            return Err(Error::CoincidentPoints);
        }
        let dx = p.x - q.x;
        if dx == 0.0 {
            return Ok(Self::vertical(p.x));
        }
        let c = 0.5 * (p.x + q.x) + 0.5 * (p.y - q.y) * (p.y + q.y) / dx;
        let r = (p.x - c).hypot(p.y);
        // The endpoint on the far side of the center is cancellation free; the
        // other one comes from the product of the roots, e1·e2 = 2cx − x² − y².
        let far = if c >= 0.0 { c + r } else { c - r };
        let near = (2.0 * c * p.x - p.x * p.x - p.y * p.y) / far;
        if !far.is_finite() || !near.is_finite() {
            return Ok(Self::vertical(p.x));
        }
        Self::new(IdealPoint::Finite(near), IdealPoint::Finite(far))
    }

    #[inline]
    pub fn e1(&self) -> IdealPoint {
        self.e1
    }

    #[inline]
    pub fn e2(&self) -> IdealPoint {
        self.e2
    }

    pub fn is_vertical(&self) -> bool {
        self.e2.is_infinite()
    }

    /// Euclidean center and radius, or `None` for a vertical line.
    pub fn center_radius(&self) -> Option<(f64, f64)> {
        match (self.e1, self.e2) {
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => Some((0.5 * (a + b), 0.5 * (b - a))),
            _ => None,
        }
    }

    /// Hyperbolic distance from `p` to the geodesic.
    pub fn distance_to(&self, p: HPoint) -> f64 {
        let w = Isometry::sending_to_axis(self).apply_complex(p.to_complex());
        (w.re.abs() / w.im).asinh()
    }

    pub fn contains(&self, p: HPoint, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Unit Euclidean tangent at `p`, oriented from `e1` to `e2`.
    ///
    /// `p` is assumed to lie on the geodesic.
    pub fn tangent_at(&self, p: HPoint) -> (f64, f64) {
        match (self.e1, self.e2) {
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                // p − center, computed from both endpoints to avoid cancellation.
                let px = 0.5 * ((p.x - a) + (p.x - b));
                let n = px.hypot(p.y);
                (p.y / n, -px / n)
            }
            _ => (0.0, 1.0),
        }
    }

    /// Intersection point with another geodesic, if they cross.
    pub fn intersection(&self, other: &Geodesic) -> Option<HPoint> {
        let t = Isometry::sending_to_axis(self);
        let u = t.apply_ideal(other.e1).value()?;
        let v = t.apply_ideal(other.e2).value()?;
        if u == 0.0 || v == 0.0 || u * v >= 0.0 {
            return None;
        }
        let w = Complex64::new(0.0, (-u * v).sqrt());
        HPoint::from_complex(t.inverse().apply_complex(w)).ok()
    }

    /// True if the two geodesics share an ideal endpoint.
    pub fn is_asymptotic_to(&self, other: &Geodesic) -> bool {
        let tol = 1e-14;
        [self.e1, self.e2]
            .iter()
            .any(|e| e.approx_eq(&other.e1, tol) || e.approx_eq(&other.e2, tol))
    }

    /// Orthogonal projection of `p` onto the geodesic.
    pub fn foot_of(&self, p: HPoint) -> HPoint {
        let t = Isometry::sending_to_axis(self);
        let w = t.apply_complex(p.to_complex());
        let foot = Complex64::new(0.0, w.norm());
        HPoint::from_complex(t.inverse().apply_complex(foot)).unwrap_or(p)
    }
}

/// `geodesic_through(p, q)`: the geodesic containing both points.
pub fn geodesic_through(p: HPoint, q: HPoint) -> Result<Geodesic> {
    Geodesic::through(p, q)
}

/// Angle in `[0, π]` between two geodesics at a common point, measured
/// between their tangents oriented `e1 → e2`.
pub fn angle_between(g1: &Geodesic, g2: &Geodesic, at: HPoint) -> Result<f64> {
    for g in [g1, g2] {
        if !g.contains(at, INCIDENCE_TOL) {
            return Err(Error::PointNotOnGeodesic { x: at.x, y: at.y });
        }
    }
    let (ax, ay) = g1.tangent_at(at);
    let (bx, by) = g2.tangent_at(at);
    Ok((ax * bx + ay * by).clamp(-1.0, 1.0).acos())
}

/// The common perpendicular of two ultraparallel geodesics.
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic) -> Result<Geodesic> {
    if g1.is_asymptotic_to(g2) {
        return Err(Error::Asymptotic);
    }
    let t = Isometry::sending_to_axis(g1);
    let (u, v) = match (t.apply_ideal(g2.e1).value(), t.apply_ideal(g2.e2).value()) {
        (Some(u), Some(v)) if u != 0.0 && v != 0.0 => (u, v),
        _ => return Err(Error::Asymptotic),
    };
    if u * v < 0.0 {
        return Err(Error::Intersecting);
    }
    let r = (u * v).sqrt();
    let inv = t.inverse();
    Geodesic::new(
        inv.apply_ideal(IdealPoint::Finite(-r)),
        inv.apply_ideal(IdealPoint::Finite(r)),
    )
}

/// Euclidean direction (radians) of the geodesic segment from `p` toward
/// `q`, measured at `p`.
pub fn direction_toward(p: HPoint, q: HPoint) -> Result<f64> {
    let g = Geodesic::through(p, q)?;
    let (tx, ty) = g.tangent_at(p);
    let (cx, cy) = (q.x - p.x, q.y - p.y);
    let sign = if tx * cx + ty * cy >= 0.0 { 1.0 } else { -1.0 };
    Ok((sign * ty).atan2(sign * tx))
}

/// Euclidean direction at `p` of the geodesic ray from `p` to the ideal
/// point `e`.
pub fn direction_to_ideal(p: HPoint, e: IdealPoint) -> f64 {
    match e {
        IdealPoint::Infinity => FRAC_PI_2,
        IdealPoint::Finite(x) if x == p.x => -FRAC_PI_2,
        IdealPoint::Finite(x) => {
            // Circle through p centered on the real axis with x as an endpoint.
            let c = 0.5 * (p.x + x) + 0.5 * p.y * p.y / (p.x - x);
            let (tx, ty) = (p.y, c - p.x);
            let sign = if tx * (x - p.x) - ty * p.y >= 0.0 {
                1.0
            } else {
                -1.0
            };
            wrap_angle((sign * ty).atan2(sign * tx))
        }
    }
}

/// Interior angle at `vertex` between the geodesic segments toward `a` and
/// toward `b`, in `[0, π]`.
pub fn interior_angle(vertex: HPoint, a: HPoint, b: HPoint) -> Result<f64> {
    let da = direction_toward(vertex, a)?;
    let db = direction_toward(vertex, b)?;
    Ok(wrap_angle(da - db).abs())
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    } else if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// A geodesic ray: a starting point and an initial Euclidean direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    origin: HPoint,
    direction: f64,
    forward: IdealPoint,
    backward: IdealPoint,
}

impl Ray {
    /// Ray from `origin` leaving in Euclidean direction `direction`.
    pub fn new(origin: HPoint, direction: f64) -> Self {
        let psi = wrap_angle(direction);
        let end = |angle: f64| {
            if (angle - FRAC_PI_2).abs() < 1e-300 {
                IdealPoint::Infinity
            } else {
                IdealPoint::Finite(origin.x + origin.y * angle.tan())
            }
        };
        // The circle through (x, y) with tangent angle ψ meets the real axis
        // at x + y·tan(π/4 + ψ/2) ahead and x + y·tan(ψ/2 − π/4) behind.
        let forward = end(FRAC_PI_4 + 0.5 * psi);
        let backward = if (psi + FRAC_PI_2).abs() < 1e-300 {
            IdealPoint::Infinity
        } else {
            IdealPoint::Finite(origin.x + origin.y * (0.5 * psi - FRAC_PI_4).tan())
        };
        Self {
            origin,
            direction: psi,
            forward,
            backward,
        }
    }

    /// Ray from `origin` through `target`.
    pub fn toward(origin: HPoint, target: HPoint) -> Result<Self> {
        Ok(Self::new(origin, direction_toward(origin, target)?))
    }

    pub fn origin(&self) -> HPoint {
        self.origin
    }

    pub fn direction(&self) -> f64 {
        self.direction
    }

    pub fn forward_end(&self) -> IdealPoint {
        self.forward
    }

    pub fn backward_end(&self) -> IdealPoint {
        self.backward
    }

    pub fn geodesic(&self) -> Geodesic {
        Geodesic::new(self.backward, self.forward).unwrap_or(Geodesic::vertical(self.origin.x))
    }

    /// Unit tangent at `p` (assumed on the ray's geodesic), pointing forward.
    pub fn tangent_at(&self, p: HPoint) -> (f64, f64) {
        let g = self.geodesic();
        let (tx, ty) = g.tangent_at(p);
        if g.e2() == self.forward {
            (tx, ty)
        } else {
            (-tx, -ty)
        }
    }

    /// True if `p` (assumed on the geodesic) lies on the forward half.
    pub fn is_ahead(&self, p: HPoint) -> bool {
        if dist(self.origin, p) < 1e-14 {
            return true;
        }
        match direction_toward(self.origin, p) {
            Ok(d) => wrap_angle(d - self.direction).cos() > 0.0,
            Err(_) => true,
        }
    }

    /// Intersection of the two forward rays.
    pub fn intersect(&self, other: &Ray) -> Option<HPoint> {
        let p = self.geodesic().intersection(&other.geodesic())?;
        (self.is_ahead(p) && other.is_ahead(p)).then_some(p)
    }

    /// Intersection of the forward ray with a complete geodesic.
    pub fn intersect_geodesic(&self, g: &Geodesic) -> Option<HPoint> {
        let p = self.geodesic().intersection(g)?;
        self.is_ahead(p).then_some(p)
    }

    /// The point at hyperbolic distance `d ≥ 0` along the ray.
    pub fn point_at(&self, d: f64) -> HPoint {
        Isometry::sending_pair_to_axis(self.backward, self.forward)
            .inverse()
            .compose(&Isometry::dilation(d.exp()))
            .compose(&Isometry::sending_pair_to_axis(self.backward, self.forward))
            .apply(self.origin)
    }
}

/// An isometry of the upper half-plane.
///
/// Orientation-preserving maps act as `z ↦ (m11 z + m12) / (m21 z + m22)`
/// with determinant `+1`; orientation-reversing maps act on `z̄` with
/// determinant `−1`. Matrices are projective, so the overall sign of the
/// entries carries no meaning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [f64; 4],
    reversing: bool,
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            m: [1.0, 0.0, 0.0, 1.0],
            reversing: false,
        }
    }

    /// Orientation-preserving isometry from a unit-determinant matrix.
    pub fn from_matrix(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self> {
        let det = m11 * m22 - m12 * m21;
        if (det - 1.0).abs() >= IDENTITY_TOL {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Self {
            m: [m11, m12, m21, m22],
            reversing: false,
        })
    }

    /// Rescales a matrix with positive determinant to determinant one.
    fn normalized(m: [f64; 4]) -> Self {
        let det = m[0] * m[3] - m[1] * m[2];
        debug_assert!(det > 0.0);
        let k = 1.0 / det.sqrt();
        Self {
            m: [m[0] * k, m[1] * k, m[2] * k, m[3] * k],
            reversing: false,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn determinant(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.reversing
    }

    /// `z ↦ k z`.
    pub fn dilation(k: f64) -> Self {
        Self::normalized([k, 0.0, 0.0, 1.0])
    }

    /// Maps the ideal point `from` to `0` and `to` to `∞`.
    pub fn sending_pair_to_axis(from: IdealPoint, to: IdealPoint) -> Self {
        use IdealPoint::*;
        match (from, to) {
            (Finite(p), Infinity) => Self::normalized([1.0, -p, 0.0, 1.0]),
            (Infinity, Finite(q)) => Self::normalized([0.0, -1.0, 1.0, -q]),
            (Finite(p), Finite(q)) if p < q => Self::normalized([-1.0, p, 1.0, -q]),
            (Finite(p), Finite(q)) => Self::normalized([1.0, -p, 1.0, -q]),
            (Infinity, Infinity) => Self::identity(),
        }
    }

    /// Maps `g.e1()` to `0` and `g.e2()` to `∞`.
    pub fn sending_to_axis(g: &Geodesic) -> Self {
        Self::sending_pair_to_axis(g.e1, g.e2)
    }

    /// Rotation by `π` about `p`.
    pub fn half_turn(p: HPoint) -> Self {
        let s = p.y.sqrt();
        let to_i = Self::normalized([1.0 / s, -p.x / s, 0.0, s]);
        let rot = Self {
            m: [0.0, -1.0, 1.0, 0.0],
            reversing: false,
        };
        to_i.inverse().compose(&rot).compose(&to_i)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let a = self.m;
        let b = other.m;
        Isometry {
            m: [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ],
            reversing: self.reversing ^ other.reversing,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let [a, b, c, d] = self.m;
        let det = self.determinant();
        Isometry {
            m: [d / det, -b / det, -c / det, a / det],
            reversing: self.reversing,
        }
    }

    fn apply_complex(&self, z: Complex64) -> Complex64 {
        let z = if self.reversing { z.conj() } else { z };
        let [a, b, c, d] = self.m;
        (z * a + b) / (z * c + d)
    }

    pub fn apply(&self, p: HPoint) -> HPoint {
        let w = self.apply_complex(p.to_complex());
        // Isometries preserve the half-plane; clamp only against round-off.
        HPoint {
            x: w.re,
            y: w.im.max(f64::MIN_POSITIVE),
        }
    }

    pub fn apply_ideal(&self, e: IdealPoint) -> IdealPoint {
        let [a, b, c, d] = self.m;
        match e {
            IdealPoint::Finite(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((a * x + b) / den)
                }
            }
            IdealPoint::Infinity => {
                if c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(a / c)
                }
            }
        }
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Result<Geodesic> {
        Geodesic::new(self.apply_ideal(g.e1), self.apply_ideal(g.e2))
    }
}

/// Translation along `g` by signed distance `d`, positive toward `g.e2()`.
pub fn translate_along(g: &Geodesic, d: f64) -> Isometry {
    let t = Isometry::sending_to_axis(g);
    t.inverse()
        .compose(&Isometry::dilation(d.exp()))
        .compose(&t)
}

/// Reflection across `g` (orientation-reversing involution fixing `g`).
pub fn reflect_across(g: &Geodesic) -> Isometry {
    // built directly: composing through the axis frame loses digits near ℝ
    let m = match g.center_radius() {
        // inversion z ↦ c + r² / (z̄ − c), scaled to determinant −1
        Some((c, r)) => [c / r, (r - c) * (r + c) / r, 1.0 / r, -c / r],
        None => {
            let x = g.e1().value().or(g.e2().value()).unwrap_or(0.0);
            [-1.0, 2.0 * x, 0.0, 1.0]
        }
    };
    Isometry { m, reversing: true }
}

/// Polygon vertex: an interior point or an ideal point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Vertex {
    Finite(HPoint),
    Ideal(IdealPoint),
}

/// A convex polygon with its interior angles.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolygon {
    vertices: Vec<Vertex>,
    angles: Vec<f64>,
}

impl HPolygon {
    pub fn new(vertices: Vec<Vertex>, angles: Vec<f64>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        if angles.len() != n {
            return Err(Error::DegeneratePolygon(format!(
                "{n} vertices but {} angles",
                angles.len()
            )));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(Error::DegeneratePolygon(format!(
                    "vertices {i} and {j} coincide"
                )));
            }
            if !(0.0..=PI).contains(&angles[i]) {
                return Err(Error::DegeneratePolygon(format!(
                    "angle {i} = {}",
                    angles[i]
                )));
            }
            if matches!(vertices[i], Vertex::Ideal(_)) && angles[i] != 0.0 {
                return Err(Error::DegeneratePolygon(format!(
                    "ideal vertex {i} with angle {}",
                    angles[i]
                )));
            }
        }
        Ok(Self { vertices, angles })
    }

    /// Polygon on finite vertices with measured interior angles.
    pub fn from_points(points: &[HPoint]) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        let angles = (0..n)
            .map(|i| interior_angle(points[i], points[(i + n - 1) % n], points[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points.iter().copied().map(Vertex::Finite).collect(), angles)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `(n − 2)π − Σ angles` without the positivity check.
    pub fn gauss_bonnet(&self) -> f64 {
        (self.vertices.len() as f64 - 2.0) * PI - self.angles.iter().sum::<f64>()
    }

    pub fn area(&self) -> Result<f64> {
        polygon_area(self)
    }
}

/// Gauss–Bonnet area of a convex polygon, `(n − 2)π − Σ angles`.
pub fn polygon_area(p: &HPolygon) -> Result<f64> {
    let area = p.gauss_bonnet();
    if area <= AREA_TOL {
        return Err(Error::DegeneratePolygon(format!(
            "area {area:e} is not positive"
        )));
    }
    Ok(area)
}

/// Side opposite the side between two adjacent right angles.
///
/// For a convex quadrilateral with two adjacent right angles joined by a
/// side of length `d`, and remaining angles `alpha`, `beta` joined by a side
/// of length `c`: `cosh c = (cos α cos β + cosh d) / (sin α sin β)`.
pub fn quad_opposite_side(alpha: f64, beta: f64, d: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < PI && beta > 0.0 && beta < PI) {
        return Err(Error::NoSuchQuadrilateral(format!(
            "angles ({alpha}, {beta}) must lie in (0, π)"
        )));
    }
    if !(d >= 0.0 && d.is_finite()) {
        return Err(Error::NoSuchQuadrilateral(format!("side length d = {d}")));
    }
    let rhs = (alpha.cos() * beta.cos() + d.cosh()) / (alpha.sin() * beta.sin());
    if rhs < 1.0 {
        return Err(Error::NoSuchQuadrilateral(format!("cosh c = {rhs} < 1")));
    }
    Ok(rhs.acosh())
}

/// Fourth angle of a trirectangle whose sides opposite that angle have
/// lengths `a` and `b`: `cos γ = sinh a sinh b`.
pub fn trirectangle_angle(a: f64, b: f64) -> Result<f64> {
    let prod = a.sinh() * b.sinh();
    if !(prod < 1.0) || a < 0.0 || b < 0.0 {
        return Err(Error::NoSuchQuadrilateral(format!(
            "sinh a · sinh b = {prod} must lie in [0, 1)"
        )));
    }
    Ok(prod.acos())
}
