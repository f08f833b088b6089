//! Construction of the hexagon with equal opposite sides from a chart point.
//!
//! Frame: the common perpendicular of the sides `a` and `b` is the imaginary
//! axis, `a` lies on the unit semicircle with foot `F = i`, and `b` lies on
//! the semicircle of radius `e^h` with foot `G = i e^h`. The parameter `h`
//! (length of the common perpendicular) is the translation parameter.
//!
//! For `s ≤ 0`, line `c` leaves `V1` (at signed distance `a₁` from `F` on
//! `a`) with interior angle `π − α`, and line `d` leaves `V3` (at distance
//! `a₂` from `G` on `b`) with interior angle `π − α`. They meet at `V2`
//! with some angle `X(h)`. The half of the hexagon to the right of the
//! perpendicular has area `2α − X(h)`, which increases with `h` from below
//! `α` (when `V3` touches `c`) to `2α` (when `c` and `d` become asymptotic).
//! Bisection finds `X(h) = α`; the half-turn about the midpoint `O` of
//! `FG` completes the hexagon. Points with `s > 0` are mirrored.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::decomposition::{classify, Region, VPoint};
use crate::error::{Error, Result};
use crate::hplane::{
    dist, interior_angle, wrap_angle, Geodesic, HPoint, HPolygon, IdealPoint, Isometry, Ray,
};

/// Target for `|area − α|` when bisecting on `h`.
pub const AREA_TOL: f64 = 1e-12;
/// Cap on bisection steps.
pub const MAX_BISECTION: usize = 200;
/// Pass threshold for every check in [`verify_hexagon`].
pub const VERIFY_TOL: f64 = 1e-9;

/// Record of how a hexagon was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionTrace {
    pub region: Region,
    pub bisection_iterations: usize,
    /// Length `h` of the common perpendicular of `a` and `b`.
    pub translation_param: f64,
    /// Region II: angle at the crossing `X` of `c` with the perpendicular,
    /// between the upward perpendicular and `c₂`. Region III: `π/2 − α`.
    pub theta: Option<f64>,
    /// Region II: angle at `X` between the upward perpendicular and the ray
    /// from `X` to the forward ideal endpoint of `d`.
    pub phi: Option<f64>,
    /// Region II: the two pieces of the side crossing the perpendicular.
    /// That side is `c` for `s ≤ 0` and, after mirroring, `d` for `s > 0`.
    pub sub_c1: Option<f64>,
    pub sub_c2: Option<f64>,
    /// `|area of the half polygon − α|` at termination.
    pub area_residual: f64,
}

/// A constructed hexagon.
///
/// Vertices are ordered so that the sides read `(a, c, d, a, c, d)` from
/// `vertices[0]`, and the interior angles read
/// `(π−α, α, π−α, π−α, α, π−α)` from `vertices[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HexagonResult {
    pub v: VPoint,
    pub region: Region,
    pub alpha: f64,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub a1: f64,
    pub a2: f64,
    pub vertices: [HPoint; 6],
    /// Gauss–Bonnet area from the measured interior angles.
    pub area: f64,
    /// Endpoints of the segment of the common perpendicular along which the
    /// two halves are glued.
    pub cut: (HPoint, HPoint),
    pub trace: ConstructionTrace,
}

impl HexagonResult {
    /// `a + b + c + d` with `b = a`.
    pub fn total_length(&self) -> f64 {
        2.0 * self.a + self.c + self.d
    }

    /// Measured side lengths, `sides[i] = |vertices[i] vertices[i+1]|`.
    pub fn side_lengths(&self) -> [f64; 6] {
        std::array::from_fn(|i| dist(self.vertices[i], self.vertices[(i + 1) % 6]))
    }

    /// Measured interior angles at each vertex.
    pub fn angles(&self) -> Result<[f64; 6]> {
        let v = &self.vertices;
        let mut out = [0.0; 6];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = interior_angle(v[i], v[(i + 5) % 6], v[(i + 1) % 6])?;
        }
        Ok(out)
    }

    /// Expected angle pattern, indexed like [`HexagonResult::vertices`].
    pub fn expected_angles(&self) -> [f64; 6] {
        let (al, ob) = (self.alpha, PI - self.alpha);
        [ob, ob, al, ob, ob, al]
    }
}

fn unit_circle_point(u: f64) -> HPoint {
    HPoint::new(u.tanh(), 1.0 / u.cosh()).expect("sech is positive")
}

/// Geometry shared by all `h` for a fixed chart point with `s ≤ 0`.
struct Setup {
    alpha: f64,
    v1: HPoint,
    blue: Ray,
    /// `V3` at `h = 0`; scaling by `e^h` gives `V3`.
    v3_unit: HPoint,
    phi3: f64,
}

struct Corner {
    h: f64,
    v3: HPoint,
    red: Ray,
    v2: HPoint,
    angle: f64,
}

impl Setup {
    fn new(alpha: f64, a1: f64, a2: f64) -> Self {
        let v1 = unit_circle_point(a1);
        let phi1 = v1.y().atan2(v1.x());
        let blue = Ray::new(v1, phi1 - FRAC_PI_2 + alpha);
        let v3_unit = unit_circle_point(a2);
        let phi3 = v3_unit.y().atan2(v3_unit.x());
        Self {
            alpha,
            v1,
            blue,
            v3_unit,
            phi3,
        }
    }

    fn corner(&self, h: f64) -> Option<Corner> {
        let v3 = self.v3_unit.scaled(h.exp());
        let red = Ray::new(v3, self.phi3 + 1.5 * PI - self.alpha);
        let v2 = self.blue.intersect(&red)?;
        let (bx, by) = self.blue.tangent_at(v2);
        let (rx, ry) = red.tangent_at(v2);
        let angle = (bx * rx + by * ry).clamp(-1.0, 1.0).acos();
        Some(Corner {
            h,
            v3,
            red,
            v2,
            angle,
        })
    }

    /// Signed area excess `area(h) − α`; asymptotic or disjoint lines count
    /// as area `2α`.
    fn excess(&self, h: f64) -> (f64, Option<Corner>) {
        match self.corner(h) {
            Some(c) => (self.alpha - c.angle, Some(c)),
            None => (self.alpha, None),
        }
    }

    /// Smallest admissible `h`: `V3` lies on `c`.
    ///
    /// `V3` runs along the Euclidean ray `ρ e^{iφ₃}`; take its farthest
    /// crossing with the forward ray `c`.
    fn lower_h(&self) -> f64 {
        let (cos3, sin3) = (self.phi3.cos(), self.phi3.sin());
        let g = self.blue.geodesic();
        let roots: Vec<f64> = match (g.e1(), g.e2()) {
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => {
                let c = 0.5 * (p + q);
                let disc = c * c * cos3 * cos3 - p * q;
                if disc < 0.0 {
                    vec![]
                } else {
                    let sq = disc.sqrt();
                    vec![c * cos3 + sq, c * cos3 - sq]
                }
            }
            (IdealPoint::Finite(p), IdealPoint::Infinity) if cos3 != 0.0 => vec![p / cos3],
            _ => vec![],
        };
        roots
            .into_iter()
            .filter(|&rho| rho > 0.0 && rho.is_finite())
            .filter_map(|rho| HPoint::new(rho * cos3, rho * sin3).ok())
            .filter(|&p| self.blue.is_ahead(p))
            .map(|p| (dist(self.v1, p), p))
            .max_by(|x, y| x.0.total_cmp(&y.0))
            .map(|(_, p)| (p.x().hypot(p.y())).ln().max(0.0))
            .unwrap_or(0.0)
    }

    /// Bisection on `h` for `X(h) = α`.
    fn solve(&self) -> Result<(Corner, usize, f64)> {
        let mut lo = self.lower_h();
        let mut step = 1.0;
        let mut hi = lo + step;
        let mut expansions = 0;
        while let (e, Some(_)) = self.excess(hi) {
            if e > 0.0 {
                break;
            }
            if e.abs() < AREA_TOL {
                let c = self.corner(hi).expect("corner exists");
                return Ok((c, 0, e.abs()));
            }
            lo = hi;
            step *= 2.0;
            hi = lo + step;
            expansions += 1;
            if expansions > 200 {
                return Err(Error::Construction(
                    "no upper bracket for the translation parameter".into(),
                ));
            }
        }
        let mut best: Option<(f64, Corner)> = None;
        for it in 1..=MAX_BISECTION {
            let mid = 0.5 * (lo + hi);
            let (e, corner) = self.excess(mid);
            if let Some(c) = corner {
                if best.as_ref().is_none_or(|(r, _)| e.abs() < *r) {
                    best = Some((e.abs(), c));
                }
                if e.abs() < AREA_TOL {
                    let (r, c) = best.expect("just stored");
                    return Ok((c, it, r));
                }
            }
            if e > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= f64::EPSILON * hi.abs().max(1.0) * 0.5 {
                return Err(Error::BisectionFailure {
                    residual: best.map_or(f64::INFINITY, |(r, _)| r),
                    iterations: it,
                });
            }
        }
        Err(Error::BisectionFailure {
            residual: best.map_or(f64::INFINITY, |(r, _)| r),
            iterations: MAX_BISECTION,
        })
    }
}

/// Builds the hexagon for a chart point.
pub fn build_hexagon(v: &VPoint) -> Result<HexagonResult> {
    if v.s() > 0.0 {
        Ok(mirror_hexagon(&build_nonpositive(&v.mirrored())?))
    } else {
        build_nonpositive(v)
    }
}

fn build_nonpositive(v: &VPoint) -> Result<HexagonResult> {
    let region = classify(v);
    let alpha = 2.0 * v.t().acos();
    let a = v.a();
    let (a1, a2) = (v.a1(), v.a2());
    let setup = Setup::new(alpha, a1, a2);
    let (corner, iterations, residual) = setup.solve()?;
    let h = corner.h;

    let v1 = setup.v1;
    let (v2, v3) = (corner.v2, corner.v3);
    let o = HPoint::new(0.0, (0.5 * h).exp())?;
    let turn = Isometry::half_turn(o);
    let vertices = [turn.apply(v3), v1, v2, v3, turn.apply(v1), turn.apply(v2)];

    let c = dist(v1, v2);
    let d = dist(v2, v3);
    let g = HPoint::new(0.0, h.exp())?;

    let mut trace = ConstructionTrace {
        region,
        bisection_iterations: iterations,
        translation_param: h,
        theta: None,
        phi: None,
        sub_c1: None,
        sub_c2: None,
        area_residual: residual,
    };
    let cut = match region {
        Region::I => (HPoint::I, g),
        Region::III => {
            trace.theta = Some(FRAC_PI_2 - alpha);
            (v1, turn.apply(v1))
        }
        Region::II => {
            let x = setup
                .blue
                .intersect_geodesic(&Geodesic::imaginary_axis())
                .ok_or_else(|| Error::Construction("side c misses the perpendicular".into()))?;
            let (_, ty) = setup.blue.tangent_at(x);
            trace.theta = Some(ty.clamp(-1.0, 1.0).acos());
            let to_d = crate::hplane::direction_to_ideal(x, corner.red.forward_end());
            trace.phi = Some(wrap_angle(to_d - FRAC_PI_2).abs());
            trace.sub_c1 = Some(dist(v1, x));
            trace.sub_c2 = Some(dist(x, v2));
            (x, turn.apply(x))
        }
    };

    let mut out = HexagonResult {
        v: *v,
        region,
        alpha,
        a,
        c,
        d,
        a1,
        a2,
        vertices,
        area: 0.0,
        cut,
        trace,
    };
    out.area = gauss_bonnet_area(&out)?;
    Ok(out)
}

fn gauss_bonnet_area(h: &HexagonResult) -> Result<f64> {
    let angles = h.angles()?;
    Ok(4.0 * PI - angles.iter().sum::<f64>())
}

/// The hexagon for `(t, −s)`: reflect in the perpendicular and relabel so
/// that the side pattern and angle pattern keep their positions.
pub fn mirror_hexagon(h: &HexagonResult) -> HexagonResult {
    let r = |p: HPoint| HPoint::new(-p.x(), p.y()).expect("reflection keeps y");
    let o = &h.vertices;
    HexagonResult {
        v: h.v.mirrored(),
        region: h.region,
        alpha: h.alpha,
        a: h.a,
        c: h.d,
        d: h.c,
        a1: h.a2,
        a2: h.a1,
        vertices: [r(o[1]), r(o[0]), r(o[5]), r(o[4]), r(o[3]), r(o[2])],
        area: h.area,
        cut: (r(h.cut.0), r(h.cut.1)),
        trace: h.trace,
    }
}

/// One named check with its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual < VERIFY_TOL
    }
}

/// Residuals of the defining properties of a hexagon.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn midpoint(p: HPoint, q: HPoint) -> HPoint {
    match Ray::toward(p, q) {
        Ok(r) => r.point_at(0.5 * dist(p, q)),
        Err(_) => p,
    }
}

/// Checks opposite-side equality, the angle pattern, area `2α`, closure of
/// the vertex cycle and the split of `a`.
pub fn verify_hexagon(h: &HexagonResult) -> VerificationReport {
    let sides = h.side_lengths();
    let expected_sides = [h.a, h.c, h.d, h.a, h.c, h.d];
    let opposite = (0..3)
        .map(|i| (sides[i] - sides[i + 3]).abs())
        .fold(0.0, f64::max);
    let side_values = sides
        .iter()
        .zip(expected_sides)
        .map(|(m, e)| (m - e).abs())
        .fold(0.0, f64::max);

    let (angle_res, area_res) = match h.angles() {
        Ok(angles) => {
            let pattern = angles
                .iter()
                .zip(h.expected_angles())
                .map(|(m, e)| (m - e).abs())
                .fold(0.0, f64::max);
            let area = 4.0 * PI - angles.iter().sum::<f64>();
            (pattern, (area - 2.0 * h.alpha).abs())
        }
        Err(_) => (f64::INFINITY, f64::INFINITY),
    };
    let area_res = area_res.max((h.area - 2.0 * h.alpha).abs());

    // A hexagon with a half-turn symmetry has its three main diagonals
    // bisecting each other at a common point.
    let v = &h.vertices;
    let mids = [
        midpoint(v[0], v[3]),
        midpoint(v[1], v[4]),
        midpoint(v[2], v[5]),
    ];
    let closure = dist(mids[0], mids[1])
        .max(dist(mids[1], mids[2]))
        .max(dist(mids[0], mids[2]));

    let split = (h.a1 + h.a2 - h.a)
        .abs()
        .max((h.a1 - h.a2 - 2.0 * h.v.s()).abs());

    let convex = if HPolygon::from_points(v).is_ok() {
        0.0
    } else {
        f64::INFINITY
    };

    VerificationReport {
        checks: vec![
            Check {
                name: "opposite_sides",
                residual: opposite.max(side_values),
            },
            Check {
                name: "angle_pattern",
                residual: angle_res,
            },
            Check {
                name: "area",
                residual: area_res,
            },
            Check {
                name: "closure",
                residual: closure.max(convex),
            },
            Check {
                name: "a_split",
                residual: split,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::make_vpoint;
    use approx::assert_abs_diff_eq;

    fn hex(t: f64, s: f64) -> HexagonResult {
        build_hexagon(&make_vpoint(t, s).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_minimum_point() {
        let h = hex(0.3 * 5f64.sqrt(), 0.0);
        let r5 = 5f64.sqrt();
        assert_abs_diff_eq!(h.a, ((29.0 + 12.0 * r5) / 11.0).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(h.c, ((21.0 + 8.0 * r5) / 11.0).ln(), epsilon = 1e-9);
        assert_abs_diff_eq!(h.d, h.c, epsilon = 1e-9);
        assert!(verify_hexagon(&h).all_pass(), "{:?}", verify_hexagon(&h));
    }

    #[test]
    fn axis_point_t08() {
        let h = hex(0.8, 0.0);
        assert_abs_diff_eq!(h.a, 9f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(h.c, 0.939_442_753_637_053_7, epsilon = 1e-9);
        assert_abs_diff_eq!(h.d, h.c, epsilon = 1e-9);
        assert!(verify_hexagon(&h).all_pass());
    }

    #[test]
    fn region_two_and_three() {
        let h = hex(0.8, -1.2);
        assert_eq!(h.region, Region::II);
        let rep = verify_hexagon(&h);
        assert!(rep.all_pass(), "{rep:?}");
        let (c1, c2) = (h.trace.sub_c1.unwrap(), h.trace.sub_c2.unwrap());
        assert_abs_diff_eq!(c1 + c2, h.c, epsilon = 1e-9);

        let h = hex(0.8, 0.5 * 9f64.ln());
        assert_eq!(h.region, Region::III);
        let rep = verify_hexagon(&h);
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn mirror_is_an_involution() {
        let h = hex(0.8, -1.2);
        let m = mirror_hexagon(&h);
        assert_eq!((m.a1, m.a2), (h.a2, h.a1));
        assert_eq!((m.c, m.d), (h.d, h.c));
        assert!(verify_hexagon(&m).all_pass());
        assert_eq!(mirror_hexagon(&m), h);
        let z = hex(0.7, 0.0);
        assert_eq!(z.a1, z.a2);
    }

    #[test]
    fn positive_s_matches_mirror() {
        let p = hex(0.75, 0.4);
        let n = hex(0.75, -0.4);
        assert_abs_diff_eq!(p.c, n.d, epsilon = 1e-12);
        assert_abs_diff_eq!(p.total_length(), n.total_length(), epsilon = 1e-12);
        assert!(verify_hexagon(&p).all_pass());
    }

    #[test]
    fn perturbed_vertex_fails_side_check() {
        let mut h = hex(0.8, 0.0);
        let p = h.vertices[2];
        h.vertices[2] = HPoint::new(p.x() + 1e-3, p.y()).unwrap();
        let rep = verify_hexagon(&h);
        assert!(!rep.get("opposite_sides").unwrap().passed());
    }

    #[test]
    fn bisection_residual_and_monotone_area() {
        let v = make_vpoint(0.65, -0.2).unwrap();
        let h = build_hexagon(&v).unwrap();
        assert!(h.trace.bisection_iterations <= MAX_BISECTION);
        assert!(h.trace.area_residual < AREA_TOL);

        let setup = Setup::new(h.alpha, v.a1(), v.a2());
        let lo = setup.lower_h();
        let mut prev = f64::NEG_INFINITY;
        for k in 1..200 {
            let hh = lo + 1e-3 * k as f64;
            let (e, _) = setup.excess(hh);
            assert!(e >= prev, "area not increasing at h = {hh}");
            prev = e;
        }
        assert!(setup.excess(lo + 1e-9).0 < 0.0);
        assert!(setup.excess(lo + 50.0).0 > 0.0);
    }
}
