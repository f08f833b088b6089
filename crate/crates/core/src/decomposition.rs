//! The chart 𝒱 of (t, s) coordinates, its three regions, the punctured
//! bigon fixed by `t`, and the clearances `r`, `r′`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on `|s| − a/2` for membership in region III.
pub const REGION_III_TOL: f64 = 1e-9;

/// Half-width of the chart at `t`: `log(t / (1 − t))`.
pub fn chart_bound(t: f64) -> f64 {
    (t / (1.0 - t)).ln()
}

/// Side length of the punctured bigon: `log((1 + t) / (1 − t))`.
pub fn side_a(t: f64) -> f64 {
    // ln_1p keeps precision as t → 1/2 and as 1 − t shrinks.
    t.ln_1p() - (-t).ln_1p()
}

/// A point of the chart 𝒱: `1/2 < t < 1`, `|s| < log(t/(1−t))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVPoint")]
pub struct VPoint {
    t: f64,
    s: f64,
}

#[derive(Deserialize)]
struct RawVPoint {
    t: f64,
    s: f64,
}

impl TryFrom<RawVPoint> for VPoint {
    type Error = Error;

    fn try_from(raw: RawVPoint) -> Result<Self> {
        make_vpoint(raw.t, raw.s)
    }
}

impl VPoint {
    pub fn new(t: f64, s: f64) -> Result<Self> {
        make_vpoint(t, s)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn bound(&self) -> f64 {
        chart_bound(self.t)
    }

    pub fn a(&self) -> f64 {
        side_a(self.t)
    }

    /// `a₁ = a/2 + s`.
    pub fn a1(&self) -> f64 {
        0.5 * self.a() + self.s
    }

    /// `a₂ = a/2 − s`.
    pub fn a2(&self) -> f64 {
        0.5 * self.a() - self.s
    }

    /// The point `(t, −s)`.
    pub fn mirrored(&self) -> VPoint {
        VPoint {
            t: self.t,
            s: -self.s,
        }
    }

    pub fn region(&self) -> Region {
        classify(self)
    }
}

/// Validates `(t, s)` against both chart inequalities.
pub fn make_vpoint(t: f64, s: f64) -> Result<VPoint> {
    let outside = |reason: String| Err(Error::OutsideV { t, s, reason });
    if !t.is_finite() || !s.is_finite() {
        return outside("coordinates must be finite".into());
    }
    if !(t > 0.5 && t < 1.0) {
        return outside(format!("need 1/2 < t < 1, got t = {t}"));
    }
    let bound = chart_bound(t);
    if !(s.abs() < bound) {
        return outside(format!(
            "need −log(t/(1−t)) < s < log(t/(1−t)), i.e. |s| < {bound}, got |s| = {}",
            s.abs()
        ));
    }
    Ok(VPoint { t, s })
}

/// The three regions of the chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    I,
    II,
    III,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
        })
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Region::I),
            "II" => Ok(Region::II),
            "III" => Ok(Region::III),
            _ => Err(Error::Construction(format!("unknown region {s:?}"))),
        }
    }
}

/// Region I when `|s| < a/2`, II when `|s| > a/2`, III on the boundary
/// (within [`REGION_III_TOL`]).
pub fn classify(v: &VPoint) -> Region {
    let gap = v.s.abs() - 0.5 * v.a();
    if gap.abs() <= REGION_III_TOL {
        Region::III
    } else if gap < 0.0 {
        Region::I
    } else {
        Region::II
    }
}

/// The punctured bigon bounding the cusp: equal angles `α` and equal sides `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PuncturedBigon {
    pub t: f64,
    pub alpha: f64,
    pub a: f64,
}

impl PuncturedBigon {
    /// Gauss–Bonnet area `2π − 2α`.
    pub fn area(&self) -> f64 {
        2.0 * PI - 2.0 * self.alpha
    }

    /// Side length as a function of the angle alone.
    pub fn a_from_alpha(alpha: f64) -> f64 {
        let c = (0.5 * alpha).cos();
        ((1.0 + c) / (1.0 - c)).ln()
    }
}

pub fn bigon_from_t(t: f64) -> Result<PuncturedBigon> {
    if !(t > 0.5 && t < 1.0) {
        return Err(Error::OutsideV {
            t,
            s: 0.0,
            reason: format!("need 1/2 < t < 1, got t = {t}"),
        });
    }
    Ok(PuncturedBigon {
        t,
        alpha: 2.0 * t.acos(),
        a: side_a(t),
    })
}

/// Area of the cusp region by quadrature.
///
/// With the cusp at `∞` and side `a` on the unit circle over `[−t, t]`, each
/// half of the bigon is the region above the arc between the verticals
/// `x = ±t`; its area is `∫ dx / √(1 − x²)`.
pub fn bigon_area_quadrature(t: f64) -> f64 {
    let f = |x: f64| 1.0 / (1.0 - x * x).sqrt();
    2.0 * adaptive_simpson(&f, -t, t, 1e-13)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let h = (b - a) / 12.0;
        let left = h * (fa + 4.0 * flm + fm);
        let right = h * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Unclamped `½log(1−t) + ½log(1+t) − log t`.
fn r_formula(t: f64) -> f64 {
    0.5 * (-t).ln_1p() + 0.5 * t.ln_1p() - t.ln()
}

/// Clearance `r`; zero for `t ≥ √2/2`.
pub fn clearance_r(t: f64) -> f64 {
    if t >= FRAC_1_SQRT_2 {
        0.0
    } else {
        r_formula(t).max(0.0)
    }
}

/// Clearance `r′ = −r`; zero for `t ≤ √2/2`.
pub fn clearance_r_prime(t: f64) -> f64 {
    if t <= FRAC_1_SQRT_2 {
        0.0
    } else {
        (-r_formula(t)).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn chart_membership() {
        assert!(make_vpoint(0.6, 0.0).is_ok());
        let err = make_vpoint(0.6, 1.0).unwrap_err();
        match err {
            Error::OutsideV { reason, .. } => assert!(reason.contains("0.405465")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(make_vpoint(0.5, 0.0).is_err());
        assert!(make_vpoint(1.0, 0.0).is_err());
        assert!(make_vpoint(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&make_vpoint(0.8, -1.0).unwrap()), Region::I);
        assert_eq!(classify(&make_vpoint(0.8, -1.2).unwrap()), Region::II);
        assert_eq!(
            classify(&make_vpoint(0.8, 0.5 * 9f64.ln()).unwrap()),
            Region::III
        );
        assert_eq!(
            classify(&make_vpoint(0.8, -0.5 * 9f64.ln() + 5e-10).unwrap()),
            Region::III
        );
    }

    #[test]
    fn bigon_examples() {
        let b = bigon_from_t(FRAC_1_SQRT_2).unwrap();
        assert_abs_diff_eq!(b.alpha, FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(b.a, 2.0 * (SQRT_2 + 1.0).ln(), epsilon = 1e-14);

        let t0 = 0.3 * 5f64.sqrt();
        let b = bigon_from_t(t0).unwrap();
        assert_abs_diff_eq!(
            b.a,
            ((29.0 + 12.0 * 5f64.sqrt()) / 11.0).ln(),
            epsilon = 1e-14
        );

        let b = bigon_from_t(0.6).unwrap();
        assert_abs_diff_eq!(b.alpha, 1.854_590_436_003_224_6, epsilon = 1e-15);
        assert_abs_diff_eq!(b.a, 4f64.ln(), epsilon = 1e-15);

        assert!(bigon_from_t(0.5).is_err());
    }

    #[test]
    fn two_parametrizations_agree() {
        for k in 1..100 {
            let t = 0.5 + 0.5 * k as f64 / 100.0;
            let b = bigon_from_t(t).unwrap();
            assert_abs_diff_eq!(b.a, PuncturedBigon::a_from_alpha(b.alpha), epsilon = 1e-12);
        }
    }

    #[test]
    fn bigon_area_matches_quadrature() {
        for t in [0.51, 0.6, 0.7, 0.8, 0.95] {
            let b = bigon_from_t(t).unwrap();
            assert_abs_diff_eq!(bigon_area_quadrature(t), b.area(), epsilon = 1e-9);
        }
    }

    #[test]
    fn clearance_examples() {
        assert!(clearance_r(FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(clearance_r_prime(FRAC_1_SQRT_2).abs() < 1e-12);
        assert_abs_diff_eq!(clearance_r(0.6), (4.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(clearance_r(0.55), 0.417_710_618_112, epsilon = 1e-9);
        assert_abs_diff_eq!(clearance_r_prime(0.8), (4.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            clearance_r_prime(0.9),
            (0.9 / 0.19f64.sqrt()).ln(),
            epsilon = 1e-15
        );
        assert_eq!(clearance_r(0.8), 0.0);
        assert_eq!(clearance_r_prime(0.6), 0.0);
    }

    #[test]
    fn clearances_are_negatives() {
        for k in 1..50 {
            let t = 0.5 + 0.5 * k as f64 / 50.0;
            assert_abs_diff_eq!(
                clearance_r(t) - clearance_r_prime(t),
                r_formula(t),
                epsilon = 1e-15
            );
            assert!(clearance_r(t) >= 0.0 && clearance_r_prime(t) >= 0.0);
            assert!(clearance_r(t) == 0.0 || clearance_r_prime(t) == 0.0);
        }
    }
}
