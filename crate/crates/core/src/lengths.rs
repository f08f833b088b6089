//! The length function `a + b + c + d` on the chart, its closed form on
//! the axis `s = 0`, the minimizer, and the boundary divergence probes.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomposition::{
    bigon_from_t, chart_bound, clearance_r_prime, make_vpoint, side_a, VPoint,
};
use crate::error::{Error, Result};
use crate::hexagon::build_hexagon;
use crate::hplane::{common_perpendicular, dist, Geodesic, HPoint, Ray};

/// Lengths of the decomposition at a chart point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthReport {
    pub v: VPoint,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub total: f64,
}

/// `2a + c + d` from the constructed hexagon.
pub fn total_length(v: &VPoint) -> Result<LengthReport> {
    let h = build_hexagon(v)?;
    Ok(LengthReport {
        v: *v,
        a: h.a,
        c: h.c,
        d: h.d,
        total: h.total_length(),
    })
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.5 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideV {
            t,
            s: 0.0,
            reason: format!("need 1/2 < t < 1, got t = {t}"),
        })
    }
}

/// Closed form of the length on `s = 0`:
/// `2 log((√(5t²−1) + 2t²) / ((2t−1)(1−t)))`.
pub fn axis_length(t: f64) -> Result<f64> {
    check_t(t)?;
    let num = (5.0 * t * t - 1.0).sqrt() + 2.0 * t * t;
    Ok(2.0 * (num.ln() - (2.0 * t - 1.0).ln() - (-t).ln_1p()))
}

/// The two pieces of `c` on the axis, split at the foot of the common
/// perpendicular of `c` and the symmetry axis.
///
/// `c₁` is signed: negative for `t > √2/2`, where `c` crosses the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CSplit {
    pub c1: f64,
    pub c2: f64,
    pub c: f64,
}

pub fn c_split(t: f64) -> Result<CSplit> {
    check_t(t)?;
    let root_d = ((4.0 * t * t - 1.0) * (1.0 - t * t)).sqrt();
    let num = (5.0 * t * t - 1.0).sqrt() + 2.0 * t * t;
    let c1 = ((2.0 * t + 1.0) * (1.0 - t) / root_d).ln();
    let c2 = (num / root_d).ln();
    Ok(CSplit {
        c1,
        c2,
        c: c_closed_form(t)?,
    })
}

/// `c = log((√(5t²−1) + 2t²) / ((2t−1)(1+t)))`.
pub fn c_closed_form(t: f64) -> Result<f64> {
    check_t(t)?;
    let num = (5.0 * t * t - 1.0).sqrt() + 2.0 * t * t;
    Ok(num.ln() - (2.0 * t - 1.0).ln() - t.ln_1p())
}

/// Measured quantities and residuals of the quarter-hexagon relations.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarterReport {
    pub t: f64,
    pub v: f64,
    pub h1: f64,
    pub h2: f64,
    pub c1: f64,
    pub c2: f64,
    pub residuals: Vec<(&'static str, f64)>,
}

impl QuarterReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

/// Builds the hexagon at `(t, 0)` for `t ∈ (1/2, √2/2)`, cuts out the
/// quarter bounded by the two symmetry axes, and measures the relations
/// that lead to the closed form.
///
/// `R`, `S` are the feet of the common perpendicular of side `c` and the
/// axis; `O` is the center. `v = |RS|`, `h₁ = |FR|`, `h₂ = |RO|`,
/// `c₁ = |V1 S|`, `c₂ = |S V2|`.
pub fn quarter_hexagon_check(t: f64) -> Result<QuarterReport> {
    if !(t > 0.5 && t < FRAC_1_SQRT_2) {
        return Err(Error::OutsideV {
            t,
            s: 0.0,
            reason: format!("quarter hexagon needs 1/2 < t < √2/2, got t = {t}"),
        });
    }
    let hex = build_hexagon(&make_vpoint(t, 0.0)?)?;
    let (v1, v2) = (hex.vertices[1], hex.vertices[2]);
    let axis = Geodesic::imaginary_axis();
    let side_c = Geodesic::through(v1, v2)?;
    let perp = common_perpendicular(&side_c, &axis)?;
    let foot = |g: &Geodesic| {
        perp.intersection(g)
            .ok_or_else(|| Error::Construction("perpendicular misses its geodesic".into()))
    };
    let r = foot(&axis)?;
    let s = foot(&side_c)?;
    let f = HPoint::I;
    let o = HPoint::new(0.0, (0.5 * hex.trace.translation_param).exp())?;

    let v = dist(r, s);
    let h1 = dist(f, r);
    let h2 = dist(r, o);
    let c1 = dist(v1, s);
    let c2 = dist(s, v2);
    let alpha = hex.alpha;
    let half_a = 0.5 * hex.a;
    let den = (4.0 * t * t - 1.0) * (1.0 - t * t);

    let residuals = vec![
        (
            "cosh v",
            (v.cosh() - half_a.cosh() * (PI - alpha).sin()).abs(),
        ),
        (
            "cosh h1",
            (h1.cosh() - c1.cosh() * (PI - alpha).sin()).abs(),
        ),
        (
            "cos(pi - alpha)",
            ((PI - alpha).cos() - h1.sinh() * v.sinh()).abs(),
        ),
        (
            "cosh h2",
            (h2.cosh() - c2.cosh() * (0.5 * alpha).sin()).abs(),
        ),
        (
            "cos(alpha/2)",
            ((0.5 * alpha).cos() - h2.sinh() * v.sinh()).abs(),
        ),
        ("cosh^2 c1", (c1.cosh().powi(2) - t * t / den).abs()),
        (
            "cosh^2 c2",
            (c2.cosh().powi(2) - (5.0 * t * t - 1.0) / den).abs(),
        ),
    ];
    Ok(QuarterReport {
        t,
        v,
        h1,
        h2,
        c1,
        c2,
        residuals,
    })
}

/// The minimum of the length function.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimumResult {
    pub t0: f64,
    pub s0: f64,
    pub length_min: f64,
    pub alpha0: f64,
    pub a0: f64,
    pub c0: f64,
    pub iterations: usize,
    /// `(δ, total(t₀, δ), total(t₀, −δ))` for the evenness probes.
    pub evenness: Vec<(f64, f64, f64)>,
}

impl MinimumResult {
    /// True if every probe off the axis is at least the axis value.
    pub fn evenness_ok(&self) -> bool {
        self.evenness
            .iter()
            .all(|&(_, p, m)| p >= self.length_min - 1e-12 && m >= self.length_min - 1e-12)
    }
}

pub const EVENNESS_PROBES: [f64; 2] = [0.01, 0.1];

/// Golden-section search of [`axis_length`] with tolerance `1e-12` in `t`.
pub fn minimize() -> Result<MinimumResult> {
    minimize_with_tol(1e-12)
}

pub fn minimize_with_tol(tol: f64) -> Result<MinimumResult> {
    let f = |t: f64| axis_length(t).unwrap_or(f64::INFINITY);
    let (t0, iterations) = golden_section(f, 0.5 + 1e-9, 1.0 - 1e-9, tol.max(1e-15));
    let length_min = axis_length(t0)?;
    let bigon = bigon_from_t(t0)?;
    let evenness = EVENNESS_PROBES
        .iter()
        .map(|&delta| {
            let plus = total_length(&make_vpoint(t0, delta)?)?.total;
            let minus = total_length(&make_vpoint(t0, -delta)?)?.total;
            Ok((delta, plus, minus))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimumResult {
        t0,
        s0: 0.0,
        length_min,
        alpha0: bigon.alpha,
        a0: bigon.a,
        c0: c_closed_form(t0)?,
        iterations,
        evenness,
    })
}

/// Minimizes a unimodal `f` on `[lo, hi]`; returns the midpoint of the
/// final bracket and the iteration count.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut it = 0;
    while hi - lo > tol && it < 500 {
        it += 1;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    (0.5 * (lo + hi), it)
}

/// Families of chart points that leave every compact set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryCase {
    /// `t → 1` on the axis.
    TToOne,
    /// Fixed `t̂ ∈ (√2/2, 1)`, `s ↘ −log(t̂/(1−t̂))` through region II.
    TMidHigh { t_hat: f64 },
    /// Fixed `t̂ ∈ (1/2, √2/2)`, `s ↘ −log(t̂/(1−t̂))` through region I.
    TMidLow { t_hat: f64 },
    /// `t ↗ √2/2`, `s → −log(√2+1)` inside region I.
    TSqrt2I,
    /// `t ↘ √2/2`, `s → −log(√2+1)` inside region II.
    TSqrt2II,
    /// `t ↘ √2/2` along region III, `s = −a/2`.
    TSqrt2III,
}

/// Default offset scale for the `t → √2/2` families.
pub const SQRT2_TAU: f64 = 0.1036;

impl BoundaryCase {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundaryCase::TToOne => "T_TO_ONE",
            BoundaryCase::TMidHigh { .. } => "T_MID_HIGH",
            BoundaryCase::TMidLow { .. } => "T_MID_LOW",
            BoundaryCase::TSqrt2I => "T_SQRT2_I",
            BoundaryCase::TSqrt2II => "T_SQRT2_II",
            BoundaryCase::TSqrt2III => "T_SQRT2_III",
        }
    }

    /// The six standard cases (`t̂ = 0.8` and `t̂ = 0.6` for the fixed-`t` ones).
    pub fn standard() -> [BoundaryCase; 6] {
        [
            BoundaryCase::TToOne,
            BoundaryCase::TMidHigh { t_hat: 0.8 },
            BoundaryCase::TMidLow { t_hat: 0.6 },
            BoundaryCase::TSqrt2I,
            BoundaryCase::TSqrt2II,
            BoundaryCase::TSqrt2III,
        ]
    }
}

impl fmt::Display for BoundaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCase::TMidHigh { t_hat } | BoundaryCase::TMidLow { t_hat } => {
                write!(f, "{}(t̂={t_hat})", self.tag())
            }
            _ => f.write_str(self.tag()),
        }
    }
}

const RESOLUTION: f64 = 1e-14;

/// The `k`-th point (`k ≥ 1`) of the sequence for `case`.
pub fn boundary_sequence(case: BoundaryCase, k: u32) -> Result<VPoint> {
    if k == 0 {
        return Err(Error::Construction("sequence index starts at 1".into()));
    }
    let p = 0.5f64.powi(k as i32);
    let exhausted = Err(Error::CaseExhausted { k });
    let (t, s) = match case {
        BoundaryCase::TToOne => {
            let gap = 0.5 * p;
            if gap < RESOLUTION {
                return exhausted;
            }
            (1.0 - gap, 0.0)
        }
        BoundaryCase::TMidHigh { t_hat } => {
            if !(t_hat > FRAC_1_SQRT_2 && t_hat < 1.0) {
                return Err(Error::OutsideV {
                    t: t_hat,
                    s: 0.0,
                    reason: "t̂ must lie in (√2/2, 1)".into(),
                });
            }
            let bound = chart_bound(t_hat);
            let gap = (bound - 0.5 * side_a(t_hat)) * p;
            if gap < RESOLUTION {
                return exhausted;
            }
            (t_hat, -bound + gap)
        }
        BoundaryCase::TMidLow { t_hat } => {
            if !(t_hat > 0.5 && t_hat < FRAC_1_SQRT_2) {
                return Err(Error::OutsideV {
                    t: t_hat,
                    s: 0.0,
                    reason: "t̂ must lie in (1/2, √2/2)".into(),
                });
            }
            let bound = chart_bound(t_hat);
            let gap = bound * p;
            if gap < RESOLUTION {
                return exhausted;
            }
            (t_hat, -bound + gap)
        }
        BoundaryCase::TSqrt2I => {
            let t = FRAC_1_SQRT_2 - SQRT2_TAU * p;
            let bound = chart_bound(t);
            let gap = bound * p;
            if gap < RESOLUTION || FRAC_1_SQRT_2 - t < RESOLUTION {
                return exhausted;
            }
            (t, -bound + gap)
        }
        BoundaryCase::TSqrt2II => {
            let t = FRAC_1_SQRT_2 + SQRT2_TAU * p;
            let gap = 0.5 * clearance_r_prime(t);
            if gap < RESOLUTION {
                return exhausted;
            }
            (t, -0.5 * side_a(t) - gap)
        }
        BoundaryCase::TSqrt2III => {
            let t = FRAC_1_SQRT_2 + SQRT2_TAU * p;
            if clearance_r_prime(t) < RESOLUTION {
                return exhausted;
            }
            (t, -0.5 * side_a(t))
        }
    };
    make_vpoint(t, s)
}

/// Lengths along the sequence for `k = 1..=k_max`, stopping early when the
/// sequence runs out of double precision.
pub fn length_sequence(case: BoundaryCase, k_max: u32) -> Vec<(u32, VPoint, f64)> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let Ok(v) = boundary_sequence(case, k) else {
            break;
        };
        let Ok(rep) = total_length(&v) else { break };
        out.push((k, v, rep.total));
    }
    out
}

/// True iff some `k ≤ k_max` has total length above `bound`.
pub fn divergence_check(case: BoundaryCase, bound: f64, k_max: u32) -> bool {
    for k in 1..=k_max {
        let Ok(v) = boundary_sequence(case, k) else {
            return false;
        };
        match total_length(&v) {
            Ok(rep) if rep.total > bound => return true,
            Ok(_) => {}
            Err(_) => return false,
        }
    }
    false
}

/// Forward ray `V1 → V2` of side `c`; used by probes that follow `c`.
pub fn side_c_ray(v: &VPoint) -> Result<Ray> {
    let h = build_hexagon(v)?;
    Ray::toward(h.vertices[1], h.vertices[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn closed_form_min_length() -> f64 {
        let r5 = 5f64.sqrt();
        2.0 * (((29.0 + 12.0 * r5) / 11.0).ln() + ((21.0 + 8.0 * r5) / 11.0).ln())
    }

    #[test]
    fn closed_form_examples() {
        let t0 = 0.3 * 5f64.sqrt();
        assert_abs_diff_eq!(
            axis_length(t0).unwrap(),
            closed_form_min_length(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            axis_length(0.8).unwrap(),
            6.273_334_661_946_547,
            epsilon = 1e-12
        );
        assert!(axis_length(0.5 + 1e-12).unwrap() > 50.0);
        assert!(axis_length(1.0 - 1e-12).unwrap() > 50.0);
        assert!(axis_length(0.5).is_err());

        assert_abs_diff_eq!(
            c_closed_form(t0).unwrap(),
            ((21.0 + 8.0 * 5f64.sqrt()) / 11.0).ln(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            c_closed_form(0.8).unwrap(),
            0.939_442_753_637_053_7,
            epsilon = 1e-12
        );
    }

    #[test]
    fn axis_identity_and_split() {
        for k in 1..60 {
            let t = 0.5 + 0.5 * k as f64 / 60.0;
            let lhs = axis_length(t).unwrap() - 2.0 * side_a(t) - 2.0 * c_closed_form(t).unwrap();
            assert!(lhs.abs() < 1e-12, "t = {t}: {lhs}");
            let sp = c_split(t).unwrap();
            assert_abs_diff_eq!(sp.c1 + sp.c2, sp.c, epsilon = 1e-12);
            if t < FRAC_1_SQRT_2 {
                assert!(sp.c1 > 0.0 && sp.c2 > 0.0);
            }
        }
    }

    #[test]
    fn quarter_hexagon() {
        for t in [0.55, 0.6, 0.68] {
            let rep = quarter_hexagon_check(t).unwrap();
            assert!(rep.max_residual() < 1e-8, "{rep:?}");
            let sp = c_split(t).unwrap();
            assert_abs_diff_eq!(rep.c1, sp.c1, epsilon = 1e-8);
            assert_abs_diff_eq!(rep.c2, sp.c2, epsilon = 1e-8);
        }
        assert!(quarter_hexagon_check(0.8).is_err());
    }

    #[test]
    fn minimizer() {
        let m = minimize().unwrap();
        assert!((m.t0 - 0.3 * 5f64.sqrt()).abs() < 1e-6);
        assert!((m.length_min - closed_form_min_length()).abs() < 1e-8);
        assert!(m.evenness_ok());
        let h = 1e-5;
        let f = |t: f64| axis_length(t).unwrap();
        assert!(f(m.t0 - h) > f(m.t0) && f(m.t0 + h) > f(m.t0));
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, _) = golden_section(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-8);
    }

    #[test]
    fn sequences_start_inside() {
        for case in BoundaryCase::standard() {
            let v = boundary_sequence(case, 1).unwrap();
            assert!(make_vpoint(v.t(), v.s()).is_ok(), "{case}");
        }
        assert!(boundary_sequence(BoundaryCase::TToOne, 0).is_err());
        assert!(matches!(
            boundary_sequence(BoundaryCase::TToOne, 60),
            Err(Error::CaseExhausted { k: 60 })
        ));
    }

    #[test]
    fn sequence_regions() {
        use crate::decomposition::{classify, Region};
        for k in 1..20 {
            let r = |c| classify(&boundary_sequence(c, k).unwrap());
            assert_eq!(r(BoundaryCase::TMidHigh { t_hat: 0.8 }), Region::II);
            assert_eq!(r(BoundaryCase::TMidLow { t_hat: 0.6 }), Region::I);
            assert_eq!(r(BoundaryCase::TSqrt2I), Region::I);
            assert_eq!(r(BoundaryCase::TSqrt2II), Region::II);
            assert_eq!(r(BoundaryCase::TSqrt2III), Region::III);
        }
    }

    #[test]
    fn divergence_examples() {
        assert!(divergence_check(BoundaryCase::TToOne, 30.0, 64));
        assert!(!divergence_check(BoundaryCase::TToOne, 30.0, 2));
        let v = boundary_sequence(BoundaryCase::TToOne, 20).unwrap();
        assert!(total_length(&v).unwrap().total > 14.0);
    }
}
