use fricke::hplane::{
    direction_toward, dist, interior_angle, polygon_area, quad_opposite_side, reflect_across,
    translate_along, trirectangle_angle, Geodesic, HPoint, HPolygon, Isometry, Ray,
};
use proptest::prelude::*;

/// Points within hyperbolic distance 3 of i, uniform in the disk model.
fn point() -> impl Strategy<Value = HPoint> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(u, th)| {
        let rho = 1.5f64.tanh() * u.sqrt();
        HPoint::from_disk(rho * th.cos(), rho * th.sin()).unwrap()
    })
}

fn isometry() -> impl Strategy<Value = Isometry> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, any::<bool>()).prop_filter_map(
        "well-conditioned matrix",
        |(a, b, c, flip)| {
            if a.abs() < 0.1 {
                return None;
            }
            // d solves ad - bc = ±1
            let det = if flip { -1.0 } else { 1.0 };
            let d = (det + b * c) / a;
            Isometry::from_matrix(a, b, c, d).ok()
        },
    )
}

proptest! {
    #[test]
    fn distance_is_a_metric(p in point(), q in point(), r in point()) {
        prop_assert!((dist(p, q) - dist(q, p)).abs() < 1e-12);
        prop_assert!(dist(p, r) <= dist(p, q) + dist(q, r) + 1e-12);
    }

    #[test]
    fn isometries_preserve_distance(g in isometry(), p in point(), q in point()) {
        let d0 = dist(p, q);
        let d1 = dist(g.apply(p), g.apply(q));
        prop_assert!((d0 - d1).abs() < 1e-10 * d0.max(1.0), "{d0} vs {d1}");
    }

    #[test]
    fn translations_preserve_distance(p in point(), q in point(), r in point(), s in -3.0..3.0f64) {
        prop_assume!(dist(p, q) > 1e-3);
        let g = Geodesic::through(p, q).unwrap();
        let t = translate_along(&g, s);
        prop_assert!((dist(t.apply(p), t.apply(q)) - dist(p, q)).abs() < 1e-9);
        prop_assert!((dist(p, t.apply(p)) - s.abs()).abs() < 1e-9);
        prop_assert!((dist(r, q) - dist(t.apply(r), t.apply(q))).abs() < 1e-9 * dist(r, q).max(1.0));
    }

    #[test]
    fn reflection_is_an_involution(p in point(), q in point(), r in point()) {
        prop_assume!(dist(p, q) > 1e-3);
        let g = Geodesic::through(p, q).unwrap();
        let m = reflect_across(&g);
        let back = m.apply(m.apply(r));
        prop_assert!(dist(back, r) < 1e-10, "moved by {}", dist(back, r));
        prop_assert!(m.is_orientation_reversing());
    }

    #[test]
    fn triangle_area_is_additive(
        p in point(), q in point(), r in point(), lam in 0.05..0.95f64,
    ) {
        let Ok(whole) = HPolygon::from_points(&[p, q, r]).and_then(|t| polygon_area(&t)) else {
            return Ok(());
        };
        prop_assume!(whole > 1e-6);
        // split point on side qr at fraction lam of its length
        let m = Ray::toward(q, r).unwrap().point_at(lam * dist(q, r));
        let left = HPolygon::from_points(&[p, q, m]).and_then(|t| polygon_area(&t));
        let right = HPolygon::from_points(&[p, m, r]).and_then(|t| polygon_area(&t));
        if let (Ok(l), Ok(rr)) = (left, right) {
            prop_assert!((l + rr - whole).abs() < 1e-10, "{l} + {rr} vs {whole}");
        }
    }
}

fn unit_circle_point(u: f64) -> HPoint {
    HPoint::new(u.tanh(), 1.0 / u.cosh()).unwrap()
}

/// Builds the quadrilateral P = i, Q = i·e^d, A on the perpendicular at P at
/// distance p, ray from A at angle α, B where it meets the perpendicular at
/// Q. Returns (angle at B, |AB|) when the ray reaches that perpendicular.
fn quad_from_p(alpha: f64, d: f64, p: f64) -> Option<(f64, f64)> {
    let (pp, qq) = (HPoint::I, HPoint::new(0.0, d.exp()).unwrap());
    let a = unit_circle_point(p);
    let toward_p = direction_toward(a, pp).ok()?;
    // the interior side is outside the unit circle
    let ray = [toward_p - alpha, toward_p + alpha]
        .into_iter()
        .map(|dir| Ray::new(a, dir))
        .find(|r| r.point_at(1e-3).to_complex().norm() > 1.0)?;
    let outer = Geodesic::semicircle(0.0, d.exp()).ok()?;
    let b = ray.intersect_geodesic(&outer)?;
    if b.x() <= 0.0 {
        return None;
    }
    Some((interior_angle(b, a, qq).ok()?, dist(a, b)))
}

/// Side c found by bisecting on p until the angle at B equals β; `None`
/// when no convex quadrilateral has these angles.
fn measured_c(alpha: f64, beta: f64, d: f64) -> Option<f64> {
    // valid p form an interval on which the angle at B decreases to 0
    let mut lo = (1..1200)
        .map(|k| k as f64 * 0.01)
        .find(|&p| matches!(quad_from_p(alpha, d, p), Some((b, _)) if b > beta))?;
    let mut hi = 12.0;
    let mut last = f64::NAN;
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        match quad_from_p(alpha, d, mid) {
            Some((b_angle, c)) if b_angle > beta => {
                lo = mid;
                last = c;
            }
            _ => hi = mid,
        }
    }
    Some(last)
}

#[test]
fn quad_side_matches_numeric_construction() {
    let grid = [0.3, 0.7, 1.1, 1.5, 1.9];
    let mut checked = 0;
    for &alpha in &grid {
        for &beta in &grid {
            if alpha + beta >= std::f64::consts::PI - 0.2 {
                continue;
            }
            for d in [0.2, 0.8, 1.5] {
                let formula = quad_opposite_side(alpha, beta, d).unwrap();
                let Some(built) = measured_c(alpha, beta, d) else {
                    continue;
                };
                assert!(
                    (formula - built).abs() < 1e-9,
                    "α={alpha} β={beta} d={d}: {formula} vs {built}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "only {checked} quadrilaterals built");
}

#[test]
fn trirectangle_matches_numeric_construction() {
    for a in [0.1f64, 0.3, 0.5, 0.7] {
        for b in [0.1f64, 0.3, 0.5, 0.7] {
            // right angle at i; sides along the imaginary axis and the unit circle
            let outer = Geodesic::semicircle(0.0, a.exp()).unwrap();
            let centre = 1.0 / b.tanh();
            let side = Geodesic::semicircle(centre, 1.0 / b.sinh()).unwrap();
            let far = outer.intersection(&side).expect("finite fourth vertex");
            let top = HPoint::new(0.0, a.exp()).unwrap();
            let gamma = interior_angle(far, top, unit_circle_point(b)).unwrap();
            let formula = trirectangle_angle(a, b).unwrap();
            assert!(
                (gamma - formula).abs() < 1e-9,
                "a={a} b={b}: {gamma} vs {formula}"
            );
        }
    }
}
