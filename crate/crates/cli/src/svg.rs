//! Poincaré-disk drawing of a hexagon as plain SVG 1.1.

use std::fmt::Write;

use fricke::hexagon::HexagonResult;
use fricke::hplane::HPoint;

/// Geodesic segment between two disk points as an SVG path `d` attribute.
///
/// The segment lies on the circle orthogonal to the unit circle through
/// both points, or on a diameter. SVG's y axis points down, so y is negated.
pub fn geodesic_path(p: (f64, f64), q: (f64, f64)) -> String {
    let (px, py) = (p.0, -p.1);
    let (qx, qy) = (q.0, -q.1);
    // centre c solves c·p = (|p|² + 1)/2 and c·q = (|q|² + 1)/2
    let det = px * qy - py * qx;
    let scale = (px * px + py * py)
        .sqrt()
        .max((qx * qx + qy * qy).sqrt())
        .max(1e-300);
    if det.abs() < 1e-12 * scale {
        return format!("M {px:.6} {py:.6} L {qx:.6} {qy:.6}");
    }
    let rp = 0.5 * (px * px + py * py + 1.0);
    let rq = 0.5 * (qx * qx + qy * qy + 1.0);
    let cx = (rp * qy - py * rq) / det;
    let cy = (px * rq - rp * qx) / det;
    let r = (cx * cx + cy * cy - 1.0).max(0.0).sqrt();
    let cross = (px - cx) * (qy - cy) - (py - cy) * (qx - cx);
    let sweep = u8::from(cross > 0.0);
    format!("M {px:.6} {py:.6} A {r:.6} {r:.6} 0 0 {sweep} {qx:.6} {qy:.6}")
}

fn disk(p: HPoint) -> (f64, f64) {
    p.to_disk()
}

/// Unit circle, six side arcs, and the glueing segment on the common
/// perpendicular.
pub fn render(h: &HexagonResult) -> String {
    let mut out = String::new();
    out.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
        "width=\"600\" height=\"600\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
        "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n",
    ));
    let names = ["a", "c", "d", "a", "c", "d"];
    for (i, name) in names.iter().enumerate() {
        let p = disk(h.vertices[i]);
        let q = disk(h.vertices[(i + 1) % 6]);
        let _ = writeln!(
            out,
            "  <path class=\"side\" data-side=\"{}\" d=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.006\"/>",
            name,
            geodesic_path(p, q)
        );
    }
    let (u, v) = (disk(h.cut.0), disk(h.cut.1));
    let _ = writeln!(
        out,
        "  <path class=\"axis\" d=\"{}\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"0.004\" stroke-dasharray=\"0.02 0.015\"/>",
        geodesic_path(u, v)
    );
    for p in &h.vertices {
        let (x, y) = disk(*p);
        let _ = writeln!(
            out,
            "  <circle class=\"vertex\" cx=\"{x:.6}\" cy=\"{:.6}\" r=\"0.012\"/>",
            -y
        );
    }
    out.push_str("</svg>\n");
    out
}
