//! The invariant suites behind `fricke verify`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use fricke::decomposition::{chart_bound, clearance_r, clearance_r_prime, side_a};
use fricke::hexagon::{build_hexagon, verify_hexagon, HexagonResult, VERIFY_TOL};
use fricke::hplane::{dist, reflect_across, translate_along, Geodesic, HPoint, Isometry};
use fricke::lengths::{axis_length, length_sequence, total_length, BoundaryCase};
use fricke::oracle::{
    solve_z, trace_by_matrices, trace_word, trace_word_exact, GroupWord, TraceTriple,
};
use fricke::{classify, make_vpoint, Region, VPoint};

/// Deliberate defects, for checking that the suites catch them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Flip the sign of the clearance `r`.
    pub clearance_sign: bool,
}

/// Largest residual of one named check within a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckMax {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    /// Where the worst residual occurred.
    pub at: String,
}

impl CheckMax {
    fn new(name: &str, tol: f64) -> Self {
        Self {
            name: name.into(),
            residual: 0.0,
            tol,
            at: String::new(),
        }
    }

    fn record(&mut self, residual: f64, at: impl FnOnce() -> String) {
        // NaN counts as a failure
        if !(residual <= self.residual) {
            self.residual = residual;
            self.at = at();
        }
    }

    pub fn passed(&self) -> bool {
        self.residual < self.tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckMax>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckMax::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckMax> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Interior `n × n` grid of the chart.
pub fn chart_grid(n: usize) -> Vec<VPoint> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let t = 0.5 + 0.5 * (i + 1) as f64 / (n + 1) as f64;
        let b = chart_bound(t);
        for j in 0..n {
            let s = -b + (j + 1) as f64 * 2.0 * b / (n + 1) as f64;
            if let Ok(v) = make_vpoint(t, s) {
                out.push(v);
            }
        }
    }
    out
}

fn at(v: &VPoint) -> String {
    format!("(t, s) = ({}, {})", v.t(), v.s())
}

/// Three points in the ball of hyperbolic radius 3 about `i`, spread over
/// the disk by the position of `v` in the chart.
fn sample_points(v: &VPoint) -> [HPoint; 3] {
    let u = (v.t() - 0.5) / 0.5;
    let w = (v.s() + v.bound()) / (2.0 * v.bound());
    let rho = 1.5f64.tanh();
    let at = |r: f64, th: f64| HPoint::from_disk(rho * r * th.cos(), rho * r * th.sin()).unwrap();
    [
        at(u, TAU * w),
        at(w, TAU * (u + 0.37)),
        at((u + w) * 0.5, TAU * (0.71 - w)),
    ]
}

fn hplane_suite(grid: &[VPoint]) -> SuiteReport {
    let mut sym = CheckMax::new("distance symmetric", 1e-12);
    let mut tri = CheckMax::new("triangle inequality", 1e-12);
    let mut iso = CheckMax::new("isometry preserves distance", 1e-10);
    let mut inv = CheckMax::new("reflection is an involution", 1e-10);
    for v in grid {
        let [p, q, r] = sample_points(v);
        sym.record((dist(p, q) - dist(q, p)).abs(), || at(v));
        tri.record(dist(p, r) - dist(p, q) - dist(q, r), || at(v));
        let turn = Isometry::half_turn(r);
        iso.record(
            (dist(turn.apply(p), turn.apply(q)) - dist(p, q)).abs(),
            || at(v),
        );
        let Ok(g) = Geodesic::through(p, q) else {
            continue;
        };
        let m = reflect_across(&g);
        iso.record((dist(m.apply(r), m.apply(q)) - dist(r, q)).abs(), || at(v));
        let slide = translate_along(&g, 1.0);
        iso.record(
            (dist(slide.apply(r), slide.apply(p)) - dist(r, p)).abs(),
            || at(v),
        );
        inv.record(dist(m.apply(m.apply(r)), r), || at(v));
    }
    SuiteReport {
        suite: "hplane",
        checks: vec![sym, tri, iso, inv],
    }
}

fn clearance_suite(grid: &[VPoint], faults: Faults) -> SuiteReport {
    let r_of = |t: f64| {
        if faults.clearance_sign {
            -clearance_r(t)
        } else {
            clearance_r(t)
        }
    };
    let mut r_geom = CheckMax::new("r = max(0, a/2 − bound)", 1e-12);
    let mut rp_geom = CheckMax::new("r′ = max(0, bound − a/2)", 1e-12);
    let mut vanish = CheckMax::new("r and r′ vanish at t = √2/2", 1e-12);
    let mut region_one = CheckMax::new("region I: a₁ > r and a₂ > r", f64::MIN_POSITIVE);
    let mut region_two = CheckMax::new("region II: 0 < |s| − a/2 < r′", f64::MIN_POSITIVE);
    let mut even = CheckMax::new("regions even in s", f64::MIN_POSITIVE);

    vanish.record(
        r_of(FRAC_1_SQRT_2)
            .abs()
            .max(clearance_r_prime(FRAC_1_SQRT_2).abs()),
        || "t = √2/2".into(),
    );
    for v in grid {
        let t = v.t();
        // half-width of region I minus half-width of the chart
        let gap = 0.5 * side_a(t) - chart_bound(t);
        r_geom.record((r_of(t) - gap.max(0.0)).abs(), || format!("t = {t}"));
        rp_geom.record((clearance_r_prime(t) - (-gap).max(0.0)).abs(), || {
            format!("t = {t}")
        });
        match classify(v) {
            Region::I if t < FRAC_1_SQRT_2 => {
                let r = r_of(t);
                let ok = v.a1() > r && v.a2() > r;
                region_one.record(if ok { 0.0 } else { 1.0 }, || at(v));
            }
            Region::II => {
                let excess = v.s().abs() - 0.5 * v.a();
                let ok = excess > 0.0 && excess < clearance_r_prime(t);
                region_two.record(if ok { 0.0 } else { 1.0 }, || at(v));
            }
            _ => {}
        }
        let ok = classify(v) == classify(&v.mirrored());
        even.record(if ok { 0.0 } else { 1.0 }, || at(v));
    }
    SuiteReport {
        suite: "clearance",
        checks: vec![r_geom, rp_geom, vanish, region_one, region_two, even],
    }
}

fn hexagon_suite(hexes: &[(VPoint, HexagonResult)]) -> SuiteReport {
    let mut checks: Vec<CheckMax> = Vec::new();
    let mut split = CheckMax::new("region II: c₁ + c₂ = crossing side", VERIFY_TOL);
    for (v, h) in hexes {
        for c in verify_hexagon(h).checks {
            let slot = match checks.iter_mut().position(|m| m.name == c.name) {
                Some(i) => &mut checks[i],
                None => {
                    checks.push(CheckMax::new(c.name, VERIFY_TOL));
                    checks.last_mut().unwrap()
                }
            };
            slot.record(c.residual, || at(v));
        }
        if let (Some(c1), Some(c2)) = (h.trace.sub_c1, h.trace.sub_c2) {
            let side = if v.s() > 0.0 { h.d } else { h.c };
            split.record((c1 + c2 - side).abs(), || at(v));
        }
    }
    checks.push(split);
    SuiteReport {
        suite: "hexagon",
        checks,
    }
}

fn lengths_suite(hexes: &[(VPoint, HexagonResult)]) -> SuiteReport {
    let mut even = CheckMax::new("length even in s", 1e-9);
    let mut axis = CheckMax::new("axis closed form", 1e-8);
    for (v, h) in hexes {
        match total_length(&v.mirrored()) {
            Ok(m) => even.record((m.total - h.total_length()).abs(), || at(v)),
            Err(_) => even.record(f64::INFINITY, || at(v)),
        }
    }
    let mut ts: Vec<f64> = hexes.iter().map(|(v, _)| v.t()).collect();
    ts.dedup();
    for t in ts {
        let built = make_vpoint(t, 0.0)
            .and_then(|v| total_length(&v))
            .map(|r| r.total);
        let closed = axis_length(t);
        let res = match (built, closed) {
            (Ok(b), Ok(c)) => (b - c).abs(),
            _ => f64::INFINITY,
        };
        axis.record(res, || format!("t = {t}"));
    }
    SuiteReport {
        suite: "lengths",
        checks: vec![even, axis],
    }
}

fn oracle_suite(grid: &[VPoint]) -> SuiteReport {
    let mut markov = CheckMax::new("Markov relation (relative)", 1e-10);
    let mut lift = CheckMax::new("recursion vs matrix trace (relative)", 1e-8);
    let mut exact = CheckMax::new("tr A³B² at (3,3,3) = 27", 0.5);
    exact.record(
        (trace_word_exact(3, 3, 3, &GroupWord::a3b2()) - 27).abs() as f64,
        || "(3, 3, 3)".into(),
    );
    let w = GroupWord::a3b2();
    for v in grid {
        // a trace pair per grid point; infeasible pairs are skipped
        let (x, y) = (2.5 + 10.0 * (v.t() - 0.5), 2.5 + 2.0 * v.s().abs());
        let Ok(z) = solve_z(x, y) else { continue };
        let rel = (x * x + y * y + z * z - x * y * z).abs() / (z * z);
        markov.record(rel, || format!("(x, y) = ({x}, {y})"));
        match TraceTriple::new(x, y, z) {
            Ok(tr) => {
                let (a, b) = (trace_word(&tr, &w), trace_by_matrices(&tr, &w));
                lift.record((a - b).abs() / a.abs().max(1.0), || {
                    format!("(x, y) = ({x}, {y})")
                });
            }
            Err(_) => lift.record(f64::INFINITY, || format!("(x, y) = ({x}, {y})")),
        }
    }
    SuiteReport {
        suite: "oracle",
        checks: vec![markov, lift, exact],
    }
}

fn probe_suite() -> SuiteReport {
    let checks = BoundaryCase::standard()
        .into_iter()
        .map(|case| {
            let seq = length_sequence(case, 64);
            let best = seq.iter().map(|r| r.2).fold(0.0, f64::max);
            let tail_ok = match seq.windows(2).rposition(|w| w[1].2 <= w[0].2) {
                None => true,
                Some(i) => i + 2 < seq.len(),
            };
            let mut c = CheckMax::new(
                &format!("{} exceeds 30 and ends increasing", case.tag()),
                0.5,
            );
            let res = if best > 30.0 && tail_ok { 0.0 } else { 1.0 };
            c.record(res, || format!("max length {best}, {} terms", seq.len()));
            c
        })
        .collect();
    SuiteReport {
        suite: "probes",
        checks,
    }
}

/// Runs every suite on an `n × n` grid, plus the boundary probes if asked.
pub fn run(n: usize, probes: bool, faults: Faults) -> Result<Vec<SuiteReport>, fricke::Error> {
    let grid = chart_grid(n);
    let hexes = grid
        .iter()
        .map(|v| build_hexagon(v).map(|h| (*v, h)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = vec![
        hplane_suite(&grid),
        clearance_suite(&grid, faults),
        hexagon_suite(&hexes),
        lengths_suite(&hexes),
        oracle_suite(&grid),
    ];
    if probes {
        out.push(probe_suite());
    }
    Ok(out)
}
