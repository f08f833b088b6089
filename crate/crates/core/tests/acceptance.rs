//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fricke::decomposition::{bigon_area_quadrature, clearance_r, clearance_r_prime};
use fricke::hexagon::{build_hexagon, verify_hexagon};
use fricke::lengths::{
    axis_length, c_closed_form, length_sequence, minimize, quarter_hexagon_check, total_length,
    BoundaryCase,
};
use fricke::oracle::{
    oracle_min_length, trace_by_matrices, trace_word_exact, GroupWord, TraceTriple,
};
use fricke::{bigon_from_t, classify, make_vpoint, Region};

use common::{chart_grid, linspace, open_linspace};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn closed_form_min_length() -> f64 {
    let r5 = 5f64.sqrt();
    2.0 * (((29.0 + 12.0 * r5) / 11.0).ln() + ((21.0 + 8.0 * r5) / 11.0).ln())
}

fn minimizer() -> Outcome {
    let start = Instant::now();
    let m = match minimize() {
        Ok(m) => m,
        Err(e) => return outcome(false, format!("minimize failed: {e}")),
    };
    let took = start.elapsed();
    let dt = (m.t0 - 0.3 * 5f64.sqrt()).abs();
    let dl = (m.length_min - closed_form_min_length()).abs();
    outcome(
        dt < 1e-6 && dl < 1e-8 && took < Duration::from_secs(1),
        format!(
            "t0 = {:.12}, |Δt0| = {dt:.1e}, length = {:.12}, |Δl| = {dl:.1e}, {took:.2?}",
            m.t0, m.length_min
        ),
    )
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    let (mut worst_c, mut worst_len) = (0.0f64, 0.0f64);
    for t in open_linspace(0.51, 0.99, 50) {
        let v = make_vpoint(t, 0.0).unwrap();
        let h = match build_hexagon(&v) {
            Ok(h) => h,
            Err(e) => return outcome(false, format!("t = {t}: {e}")),
        };
        worst_c = worst_c.max((h.c - c_closed_form(t).unwrap()).abs());
        let total = total_length(&v).unwrap().total;
        worst_len = worst_len.max((total - axis_length(t).unwrap()).abs());
    }
    let took = start.elapsed();
    outcome(
        worst_c < 1e-8 && worst_len < 1e-8 && took < Duration::from_secs(10),
        format!("max |Δc| = {worst_c:.1e}, max |Δlength| = {worst_len:.1e}, {took:.2?}"),
    )
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let o = oracle_min_length(&GroupWord::a3b2());
    let took = start.elapsed();
    let gap = (o.min_length - closed_form_min_length()).abs();
    let gap_min = minimize()
        .map(|m| (o.min_length - m.length_min).abs())
        .unwrap_or(f64::INFINITY);
    outcome(
        gap_min < 1e-4 && took < Duration::from_secs(30),
        format!(
            "oracle = {:.12} at (x, y, z) = ({:.6}, {:.6}, {:.6}), |Δ| vs minimize = {gap_min:.1e}, vs exact = {gap:.1e}, {took:.2?}",
            o.min_length, o.x, o.y, o.z
        ),
    )
}

fn hexagon_invariants() -> Outcome {
    let mut worst = [0.0f64; 3];
    let names = ["opposite_sides", "angle_pattern", "area"];
    let grid = chart_grid(40);
    for v in &grid {
        let h = match build_hexagon(v) {
            Ok(h) => h,
            Err(e) => return outcome(false, format!("{v:?}: {e}")),
        };
        let report = verify_hexagon(&h);
        for (slot, name) in worst.iter_mut().zip(names) {
            *slot = slot.max(report.get(name).map_or(f64::INFINITY, |c| c.residual));
        }
    }
    outcome(
        worst.iter().all(|&r| r < 1e-9),
        format!(
            "{} hexagons, max residuals: sides {:.1e}, angles {:.1e}, area {:.1e}",
            grid.len(),
            worst[0],
            worst[1],
            worst[2]
        ),
    )
}

fn clearances() -> Outcome {
    let (r, rp) = (clearance_r(FRAC_1_SQRT_2), clearance_r_prime(FRAC_1_SQRT_2));
    // the clamps make both exactly zero there; check the underlying formula too
    let t = FRAC_1_SQRT_2;
    let raw = 0.5 * (-t).ln_1p() + 0.5 * t.ln_1p() - t.ln();
    let mut samples = 0;
    let mut margin = f64::INFINITY;
    for v in chart_grid(60) {
        if classify(&v) == Region::I && v.t() < FRAC_1_SQRT_2 {
            let r = clearance_r(v.t());
            margin = margin.min(v.a1() - r).min(v.a2() - r);
            samples += 1;
        }
    }
    outcome(
        r.abs() < 1e-12 && rp.abs() < 1e-12 && raw.abs() < 1e-12 && margin > 0.0 && samples > 0,
        format!("r(√2/2) = {r:.1e}, r′(√2/2) = {rp:.1e}, unclamped {raw:.1e}, {samples} region I samples, min(a_i − r) = {margin:.3e}"),
    )
}

fn quarter_hexagon() -> Outcome {
    let mut worst = 0.0f64;
    for t in open_linspace(0.51, 0.70, 20) {
        match quarter_hexagon_check(t) {
            Ok(q) => worst = worst.max(q.max_residual()),
            Err(e) => return outcome(false, format!("t = {t}: {e}")),
        }
    }
    outcome(
        worst < 1e-8,
        format!("20 values of t, max residual {worst:.1e}"),
    )
}

fn properness() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for case in BoundaryCase::standard() {
        let seq = length_sequence(case, 64);
        let first_over = seq.iter().find(|r| r.2 > 30.0).map(|r| r.0);
        let last = seq.last().map_or(0.0, |r| r.2);
        let increasing_from = seq
            .windows(2)
            .rposition(|w| w[1].2 <= w[0].2)
            .map_or(1, |i| seq[i + 1].0);
        let case_ok = first_over.is_some() && increasing_from < seq.last().map_or(0, |r| r.0);
        ok &= case_ok;
        parts.push(format!(
            "{}: >30 at k = {}, last {last:.2}, increasing from k = {increasing_from}",
            case.tag(),
            first_over.map_or("never".into(), |k| k.to_string())
        ));
    }
    outcome(ok, parts.join("; "))
}

fn cusp_constants() -> Outcome {
    let a = bigon_from_t(FRAC_1_SQRT_2).map(|b| b.a).unwrap_or(f64::NAN);
    let da = (a - 2.0 * (SQRT_2 + 1.0).ln()).abs();
    let mut worst = 0.0f64;
    for t in linspace(0.52, 0.98, 24) {
        match build_hexagon(&make_vpoint(t, 0.0).unwrap()) {
            Ok(h) => worst = worst.max((h.area + bigon_area_quadrature(t) - 2.0 * PI).abs()),
            Err(e) => return outcome(false, format!("t = {t}: {e}")),
        }
    }
    outcome(
        da < 1e-12 && worst < 1e-6,
        format!("|a(√2/2) − 2 log(√2+1)| = {da:.1e}, max |hexagon + bigon − 2π| = {worst:.1e}"),
    )
}

fn trace_recursion() -> Outcome {
    let w = GroupWord::a3b2();
    let exact = trace_word_exact(3, 3, 3, &w);
    let lifted = trace_by_matrices(&TraceTriple::new(3.0, 3.0, 3.0).unwrap(), &w);
    let gap = (lifted - 27.0).abs();
    outcome(
        exact == 27 && gap < 1e-8,
        format!("integer recursion = {exact}, matrix lift = {lifted:.12}, |Δ| = {gap:.1e}"),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("minimizer", minimizer),
        ("closed form vs construction", closed_forms),
        ("oracle agreement", oracle_agreement),
        ("hexagon invariants", hexagon_invariants),
        ("clearance identities", clearances),
        ("quarter-hexagon relations", quarter_hexagon),
        ("properness probes", properness),
        ("cusp constants", cusp_constants),
        ("trace recursion", trace_recursion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
