#![allow(dead_code)]

use fricke::{make_vpoint, VPoint};

/// Interior `n × n` grid of the chart: `t` evenly spaced in `(1/2, 1)`, and
/// for each `t`, `s` evenly spaced strictly inside `(−bound, bound)`.
pub fn chart_grid(n: usize) -> Vec<VPoint> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let t = 0.5 + 0.5 * (i + 1) as f64 / (n + 1) as f64;
        let b = fricke::decomposition::chart_bound(t);
        for j in 0..n {
            let s = -b + (j + 1) as f64 * 2.0 * b / (n + 1) as f64;
            out.push(make_vpoint(t, s).expect("grid point inside the chart"));
        }
    }
    out
}

/// `n ≥ 2` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// `n` evenly spaced values strictly inside `(lo, hi)`.
pub fn open_linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| lo + (hi - lo) * k as f64 / (n + 1) as f64)
        .collect()
}
