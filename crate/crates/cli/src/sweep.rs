//! Grid evaluation of the length function, written as CSV.

use std::path::Path;

use fricke::decomposition::chart_bound;
use fricke::lengths::total_length;
use fricke::{classify, make_vpoint, Region};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::sig;

pub const HEADER: [&str; 7] = ["t", "s", "region", "a", "c", "d", "total"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub s: f64,
    pub region: Region,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub s_steps: usize,
}

impl SweepSpec {
    fn validate(&self) -> CliResult<()> {
        let inside = |t: f64| t > 0.5 && t < 1.0;
        if !(inside(self.t_min) && inside(self.t_max) && self.t_min <= self.t_max) {
            return Err(CliError::Domain(format!(
                "t-range [{}, {}] must satisfy 1/2 < t-min ≤ t-max < 1",
                sig(self.t_min),
                sig(self.t_max)
            )));
        }
        if self.t_steps < 2 || self.s_steps < 2 {
            return Err(CliError::Domain(
                "t-steps and s-steps must be at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Grid points sorted by `t` then `s`; `s` stays one step inside the chart.
    pub fn points(&self) -> CliResult<Vec<(f64, f64)>> {
        self.validate()?;
        let mut out = Vec::with_capacity(self.t_steps * self.s_steps);
        for i in 0..self.t_steps {
            let t = self.t_min + (self.t_max - self.t_min) * i as f64 / (self.t_steps - 1) as f64;
            let b = chart_bound(t);
            let ds = 2.0 * b / (self.s_steps + 1) as f64;
            out.extend((1..=self.s_steps).map(|j| (t, -b + j as f64 * ds)));
        }
        Ok(out)
    }
}

/// Rows for every grid point inside the chart, in grid order.
pub fn compute(spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    let rows = spec
        .points()?
        .par_iter()
        .filter_map(|&(t, s)| {
            let v = make_vpoint(t, s).ok()?;
            Some(total_length(&v).map(|r| SweepRow {
                t,
                s,
                region: classify(&v),
                a: r.a,
                c: r.c,
                d: r.d,
                total: r.total,
            }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows)
}

pub fn write_csv(path: &Path, rows: &[SweepRow]) -> CliResult<()> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            sig(r.t),
            sig(r.s),
            r.region.to_string(),
            sig(r.a),
            sig(r.c),
            sig(r.d),
            sig(r.total),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>, csv::Error> {
    csv::Reader::from_path(path)?.deserialize().collect()
}
