//! One function per subcommand. Data goes to stdout or files, nothing else.

use std::fs;
use std::io::Write;
use std::path::Path;

use fricke::hexagon::build_hexagon;
use fricke::lengths::{
    axis_length, length_sequence, minimize_with_tol, total_length, BoundaryCase,
};
use fricke::oracle::{oracle_min_length, solve_z, trace_word, word_length, GroupWord, TraceTriple};
use fricke::{classify, make_vpoint};

use crate::document::HexagonDocument;
use crate::error::{CliError, CliResult};
use crate::format::sig;
use crate::sweep::{self, SweepSpec};
use crate::verify::{self, Faults};

/// `println!` that reports a failed write instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*).map_err(CliError::Stdout)?
    };
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn hexagon(t: f64, s: f64, json: Option<&Path>, svg: Option<&Path>) -> CliResult<()> {
    let v = make_vpoint(t, s)?;
    let h = build_hexagon(&v)?;
    out!("t        {}", sig(t));
    out!("s        {}", sig(s));
    out!("region   {}", h.region);
    out!("alpha    {}", sig(h.alpha));
    out!("a        {}", sig(h.a));
    out!("a1       {}", sig(h.a1));
    out!("a2       {}", sig(h.a2));
    out!("c        {}", sig(h.c));
    out!("d        {}", sig(h.d));
    out!("total    {}", sig(h.total_length()));
    out!("area     {}", sig(h.area));
    out!("h        {}", sig(h.trace.translation_param));
    out!("steps    {}", h.trace.bisection_iterations);
    if let (Some(c1), Some(c2)) = (h.trace.sub_c1, h.trace.sub_c2) {
        out!("c1, c2   {}, {}", sig(c1), sig(c2));
    }
    if let Some(theta) = h.trace.theta {
        out!("theta    {}", sig(theta));
    }
    for (i, p) in h.vertices.iter().enumerate() {
        let (u, w) = p.to_disk();
        out!("V{i}       ({}, {})", sig(u), sig(w));
    }
    if let Some(path) = json {
        write_file(path, &HexagonDocument::from(&h).to_json())?;
    }
    if let Some(path) = svg {
        write_file(path, &crate::svg::render(&h))?;
    }
    Ok(())
}

pub fn length(t: f64, s: f64) -> CliResult<()> {
    let v = make_vpoint(t, s)?;
    let r = total_length(&v)?;
    out!("region {}", classify(&v));
    out!("a      {}", sig(r.a));
    out!("c      {}", sig(r.c));
    out!("d      {}", sig(r.d));
    out!("total  {}", sig(r.total));
    Ok(())
}

pub fn axis(t: f64) -> CliResult<()> {
    out!("{}", sig(axis_length(t)?));
    Ok(())
}

pub fn sweep(spec: SweepSpec, out: &Path) -> CliResult<()> {
    let rows = sweep::compute(&spec)?;
    sweep::write_csv(out, &rows)?;
    let min = rows.iter().map(|r| r.total).fold(f64::INFINITY, f64::min);
    out!(
        "{} rows written to {}; smallest total {}",
        rows.len(),
        out.display(),
        sig(min)
    );
    Ok(())
}

pub fn minimize(tol: f64) -> CliResult<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Domain(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let m = minimize_with_tol(tol)?;
    out!("t0      {}", sig(m.t0));
    out!("length  {}", sig(m.length_min));
    out!("alpha0  {}", sig(m.alpha0));
    out!("a0      {}", sig(m.a0));
    out!("c0      {}", sig(m.c0));
    out!("steps   {}", m.iterations);
    Ok(())
}

pub fn oracle_min(word: &GroupWord) -> CliResult<()> {
    let o = oracle_min_length(word);
    out!("word        {word}");
    out!("x, y, z     {}, {}, {}", sig(o.x), sig(o.y), sig(o.z));
    out!("branch      {:?}", o.branch);
    out!("min length  {}", sig(o.min_length));
    out!("evaluations {}", o.evaluations);
    if o.boundary_drift {
        out!("boundary drift: the search ran into x = 2 or y = 2, infimum not attained");
    }
    if *word == GroupWord::a3b2() {
        let m = minimize_with_tol(1e-12)?;
        out!("minimize    {}", sig(m.length_min));
        out!("|delta|     {}", sig((o.min_length - m.length_min).abs()));
    }
    Ok(())
}

pub fn oracle_trace(x: f64, y: f64, word: &GroupWord) -> CliResult<()> {
    let z = solve_z(x, y)?;
    let tr = TraceTriple::new(x, y, z)?;
    out!("z       {}", sig(z));
    out!("trace   {}", sig(trace_word(&tr, word)));
    out!("length  {}", sig(word_length(&tr, word)?));
    Ok(())
}

pub fn verify(grid: usize, probes: bool, faults: Faults) -> CliResult<()> {
    if grid < 2 {
        return Err(CliError::Domain(format!(
            "--grid must be at least 2, got {grid}"
        )));
    }
    let reports = verify::run(grid, probes, faults)?;
    for r in &reports {
        for c in &r.checks {
            out!(
                "{:<10} {:<44} max {:<20} {}",
                r.suite,
                c.name,
                sig(c.residual),
                if c.passed() { "ok" } else { "FAIL" }
            );
        }
    }
    match reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r.suite, c)))
    {
        None => Ok(()),
        Some((suite, c)) => Err(CliError::Verification(format!(
            "suite {suite}, check \"{}\": residual {} ≥ {} at {}",
            c.name,
            sig(c.residual),
            sig(c.tol),
            c.at
        ))),
    }
}

pub fn parse_case(tag: &str) -> CliResult<BoundaryCase> {
    BoundaryCase::standard()
        .into_iter()
        .find(|c| c.tag().eq_ignore_ascii_case(tag))
        .ok_or_else(|| {
            let tags: Vec<_> = BoundaryCase::standard().iter().map(|c| c.tag()).collect();
            CliError::Domain(format!(
                "unknown case {tag:?}; expected one of {}",
                tags.join(", ")
            ))
        })
}

pub fn probe(case: Option<BoundaryCase>, k_max: u32) -> CliResult<()> {
    let cases = match case {
        Some(c) => vec![c],
        None => BoundaryCase::standard().to_vec(),
    };
    out!("case,k,t,s,region,total");
    for c in cases {
        for (k, v, total) in length_sequence(c, k_max) {
            out!(
                "{},{k},{},{},{},{}",
                c.tag(),
                sig(v.t()),
                sig(v.s()),
                classify(&v),
                sig(total)
            );
        }
    }
    Ok(())
}
