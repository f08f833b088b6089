//! Independent check through trace coordinates.
//!
//! A marked structure on the once-punctured torus is a triple `(x, y, z)` of
//! traces of `A`, `B`, `AB` on the Markov surface `x² + y² + z² = xyz`
//! (commutator trace `−2`). The length of a word is `2 arccosh(|tr|/2)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the Markov relation for a valid triple.
pub const MARKOV_TOL: f64 = 1e-9;
/// Upper end of the search box for `x` and `y`.
pub const SEARCH_MAX: f64 = 1000.0;
/// A search result closer than this to `x = 2` or `y = 2` is flagged.
pub const DRIFT_TOL: f64 = 1e-3;
pub const SEARCH_STARTS: usize = 20;

/// Traces `(x, y, z)` of `A`, `B`, `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TraceTriple {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for v in [x, y, z] {
            if !(v > 2.0) {
                return Err(Error::NotHyperbolic(v));
            }
        }
        let t = Self { x, y, z };
        let r = t.markov_residual();
        if r.abs() > MARKOV_TOL * (1.0 + x * y * z) {
            return Err(Error::Infeasible {
                x,
                y,
                discriminant: r,
            });
        }
        Ok(t)
    }

    /// `x² + y² + z² − xyz`.
    pub fn markov_residual(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z - self.x * self.y * self.z
    }
}

/// Which root of `z² − xyz + x² + y² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Larger,
    Smaller,
}

fn discriminant(x: f64, y: f64) -> f64 {
    x * x * y * y - 4.0 * x * x - 4.0 * y * y
}

/// The larger root `z = (xy + √(x²y² − 4x² − 4y²)) / 2`.
pub fn solve_z(x: f64, y: f64) -> Result<f64> {
    solve_z_branch(x, y, Branch::Larger)
}

pub fn solve_z_branch(x: f64, y: f64, branch: Branch) -> Result<f64> {
    let disc = discriminant(x, y);
    if !(x > 2.0 && y > 2.0) || disc < 0.0 || !disc.is_finite() {
        return Err(Error::Infeasible {
            x,
            y,
            discriminant: disc,
        });
    }
    let root = disc.sqrt();
    let large = 0.5 * (x * y + root);
    Ok(match branch {
        Branch::Larger => large,
        // Product of the roots is x² + y².
        Branch::Smaller => (x * x + y * y) / large,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
}

/// A positive word in `A`, `B`, stored as blocks `(letter, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    blocks: Vec<(Letter, u32)>,
}

impl GroupWord {
    pub fn new(blocks: Vec<(Letter, u32)>) -> Result<Self> {
        let blocks: Vec<_> = blocks.into_iter().filter(|b| b.1 > 0).collect();
        if blocks.is_empty() {
            return Err(Error::InvalidWord("word is empty".into()));
        }
        Ok(Self {
            blocks: merge_cyclic(blocks),
        })
    }

    /// `A³B²`.
    pub fn a3b2() -> Self {
        Self::new(vec![(Letter::A, 3), (Letter::B, 2)]).expect("nonempty")
    }

    pub fn blocks(&self) -> &[(Letter, u32)] {
        &self.blocks
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.blocks
            .iter()
            .flat_map(|&(l, n)| std::iter::repeat_n(l, n as usize))
            .collect()
    }

    /// The word read from position `k` onward (a conjugate).
    pub fn rotated(&self, k: usize) -> Self {
        let mut letters = self.letters();
        let n = letters.len();
        letters.rotate_left(k % n);
        Self::new(letters.into_iter().map(|l| (l, 1)).collect()).expect("nonempty")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(l, n) in &self.blocks {
            let c = match l {
                Letter::A => 'A',
                Letter::B => 'B',
            };
            if n == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{n}")?;
            }
        }
        Ok(())
    }
}

/// Accepts `AAABB`, `A3B2`, `A^3B^2` and `A³B²`.
impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sup = |c: char| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c);
        let mut blocks = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            let letter = match c {
                'A' | 'a' => Letter::A,
                'B' | 'b' => Letter::B,
                _ => return Err(Error::InvalidWord(format!("unexpected {c:?} in {s:?}"))),
            };
            if chars.peek() == Some(&'^') {
                chars.next();
            }
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                } else if let Some(v) = sup(d) {
                    digits.push(char::from(b'0' + v as u8));
                } else {
                    break;
                }
                chars.next();
            }
            let n = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::InvalidWord(format!("bad exponent in {s:?}")))?
            };
            blocks.push((letter, n));
        }
        Self::new(blocks)
    }
}

fn merge_cyclic(blocks: Vec<(Letter, u32)>) -> Vec<(Letter, u32)> {
    let mut out: Vec<(Letter, u32)> = Vec::with_capacity(blocks.len());
    for (l, n) in blocks {
        match out.last_mut() {
            Some(last) if last.0 == l => last.1 += n,
            _ => out.push((l, n)),
        }
    }
    if out.len() > 1 && out[0].0 == out[out.len() - 1].0 {
        let (_, n) = out.pop().expect("len > 1");
        out[0].1 += n;
    }
    out
}

/// Arithmetic needed by the trace recursion; lets the same code run in
/// exact integers and in floating point.
pub trait TraceRing:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + From<i32>
{
}
impl<T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + From<i32>> TraceRing for T {}

/// `p_n(t)` with `p_0 = 0`, `p_1 = 1`, `p_{n+1} = t p_n − p_{n−1}`, so that
/// `M^n = p_n M − p_{n−1} I` for a unimodular `M` with trace `t`.
fn cheb<T: TraceRing>(t: T, n: u32) -> (T, T) {
    let (mut prev, mut cur) = (T::from(0), T::from(1));
    if n == 0 {
        return (T::from(-1), T::from(0));
    }
    for _ in 1..n {
        let next = t * cur - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

fn trace_blocks<T: TraceRing>(tx: T, ty: T, tz: T, blocks: &[(Letter, u32)]) -> T {
    let blocks = merge_cyclic(blocks.to_vec());
    let tr_letter = |l: Letter| match l {
        Letter::A => tx,
        Letter::B => ty,
    };
    match blocks.as_slice() {
        [] => T::from(2),
        [(l, n)] => {
            let (pn, pn1) = cheb(tr_letter(*l), *n);
            pn * tr_letter(*l) - T::from(2) * pn1
        }
        _ => {
            if let Some(i) = blocks.iter().position(|b| b.1 >= 2) {
                // tr(M^n W) = p_n tr(M W) − p_{n−1} tr(W)
                let (l, n) = blocks[i];
                let (pn, pn1) = cheb(tr_letter(l), n);
                let mut once = blocks.clone();
                once[i].1 = 1;
                let mut none = blocks.clone();
                none.remove(i);
                pn * trace_blocks(tx, ty, tz, &once) - pn1 * trace_blocks(tx, ty, tz, &none)
            } else {
                // Alternating exponent-one word: (AB)^k.
                let k = (blocks.len() / 2) as u32;
                let (pk, pk1) = cheb(tz, k);
                pk * tz - T::from(2) * pk1
            }
        }
    }
}

/// Trace of the word by Cayley–Hamilton recursion.
pub fn trace_word(tr: &TraceTriple, w: &GroupWord) -> f64 {
    trace_blocks(tr.x, tr.y, tr.z, w.blocks())
}

/// The same recursion in exact integer arithmetic.
pub fn trace_word_exact(x: i128, y: i128, z: i128, w: &GroupWord) -> i128 {
    trace_blocks(x, y, z, w.blocks())
}

/// Translation length `2 arccosh(|tr| / 2)`.
pub fn length_from_trace(trace: f64) -> Result<f64> {
    if !(trace.abs() > 2.0) {
        return Err(Error::NotHyperbolic(trace));
    }
    Ok(2.0 * (0.5 * trace.abs()).acosh())
}

pub fn word_length(tr: &TraceTriple, w: &GroupWord) -> Result<f64> {
    length_from_trace(trace_word(tr, w))
}

/// Row-major 2×2 matrix.
pub type Mat2 = [f64; 4];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// Inverse of a unimodular matrix.
pub fn mat_inv(a: &Mat2) -> Mat2 {
    [a[3], -a[1], -a[2], a[0]]
}

pub fn mat_trace(a: &Mat2) -> f64 {
    a[0] + a[3]
}

/// `A = [[x, 1], [−1, 0]]`, `B = [[0, b], [−1/b, y]]` with `b + 1/b = −z`.
pub fn matrix_lift(tr: &TraceTriple) -> (Mat2, Mat2) {
    let b = 0.5 * (-tr.z - (tr.z * tr.z - 4.0).sqrt());
    ([tr.x, 1.0, -1.0, 0.0], [0.0, b, -1.0 / b, tr.y])
}

/// Trace of the explicit product of the lifted matrices.
pub fn trace_by_matrices(tr: &TraceTriple, w: &GroupWord) -> f64 {
    let (a, b) = matrix_lift(tr);
    let m = w.letters().iter().fold([1.0, 0.0, 0.0, 1.0], |acc, l| {
        mat_mul(&acc, if *l == Letter::A { &a } else { &b })
    });
    mat_trace(&m)
}

/// `tr(A B A⁻¹ B⁻¹)` of the lift.
pub fn commutator_trace(tr: &TraceTriple) -> f64 {
    let (a, b) = matrix_lift(tr);
    let m = mat_mul(&mat_mul(&a, &b), &mat_mul(&mat_inv(&a), &mat_inv(&b)));
    mat_trace(&m)
}

/// Best point found by [`oracle_min_length`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleMinimum {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub branch: Branch,
    pub min_length: f64,
    /// True if the best point sits within [`DRIFT_TOL`] of `x = 2` or `y = 2`.
    pub boundary_drift: bool,
    pub evaluations: usize,
}

fn objective(w: &GroupWord, x: f64, y: f64, branch: Branch) -> f64 {
    if !(x > 2.0 && x <= SEARCH_MAX && y > 2.0 && y <= SEARCH_MAX) {
        return f64::INFINITY;
    }
    let Ok(z) = solve_z_branch(x, y, branch) else {
        return f64::INFINITY;
    };
    let tr = TraceTriple { x, y, z };
    word_length(&tr, w).unwrap_or(f64::INFINITY)
}

/// Compass search from `(u, v)`.
fn pattern_search(f: impl Fn(f64, f64) -> f64, mut u: f64, mut v: f64) -> (f64, f64, f64, usize) {
    let mut fu = f(u, v);
    let mut evals = 1;
    let mut step = 0.5;
    while step > 1e-13 && evals < 200_000 {
        let mut moved = false;
        for (du, dv) in [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (-1.0, 1.0),
        ] {
            let (cu, cv) = (u + du * step, v + dv * step);
            let fc = f(cu, cv);
            evals += 1;
            if fc < fu {
                u = cu;
                v = cv;
                fu = fc;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (u, v, fu, evals)
}

/// Deterministic starting points, log-spaced over `[2.2, 60]` via a Halton
/// sequence, pushed up the diagonal until feasible.
fn starts(n: usize) -> Vec<(f64, f64)> {
    let halton = |mut i: usize, b: usize| {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= b as f64;
            r += f * (i % b) as f64;
            i /= b;
        }
        r
    };
    let (lo, hi) = (2.2f64.ln(), 60f64.ln());
    (1..=n)
        .map(|i| {
            let mut x = (lo + (hi - lo) * halton(i, 2)).exp();
            let mut y = (lo + (hi - lo) * halton(i, 3)).exp();
            while discriminant(x, y) < 0.0 {
                x *= 1.1;
                y *= 1.1;
            }
            (x, y)
        })
        .collect()
}

/// Minimizes the length of `w` over the Markov surface with `2 < x, y ≤
/// 1000`, from [`SEARCH_STARTS`] starts on each root branch.
///
/// The search runs in `(ln(x − 2), ln(y − 2))`, where the edge of the
/// feasible region near `x = 2` or `y = 2` is close to a straight line.
pub fn oracle_min_length(w: &GroupWord) -> OracleMinimum {
    let jobs: Vec<(f64, f64, Branch)> = starts(SEARCH_STARTS)
        .into_iter()
        .flat_map(|(x, y)| [(x, y, Branch::Larger), (x, y, Branch::Smaller)])
        .collect();
    let runs: Vec<(f64, f64, f64, usize, Branch)> = jobs
        .par_iter()
        .map(|&(x0, y0, br)| {
            let f = |u: f64, v: f64| objective(w, 2.0 + u.exp(), 2.0 + v.exp(), br);
            let (u, v, fx, ev) = pattern_search(f, (x0 - 2.0).ln(), (y0 - 2.0).ln());
            (2.0 + u.exp(), 2.0 + v.exp(), fx, ev, br)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.3).sum();
    let &(x, y, min_length, _, branch) = runs
        .iter()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("at least one start");
    let z = solve_z_branch(x, y, branch).unwrap_or(f64::NAN);
    OracleMinimum {
        x,
        y,
        z,
        branch,
        min_length,
        boundary_drift: x - 2.0 < DRIFT_TOL || y - 2.0 < DRIFT_TOL,
        evaluations,
    }
}
