use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use fricke::decomposition::{side_a, REGION_III_TOL};
use fricke::oracle::GroupWord;

use crate::commands;
use crate::error::CliResult;
use crate::format::sig;
use crate::sweep::SweepSpec;
use crate::verify::Faults;

#[derive(Debug, Parser)]
#[command(
    name = "fricke",
    version,
    about = "Hexagon coordinates on the once-punctured torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the hexagon at (t, s) and print its sides and angles.
    Hexagon {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: Decimal,
        /// Write the hexagon as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write a Poincaré-disk drawing as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Total length a + b + c + d at (t, s).
    Length {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s: Decimal,
    },
    /// Closed-form length on s = 0.
    Axis {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Evaluate the length on a grid and write CSV.
    Sweep {
        #[arg(long, default_value_t = 0.51)]
        t_min: f64,
        #[arg(long, default_value_t = 0.99)]
        t_max: f64,
        #[arg(long, default_value_t = 10)]
        t_steps: usize,
        #[arg(long, default_value_t = 10)]
        s_steps: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Minimize the length over the chart.
    Minimize {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Independent minimum or trace evaluation in trace coordinates.
    Oracle {
        /// Minimize the word length over the Markov surface.
        #[arg(long, conflicts_with = "trace")]
        min: bool,
        /// Complete (x, y) to a triple and evaluate the word.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        trace: Option<Vec<f64>>,
        #[arg(long, default_value = "A^3B^2")]
        word: GroupWord,
    },
    /// Run the invariant suites on an N × N chart grid.
    Verify {
        #[arg(long, default_value_t = 20)]
        grid: usize,
        /// Also run the six boundary divergence probes.
        #[arg(long)]
        probes: bool,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Print lengths along the boundary sequences as CSV.
    Probe {
        /// One of T_TO_ONE, T_MID_HIGH, T_MID_LOW, T_SQRT2_I, T_SQRT2_II, T_SQRT2_III.
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 64)]
        k_max: u32,
    },
}

/// A number together with the precision it was written with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decimal {
    pub value: f64,
    /// Half a unit in the last written digit.
    pub half_ulp: f64,
}

impl FromStr for Decimal {
    type Err = std::num::ParseFloatError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let value: f64 = text.parse()?;
        let mantissa = text.split(['e', 'E']).next().unwrap_or(text);
        let exp: i32 = text
            .split_once(['e', 'E'])
            .and_then(|(_, e)| e.parse().ok())
            .unwrap_or(0);
        let decimals = mantissa
            .split_once('.')
            .map_or(0, |(_, frac)| frac.len() as i32);
        Ok(Self {
            value,
            half_ulp: 0.5 * 10f64.powi(exp - decimals),
        })
    }
}

impl Decimal {
    /// `s`, moved onto `|s| = a/2` when it agrees with that threshold to
    /// the written precision.
    pub fn snapped(self, t: f64) -> f64 {
        if !(t > 0.5 && t < 1.0) {
            return self.value;
        }
        let half_a = 0.5 * side_a(t);
        let gap = (self.value.abs() - half_a).abs();
        if gap > REGION_III_TOL && gap <= self.half_ulp {
            eprintln!(
                "note: |s| matches a/2 = {} to the digits given; using the threshold",
                sig(half_a)
            );
            half_a.copysign(self.value)
        } else {
            self.value
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    ClearanceSign,
}

pub fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Hexagon { t, s, json, svg } => {
            commands::hexagon(t, s.snapped(t), json.as_deref(), svg.as_deref())
        }
        Command::Length { t, s } => commands::length(t, s.snapped(t)),
        Command::Axis { t } => commands::axis(t),
        Command::Sweep {
            t_min,
            t_max,
            t_steps,
            s_steps,
            out,
        } => commands::sweep(
            SweepSpec {
                t_min,
                t_max,
                t_steps,
                s_steps,
            },
            &out,
        ),
        Command::Minimize { tol } => commands::minimize(tol),
        Command::Oracle { min, trace, word } => match trace {
            Some(xy) => commands::oracle_trace(xy[0], xy[1], &word),
            None if min => commands::oracle_min(&word),
            None => Err(crate::CliError::Domain(
                "oracle needs --min or --trace X Y".into(),
            )),
        },
        Command::Verify {
            grid,
            probes,
            inject_fault,
        } => {
            let faults = Faults {
                clearance_sign: inject_fault == Some(Fault::ClearanceSign),
            };
            commands::verify(grid, probes, faults)
        }
        Command::Probe { case, k_max } => {
            let case = case.as_deref().map(commands::parse_case).transpose()?;
            commands::probe(case, k_max)
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        // a reader that stops early, as with `| head`
        Err(crate::CliError::Stdout(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
