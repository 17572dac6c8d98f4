//! Command-line flags and their validation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use genstirling::{Complex64, FerrersBoard, Route};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "genstirling",
    version,
    about = "Generalized Stirling, Lah, rook and Eulerian number tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Emit the triangular table of a number family.
    Table(TableArgs),
    /// Run seeded identity suites and report residuals.
    Check(CheckArgs),
    /// Compare an elliptic family at the p, a, b -> 0 closed forms with its q-analogue.
    Degenerate(DegenerateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: Family,

    /// Largest row index; defaults to the column count of --board.
    #[arg(long)]
    pub n: Option<usize>,

    #[command(flatten)]
    pub params: ParamArgs,

    #[arg(long, value_parser = parse_route)]
    pub route: Option<Route>,

    /// Seed for the parameters that are not given explicitly.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// Comma-separated column heights of a Ferrers board.
    #[arg(long, value_parser = parse_board)]
    pub board: Option<FerrersBoard>,
    /// Complex parameters as `re,im` (or `re`).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub a: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub b: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub p: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub t: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    #[arg(long, default_value_t = 25)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Overrides the default tolerance of every numeric check.
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DegenerateArgs {
    #[arg(long, value_enum)]
    pub family: ChainFamily,

    #[arg(long)]
    pub n: Option<usize>,

    /// Numeric q; sampled from --seed when omitted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,

    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,

    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Family {
    Stirling,
    Eulerian,
    RwhitneyEulerian,
    Lah,
    Qstirling,
    Qeulerian,
    Qwhitney,
    QrwhitneyEulerian,
    Estirling,
    EshiftedStirling,
    StStirling,
    Erook,
    Elah,
    Eeulerian,
    ErwhitneyEulerian,
}

/// A family parameter that can be given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    M,
    R,
    Board,
    A,
    B,
    Q,
    P,
    S,
    T,
}

impl Param {
    pub fn flag(self) -> &'static str {
        match self {
            Param::M => "--m",
            Param::R => "--r",
            Param::Board => "--board",
            Param::A => "--a",
            Param::B => "--b",
            Param::Q => "--q",
            Param::P => "--p",
            Param::S => "--s",
            Param::T => "--t",
        }
    }
}

const ELLIPTIC: &[Param] = &[Param::A, Param::B, Param::Q, Param::P];
const ELLIPTIC_MR: &[Param] = &[Param::M, Param::R, Param::A, Param::B, Param::Q, Param::P];
const MR: &[Param] = &[Param::M, Param::R];

impl Family {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            Family::Stirling
                | Family::Eulerian
                | Family::RwhitneyEulerian
                | Family::Lah
                | Family::Qstirling
                | Family::Qeulerian
                | Family::Qwhitney
                | Family::QrwhitneyEulerian
        )
    }

    pub fn params(self) -> &'static [Param] {
        match self {
            Family::Stirling | Family::Eulerian | Family::Lah | Family::Qstirling | Family::Qeulerian => &[],
            Family::RwhitneyEulerian | Family::Qwhitney | Family::QrwhitneyEulerian => MR,
            Family::Estirling | Family::Elah | Family::Eeulerian => ELLIPTIC,
            Family::EshiftedStirling | Family::ErwhitneyEulerian => ELLIPTIC_MR,
            Family::StStirling => &[Param::M, Param::R, Param::S, Param::T],
            Family::Erook => &[Param::Board, Param::A, Param::B, Param::Q, Param::P],
        }
    }

    /// Supported routes; the first is the default.
    pub fn routes(self) -> &'static [Route] {
        use Route::*;
        match self {
            Family::Stirling | Family::Eulerian => &[Recurrence, Explicit],
            Family::RwhitneyEulerian => &[Recurrence, Engine],
            Family::Lah => &[Explicit, Oracle],
            Family::Qstirling => &[Recurrence, CarlitzSum, HSpecial],
            Family::Qeulerian => &[Recurrence, CarlitzSum],
            Family::Qwhitney => &[HSpecial],
            Family::QrwhitneyEulerian => &[Recurrence, Explicit, Engine],
            Family::Estirling => &[Recurrence, HSpecial, ExplicitCorollary, Oracle],
            Family::EshiftedStirling | Family::StStirling => &[HSpecial, Explicit, Oracle],
            Family::Erook => &[Explicit, Oracle],
            Family::Elah => &[Recurrence, Explicit, Oracle],
            Family::Eeulerian => &[Recurrence, Explicit, Engine],
            Family::ErwhitneyEulerian => &[Recurrence, Explicit],
        }
    }
}

impl ParamArgs {
    /// The parameters that were given, in flag order.
    pub fn given(&self) -> Vec<Param> {
        let flags = [
            (Param::M, self.m.is_some()),
            (Param::R, self.r.is_some()),
            (Param::Board, self.board.is_some()),
            (Param::A, self.a.is_some()),
            (Param::B, self.b.is_some()),
            (Param::Q, self.q.is_some()),
            (Param::P, self.p.is_some()),
            (Param::S, self.s.is_some()),
            (Param::T, self.t.is_some()),
        ];
        flags.into_iter().filter(|&(_, set)| set).map(|(p, _)| p).collect()
    }
}

impl TableArgs {
    /// Rejects parameters and routes the family does not take, and a
    /// missing size, before anything is computed.
    pub fn validate(&self) -> CliResult<(usize, Route)> {
        let family = self.family;
        for param in self.params.given() {
            if !family.params().contains(&param) {
                return Err(CliError::Config(format!(
                    "family {} does not take {}",
                    family.name(),
                    param.flag()
                )));
            }
        }
        let routes = family.routes();
        let route = self.route.unwrap_or(routes[0]);
        if !routes.contains(&route) {
            let names: Vec<&str> = routes.iter().map(|r| r.name()).collect();
            return Err(CliError::Config(format!(
                "route {route} is not available for {}; choose one of {}",
                family.name(),
                names.join(", ")
            )));
        }
        let n = match (self.n, &self.params.board) {
            (Some(n), Some(board)) if n != board.columns() => {
                return Err(CliError::Config(format!(
                    "--n {n} does not match the {} columns of --board",
                    board.columns()
                )))
            }
            (Some(n), _) => n,
            (None, Some(board)) => board.columns(),
            (None, None) => return Err(CliError::Config("--n is required".into())),
        };
        if n > MAX_N {
            return Err(CliError::Config(format!(
                "--n {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        Ok((n, route))
    }
}

/// Upper bound on table sizes accepted from the command line.
pub const MAX_N: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    Theta,
    EllipticIdentities,
    HRoutes,
    Connection,
    Rook,
    Lah,
    EulerianRoutes,
    Worpitzky,
    Degeneration,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Theta,
        Suite::EllipticIdentities,
        Suite::HRoutes,
        Suite::Connection,
        Suite::Rook,
        Suite::Lah,
        Suite::EulerianRoutes,
        Suite::Worpitzky,
        Suite::Degeneration,
    ];

    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// Families with a degeneration chain down to a q-analogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainFamily {
    Stirling,
    Eulerian,
    Lah,
    RwhitneyEulerian,
}

impl ChainFamily {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// `re,im` or a bare real part.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| {
        x.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("{x:?} is not a finite number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {s:?}")),
    }
}

pub fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("tolerance must be a positive real, got {s:?}")),
    }
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|e: genstirling::Error| e.to_string())
}

fn parse_board(s: &str) -> Result<FerrersBoard, String> {
    s.parse().map_err(|e: genstirling::Error| e.to_string())
}

/// `re,im` with round-trip precision, the inverse of [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}
