mod commands;
mod error;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Parser, Debug, Serialize)]
#[command(name = "symfq", version, about = "Symmetric polynomial systems over finite fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Number of contiguous enumeration shards for point counts.
    #[arg(long, global = true, default_value_t = 1)]
    pub shards: usize,
    /// Largest number of enumerated items per experiment.
    #[arg(long, global = true, default_value_t = symfq::counting::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest field order accepted.
    #[arg(long, global = true, default_value_t = symfq::fields::DEFAULT_CAP)]
    pub cap: u64,
    /// Include shard counts and wall-clock times in JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Describe a finite field.
    Field(FieldArgs),
    /// Run a suite of exact symbolic checks.
    Verify(VerifyArgs),
    /// Count the points of a symmetric system and compare with its estimate.
    Count(CountArgs),
    /// Evaluate the point-count estimates for given parameters.
    Bounds(BoundsArgs),
    /// Factorization-pattern census of a family of monic polynomials.
    Patterns(PatternsArgs),
    /// Deep holes of the standard Reed-Solomon code.
    DeepHoles(DeepHolesArgs),
    /// Subdiscriminants of a polynomial or of the generic polynomial.
    Subdisc(SubdiscArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct FieldArgs {
    /// Field literal: `7`, `9=3^2` or `9=3^2:t^2+1`.
    #[arg(long)]
    pub q: String,
    /// List every element.
    #[arg(long)]
    pub elements: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// identities, appendix, bridge or all.
    #[arg(long, default_value = "identities")]
    pub suite: String,
    /// Seed for the random evaluation points of the bridge suite.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CountArgs {
    /// System file: `{"field": "7", "m": 5, "k": 2, "regime": "complete", "G": ["E1 + 2*E2"]}`.
    #[arg(long)]
    pub system: Option<String>,
    /// Field literal, overriding the system file.
    #[arg(long)]
    pub field: Option<String>,
    /// Number of variables.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of trailing power sums the system avoids.
    #[arg(long)]
    pub k: Option<usize>,
    /// complete or hypersurface.
    #[arg(long)]
    pub regime: Option<String>,
    /// Equation in `E1..Em`; repeat for each equation.
    #[arg(long = "g")]
    pub g: Vec<String>,
    /// all, nonzero, distinct, distinct-and-nonzero, `distinct(1-2,..)` or `slice(i,j)`.
    #[arg(long, default_value = "all")]
    pub predicate: String,
    /// k2, k3 or general; defaults to k3 when k >= 3 and k2 otherwise.
    #[arg(long)]
    pub case: Option<String>,
    /// Also check (A1) and (A2) over extensions up to this degree.
    #[arg(long)]
    pub assumptions: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    /// Field order.
    #[arg(long)]
    pub q: u64,
    /// Number of variables.
    #[arg(long)]
    pub m: u64,
    /// Number of equations.
    #[arg(long, default_value_t = 1)]
    pub s: u64,
    /// Number of trailing power sums the system avoids.
    #[arg(long)]
    pub k: u64,
    /// Product of the weighted degrees.
    #[arg(long, default_value_t = 1)]
    pub delta: u64,
    /// Sum of the weighted degrees minus s.
    #[arg(long = "big-d", default_value_t = 0)]
    pub big_d: u64,
    /// Degree of the hypersurface.
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PatternsArgs {
    /// Field literal.
    #[arg(long)]
    pub q: String,
    /// Degree of the monic polynomials.
    #[arg(long)]
    pub n: usize,
    /// Restrict output to one pattern, e.g. `1^1 2^2`.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Prescribed coefficients `aJ=v` (coefficient of T^J), comma separated.
    #[arg(long)]
    pub prescribe: Option<String>,
    /// Equation in `Z1..Zn` (`Zi` is the coefficient of T^(n-i)); repeatable.
    #[arg(long = "g")]
    pub g: Vec<String>,
    /// Also check the correspondence with type-lambda points.
    #[arg(long)]
    pub correspondence: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DeepHolesArgs {
    /// Field literal.
    #[arg(long)]
    pub q: String,
    /// Code dimension.
    #[arg(long)]
    pub k: usize,
    /// Tail length: the received word comes from T^(k+d) plus a tail of degree < d.
    #[arg(long)]
    pub d: Option<usize>,
    /// Coefficients `[f0, .., f(d-1)]`.
    #[arg(long, default_value = "[0]")]
    pub tail: String,
    /// search, verify or criteria.
    #[arg(long, default_value = "search")]
    pub mode: String,
    /// Exponent slack as an exact rational `a/b`.
    #[arg(long, default_value = "1")]
    pub eps: String,
    /// In verify mode, run over every tail of length d.
    #[arg(long)]
    pub all_tails: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SubdiscArgs {
    /// Field literal, for a concrete polynomial.
    #[arg(long)]
    pub q: Option<String>,
    /// Polynomial literal, `T^3+2*T+1` or `[1,2,0,1]`.
    #[arg(long)]
    pub poly: Option<String>,
    /// Degree of the generic polynomial, when no polynomial is given.
    #[arg(long)]
    pub m: Option<usize>,
    /// Subdiscriminant index.
    #[arg(long, default_value_t = 0)]
    pub j: usize,
}

fn config(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(cli).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut v {
        if !cli.timing {
            m.remove("shards");
            m.remove("timing");
        }
    }
    v
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    match &cli.command {
        Command::Field(a) => commands::field(cli, a),
        Command::Verify(a) => commands::verify(a),
        Command::Count(a) => commands::count(cli, a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Patterns(a) => commands::patterns(cli, a),
        Command::DeepHoles(a) => commands::deep_holes(cli, a),
        Command::Subdisc(a) => commands::subdisc(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = io::stdout();
    let mut out = out.lock();
    match run(&cli) {
        Ok(rep) => {
            let written = match cli.format {
                Format::Json => rep.write_json(&mut out, config(&cli), cli.timing),
                Format::Csv => rep.write_csv(&mut out),
            };
            if let Err(e) = written {
                eprintln!("symfq: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            let _ = out.flush();
            for f in &rep.failures {
                eprintln!("FAIL {f}");
            }
            if rep.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("symfq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
