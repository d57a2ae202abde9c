//! `qgheat`: spectral and contractivity computations for heat semigroups on
//! the free quantum groups O_N⁺ and S_N⁺, as machine-readable records.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    #[value(name = "O", alias = "o")]
    O,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvelopeKind {
    /// Closed-form envelope f(t) from the summable norm comparison.
    F,
    /// Sharper O_2⁺ envelope g(t) from the exact eigenvalues.
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauMethodArg {
    Series,
    Cubic,
    Linear,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Chebyshev,
    Bounds,
    Gap,
    Ultra,
    Hyper,
    Identities,
}

/// Group selection plus the norm-comparison constant flags shared by most
/// subcommands (`--D` for O_N⁺, `--C` for S_N⁺).
#[derive(Debug, Clone, Args)]
pub struct GroupOpts {
    /// Quantum group family: O (free orthogonal) or S (free permutation).
    #[arg(long, value_enum)]
    pub group: GroupArg,
    /// Group parameter N (N >= 2 for O, N >= 4 for S).
    #[arg(long = "N")]
    pub n: u64,
    /// Norm-comparison constant D_N for O_N⁺ (default: certified upper
    /// bound for N > 2, else 1 with a warning).
    #[arg(long = "D")]
    pub d: Option<f64>,
    /// Norm-comparison constant C_N for S_N⁺ (default: the lower bound 1,
    /// with a warning; no formula for C_N is available).
    #[arg(long = "C")]
    pub c: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "qgheat",
    version,
    about = "Certified heat-semigroup spectra, contractivity envelopes and hypercontractivity times on free quantum groups"
)]
pub struct Cli {
    /// Output format for record streams.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact eigenvalues, dimensions and multiplicities for levels 0..=smax.
    Spectrum {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long, default_value_t = 10)]
        smax: u64,
    },
    /// Envelope values on a time grid (columns t, value_lo, value_hi).
    Envelope {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long, value_enum, default_value = "f")]
        kind: EnvelopeKind,
        /// Emit the L1->Linf envelope (the L2->Linf envelope at t/2).
        #[arg(long)]
        l1: bool,
        #[arg(long, default_value_t = 0.01)]
        tmin: f64,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        /// Space the grid linearly instead of logarithmically.
        #[arg(long)]
        linear: bool,
    },
    /// Hypercontractivity time L2 -> Lp by one or all methods.
    Tau {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "all")]
        method: TauMethodArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Allow the linear method below p = 4 (uncertified regime).
        #[arg(long)]
        allow_unverified: bool,
    },
    /// The series R_p (certified enclosure), optionally scanning for the
    /// crossing R_p = 1.
    Rp {
        #[arg(long, value_enum)]
        family: GroupArg,
        #[arg(long, required_unless_present = "scan")]
        p: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Scan [pmin, pmax] for the crossing R_p = 1.
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 3.0)]
        pmin: f64,
        #[arg(long, default_value_t = 5.0)]
        pmax: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Certified upper bound for the O_N⁺ constant D_N (real N > 2).
    Dn {
        #[arg(long = "N")]
        n: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Log-Sobolev constant c = t0/2 from the best certified L2->L4 time.
    Logsob {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Interpolation exponent path q(t) = 4/(2 - t/t0) on [0, t0].
    Qpath {
        #[arg(long)]
        t0: f64,
        /// Single evaluation point; omit for a grid over [0, t0].
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 9)]
        points: usize,
    },
    /// Small-time dimension of an L1->Linf envelope (-2 x log-log slope).
    Dim {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long, value_enum, default_value = "f")]
        envelope: EnvelopeKind,
        #[arg(long, default_value_t = 1e-6)]
        tmin: f64,
        #[arg(long, default_value_t = 1e-4)]
        tmax: f64,
        #[arg(long, default_value_t = 9)]
        points: usize,
    },
    /// Verification suites; exits 3 if any row fails.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, default_value_t = 200)]
        smax: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4.0)]
        p: f64,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long = "C")]
        c: Option<f64>,
    },
    /// Cartesian sweeps over N, p (tau enclosures) and optionally t (gap
    /// sums), evaluated in parallel but emitted in input order.
    Sweep {
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Comma-separated list of N values.
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<u64>,
        /// Comma-separated list of target exponents p.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Optional comma-separated times for gap-sum records.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, value_enum, default_value = "cubic")]
        method: TauMethodArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long = "C")]
        c: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version, 2 for usage errors
            e.exit();
        }
    };
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qgheat: {e}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
