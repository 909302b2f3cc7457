use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "faulsum", version, about = "Convergent power sums, harmonic sums and zeta functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Significant decimal digits of the result.
    #[arg(long, global = true, env = "FAULSUM_DIGITS", default_value_t = 50,
          value_parser = clap::value_parser!(u32).range(16..=100_000))]
    pub digits: u32,

    /// Maximum number of factorial-series terms.
    #[arg(long, global = true, env = "FAULSUM_TERMS", default_value_t = 200,
          value_parser = clap::value_parser!(u64).range(8..=1_000_000))]
    pub terms: u64,

    #[arg(long, global = true, env = "FAULSUM_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Options shared by the summation commands.
#[derive(Args, Debug, Clone)]
pub struct SumOpts {
    /// Upper limit; the sum runs over k <= floor(x).
    #[arg(long, visible_alias = "n", allow_hyphen_values = true)]
    pub x: String,

    /// Number of leading inverse powers kept outside the factorial series.
    #[arg(long, default_value_t = 0)]
    pub a: usize,

    /// plain, shifted or shifted-plus.
    #[arg(long, env = "FAULSUM_VARIANT", default_value = "plain")]
    pub variant: String,

    /// auto, none, or a fixed number of extra integers to step over.
    #[arg(long, default_value = "auto")]
    pub shift: String,
}

/// An exponent given as `a+bi`; integer and `p/q` tokens are exact.
#[derive(Args, Debug, Clone)]
pub struct ExponentOpts {
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,

    /// Treat an integer or rational exponent as an approximate number.
    #[arg(long)]
    pub inexact: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// sum_{k <= x} k^m
    Sum {
        #[command(flatten)]
        exp: ExponentOpts,
        #[command(flatten)]
        opts: SumOpts,
    },
    /// sum_{k <= x} 1/k
    Harmonic {
        #[command(flatten)]
        opts: SumOpts,
    },
    /// sum_{k <= x} ln k
    Logsum {
        #[command(flatten)]
        opts: SumOpts,
    },
    /// sum_{k <= x} (-1)^(k+1) k^m
    Alt {
        #[command(flatten)]
        exp: ExponentOpts,
        #[command(flatten)]
        opts: SumOpts,
    },
    /// Riemann zeta(s), or Hurwitz zeta(s, z) when --z is given
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Use the asymptotic form with this many terms and report its remainder bound.
        #[arg(long)]
        order: Option<usize>,
        /// Offset h in [0, 1] of zeta(s, z + h); only with --order.
        #[arg(long, default_value = "0", requires = "order")]
        h: String,
    },
    /// psi(z)
    Digamma {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value = "0", requires = "order")]
        h: String,
    },
    /// Truncation error of sum_{k <= n} k^m for K = 1..kmax factorial terms
    Report {
        #[command(flatten)]
        exp: ExponentOpts,
        #[command(flatten)]
        opts: SumOpts,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        kmax: u64,
    },
    /// A named power sum with closed-form constant
    Preset {
        #[arg(long)]
        id: String,
        #[arg(long, visible_alias = "n")]
        x: String,
        /// Exponent for balanced-shift.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Number of coefficients to list.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(0..=200))]
        kmax: u64,
    },
}
