use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hauptpoly", version, about = "Class polynomials of Hauptmoduln at Heegner points")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Directory for cached weight 3/2 families
    #[arg(long, global = true, env = "HAUPTPOLY_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Constant-term rule for generated forms, e.g. `square-delta` or `square-delta;m4=1/3`
    #[arg(long, global = true, default_value = "square-delta")]
    pub normalization: String,
    /// Series terms used for numerical evaluation
    #[arg(long, global = true, default_value_t = 1500)]
    pub numeric_terms: usize,
    /// Starting working precision in bits for numerical evaluation
    #[arg(long, global = true, default_value_t = 256)]
    pub bits: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class polynomial of j^(N) for fundamental discriminant -D
    Classpoly {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(short = 'D', long = "disc")]
        disc: i64,
        /// Family precision (exponents below this are generated); defaults to D + 1
        #[arg(long)]
        precision: Option<i64>,
        /// Also evaluate j^(N) at the Heegner points and check the roots
        #[arg(long)]
        check_numeric: bool,
    },
    /// Exact trace Tr_nu^(N)(D)
    Trace {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(short = 'D', long = "disc")]
        disc: i64,
        #[arg(long, default_value_t = 1)]
        nu: u64,
        #[arg(long)]
        precision: Option<i64>,
        /// Compare with the numerical trace
        #[arg(long)]
        check_numeric: bool,
    },
    /// Coefficients of the weight 3/2 form F_N(-m)
    Form {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(short = 'm')]
        m: u64,
        /// Print only the coefficient of q^n
        #[arg(long)]
        coeff: Option<i64>,
        /// Number of exponents to print, from q^-m
        #[arg(long, default_value_t = 20)]
        terms: i64,
    },
    /// Coefficients of the Hauptmodul j^(N)
    Haupt {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(long, default_value_t = 20)]
        terms: i64,
    },
    /// Run an identity suite and print a pass/fail table
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict to one level
        #[arg(short = 'N', long = "level")]
        level: Option<u64>,
        /// Largest nu for thm11
        #[arg(long, default_value_t = 12)]
        nu_max: u64,
        /// Coefficient count for lemma24 and f0-crosscheck
        #[arg(long)]
        terms: Option<i64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm11,
    Lemma24,
    F0Crosscheck,
    Calibration,
}
