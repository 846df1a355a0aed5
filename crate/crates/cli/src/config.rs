use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_MODULUS: u64 = 998_244_353;

#[derive(Parser, Debug)]
#[command(
    name = "polymul",
    version,
    about = "Verify, count and certify in-place polynomial products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Compare random instances against the Toeplitz oracle.
    Verify(Options),
    /// Count ring operations; CSV output.
    Bench(Options),
    /// Measure peak work registers; CSV output.
    Space(Options),
    /// Print predicted cost constants beside measured ratios.
    Predict(Options),
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Algorithm to run; every algorithm when omitted.
    #[arg(long, value_enum)]
    pub algo: Option<Algo>,
    #[arg(long, value_enum, default_value_t = Base::Karatsuba)]
    pub base: Base,
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    #[arg(long, default_value_t = 64)]
    pub max_n: usize,
    /// Arithmetic progression of sizes.
    #[arg(long, conflicts_with = "double")]
    pub step: Option<usize>,
    /// Doubling sizes (the default).
    #[arg(long)]
    pub double: bool,
    #[arg(long, default_value_t = DEFAULT_MODULUS)]
    pub modulus: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Instances per size (verify: 100, otherwise 1).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Verify,
    Bench,
    Space,
    Predict,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Bench => "bench",
            Command::Space => "space",
            Command::Predict => "predict",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algo {
    Fp,
    Fplo,
    Fphi,
    Splo,
    Sphi,
    Mp,
    Ifp,
    Isplo,
    Isphi,
    Imp,
}

impl Algo {
    pub const ALL: [Algo; 10] = [
        Algo::Fp,
        Algo::Fplo,
        Algo::Fphi,
        Algo::Splo,
        Algo::Sphi,
        Algo::Mp,
        Algo::Ifp,
        Algo::Isplo,
        Algo::Isphi,
        Algo::Imp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Fp => "fp",
            Algo::Fplo => "fplo",
            Algo::Fphi => "fphi",
            Algo::Splo => "splo",
            Algo::Sphi => "sphi",
            Algo::Mp => "mp",
            Algo::Ifp => "ifp",
            Algo::Isplo => "isplo",
            Algo::Isphi => "isphi",
            Algo::Imp => "imp",
        }
    }

    pub fn in_place(self) -> bool {
        matches!(self, Algo::Ifp | Algo::Isplo | Algo::Isphi | Algo::Imp)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Naive,
    Karatsuba,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Naive => "naive",
            Base::Karatsuba => "karatsuba",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stepping {
    Step(usize),
    Double,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub algos: Vec<Algo>,
    pub base: Base,
    pub min_n: usize,
    pub max_n: usize,
    pub stepping: Stepping,
    pub modulus: u64,
    pub seed: u64,
    pub trials: usize,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("empty size range {0}..={1}")]
    EmptyRange(usize, usize),
    #[error("step must be positive")]
    ZeroStep,
    #[error("trials must be positive")]
    ZeroTrials,
}

impl RunConfig {
    pub fn new(command: Command, o: Options) -> Result<Self, UsageError> {
        if o.modulus < 2 {
            return Err(UsageError::Modulus(o.modulus));
        }
        if o.min_n == 0 || o.min_n > o.max_n {
            return Err(UsageError::EmptyRange(o.min_n, o.max_n));
        }
        let stepping = match o.step {
            Some(0) => return Err(UsageError::ZeroStep),
            Some(s) => Stepping::Step(s),
            None => Stepping::Double,
        };
        let trials = o.trials.unwrap_or(if command == Command::Verify { 100 } else { 1 });
        if trials == 0 {
            return Err(UsageError::ZeroTrials);
        }
        Ok(RunConfig {
            command,
            algos: o.algo.map_or_else(|| Algo::ALL.to_vec(), |a| vec![a]),
            base: o.base,
            min_n: o.min_n,
            max_n: o.max_n,
            stepping,
            modulus: o.modulus,
            seed: o.seed,
            trials,
            out: o.out,
        })
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut v = Vec::new();
        let mut n = self.min_n;
        while n <= self.max_n {
            v.push(n);
            n = match self.stepping {
                Stepping::Step(s) => n + s,
                Stepping::Double => n * 2,
            };
        }
        v
    }
}

impl CommandArgs {
    pub fn split(self) -> (Command, Options) {
        match self {
            CommandArgs::Verify(o) => (Command::Verify, o),
            CommandArgs::Bench(o) => (Command::Bench, o),
            CommandArgs::Space(o) => (Command::Space, o),
            CommandArgs::Predict(o) => (Command::Predict, o),
        }
    }
}
