//! `mwbench`: benchmarks and oracle-backed verification for multiword
//! arithmetic. Exit status 0 on success, 1 when a verification or solve
//! fails, 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwfloat::linalg::Scheme;
use mwfloat::poly::EvalMethod;
use mwfloat::Variant;

mod bench;
mod dk;
mod record;
mod verify;

macro_rules! dispatch {
    ($p:expr, $T:ident => $body:expr) => {
        match $p {
            $crate::Precision::Dd => {
                type $T = mwfloat::DD;
                $body
            }
            $crate::Precision::Td => {
                type $T = mwfloat::TD;
                $body
            }
            $crate::Precision::Qd => {
                type $T = mwfloat::QD;
                $body
            }
        }
    };
}
pub(crate) use dispatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Dd,
    Td,
    Qd,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Dd => "dd",
            Precision::Td => "td",
            Precision::Qd => "qd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Std,
    Bf,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Std => Variant::Standard,
            VariantArg::Bf => Variant::BranchFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

impl Toggle {
    pub fn on(self) -> bool {
        self == Toggle::On
    }

    pub fn name(self) -> &'static str {
        if self.on() {
            "on"
        } else {
            "off"
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Naive,
    Blocked,
    Strassen,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Naive => Scheme::Naive,
            SchemeArg::Blocked => Scheme::Blocked,
            SchemeArg::Strassen => Scheme::Strassen,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Horner,
    Estrin,
    EstrinSimd,
}

impl From<MethodArg> for EvalMethod {
    fn from(m: MethodArg) -> EvalMethod {
        match m {
            MethodArg::Horner => EvalMethod::Horner,
            MethodArg::Estrin => EvalMethod::Estrin,
            MethodArg::EstrinSimd => EvalMethod::EstrinBatched,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArgKind {
    Real,
    Complex,
}

#[derive(Args, Clone, Debug)]
pub struct Output {
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print records as JSON on stdout.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    #[arg(long, value_delimiter = ',', default_values = ["dd", "td", "qd"])]
    pub precision: Vec<Precision>,
    #[arg(long, value_delimiter = ',', default_values = ["std", "bf"])]
    pub variant: Vec<VariantArg>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Timed repeats per configuration (median reported).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    pub repeats: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Clone, Debug)]
pub struct MatmulArgs {
    #[command(flatten)]
    pub common: Common,
    /// Matrix orders in [32, 2049].
    #[arg(long, value_delimiter = ',', default_values = ["32", "64", "128", "256", "512", "1024", "2048", "2049"])]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values = ["off", "on"])]
    pub simd: Vec<Toggle>,
    #[arg(long, value_delimiter = ',', default_values = ["strassen"])]
    pub scheme: Vec<SchemeArg>,
    /// Compare against the exact product for n <= 128.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Clone, Debug)]
pub struct PolyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',', default_values = ["1", "2", "4", "8", "16", "32", "64", "128", "256", "512", "1024"])]
    pub degrees: Vec<usize>,
    #[arg(long, value_enum, default_value = "real")]
    pub arg_kind: ArgKind,
    #[arg(long, value_delimiter = ',', default_values = ["horner", "estrin", "estrin-simd"])]
    pub methods: Vec<MethodArg>,
    /// Evaluation points per timed run.
    #[arg(long, default_value_t = 256)]
    pub points: usize,
}

#[derive(Args, Clone, Debug)]
pub struct DkArgs {
    /// Solve the Chebyshev integration problem of this degree.
    #[arg(long, conflicts_with = "poly_file", required_unless_present = "poly_file")]
    pub chebyshev: Option<usize>,
    /// Polynomial file (`POLY K n` header, coefficients low to high).
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "qd")]
    pub precision: Precision,
    #[arg(long, value_enum, default_value = "std")]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Relative stopping tolerance; defaults to 2^(-b+10).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = mwfloat::roots::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Digits printed per root component.
    #[arg(long)]
    pub digits: Option<usize>,
    /// Print one JSON object with the summary and the roots.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Eft,
    Ops,
    Batch,
    Digits,
    Poly,
    Dk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Add,
    Mul,
    Div,
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values = ["all"])]
    pub suite: Vec<Suite>,
    /// Restrict the operation suites to one operation.
    #[arg(long, value_enum)]
    pub op: Option<OpArg>,
    /// Random operand pairs per case.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// Matrix order for the digit floors.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Parser, Debug)]
#[command(name = "mwbench", version, about = "Multiword floating-point benchmarks and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Real matrix product timings over the sqrt(5)/sqrt(3) test matrices.
    BenchMatmul(MatmulArgs),
    /// Complex (3M) matrix product timings over seeded random matrices.
    BenchCmatmul(MatmulArgs),
    /// Horner, Estrin and batched Estrin evaluation timings.
    BenchPolyeval(PolyArgs),
    /// Durand-Kerner root finding.
    SolveDk(DkArgs),
    /// Oracle-backed accuracy checks.
    Verify(VerifyArgs),
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(format!("i/o: {e}"))
    }
}

impl From<mwfloat::MwError> for CliError {
    fn from(e: mwfloat::MwError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::BenchMatmul(a) => bench::bench_matmul(&a, false),
        Command::BenchCmatmul(a) => bench::bench_matmul(&a, true),
        Command::BenchPolyeval(a) => bench::bench_polyeval(&a),
        Command::SolveDk(a) => dk::solve(&a),
        Command::Verify(a) => verify::run(&a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(m)) => {
            eprintln!("mwbench: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("mwbench: {m}");
            ExitCode::from(2)
        }
    }
}
