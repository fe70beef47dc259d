mod commands;
mod parse;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use theta_sum::{Caps, Engine, MethodChoice, TruncationPolicy};

#[derive(Parser)]
#[command(
    name = "theta-sum",
    version,
    about = "Evaluate sum_{n>=1} exp(-a n^2) / n^w"
)]
struct Cli {
    /// Print wall-clock time to stderr when done.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S(a; w) at one point and compare with direct summation.
    Eval(EvalArgs),
    /// Reproduce the m = 2, n = 1 error table.
    Table1(Table1Args),
    /// Evaluate a list of a values with several methods, writing CSV.
    Sweep(SweepArgs),
    /// Run the invariant checks and print measured against required bounds.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Generic,
    Even,
    Classical,
}

impl MethodArg {
    fn resolve(self, w: f64) -> MethodChoice {
        match self {
            MethodArg::Auto => MethodChoice::auto(w),
            MethodArg::Direct => MethodChoice::Direct,
            MethodArg::Generic => MethodChoice::Generic,
            MethodArg::Even => MethodChoice::EvenTransform,
            MethodArg::Classical => MethodChoice::ClassicalPJ,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Gaussian parameter: RE or RE+IMj.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    a: Complex64,
    /// Algebraic exponent.
    #[arg(long, allow_hyphen_values = true)]
    w: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// optimal | fixed:N | target:EPS:CAP
    #[arg(long, default_value = "optimal", value_parser = parse::policy)]
    policy: TruncationPolicy,
    /// Tolerance of the direct-summation reference.
    #[arg(long, default_value_t = 1e-16)]
    eps: f64,
}

#[derive(Args)]
struct Table1Args {
    /// Comma-separated subset of the table's a values.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<f64>>,
    /// Also write the table as CSV to this path.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated a values (RE or RE+IMj); may be repeated.
    #[arg(long = "a", required = true, allow_hyphen_values = true, value_parser = parse::complex_list)]
    a: Vec<Vec<Complex64>>,
    #[arg(long, allow_hyphen_values = true)]
    w: f64,
    /// Comma-separated methods, evaluated in the order given.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
    methods: Vec<MethodArg>,
    #[arg(long, default_value = "optimal", value_parser = parse::policy)]
    policy: TruncationPolicy,
    /// Output path; `-` writes to stdout.
    #[arg(long, short)]
    output: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Specfun,
    Engine,
    Oracle,
    Appendix,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Checks(usize),
    Precondition(String),
    Convergence(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Convergence(_) => 3,
            Failure::Output(_) => 4,
        }
    }
}

impl From<theta_sum::Error> for Failure {
    fn from(e: theta_sum::Error) -> Self {
        match e {
            theta_sum::Error::Convergence { .. } => Failure::Convergence(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let engine = Engine::new(Caps::from_env()?);
    match cli.command {
        Command::Eval(args) => {
            let method = args.method.resolve(args.w);
            commands::eval::run(&engine, args.a, args.w, method, args.policy, args.eps)
        }
        Command::Table1(args) => {
            commands::table1::run(&engine, args.rows.as_deref(), args.csv.as_deref())
        }
        Command::Sweep(args) => {
            let methods: Vec<MethodChoice> =
                args.methods.iter().map(|m| m.resolve(args.w)).collect();
            let config = commands::sweep::SweepConfig {
                a_values: args.a.into_iter().flatten().collect(),
                w: args.w,
                methods,
                policy: args.policy,
                output_path: args.output,
            };
            commands::sweep::run(&engine, &config)
        }
        Command::Verify(args) => commands::verify::run(&engine, args.suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timing = cli.timing;
    let start = Instant::now();
    let result = run(cli);
    if timing {
        eprintln!("elapsed: {:?}", start.elapsed());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Checks(n) => eprintln!("error: {n} check(s) failed"),
                Failure::Precondition(msg) | Failure::Convergence(msg) | Failure::Output(msg) => {
                    eprintln!("error: {msg}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}
