//! `diagalg`: enumerate diagram bases, build Fourier transforms, run the
//! invariant suites and the separation-of-variables simulation.
//!
//! Exit codes: 0 success, 1 a check failed (or a computation broke an
//! internal invariant), 2 invalid flags or configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diagalg::algebra::Scaling;
use diagalg::checks::{self, Suite};
use diagalg::diagram::{enumerate_basis, AlgebraType, Family};
use diagalg::forms::FormBasis;
use diagalg::fourier::{Fourier, Variant};
use diagalg::irreps::Chain;
use diagalg::report::{self, BasisReport, BratteliJson, SovOutput};
use diagalg::scalar::{parse_rational, set_precision_bits, Exact, Real};
use diagalg::{sov, Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "diagalg", version, about = "Diagram algebras and their Fourier transforms")]
struct Cli {
    /// Working precision in bits for floating computations.
    #[arg(long, global = true, env = "DA_PRECISION_BITS", default_value_t = 256)]
    precision_bits: u32,

    /// Output file; stdout when omitted or `-`.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the diagram basis as JSON.
    Basis {
        #[command(flatten)]
        alg: AlgArgs,
        /// Refuse bases larger than this.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
    /// Fourier transform report (ft.json) or the transform matrix as CSV.
    Ft {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value = "10000")]
        d: String,
        #[arg(long, value_enum, default_value_t = Mode::Float)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = BasisArg::Orthogonal)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t = ScalingArg::Scaled)]
        scaling: ScalingArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Tilde)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run an invariant suite; exits 1 when any check fails.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        alg: AlgArgs,
        /// One value, or a comma-separated sweep for the decay suites.
        #[arg(long, default_value = "10000,40000,160000")]
        d: String,
    },
    /// Simulate the recursive transform (sov-report.json).
    Sov {
        #[command(flatten)]
        alg: AlgArgs,
        /// Comma-separated values; the first gives the detailed report.
        #[arg(long, default_value = "10000,40000,160000")]
        d: String,
    },
    /// Bratteli graph of the subalgebra chain.
    Bratteli {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
}

#[derive(Args, Debug)]
struct AlgArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of columns (not used by the walled family).
    #[arg(long)]
    n: Option<usize>,
    /// Columns left of the wall.
    #[arg(long)]
    r: Option<usize>,
    /// Columns right of the wall.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Partition,
    Half,
    Brauer,
    Walled,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Seminormal,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScalingArg {
    Scaled,
    Unscaled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Tilde,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Relations,
    SchurOrthogonality,
    NicenessDecay,
    Concentration,
    Counting,
    SovDecay,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::SchurOrthogonality => Suite::SchurOrthogonality,
            SuiteArg::NicenessDecay => Suite::NicenessDecay,
            SuiteArg::Concentration => Suite::Concentration,
            SuiteArg::Counting => Suite::Counting,
            SuiteArg::SovDecay => Suite::SovDecay,
        }
    }
}

impl AlgArgs {
    fn algebra(&self) -> Result<AlgebraType, Error> {
        let family = match self.family {
            FamilyArg::Partition => Family::Partition,
            FamilyArg::Half => Family::Half,
            FamilyArg::Brauer => Family::Brauer,
            FamilyArg::Walled => Family::Walled,
            FamilyArg::Symmetric => Family::Symmetric,
        };
        if family == Family::Walled {
            let (r, s) = match (self.r, self.s) {
                (Some(r), Some(s)) => (r, s),
                _ => return Err(Error::Parse("the walled family needs --r and --s".into())),
            };
            if let Some(n) = self.n {
                if n != r + s {
                    return Err(Error::Parse(format!("--n {n} disagrees with --r {r} --s {s}")));
                }
            }
            AlgebraType::new(family, r + s, Some((r, s)))
        } else {
            if self.r.is_some() || self.s.is_some() {
                return Err(Error::Parse(format!("--r/--s only apply to the walled family, not {family}")));
            }
            let n = self.n.ok_or_else(|| Error::Parse("--n is required".into()))?;
            AlgebraType::new(family, n, None)
        }
    }
}

fn d_list(s: &str) -> Result<Vec<Rational>, Error> {
    let out: Vec<Rational> = s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(Error::Parse("empty --d".into()));
    }
    Ok(out)
}

/// Errors caused by the request rather than by the computation.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Mismatch(_)
            | Error::OutOfRange(_)
            | Error::CapExceeded { .. }
            | Error::Inadmissible(_)
            | Error::Unsupported(_)
            | Error::NotASquare(_)
            | Error::FamilyConstraint(_)
    )
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    ChecksFailed,
}

fn run(cli: Cli) -> Result<Status, Error> {
    if cli.precision_bits < 16 {
        return Err(Error::Parse(format!("precision of {} bits is too small", cli.precision_bits)));
    }
    set_precision_bits(cli.precision_bits);
    let out = cli.output.as_deref();
    match cli.command {
        Command::Basis { alg, cap } => {
            let ty = alg.algebra()?;
            let diagrams = enumerate_basis(ty, cap)?;
            report::emit(out, &report::to_json(&BasisReport::new(ty, diagrams))?)?;
        }
        Command::Ft { alg, d, mode, basis, scaling, variant, format } => {
            let ty = alg.algebra()?;
            let d = parse_rational(&d)?;
            let form = match basis {
                BasisArg::Seminormal => FormBasis::Seminormal,
                BasisArg::Orthogonal => FormBasis::Orthogonal,
            };
            let scaling = match scaling {
                ScalingArg::Scaled => Scaling::Scaled,
                ScalingArg::Unscaled => Scaling::Unscaled,
            };
            let variant = match variant {
                VariantArg::Tilde => Variant::Tilde,
                VariantArg::Exact => Variant::Exact,
            };
            let exact = match mode {
                Mode::Exact => Some(Fourier::<Exact>::build_with(ty, &d, scaling, form)?),
                Mode::Float => None,
            };
            let float = Fourier::<Real>::build_with(ty, &d, scaling, form)?;
            let r = report::ft_report(exact.as_ref(), &float, variant, &format!("{basis:?}").to_lowercase())?;
            let text = match format {
                Format::Json => report::to_json(&r)?,
                Format::Csv => r.transform.to_csv(),
            };
            report::emit(out, &text)?;
        }
        Command::Check { suite, alg, d } => {
            let ty = alg.algebra()?;
            let ds = d_list(&d)?;
            let suite = suite.suite();
            if suite.is_sweep() && ds.len() < 2 {
                return Err(Error::Parse(format!("suite {} needs at least two values of --d", suite.name())));
            }
            let rep = checks::run(suite, ty, &ds)?;
            for r in &rep.results {
                eprintln!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.measured);
            }
            report::emit(out, &report::to_json(&rep)?)?;
            if !rep.passed() {
                return Ok(Status::ChecksFailed);
            }
        }
        Command::Sov { alg, d } => {
            let ty = alg.algebra()?;
            let ds = d_list(&d)?;
            let detailed = sov::sov_qft(ty, &ds[0])?;
            let series = if ds.len() > 1 { sov::decay_series(ty, &ds)? } else { Vec::new() };
            let ratios = sov::decay_ratios(&series);
            report::emit(out, &report::to_json(&SovOutput { report: detailed, decay_series: series, decay_ratios: ratios })?)?;
        }
        Command::Bratteli { alg, format } => {
            let chain = Chain::new(alg.algebra()?)?;
            let text = match format {
                GraphFormat::Dot => chain.to_dot(),
                GraphFormat::Json => report::to_json(&BratteliJson::new(&chain))?,
            };
            report::emit(out, &text)?;
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
