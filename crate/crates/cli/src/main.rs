use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use monoid_witt::json::{ElementJson, WittVectorJson};
use monoid_witt::text::{parse_element, parse_factor_spec, parse_witt_vector};
use monoid_witt::verify::{run_check, CheckConfig, Configuration, Mutation};
use monoid_witt::witt_polynomials::{
    load_or_build, variable_names, GenerationBounds, IntegerPolynomial, WittOperation, FORMAT_VERSION,
};
use monoid_witt::{alpha, beta, canonical_map, Algebra, AlgebraDescriptor, Error, FactorSpec};

const EXIT_USAGE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_PROPERTY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "monoid-witt", version, about = "Witt coordinates on ZR/I^n for finite perfect F_p-algebras R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Witt coordinates of an element of ZR/I^n by the closed formulas.
    Alpha(LevelArgs),
    /// Teichmüller representative sum of a Witt vector, e.g. "(1, 0, 1)".
    Beta(InputArgs),
    /// The arithmetic derivation of an element of ZR.
    Delta(InputArgs),
    /// Witt coordinates of an element of ZR/I^n computed in the Galois ring.
    Oracle(LevelArgs),
    /// Run the property suites.
    Check(CheckArgs),
    /// Print the Witt addition and multiplication polynomials.
    Wittpoly(WittpolyArgs),
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Characteristic.
    #[arg(long = "p")]
    p: u64,
    /// Extension degree of a single field factor.
    #[arg(long = "e")]
    e: Option<usize>,
    /// Defining modulus, constant coefficient first, e.g. "[2,1,1]".
    #[arg(long = "mod")]
    modulus: Option<String>,
    /// A factor of a product algebra, e.g. "e=2" or "mod=[1,1,1]"; repeat for
    /// each factor.
    #[arg(long = "product")]
    product: Vec<String>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Emit JSON lines instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LevelArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Truncation level.
    #[arg(long = "n")]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
    /// Element of ZR, e.g. "3*[1] - [0]".
    #[arg(allow_hyphen_values = true)]
    input: String,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Expected truncation level of a Witt-vector input.
    #[arg(long = "n")]
    n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
    /// Element of ZR, or a Witt vector such as "(1, 0, 1)" for `beta`.
    #[arg(allow_hyphen_values = true)]
    input: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Restrict the sweeps to one algebra instead of the standard list.
    #[arg(long = "p")]
    p: Option<u64>,
    #[arg(long = "e")]
    e: Option<usize>,
    #[arg(long = "mod")]
    modulus: Option<String>,
    #[arg(long = "product")]
    product: Vec<String>,
    /// Run seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random inputs per property.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Inject a known defect; the run is expected to fail.
    #[arg(long = "mutate")]
    mutate: Option<Mutation>,
    /// Only run properties whose name starts with this prefix.
    #[arg(long)]
    only: Option<String>,
    #[arg(long = "cache-dir", env = "WITT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct WittpolyArgs {
    #[arg(long = "p")]
    p: u64,
    #[arg(long = "n")]
    n: usize,
    #[arg(long = "cache-dir", env = "WITT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedTruncation { .. }
            | Error::PolynomialBoundExceeded { .. }
            | Error::LevelTooLarge { .. }
            | Error::CharacteristicTooLarge(_)
            | Error::UnavailablePolynomialSet { .. } => EXIT_UNSUPPORTED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn build_algebra(p: u64, e: Option<usize>, modulus: Option<&str>, product: &[String]) -> Result<Algebra, Failure> {
    if !product.is_empty() {
        if e.is_some() || modulus.is_some() {
            return Err(usage("--product cannot be combined with --e or --mod"));
        }
        let specs = product.iter().map(|s| parse_factor_spec(s)).collect::<Result<Vec<_>, _>>()?;
        return Ok(AlgebraDescriptor::new(p, &specs)?);
    }
    let spec = match modulus {
        Some(m) => {
            let m = m.trim();
            let text = if m.starts_with('[') { format!("mod={m}") } else { format!("mod=[{m}]") };
            let FactorSpec { modulus, .. } = parse_factor_spec(&text)?;
            let modulus = modulus.expect("a mod= spec carries a modulus");
            if let Some(e) = e {
                if modulus.len() != e + 1 {
                    return Err(usage(format!("--mod has degree {}, but --e is {e}", modulus.len() - 1)));
                }
            }
            FactorSpec::with_modulus(modulus)
        }
        None => FactorSpec::degree(e.unwrap_or(1)),
    };
    Ok(AlgebraDescriptor::new(p, &[spec])?)
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<Algebra, Failure> {
        build_algebra(self.p, self.e, self.modulus.as_deref(), &self.product)
    }
}

fn emit(json: bool, text: impl std::fmt::Display, value: serde_json::Value) {
    if json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn level(n: usize) -> Result<usize, Failure> {
    if n == 0 {
        return Err(Failure::from(Error::InvalidLevel { n, min: 1 }));
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Alpha(args) => {
            let alg = args.algebra.algebra()?;
            let x = parse_element(&args.input, &alg)?;
            let w = alpha(&x, level(args.n)?)?;
            emit(args.output.json, &w, json!(WittVectorJson::from(&w)));
        }
        Command::Oracle(args) => {
            let alg = args.algebra.algebra()?;
            let x = parse_element(&args.input, &alg)?;
            let w = canonical_map(&x, level(args.n)?)?;
            emit(args.output.json, &w, json!(WittVectorJson::from(&w)));
        }
        Command::Beta(args) => {
            let alg = args.algebra.algebra()?;
            let w = parse_witt_vector(&args.input, &alg)?;
            if let Some(n) = args.n {
                if n != w.level() {
                    return Err(usage(format!("--n is {n}, but the vector has {} components", w.level())));
                }
            }
            let x = beta(&w);
            emit(args.output.json, &x, json!(ElementJson::from(&x)));
        }
        Command::Delta(args) => {
            let alg = args.algebra.algebra()?;
            let x = parse_element(&args.input, &alg)?.delta();
            emit(args.output.json, &x, json!(ElementJson::from(&x)));
        }
        Command::Check(args) => return check(args),
        Command::Wittpoly(args) => {
            let bounds = GenerationBounds::default();
            let set = load_or_build(args.p, level(args.n)?, &bounds, args.cache_dir.as_deref())?;
            if args.output.json {
                let names = variable_names(args.n);
                let lines = |op| {
                    let render = |f: &IntegerPolynomial| {
                        let mut out = String::new();
                        f.write_terms(&mut out, &names).expect("writing to a String");
                        out
                    };
                    set.polynomials(op).iter().map(render).collect::<Vec<_>>()
                };
                let value = json!({
                    "format_version": FORMAT_VERSION,
                    "p": args.p,
                    "n": args.n,
                    "sums": lines(WittOperation::Sum),
                    "products": lines(WittOperation::Product),
                });
                println!("{value}");
            } else {
                print!("{}", set.to_exchange_string());
            }
        }
    }
    Ok(())
}

fn check(args: CheckArgs) -> Result<(), Failure> {
    let mut config = CheckConfig {
        seed: args.seed,
        samples: args.samples,
        mutation: args.mutate,
        cache_dir: args.cache_dir,
        filter: args.only,
        ..CheckConfig::default()
    };
    if let Some(p) = args.p {
        let algebra = build_algebra(p, args.e, args.modulus.as_deref(), &args.product)?;
        config.algebras = vec![Configuration { name: algebra.to_string(), algebra }];
    } else if args.e.is_some() || args.modulus.is_some() || !args.product.is_empty() {
        return Err(usage("--e, --mod and --product need --p"));
    }
    let report = run_check(&config);
    if report.properties.is_empty() {
        return Err(usage("no property matches the filter"));
    }
    if args.output.json {
        println!("{}", serde_json::to_string(&report).expect("serialisable"));
    } else {
        println!("seed {}, {} samples per property", report.seed, report.samples);
        if let Some(m) = report.mutation {
            println!("mutation {m}");
        }
        println!("{report}");
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure { code: EXIT_PROPERTY, message: format!("{} properties failed", report.failures().count()) })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
