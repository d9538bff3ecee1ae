use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rslab::{
    derivative, exceptional_certificate, exceptional_poles, pair_factor_table, pair_l_function,
    parse_character, parse_gaussian, parse_principal_series, pole_order_witness,
    symbolic_numeric_spotcheck, tate_closed_form, tate_integral_num, verify_theorem_1_2,
    CharacterGL1, ComplexFloat, Error, GammaProduct, GaussianRational, NumericError, ParseError,
    PrincipalSeries,
};

mod report;
mod suite;

/// Exact archimedean Rankin-Selberg L-factor calculator.
#[derive(Parser, Debug)]
#[command(name = "rslab", version, about)]
struct Cli {
    /// Emit JSON (with a top-level "schema" version) instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// First principal series: a file path or an inline `ps[...]` expression.
    #[arg(long)]
    pi1: String,
    /// Second principal series: a file path or an inline `ps[...]` expression.
    #[arg(long)]
    pi2: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L(s, pi1 x pi2) with its per-(i, j) factor table.
    Lfactor(PairArgs),
    /// Exceptional poles with certificates, or the certificate for one point.
    Exceptional {
        #[command(flatten)]
        pair: PairArgs,
        /// Certify this point only, e.g. `0`, `-2`, `1/2+3*i`.
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
    },
    /// Pole order at s0 and the character subsets carrying it.
    Witness {
        #[command(flatten)]
        pair: PairArgs,
        /// A pole of L(s, pi1 x pi2), e.g. `0` or `11/6`.
        #[arg(long, allow_hyphen_values = true)]
        s0: String,
    },
    /// Check L(s, pi1 x pi2)^-1 = lcm of inverse exceptional factors of derivatives.
    VerifyLcm(suite::VerifyArgs),
    /// Components of the k-th derivative of a principal series.
    Derivative {
        /// File path or inline `ps[...]` expression.
        pi: String,
        /// Derivative order, `0 <= k < n`.
        #[arg(short = 'k')]
        k: usize,
    },
    /// GL(1) Tate integral by quadrature against its closed form.
    Tate {
        /// First character, e.g. `sgn^1 * |.|^(1/2)`.
        #[arg(long, default_value = "|.|^0")]
        c1: String,
        /// Second character.
        #[arg(long, default_value = "|.|^0")]
        c2: String,
        /// Degree j of the test function x^j exp(-pi x^2).
        #[arg(long, default_value_t = 0)]
        deg: u32,
        /// Evaluation point `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Compare two Gamma_R products (JSON files) at random points.
    Spotcheck {
        /// JSON list of `{"shift": {"re", "im"}, "exp"}` factors.
        f: PathBuf,
        /// Same format as `f`.
        g: PathBuf,
        /// Number of accepted sample points.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the sample points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Everything that ends a run early, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// 2: unreadable or unparseable input.
    Input(String),
    /// 1, 3 or 4 depending on the library error.
    Lib(Box<Error>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(Box::new(e))
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Lib(e) => match **e {
                Error::Parse(_) => 2,
                // A divergent integral is a bad parameter choice, not an oracle failure.
                Error::Numeric(NumericError::Divergent(_)) => 3,
                Error::Numeric(_) => 4,
                _ => 3,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse_error",
            4 => "numeric_failure",
            _ => "precondition_violation",
        }
    }
}

/// Result of a command: a JSON document, its text rendering, and whether the
/// verification (if any) came out false.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub verified_false: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            verified_false: false,
        }
    }
}

fn parse_error_message(source: &str, e: &ParseError, what: &str) -> String {
    format!("{what}: {e}\n{}", e.snippet(source))
}

/// `arg` names a file if one exists at that path; otherwise it is DSL text.
pub fn load_series(arg: &str, what: &str) -> Result<PrincipalSeries, Failure> {
    let source = if Path::new(arg).is_file() {
        fs::read_to_string(arg)
            .map_err(|e| Failure::Input(format!("{what}: cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_principal_series(&source)
        .map_err(|e| Failure::Input(parse_error_message(&source, &e, what)))
}

fn load_point(arg: &str) -> Result<GaussianRational, Failure> {
    parse_gaussian(arg).map_err(|e| Failure::Input(parse_error_message(arg, &e, "s0")))
}

fn load_pair(pair: &PairArgs) -> Result<(PrincipalSeries, PrincipalSeries), Failure> {
    Ok((
        load_series(&pair.pi1, "pi1")?,
        load_series(&pair.pi2, "pi2")?,
    ))
}

fn parse_complex(arg: &str) -> Result<ComplexFloat, Failure> {
    let bad = || Failure::Input(format!("--s: expected `re` or `re,im`, got {arg:?}"));
    let mut parts = arg.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(ComplexFloat::new(re, im))
}

fn load_product(path: &Path) -> Result<GammaProduct, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Lfactor(pair) => {
            let (p1, p2) = load_pair(pair)?;
            let table = pair_factor_table(&p1, &p2)?;
            let product = pair_l_function(&p1, &p2)?;
            Ok(report::lfactor(&p1, &p2, &table, &product))
        }
        Command::Exceptional { pair, s0 } => {
            let (p1, p2) = load_pair(pair)?;
            match s0 {
                None => {
                    let anchors = exceptional_poles(&p1, &p2)?;
                    let certs = anchors
                        .iter()
                        .map(|a| exceptional_certificate(&p1, &p2, a).map_err(Failure::from))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(report::exceptional(&p1, &p2, &certs))
                }
                Some(s0) => {
                    let s0 = load_point(s0)?;
                    match exceptional_certificate(&p1, &p2, &s0) {
                        Ok(cert) => Ok(report::exceptional(&p1, &p2, &[cert])),
                        Err(Error::NotExceptional { s0, reason }) => {
                            Ok(report::refusal(&p1, &p2, &s0, &reason))
                        }
                        Err(e) => Err(e.into()),
                    }
                }
            }
        }
        Command::Witness { pair, s0 } => {
            let (p1, p2) = load_pair(pair)?;
            let s0 = load_point(s0)?;
            let w = pole_order_witness(&p1, &p2, &s0)?;
            Ok(report::witness(&p1, &p2, &s0, &w))
        }
        Command::VerifyLcm(args) => {
            if args.random.is_some() {
                return suite::run_random(args);
            }
            let (Some(pi1), Some(pi2)) = (&args.pi1, &args.pi2) else {
                return Err(Failure::Input(
                    "verify-lcm needs --pi1 and --pi2, or --random".into(),
                ));
            };
            let p1 = load_series(pi1, "pi1")?;
            let p2 = load_series(pi2, "pi2")?;
            let r = verify_theorem_1_2(&p1, &p2)?;
            Ok(report::verify(&r, args.quiet))
        }
        Command::Derivative { pi, k } => {
            let p = load_series(pi, "pi")?;
            let d = derivative(&p, *k)?;
            Ok(report::derivative(&p, &d))
        }
        Command::Tate { c1, c2, deg, s } => {
            let char_arg = |arg: &str, what: &str| -> Result<CharacterGL1, Failure> {
                parse_character(arg).map_err(|e| Failure::Input(parse_error_message(arg, &e, what)))
            };
            let c1 = char_arg(c1, "c1")?;
            let c2 = char_arg(c2, "c2")?;
            let s = parse_complex(s)?;
            let numeric = tate_integral_num(s, &c1, &c2, *deg).map_err(Error::from)?;
            let closed = tate_closed_form(s, &c1, &c2, *deg).map_err(Error::from)?;
            Ok(report::tate(&c1, &c2, *deg, s, numeric, closed))
        }
        Command::Spotcheck { f, g, trials, seed } => {
            let fp = load_product(f)?;
            let gp = load_product(g)?;
            let agree = symbolic_numeric_spotcheck(&fp, &gp, *trials, *seed);
            let mut out = Output::ok(
                json!({"command": "spotcheck", "f": fp, "g": gp, "trials": trials, "seed": seed, "agree": agree}),
                agree.to_string(),
            );
            out.verified_false = !agree;
            Ok(out)
        }
    }
}

fn with_schema(mut v: Value) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), json!(1));
    if let Value::Object(fields) = &mut v {
        doc.append(fields);
    }
    Value::Object(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&with_schema(out.json)).expect("serializable")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(u8::from(out.verified_false))
        }
        Err(failure) => {
            let message = match &failure {
                Failure::Input(m) => m.clone(),
                Failure::Lib(e) => e.to_string(),
            };
            if cli.json {
                let doc =
                    json!({"schema": 1, "error": {"kind": failure.kind(), "message": message}});
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            }
            eprintln!("error: {message}");
            ExitCode::from(failure.exit_code())
        }
    }
}
