use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use hecke_dedekind::hecke::{self, CuspSpace};
use hecke_dedekind::qoracle::{self, DEFAULT_TRUNCATION};
use hecke_dedekind::symbols::s_reciprocity_poly;
use hecke_dedekind::verify::{self, SampleSpec};
use hecke_dedekind::{DedekindSymbol, Error, SymbolFamilyParams, SymbolPoint};

#[derive(Parser)]
#[command(name = "hecke-dedekind")]
#[command(about = "Exact weighted Dedekind symbols, Hecke operators and generalized tau")]
#[command(version)]
struct Cli {
    /// Worker threads for enumeration loops (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Widen the unimodular enumeration box by this factor
    #[arg(long, global = true, default_value_t = 0)]
    slack: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Hecke,
    Closed,
    Both,
}

impl Route {
    fn name(&self) -> &'static str {
        match self {
            Route::Hecke => "hecke",
            Route::Closed => "closed",
            Route::Both => "both",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a symbol (G:w, F:w, E:w:n or Eis:w) at (h, k)
    Eval {
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Apply T_m to a symbol at (h, k), or report its T_m eigenvalue
    Hecke {
        symbol: String,
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        /// Report the eigenvalue checked at this many further nonzero points
        #[arg(long)]
        eigen: Option<usize>,
    },
    /// tau_{ell+2}(m)
    Tau {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Route::Hecke)]
        route: Route,
    },
    /// q-expansion coefficients q^0..q^N of the weight ell+2 eigenform
    Oracle {
        #[arg(long)]
        ell: u32,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        qtrunc: usize,
    },
    /// Reciprocity polynomial S_{w,n} and its cocycle check
    Poly {
        #[arg(long)]
        w: i64,
        #[arg(long)]
        n: i64,
    },
    /// Run the identity suite
    Verify {
        /// Comma-separated check families
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        h_max: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        c_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        prime_max: Option<u32>,
    },
}

#[derive(Serialize)]
struct OutputRecord {
    command: &'static str,
    inputs: Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

struct Output {
    record: OutputRecord,
    text: Vec<String>,
    success: bool,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedSymbolSpec(_)
            | Error::NotPrime(_)
            | Error::UnsupportedCuspWeight(_)
            | Error::InvalidSample(_)
            | Error::ZeroHeckeIndex
            | Error::EmptySeries => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Integers outside JSON's safe range still print as bare numbers.
fn json_int(x: &num_bigint::BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse()
            .expect("decimal integer is a valid JSON number"),
    )
}

fn point(h: i64, k: i64) -> Result<SymbolPoint, Failure> {
    Ok(SymbolPoint::new(h, k)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Eval { symbol, h, k } => {
            let sym = DedekindSymbol::parse(symbol, cli.slack)?;
            let value = sym.eval(point(*h, *k)?);
            Output {
                record: OutputRecord {
                    command: "eval",
                    inputs: json!({ "symbol": symbol, "h": h, "k": k, "slack": cli.slack }),
                    result: json!({ "value": value.to_string() }),
                    elapsed_ms: None,
                },
                text: vec![value.to_string()],
                success: true,
            }
        }
        Command::Hecke {
            symbol,
            m,
            h,
            k,
            eigen,
        } => {
            let sym = DedekindSymbol::parse(symbol, cli.slack)?;
            let p = point(*h, *k)?;
            let inputs = json!({ "symbol": symbol, "m": m, "h": h, "k": k, "eigen": eigen });
            match eigen {
                None => {
                    let value = hecke::hecke_apply(&sym, *m, p)?;
                    Output {
                        record: OutputRecord {
                            command: "hecke",
                            inputs,
                            result: json!({ "value": value.to_string() }),
                            elapsed_ms: None,
                        },
                        text: vec![value.to_string()],
                        success: true,
                    }
                }
                Some(extra) => {
                    let report = if !sym.eval(p).is_zero() {
                        hecke::eigenvalue_at(&sym, *m, p, *extra)?
                    } else {
                        hecke::eigenvalue(&sym, *m, *extra)?
                    };
                    Output {
                        text: vec![report.eigenvalue.to_string(), report.consistent.to_string()],
                        success: report.consistent,
                        record: OutputRecord {
                            command: "hecke",
                            inputs,
                            result: serde_json::to_value(&report).expect("report serializes"),
                            elapsed_ms: None,
                        },
                    }
                }
            }
        }
        Command::Tau { ell, m, route } => {
            let space = CuspSpace::from_weight(*ell)?;
            if *m == 0 {
                return Err(Failure::Usage("m must be at least 1".into()));
            }
            let inputs = json!({ "ell": ell, "m": m, "route": route.name(), "slack": cli.slack });
            let value = match route {
                Route::Hecke => hecke::tau_with_slack(space, *m, cli.slack)?,
                Route::Closed => hecke::tau_prime_closed_form(space, *m)?,
                Route::Both => {
                    let closed = hecke::tau_prime_closed_form(space, *m)?;
                    let operator = hecke::tau_with_slack(space, *m, cli.slack)?;
                    let oracle = qoracle::oracle_tau(space, *m)?;
                    let agreement = operator == closed && closed == oracle;
                    return Ok(Output {
                        record: OutputRecord {
                            command: "tau",
                            inputs,
                            result: json!({
                                "hecke": operator.to_string(),
                                "closed": closed.to_string(),
                                "oracle": oracle.to_string(),
                                "agreement": agreement,
                            }),
                            elapsed_ms: Some(start.elapsed().as_millis() as u64),
                        },
                        text: vec![
                            operator.to_string(),
                            agreement.to_string(),
                            oracle.to_string(),
                        ],
                        success: agreement,
                    });
                }
            };
            Output {
                record: OutputRecord {
                    command: "tau",
                    inputs,
                    result: json!({ "tau": value.to_string() }),
                    elapsed_ms: None,
                },
                text: vec![value.to_string()],
                success: true,
            }
        }
        Command::Oracle { ell, qtrunc } => {
            let space = CuspSpace::from_weight(*ell)?;
            let series = qoracle::qexp_eigenform(space, *qtrunc)?;
            Output {
                record: OutputRecord {
                    command: "oracle",
                    inputs: json!({ "ell": ell, "qtrunc": qtrunc }),
                    result: Value::Array(series.coefficients().iter().map(json_int).collect()),
                    elapsed_ms: None,
                },
                text: series
                    .coefficients()
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
                success: true,
            }
        }
        Command::Poly { w, n } => {
            let params = SymbolFamilyParams::new(*w, *n)?;
            let poly = s_reciprocity_poly(params);
            let cocycle = verify::check_cocycle(params);
            Output {
                text: vec![poly.to_string(), cocycle.passed.to_string()],
                success: cocycle.passed,
                record: OutputRecord {
                    command: "poly",
                    inputs: json!({ "w": w, "n": n }),
                    result: json!({
                        "polynomial": poly.to_string(),
                        "terms": poly,
                        "cocycle": cocycle,
                    }),
                    elapsed_ms: None,
                },
            }
        }
        Command::Verify {
            suite,
            h_max,
            k_max,
            c_max,
            n_max,
            prime_max,
        } => {
            let defaults = SampleSpec::default();
            let spec = SampleSpec {
                h_max: h_max.unwrap_or(defaults.h_max),
                k_max: k_max.unwrap_or(defaults.k_max),
                c_max: c_max.unwrap_or(defaults.c_max),
                n_max: n_max.unwrap_or(defaults.n_max),
                prime_max: prime_max.unwrap_or(defaults.prime_max),
                ..defaults
            };
            let results = verify::run_suite(suite.as_deref(), &spec)?;
            if results.is_empty() {
                return Err(Failure::Usage(format!(
                    "no checks selected; families are {}",
                    verify::FAMILIES.join(", ")
                )));
            }
            let passed = verify::all_passed(&results);
            let failed = results.iter().filter(|r| !r.passed).count();
            eprintln!(
                "{} checks, {} failed, {} ms",
                results.len(),
                failed,
                start.elapsed().as_millis()
            );
            // No timing in the report itself: it must not depend on --threads.
            return Ok(Output {
                text: results
                    .iter()
                    .map(|r| {
                        format!(
                            "{} {} [{}]",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.check_name,
                            r.parameters
                        )
                    })
                    .collect(),
                success: passed,
                record: OutputRecord {
                    command: "verify",
                    inputs: json!({ "suite": suite, "spec": spec }),
                    result: serde_json::to_value(&results).expect("results serialize"),
                    elapsed_ms: None,
                },
            });
        }
    };
    if out.record.elapsed_ms.is_none() {
        out.record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = pool.install(|| run(&cli));
    let out = match outcome {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.record).expect("record serializes");
            s.push('\n');
            s
        }
        Format::Text => out.text.iter().map(|l| format!("{l}\n")).collect(),
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if out.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
