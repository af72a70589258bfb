use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use m1plus_core::grammar::{format_with, parse_index, parse_module_vector, Terminal};
use m1plus_core::identities::{run_named, RelationReport, Value, SUITE};
use m1plus_core::weak_modules::cmn_table;
use m1plus_core::{
    classify, commutator_expansion, format_element, graded_dim, module_mode_action, nth_product,
    parse_element, Error, FockVector, ModuleVector, Parity, Rational, Sector, WhittakerParams,
    WhittakerType,
};

#[derive(Parser)]
#[command(
    name = "m1plus",
    version,
    about = "Exact computations in M(1)^+ and its Whittaker modules"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectorArg {
    Untwisted,
    Twisted,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print u_n v.
    Product {
        #[arg(short = 'u', allow_hyphen_values = true)]
        u: String,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
        #[arg(short = 'v', allow_hyphen_values = true)]
        v: String,
    },
    /// Print the expansion of [u_i, v_j] as sum_k C(i,k) (u_k v)_{i+j-k}.
    Commutator {
        #[arg(short = 'u', allow_hyphen_values = true)]
        u: String,
        #[arg(short = 'i', allow_negative_numbers = true)]
        i: i64,
        #[arg(short = 'v', allow_hyphen_values = true)]
        v: String,
        #[arg(short = 'j', allow_negative_numbers = true)]
        j: i64,
    },
    /// Print u_n w for a vector w of M(1, zeta) or M(1, zeta)(theta).
    Act {
        #[arg(long, value_enum)]
        sector: SectorArg,
        /// Comma-separated rationals, e.g. 0,2 or 1/2,-3.
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Integer or half-integer mode, e.g. 3 or -3/2.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Module vector with terminal `u`.
        #[arg(long, default_value = "u", allow_hyphen_values = true)]
        w: String,
    },
    /// Run the identity suite; exit status 0 iff every relation holds.
    Verify {
        /// Run a single relation.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE))]
        only: Option<String>,
    },
    /// Identify the module generated by a Whittaker vector of the given type.
    Classify {
        #[arg(long)]
        s: u32,
        /// lambda_{floor(s/2)+1}, ..., lambda_s, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Dimension of the weight-n subspace of M(1), M(1)^+ or M(1)^-.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
    },
    /// Print the coefficients c_mn for m + n <= maxdeg.
    Cmn {
        #[arg(long)]
        maxdeg: usize,
    },
}

enum Failure {
    Input(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct TermRecord {
    monomial: String,
    numerator: String,
    denominator: String,
}

fn term_records(v: &FockVector, terminal: Terminal) -> Vec<TermRecord> {
    v.terms()
        .map(|(m, c)| {
            let unit =
                FockVector::from_monomial(v.sector(), m.clone(), Rational::from_integer(1.into()));
            TermRecord {
                monomial: format_with(&unit, terminal),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            }
        })
        .collect()
}

fn rational_record(q: &Rational) -> serde_json::Value {
    serde_json::json!({ "numerator": q.numer().to_string(), "denominator": q.denom().to_string() })
}

fn parse_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|x| {
            Rational::from_str(x.trim())
                .map_err(|_| Failure::Input(format!("invalid rational '{}'", x.trim())))
        })
        .collect()
}

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string(&v).expect("serializable"));
}

fn value_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Vector(x) => serde_json::json!({ "terms": term_records(x, Terminal::Vac) }),
        Value::Scalar(q) => rational_record(q),
    }
}

fn report_json(r: &RelationReport) -> serde_json::Value {
    serde_json::json!({
        "name": r.name,
        "description": r.description,
        "pass": r.pass,
        "checks": r.checks,
        "expected": value_json(&r.expected),
        "computed": value_json(&r.computed),
        "residual": value_json(&r.residual),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let structured = cli.format == Format::Structured;
    match cli.command {
        Command::Product { u, n, v } => {
            let (u, v) = (parse_element(&u)?, parse_element(&v)?);
            let out = nth_product(&u, n, &v)?;
            if structured {
                print_json(serde_json::json!({
                    "element": format_element(&out),
                    "terms": term_records(&out, Terminal::Vac),
                }));
            } else {
                println!("{}", format_element(&out));
            }
        }
        Command::Commutator { u, i, v, j } => {
            let (u, v) = (parse_element(&u)?, parse_element(&v)?);
            let ce = commutator_expansion(&u, i, &v, j)?;
            if structured {
                let entries: Vec<_> = ce
                    .entries
                    .iter()
                    .map(|t| {
                        serde_json::json!({
                            "coefficient": rational_record(&t.coefficient),
                            "mode": t.mode,
                            "element": format_element(&t.element),
                            "terms": term_records(&t.element, Terminal::Vac),
                        })
                    })
                    .collect();
                print_json(serde_json::json!({ "entries": entries }));
            } else if ce.entries.is_empty() {
                println!("0");
            } else {
                for t in &ce.entries {
                    println!(
                        "{} * ({})_{}",
                        t.coefficient,
                        format_element(&t.element),
                        t.mode
                    );
                }
            }
        }
        Command::Act {
            sector,
            zeta,
            u,
            n,
            w,
        } => {
            let sector = match sector {
                SectorArg::Untwisted => Sector::Untwisted,
                SectorArg::Twisted => Sector::Twisted,
            };
            let params = WhittakerParams::new(sector, parse_list(&zeta)?)?;
            let u = parse_element(&u)?;
            let n = parse_index(&n)?;
            let w = ModuleVector::new(params.clone(), parse_module_vector(&w, sector)?)?;
            let out = module_mode_action(&u, n, &w)?;
            if structured {
                print_json(serde_json::json!({
                    "module": params.to_string(),
                    "vector": format_with(out.vector(), Terminal::U),
                    "terms": term_records(out.vector(), Terminal::U),
                }));
            } else {
                println!("{}", format_with(out.vector(), Terminal::U));
            }
        }
        Command::Verify { only } => {
            let names: Vec<&str> = match &only {
                Some(name) => vec![name.as_str()],
                None => SUITE.to_vec(),
            };
            let mut all_pass = true;
            let mut records = Vec::new();
            for name in names {
                let report = run_named(name)
                    .ok_or_else(|| Failure::Input(format!("unknown relation '{name}'")))??;
                all_pass &= report.pass;
                if structured {
                    records.push(report_json(&report));
                } else {
                    println!("{report}");
                }
            }
            if structured {
                print_json(serde_json::json!({ "pass": all_pass, "reports": records }));
            }
            if !all_pass {
                return Err(Failure::Verification);
            }
        }
        Command::Classify { s, lambda } => {
            let t = WhittakerType::new(s, parse_list(&lambda)?)?;
            let d = classify(&t)?;
            if structured {
                let zeta: Vec<_> = d.params.zeta().iter().map(rational_record).collect();
                print_json(serde_json::json!({
                    "module": d.to_string(),
                    "sector": match d.sector { Sector::Untwisted => "untwisted", Sector::Twisted => "twisted" },
                    "r": d.r,
                    "zeta": zeta,
                }));
            } else {
                println!("{d}");
            }
        }
        Command::Dims { n, parity } => {
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
                ParityArg::All => Parity::All,
            };
            let d = graded_dim(n, parity);
            if structured {
                print_json(serde_json::json!({ "n": n, "dim": d.to_string() }));
            } else {
                println!("{d}");
            }
        }
        Command::Cmn { maxdeg } => {
            let table = cmn_table(maxdeg);
            let mut rows = Vec::new();
            for m in 0..=maxdeg {
                for n in 0..=(maxdeg - m) {
                    let c = table.get(m, n);
                    if structured {
                        let mut r = rational_record(c);
                        r["m"] = m.into();
                        r["n"] = n.into();
                        rows.push(r);
                    } else {
                        println!("c({m},{n}) = {c}");
                    }
                }
            }
            if structured {
                print_json(serde_json::json!({ "maxdeg": maxdeg, "entries": rows }));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(move || run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Verification)) => ExitCode::from(1),
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
