//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invariant check failed, 2 bad input,
//! 3 certificate re-verification failed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational};
use serde_json::json;

use concordance::emit::{format_rational, pl_to_csv, pl_to_json, pl_to_svg};
use concordance::order::verify_json_document;
use concordance::{
    build_family, certify_proposition, certify_upper_bound, check_recursion, parse,
    upsilon_of_sum, Error, FamilyRule, Staircase, TorusKnot,
};

#[derive(Parser)]
#[command(
    name = "concordance",
    version,
    about = "Concordance invariants of torus knots: staircases, Upsilon, and order certificates"
)]
struct Cli {
    /// Re-check a stored certificate JSON file (exit 0 if valid, 3 if not).
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Staircase of T(p,q): step vector, a-tuple, genus, Alexander exponents.
    Staircase {
        p: u64,
        q: u64,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Membership table of the semigroup <p,q>.
    Semigroup {
        p: u64,
        q: u64,
        /// Largest n to tabulate (default: the conductor).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// The Upsilon invariant of a knot expression such as "T(9,13) - T(4,9) - T(9,10)".
    Upsilon {
        expr: String,
        /// Emit the exact JSON form.
        #[arg(long)]
        json: bool,
        /// Emit CSV rows t,value at the breakpoints.
        #[arg(long)]
        csv: bool,
        /// Write an SVG plot to the given path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Evaluate at a rational point, e.g. 1 or 7/5.
        #[arg(long, value_name = "T")]
        eval: Option<String>,
    },
    /// Exit 0 iff Upsilon of the expression is identically zero.
    Vanish { expr: String },
    /// Check Upsilon_{T(q,kq+p)} = Upsilon_{T(p,q)} + k*Upsilon_{T(q,q+1)} exactly.
    Recursion { q: u64, p: u64, k: u64 },
    /// Lower- and upper-bound certificates for T(q,kq+p) - T(p,q) - k*T(q,q+1).
    Certify { p: u64, q: u64, k: u64 },
    /// An independent family of vanishing-Upsilon knots with one certificate.
    Family {
        /// Number of members.
        #[arg(long)]
        count: usize,
        /// Member generation rule.
        #[arg(long, default_value = "default")]
        rule: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Certificate(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Some(path) = cli.verify {
        return verify_file(&path);
    }
    let Some(command) = cli.command else {
        eprintln!("error: expected a subcommand or --verify FILE (try --help)");
        return Ok(ExitCode::from(2));
    };
    match command {
        Command::Staircase { p, q, json } => staircase_command(p, q, json),
        Command::Semigroup { p, q, limit } => semigroup_command(p, q, limit),
        Command::Upsilon {
            expr,
            json,
            csv,
            svg,
            eval,
        } => upsilon_command(&expr, json, csv, svg, eval),
        Command::Vanish { expr } => {
            let sum = parse(&expr)?;
            if upsilon_of_sum(&sum).is_zero() {
                println!("Upsilon({sum}) = 0");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("Upsilon({sum}) != 0");
                Ok(ExitCode::from(1))
            }
        }
        Command::Recursion { q, p, k } => {
            let holds = check_recursion(q, p, k)?;
            let kq_plus_p = k * q + p;
            println!(
                "Upsilon(T({q},{kq_plus_p})) == Upsilon(T({p},{q})) + {k}*Upsilon(T({q},{})): {holds}",
                q + 1
            );
            Ok(if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Certify { p, q, k } => {
            let lower = certify_proposition(p, q, k)?;
            let upper = certify_upper_bound(p, q, k)?;
            let doc = json!({
                "lower_bound": lower,
                "upper_bound": upper,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { count, rule } => {
            let rule = match rule.as_str() {
                "default" => FamilyRule::Default,
                other => {
                    return Err(Error::Precondition(format!(
                        "unknown family rule '{other}' (expected 'default')"
                    )))
                }
            };
            let (members, certificate) = build_family(count, &rule)?;
            let member_docs: Result<Vec<_>, Error> = members
                .iter()
                .map(|m| {
                    Ok(json!({
                        "p": m.p,
                        "q": m.q,
                        "k": m.k,
                        "knot": m.knot_text()?,
                    }))
                })
                .collect();
            let doc = json!({
                "members": member_docs?,
                "certificate": certificate,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn staircase_command(p: u64, q: u64, as_json: bool) -> Result<ExitCode, Error> {
    let knot = TorusKnot::new(p, q)?;
    let staircase = Staircase::of(&knot);
    let a_tuple = staircase.a_tuple().ok();
    let alexander = staircase.alexander_exponents();
    if as_json {
        let doc = json!({
            "p": p,
            "q": q,
            "staircase": staircase.entries(),
            "a_tuple": a_tuple.as_ref().map(|t| t.entries().to_vec()),
            "genus": knot.genus(),
            "conductor": knot.conductor(),
            "alexander_exponents": alexander,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("{knot}");
        println!(
            "staircase: [{}]",
            staircase
                .entries()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        match a_tuple {
            Some(t) => println!("a-tuple: {t}"),
            None => println!("a-tuple: undefined (unknot, epsilon = 0)"),
        }
        println!("genus: {}", knot.genus());
        println!("conductor: {}", knot.conductor());
        println!(
            "alexander exponents: [{}]",
            alexander
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn semigroup_command(p: u64, q: u64, limit: Option<u64>) -> Result<ExitCode, Error> {
    let knot = TorusKnot::new(p, q)?;
    let sg = knot.semigroup();
    match sg.frobenius() {
        Some(frob) => println!(
            "<{p},{q}>: conductor={} genus={} frobenius={frob}",
            sg.conductor(),
            sg.genus()
        ),
        None => println!("<{p},{q}>: conductor=0 genus=0 (every n >= 0 is a member)"),
    }
    let limit = limit.unwrap_or_else(|| sg.conductor());
    for n in 0..=limit {
        let mark = if sg.contains(n as i64) { "member" } else { "gap" };
        println!("{n} {mark}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let bad = |msg: &str| Error::Precondition(format!("cannot read '{text}' as a rational: {msg}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad("bad numerator"))?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad("bad denominator"))?;
            if den == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(text.trim()).map_err(|_| bad("bad integer"))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

fn upsilon_command(
    expr: &str,
    as_json: bool,
    as_csv: bool,
    svg: Option<PathBuf>,
    eval: Option<String>,
) -> Result<ExitCode, Error> {
    let sum = parse(expr)?;
    let f = upsilon_of_sum(&sum);
    let mut printed = false;
    if let Some(point) = eval {
        let t = parse_rational(&point)?;
        println!("{}", format_rational(&f.eval(&t)?));
        printed = true;
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&pl_to_json(&f)?).unwrap());
        printed = true;
    }
    if as_csv {
        print!("{}", pl_to_csv(&f));
        printed = true;
    }
    if let Some(path) = svg {
        std::fs::write(&path, pl_to_svg(&f)).map_err(|e| {
            Error::Precondition(format!("cannot write {}: {e}", path.display()))
        })?;
        printed = true;
    }
    if !printed {
        println!("Upsilon({sum}): {f}");
    }
    Ok(ExitCode::SUCCESS)
}

/// Re-check a stored certificate document: a single certificate, a
/// certify-output pair, or a family document.
fn verify_file(path: &PathBuf) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let checked = verify_json_document(&text)?;
    println!("verified: {checked} certificate(s) valid");
    Ok(ExitCode::SUCCESS)
}
