//! Command-line front end for `gf2q-core`.
//!
//! Exit codes: 0 on success, 1 for a domain error (reported on one line of
//! stderr), 2 for a usage error.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gf2q_core::selfcheck;
use gf2q_core::{
    build_q_with_cap, classify, count_irreducible, factor_with_cap, first_k_irreducibles,
    is_irreducible, poly_order_with_cap, Error, Method, Poly, Property, PropertyVerdict,
    DEFAULT_MAX_DEGREE,
};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SCAN_CAP: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "gf2q",
    version,
    about = "Berlekamp matrices and degree properties of GF(2) polynomials"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Largest polynomial degree for which a Berlekamp matrix is built
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a polynomial into irreducibles
    Factor {
        #[arg(value_parser = parse_poly)]
        poly: Poly,
    },
    /// Print the Berlekamp matrix rows as bit strings
    Qmatrix {
        #[arg(value_parser = parse_poly)]
        poly: Poly,
    },
    /// Order of the Berlekamp matrix of a squarefree polynomial
    Order {
        #[arg(value_parser = parse_poly)]
        poly: Poly,
    },
    /// Irreducibility test, counting and listing
    Irred {
        #[command(subcommand)]
        action: IrredAction,
    },
    /// Decide P1 or P2 for one degree
    Classify {
        #[command(flatten)]
        property: PropertyFlag,
        #[arg(value_parser = parse_m)]
        m: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Search)]
        method: MethodArg,
        /// Also build the witness polynomial
        #[arg(long)]
        materialize: bool,
    },
    /// Decide P1 or P2 for a range of degrees
    Scan {
        #[command(flatten)]
        property: PropertyFlag,
        #[arg(long, value_parser = parse_m)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Worker threads (default: all cores)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        jobs: Option<u64>,
        /// Upper limit accepted for --to
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        max_m: u64,
    },
    /// Build a counterexample polynomial, if the property fails
    Witness {
        #[command(flatten)]
        property: PropertyFlag,
        #[arg(value_parser = parse_m)]
        m: u64,
    },
    /// Run the built-in invariant suite
    Selfcheck,
}

#[derive(Subcommand, Debug)]
enum IrredAction {
    Test {
        #[arg(value_parser = parse_poly)]
        poly: Poly,
    },
    Count {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        degree: u64,
    },
    List {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        degree: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("property").required(true).args(["p1", "p2"])))]
struct PropertyFlag {
    #[arg(long)]
    p1: bool,
    #[arg(long)]
    p2: bool,
}

impl PropertyFlag {
    fn get(&self) -> Property {
        if self.p1 {
            Property::P1
        } else {
            Property::P2
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Search,
    Theorem,
    Corollary,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Search => Method::Search,
            MethodArg::Theorem => Method::Theorem,
            MethodArg::Corollary => Method::Corollary,
            MethodArg::Brute => Method::Brute,
        }
    }
}

fn parse_poly(s: &str) -> Result<Poly, String> {
    Poly::parse(s).map_err(|e| e.to_string())
}

fn parse_m(s: &str) -> Result<u64, String> {
    let m: u64 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))?;
    if m < 2 {
        return Err(format!("m must be at least 2, got {m}"));
    }
    Ok(m)
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("i/o: {e}"))
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| Failure::Domain(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn check_cap(f: &Poly, cap: usize) -> Result<(), Failure> {
    let m = f.positive_degree()?;
    if m > cap {
        return Err(Error::DegreeCapExceeded { degree: m, cap }.into());
    }
    Ok(())
}

fn verdict_line(v: &PropertyVerdict) -> String {
    let mut s = format!(
        "{} m={}: {} ({})",
        v.property,
        v.m,
        if v.holds { "holds" } else { "fails" },
        v.method
    );
    if let Some(w) = &v.witness {
        s.push_str(&format!(" witness {w}"));
    }
    if let Some(f) = &v.witness_poly {
        s.push_str(&format!(" poly {}", f.to_hex()));
    }
    s
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cap = cli.max_degree;
    match &cli.command {
        Command::Factor { poly } => {
            check_cap(poly, cap)?;
            let fac = factor_with_cap(poly, cap)?;
            if cli.json {
                emit_json(out, &fac.report(poly))?;
            } else {
                writeln!(out, "input: {poly} ({})", poly.to_hex())?;
                for (g, e) in fac.factors() {
                    let d = g.degree();
                    writeln!(out, "  {g}  degree {d}  multiplicity {e}")?;
                }
                match fac.order() {
                    Some(o) => writeln!(out, "order: {}", o.value())?,
                    None => writeln!(out, "order: undefined (repeated factor)")?,
                }
            }
        }
        Command::Qmatrix { poly } => {
            check_cap(poly, cap)?;
            let q = build_q_with_cap(poly, cap)?;
            if cli.json {
                #[derive(Serialize)]
                struct QReport<'a> {
                    input: &'a Poly,
                    rows: &'a gf2q_core::BitMatrix,
                }
                emit_json(
                    out,
                    &QReport {
                        input: poly,
                        rows: &q,
                    },
                )?;
            } else {
                write!(out, "{q}")?;
            }
        }
        Command::Order { poly } => {
            check_cap(poly, cap)?;
            let o = poly_order_with_cap(poly, cap)?.value();
            if cli.json {
                emit_json(out, &serde_json::json!({ "input": poly, "order": o }))?;
            } else {
                writeln!(out, "{o}")?;
            }
        }
        Command::Irred { action } => irred(action, cli.json, out)?,
        Command::Classify {
            property,
            m,
            method,
            materialize,
        } => {
            let mut v = classify(property.get(), *m, (*method).into())?;
            if *materialize {
                v = v.materialized()?;
            }
            if cli.json {
                emit_json(out, &v)?;
            } else {
                writeln!(out, "{}", verdict_line(&v))?;
            }
        }
        Command::Scan {
            property,
            from,
            to,
            jobs,
            max_m,
        } => {
            if to < from {
                return Err(Failure::Usage(format!("--to {to} is below --from {from}")));
            }
            if to > max_m {
                return Err(Failure::Usage(format!(
                    "--to {to} exceeds the scan cap {max_m}"
                )));
            }
            let verdicts = scan(property.get(), *from, *to, jobs.map(|j| j as usize))?;
            for v in &verdicts {
                if cli.json {
                    emit_json(out, v)?;
                } else {
                    writeln!(out, "{}", verdict_line(v))?;
                }
            }
        }
        Command::Witness { property, m } => {
            let v = classify(property.get(), *m, Method::Search)?.materialized()?;
            if cli.json {
                emit_json(out, &v)?;
            } else {
                match (&v.witness, &v.witness_poly) {
                    (Some(w), Some(f)) => {
                        writeln!(out, "witness {w}")?;
                        writeln!(out, "{f}")?;
                        writeln!(out, "{}", f.to_hex())?;
                    }
                    _ => writeln!(out, "property holds, no witness")?,
                }
            }
        }
        Command::Selfcheck => {
            let results = selfcheck::run();
            let ok = results.iter().all(|r| r.passed);
            if cli.json {
                let rows: Vec<_> = results
                    .iter()
                    .map(|r| serde_json::json!({"name": r.name, "passed": r.passed, "detail": r.detail}))
                    .collect();
                emit_json(out, &rows)?;
            } else {
                for r in &results {
                    let status = if r.passed { "PASS" } else { "FAIL" };
                    if r.detail.is_empty() {
                        writeln!(out, "[{status}] {}", r.name)?;
                    } else {
                        writeln!(out, "[{status}] {}: {}", r.name, r.detail)?;
                    }
                }
            }
            if !ok {
                return Err(Failure::Domain("selfcheck failed".into()));
            }
        }
    }
    Ok(EXIT_OK)
}

fn irred(action: &IrredAction, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    match action {
        IrredAction::Test { poly } => {
            let irr = is_irreducible(poly)?;
            if json {
                emit_json(
                    out,
                    &serde_json::json!({ "poly": poly, "irreducible": irr }),
                )?;
            } else {
                writeln!(out, "{}", if irr { "irreducible" } else { "reducible" })?;
            }
        }
        IrredAction::Count { degree } => {
            let c = count_irreducible(*degree);
            if json {
                emit_json(out, &c)?;
            } else {
                writeln!(out, "{}", c.count)?;
            }
        }
        IrredAction::List { degree, k } => {
            let ps = first_k_irreducibles(*degree, *k)?;
            if json {
                emit_json(out, &ps)?;
            } else {
                for p in &ps {
                    writeln!(out, "{}  {p}", p.to_hex())?;
                }
            }
        }
    }
    Ok(())
}

/// Decides every `m` in `from..=to` by search, in parallel, sorted by `m`.
pub fn scan(
    property: Property,
    from: u64,
    to: u64,
    jobs: Option<usize>,
) -> Result<Vec<PropertyVerdict>, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut verdicts = pool.install(|| {
        (from..=to)
            .into_par_iter()
            .map(|m| classify(property, m, Method::Search))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    verdicts.sort_by_key(|v| v.m);
    Ok(verdicts)
}
