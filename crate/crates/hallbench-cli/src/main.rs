//! `hallbench`: products, coproducts, pairings and verification suites from
//! the command line. Exit codes: 0 success, 1 a verification failed, 2 usage
//! or configuration error.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hallbench::autop1::{eisenstein, zeta};
use hallbench::doubles::generic::{export_hopf_data, kashaev_check};
use hallbench::doubles::p1::P1Doubles;
use hallbench::finitary::{CohP1, Partition, Window};
use hallbench::grammar::{parse_element, Backend};
use hallbench::hallhopf::{HallAlgebra, Product};
use hallbench::qrel::{monomial_basis_check, serre_check, SerreForm};
use hallbench::report::Report;
use hallbench::suites::{self, LedgerEntry, Outcome, Params, SUITES};
use hallbench::symfun::hl_expand;
use hallbench::Scalar;
use serde_json::{json, Value};

use config::{parse_range, Config, WindowArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(hallbench::Error),
}

impl From<hallbench::Error> for CliError {
    fn from(e: hallbench::Error) -> CliError {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "hallbench", version, about = "Exact Hall algebra workbench")]
struct Cli {
    /// Flat JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct AlgArgs {
    /// coh-p1, torsion-local or quiver:<name>.
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[command(flatten)]
    window: WindowArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductArg {
    Hall,
    Ringel,
    Extended,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, value_enum, default_value = "hall")]
        product: ProductArg,
        x: String,
        y: String,
    },
    /// Windowed Green coproduct.
    Comul {
        #[command(flatten)]
        alg: AlgArgs,
        x: String,
    },
    /// Green pairing of two elements.
    Pair {
        #[command(flatten)]
        alg: AlgArgs,
        x: String,
        y: String,
    },
    /// Antipode by the convolution-inverse recursion, or by flag sums.
    Antipode {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        flag: bool,
        x: String,
    },
    /// Coefficients of the zeta function of P¹.
    Zeta {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Saturated line subbundle counts of O(c1) ⊕ O(c2) and their rational sum.
    Eisenstein {
        #[arg(long)]
        q: Option<u32>,
        /// Summand degrees, e.g. "1,0".
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
    },
    /// Hall–Littlewood polynomial in the monomial basis.
    Hl {
        /// Partition, e.g. "2,1".
        #[arg(long)]
        mu: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        /// Parameter t; defaults to 1/q.
        #[arg(long)]
        t: Option<String>,
    },
    /// Quantum Serre relations of a quiver.
    Serre {
        #[arg(long, default_value = "kronecker")]
        quiver: String,
        #[arg(long)]
        q: Option<u32>,
        /// Use Gauss binomials in q instead of balanced binomials.
        #[arg(long)]
        gauss: bool,
    },
    /// Relations in the Heisenberg and Drinfeld doubles.
    Double {
        #[command(subcommand)]
        cmd: DoubleCmd,
    },
    /// Runs a named suite (or `all`) and updates the ledger.
    Verify {
        suite: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        quiver: Option<String>,
    },
    /// Prints the discrepancy ledger written by `verify`.
    Ledger,
    /// Ordered monomials against rank-2 bundles.
    BasisCheck {
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2)]
        lo: i64,
        #[arg(long, default_value_t = 2)]
        hi: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// E, Ψ relations of the Heisenberg doubles, ids 1 to 8.
    EPsi,
    /// Y, Φ relations of the Drinfeld double, ids 1 to 7.
    YPhi,
    /// Cross terms against four-term counting on the Kronecker quiver.
    Cross,
    /// Kashaev embedding on torsion Hopf data.
    Kashaev,
    /// Local free boson commutators.
    Boson,
}

#[derive(Subcommand)]
enum DoubleCmd {
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        rel: u8,
        #[arg(long, allow_hyphen_values = true, default_value = "-1..1", value_parser = parse_range)]
        range: (i64, i64),
        /// Largest ψ or Φ degree.
        #[arg(long, default_value_t = 2)]
        max_deg: i64,
        /// Torsion depth of truncated coproducts.
        #[arg(long, default_value_t = 3)]
        depth: i64,
        #[arg(long)]
        q: Option<u32>,
        /// Use the printed exchange factors instead of the computed ones.
        #[arg(long)]
        printed: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes pretty JSON to stdout; a closed pipe is not an error.
fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn emit_report(r: &Report) -> bool {
    print(&report_json(r));
    r.passed()
}

fn algebra<'a>(alg: &AlgArgs, cfg: &Config, backend: &'a Backend) -> Result<HallAlgebra<'a>, CliError> {
    Ok(HallAlgebra::new(backend.cat(), alg.window.window(cfg, backend)?))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Mul { alg, product, x, y } => {
            let b = cfg.backend(alg.backend.as_deref(), cfg.q(alg.q))?;
            let h = algebra(&alg, &cfg, &b)?;
            let kind = match product {
                ProductArg::Hall => Product::Hall,
                ProductArg::Ringel => Product::Ringel,
                ProductArg::Extended => Product::Extended,
            };
            let z = h.product(&parse_element(&b, &x)?, &parse_element(&b, &y)?, kind)?;
            print(&z.to_json());
        }
        Cmd::Comul { alg, x } => {
            let b = cfg.backend(alg.backend.as_deref(), cfg.q(alg.q))?;
            let h = algebra(&alg, &cfg, &b)?;
            let x = parse_element(&b, &x)?;
            let d = h.coproduct(&x)?;
            print(&json!({"complete": h.coproduct_complete(&x), "coproduct": d.to_json()}));
        }
        Cmd::Pair { alg, x, y } => {
            let b = cfg.backend(alg.backend.as_deref(), cfg.q(alg.q))?;
            let h = algebra(&alg, &cfg, &b)?;
            let s = h.green_pair(&parse_element(&b, &x)?, &parse_element(&b, &y)?)?;
            print(&s.to_json());
        }
        Cmd::Antipode { alg, flag, x } => {
            let b = cfg.backend(alg.backend.as_deref(), cfg.q(alg.q))?;
            let h = algebra(&alg, &cfg, &b)?;
            let x = parse_element(&b, &x)?;
            let s = if flag { h.antipode_flag(&x)? } else { h.antipode(&x)? };
            print(&s.to_json());
        }
        Cmd::Zeta { q, terms } => {
            let q = cfg.q(q) as u64;
            let coeffs: Vec<Value> = zeta(q).expand(0, terms).iter().map(scalar_value).collect();
            print(&Value::Array(coeffs));
        }
        Cmd::Eisenstein { q, v, trunc } => {
            let cat = CohP1::new(cfg.q(q))?;
            let c = ints(&v)?;
            let e = eisenstein(&cat, &c, trunc)?;
            let counts: Vec<Value> = e.counts.iter().map(|n| n.to_string().parse::<i64>().map_or_else(|_| json!(n.to_string()), Value::from)).collect();
            print(&json!({"bundle": e.bundle, "top": e.top, "counts": counts, "series": e.series.to_string()}));
        }
        Cmd::Hl { mu, n, q, t } => {
            let q = cfg.q(q) as u64;
            let mu = Partition::new(ints(&mu)?.into_iter().map(|x| u32::try_from(x).map_err(|_| CliError::Usage("negative part".into()))).collect::<Result<_, _>>()?)?;
            let t = match t {
                Some(s) => Scalar::parse(&s, q)?,
                None => Scalar::frac(1, q as i64, q),
            };
            let f = hl_expand(&mu, n.unwrap_or(mu.len().max(1)), &t)?;
            print(&f.to_json());
        }
        Cmd::Serre { quiver, q, gauss } => {
            let quiver = hallbench::finitary::Quiver::by_name(&quiver, cfg.q(q))?;
            return Ok(emit_report(&serre_check(&quiver, if gauss { SerreForm::Gauss } else { SerreForm::Ringel })?));
        }
        Cmd::Double { cmd: DoubleCmd::Verify { family, rel, range, max_deg, depth, q, printed } } => {
            let q = cfg.q(q);
            let (lo, hi) = range;
            let r = match family {
                Family::EPsi | Family::YPhi | Family::Boson => {
                    let cat = CohP1::new(q)?;
                    let d = P1Doubles::new(&cat, depth)?;
                    match family {
                        Family::EPsi => d.verify_e_psi(rel, lo..=hi, max_deg, printed)?,
                        Family::YPhi => d.verify_y_phi(rel, lo..=hi, max_deg, printed)?,
                        _ => d.boson_report(max_deg)?,
                    }
                }
                Family::Cross => suites::cross_report(q)?,
                Family::Kashaev => {
                    let t = hallbench::finitary::TorsionLocal::new(q, 1)?;
                    kashaev_check(&export_hopf_data(&t, Window::torsion(depth.min(2)), 2)?, "torsion-local")?
                }
            };
            return Ok(emit_report(&r));
        }
        Cmd::Verify { suite, q, quiver } => return verify(&cfg, &suite, Params { q: q.or(cfg.q), quiver }),
        Cmd::Ledger => {
            let path = cfg.out_dir().join("ledger.json");
            let entries = read_ledger(&path)?;
            print(&serde_json::to_value(entries).expect("ledger serializes"));
        }
        Cmd::BasisCheck { deg, q, lo, hi } => {
            let cat = CohP1::new(cfg.q(q))?;
            return Ok(emit_report(&monomial_basis_check(&cat, deg..=deg, lo, hi)?));
        }
    }
    Ok(true)
}

/// Integers print as JSON numbers, other scalars as {a, b}.
fn scalar_value(s: &Scalar) -> Value {
    s.to_i64().map_or_else(|| s.to_json(), Value::from)
}

fn ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad integer {x:?} in {s:?}")))).collect()
}

fn outcome_json(o: &Outcome) -> Value {
    json!({
        "suite": o.suite,
        "status": if o.passed() { "pass" } else { "fail" },
        "reports": o.reports.iter().map(report_json).collect::<Vec<_>>(),
        "printedReadings": o.printed.iter().map(report_json).collect::<Vec<_>>(),
    })
}

fn read_ledger(path: &Path) -> Result<Vec<LedgerEntry>, CliError> {
    match std::fs::read_to_string(path) {
        Ok(s) => serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("bad ledger {}: {e}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(CliError::Usage(format!("cannot read {}: {e}", path.display()))),
    }
}

fn verify(cfg: &Config, suite: &str, params: Params) -> Result<bool, CliError> {
    let names: Vec<&str> = match suite {
        "all" => match &cfg.suites {
            Some(list) => list.iter().map(String::as_str).collect(),
            None => SUITES.to_vec(),
        },
        s => vec![s],
    };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(CliError::Usage(format!("unknown suite {bad:?}; known: all, {}", SUITES.join(", "))));
    }
    let mut outcomes = Vec::new();
    for r in suites::run_many(&names, &params) {
        outcomes.push(r?);
    }
    let dir = cfg.out_dir();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join("ledger.json");
    let mut entries: Vec<LedgerEntry> = read_ledger(&path)?.into_iter().filter(|e| !names.contains(&e.suite.as_str())).collect();
    entries.extend(suites::merge_ledger(&outcomes));
    entries.sort_by(|a, b| (&a.suite, &a.location).cmp(&(&b.suite, &b.location)));
    let write = |p: PathBuf, v: &Value| {
        std::fs::write(&p, serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))
    };
    write(path, &serde_json::to_value(&entries).expect("ledger serializes"))?;
    let docs: Vec<Value> = outcomes.iter().map(outcome_json).collect();
    for (o, d) in outcomes.iter().zip(&docs) {
        write(dir.join(format!("{}.json", o.suite)), d)?;
    }
    print(&if docs.len() == 1 { docs[0].clone() } else { Value::Array(docs) });
    Ok(outcomes.iter().all(Outcome::passed))
}
