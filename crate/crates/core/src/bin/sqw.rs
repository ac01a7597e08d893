//! Command-line entry point: compute polynomials, run verification checks, and emit
//! deterministic JSON/CSV reports.
//!
//! Exit status: 0 when every requested check passes (or the command only computes),
//! 1 when a check fails (the failing witness is in the report), 2 on configuration
//! errors. The SQW_SEED environment variable overrides any configured seed.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqw_core::degen::{
    f_el_symbolic, f_tilde_symbolic, vanishing_el, vanishing_tilde,
};
use sqw_core::interp::{classify_grid, pieri_residual, solve_f, Grid};
use sqw_core::mpoly::SymPoly;
use sqw_core::partitions::{ParamSeq, Partition, SeqLabel};
use sqw_core::report;
use sqw_core::sample::{resolve_seed, Sampler};
use sqw_core::scalar::{rat_from_str, Rat};
use sqw_core::sqw::{check_cauchy, f_symbolic, vanishing_table};
use sqw_core::suite;
use sqw_core::transfer::check_exchange;

#[derive(Parser)]
#[command(
    name = "sqw",
    version,
    about = "Exact inhomogeneous spin q-Whittaker polynomials: computation and identity checks"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Random seed for parameter draws (SQW_SEED overrides).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// The general two-parameter family F_{λ/μ}(x | 𝒜, ℬ).
    Sqw,
    /// The one-parameter degeneration F̃_{λ/μ}(x | 𝒜, ∞).
    Tilde,
    /// The elementary-type limit F^el_{λ/μ}(r | 𝒞, d).
    El,
    /// Interpolation on a grid table (requires --table).
    SolveF,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial of the chosen family and print it.
    Compute {
        #[arg(long, value_enum)]
        family: Family,
        /// Partition λ as comma-separated parts, e.g. 2,1 (use 0 for the empty one).
        #[arg(long)]
        lambda: String,
        /// Skew shape bottom μ (default: empty).
        #[arg(long)]
        mu: Option<String>,
        /// Number of variables.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// JSON parameter file: {"q": "1/2", "a": [...], "b": [...], "c": [...], "d": "..."}
        /// with rationals as fraction strings; the a/b/c lists start at index 0 (χ_0).
        /// Missing parameters are drawn from the seed.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Grid table JSON (solve-f only).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check both Yang-Baxter triangle identities over all conserving boundaries.
    VerifyYbe {
        #[arg(long, default_value_t = 3)]
        max_label: i64,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Check the skew Cauchy identity mod t^{D+1} under the grading substitution.
    VerifyCauchy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Truncation order.
        #[arg(long = "D", visible_alias = "d", default_value_t = 8)]
        d: usize,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Check the row-operator exchange relation for all |μ|,|ν| ≤ wmax.
    VerifyExchange {
        #[arg(long, default_value_t = 3)]
        wmax: usize,
        #[arg(long = "D", visible_alias = "d", default_value_t = 10)]
        d: usize,
    },
    /// Check the vanishing property and diagonal values on the parameter grid.
    VerifyVanishing {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        wmax: usize,
        /// Which family's table to verify.
        #[arg(long, value_enum, default_value_t = Family::Sqw)]
        family: Family,
    },
    /// Check that the Pieri residual vanishes on perfect grids for k ≤ kmax.
    VerifyPieri {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        /// Optional grid table; otherwise seeded grids of both types are used.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Solve for F_λ on a grid table by exact interpolation and print it.
    Interpolate {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Decide whether a grid table is of geometric or arithmetic type, or neither.
    ClassifyGrid {
        #[arg(long)]
        table: PathBuf,
    },
    /// Run the full acceptance suite and print a pass/fail matrix.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Partition::empty());
    }
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad partition part {p:?}")))
        .collect::<Result<_, _>>()?;
    Partition::new(parts).map_err(|e| format!("bad partition {s:?}: {e}"))
}

fn read_json(path: &PathBuf) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("bad JSON in {path:?}: {e}"))
}

fn read_grid(path: &PathBuf) -> Result<Grid, String> {
    Grid::from_json(&read_json(path)?).map_err(|e| format!("bad grid table in {path:?}: {e}"))
}

fn rat_field(v: &Value, key: &str) -> Result<Option<Rat>, String> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => rat_from_str(s).map(Some).map_err(|e| format!("{key}: {e}")),
        Some(other) => Err(format!("{key}: expected a fraction string, got {other}")),
    }
}

fn seq_field(v: &Value, key: &str, label: SeqLabel) -> Result<Option<ParamSeq>, String> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(items)) => {
            let vals: Vec<Rat> = items
                .iter()
                .map(|it| match it {
                    Value::String(s) => rat_from_str(s).map_err(|e| format!("{key}: {e}")),
                    other => Err(format!("{key}: expected fraction strings, got {other}")),
                })
                .collect::<Result<_, _>>()?;
            Ok(Some(ParamSeq::new(label, vals)))
        }
        Some(other) => Err(format!("{key}: expected an array, got {other}")),
    }
}

/// Parameters for `compute`, read from file where given and seeded otherwise.
struct Params {
    q: Rat,
    d: Rat,
    a: ParamSeq,
    b: ParamSeq,
    c: ParamSeq,
}

fn load_params(path: Option<&PathBuf>, seed: u64, prefix: usize) -> Result<Params, String> {
    let file = match path {
        Some(p) => read_json(p)?,
        None => json!({}),
    };
    let mut s = Sampler::new(seed);
    let (dq, da, db) = s.parameter_pair(prefix, 6);
    let (dd, dc) = s.linear_parameters(prefix, 6);
    Ok(Params {
        q: rat_field(&file, "q")?.unwrap_or(dq),
        d: rat_field(&file, "d")?.unwrap_or(dd),
        a: seq_field(&file, "a", SeqLabel::A)?.unwrap_or(da),
        b: seq_field(&file, "b", SeqLabel::B)?.unwrap_or(db),
        c: seq_field(&file, "c", SeqLabel::C)?.unwrap_or(dc),
    })
}

/// Renders a symmetric polynomial as a sum of monomial-basis terms.
fn sympoly_string(p: &SymPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (la, coeff) in p.terms() {
        let shape: Vec<String> = la.parts().iter().map(|v| v.to_string()).collect();
        parts.push(format!("{}*m[{}]", coeff, shape.join(",")));
    }
    parts.join(" + ")
}

fn sympoly_json(p: &SymPoly) -> Value {
    let mut map = BTreeMap::new();
    for (la, coeff) in p.terms() {
        let key: Vec<String> = la.parts().iter().map(|v| v.to_string()).collect();
        map.insert(format!("[{}]", key.join(",")), Value::String(coeff.to_string()));
    }
    json!(map)
}

/// Prints a single report in the requested format and returns its pass flag.
fn emit(format: Format, rep: &Value) -> bool {
    match format {
        Format::Json => println!("{}", report::render(rep, false)),
        Format::Pretty => println!("{}", report::render(rep, true)),
        Format::Csv => print!("{}", report::render_csv(std::slice::from_ref(rep))),
    }
    rep.get("pass").and_then(Value::as_bool).unwrap_or(true)
}

fn run(cli: Cli) -> Result<bool, String> {
    let seed = resolve_seed(cli.seed, 1);
    let format = cli.format;
    match cli.command {
        Command::Compute {
            family,
            lambda,
            mu,
            n,
            params,
            table,
        } => {
            let la = parse_partition(&lambda)?;
            let mu = parse_partition(mu.as_deref().unwrap_or(""))?;
            let poly = match family {
                Family::SolveF => {
                    let path = table.ok_or("solve-f needs --table")?;
                    let g = read_grid(&path)?;
                    solve_f(&g, &la).map_err(|e| format!("interpolation failed: {e}"))?
                }
                _ => {
                    let prefix = la.len() + n + 3;
                    let p = load_params(params.as_ref(), seed, prefix)?;
                    let m = match family {
                        Family::Sqw => f_symbolic(&la, &mu, n, &p.a, &p.b, &p.q),
                        Family::Tilde => f_tilde_symbolic(&la, &mu, n, &p.a, &p.q),
                        Family::El => f_el_symbolic(&la, &mu, n, &p.c, &p.d),
                        Family::SolveF => unreachable!(),
                    }
                    .map_err(|e| format!("computation failed: {e}"))?;
                    SymPoly::from_mpoly(&m).map_err(|e| format!("result not symmetric: {e}"))?
                }
            };
            match format {
                Format::Json | Format::Csv => {
                    let rep = json!({
                        "schema": report::SCHEMA,
                        "identity": "compute",
                        "parameters": {"seed": seed, "lambda": report::partition_value(&la),
                                       "mu": report::partition_value(&mu), "n": n},
                        "polynomial": sympoly_json(&poly),
                        "pass": true,
                    });
                    println!("{}", report::render(&rep, false));
                }
                Format::Pretty => println!("{}", sympoly_string(&poly)),
            }
            Ok(true)
        }
        Command::VerifyYbe { max_label, points } => {
            let out = suite::criterion_ybe(seed, max_label, points)
                .map_err(|e| format!("check failed to run: {e}"))?;
            let rep = report::report(
                "yang-baxter",
                report::params(vec![
                    ("seed", json!(seed)),
                    ("max_label", json!(max_label)),
                    ("points", json!(points)),
                    ("detail", json!(out.detail)),
                ]),
                None,
                &[],
                out.pass,
            );
            Ok(emit(format, &rep))
        }
        Command::VerifyCauchy { n, m, d, mu, nu } => {
            let mu = parse_partition(mu.as_deref().unwrap_or(""))?;
            let nu = parse_partition(nu.as_deref().unwrap_or(""))?;
            let mut s = Sampler::new(seed);
            let check = check_cauchy(&mu, &nu, n, m, d, &mut s)
                .map_err(|e| format!("check failed to run: {e}"))?;
            let pass = check.pass();
            let rep = report::report(
                "cauchy",
                report::params(vec![
                    ("seed", json!(seed)),
                    ("n", json!(n)),
                    ("m", json!(m)),
                    ("mu", report::partition_value(&mu)),
                    ("nu", report::partition_value(&nu)),
                    ("q_hat", json!(report::rat_string(&check.q_hat))),
                    ("x_hat", report::rats_value(&check.x_hat)),
                    ("y_hat", report::rats_value(&check.y_hat)),
                    ("lhs", report::series_value(&check.lhs)),
                    ("rhs", report::series_value(&check.rhs)),
                ]),
                Some(d),
                &check.contributing,
                pass,
            );
            Ok(emit(format, &rep))
        }
        Command::VerifyExchange { wmax, d } => {
            let mut s = Sampler::new(seed);
            let partitions = sqw_core::partitions::enumerate_partitions(wmax, wmax);
            let mut pass = true;
            let mut witness = Value::Null;
            'outer: for mu in &partitions {
                for nu in &partitions {
                    let (lhs, rhs, _) = check_exchange(mu, nu, d, &mut s)
                        .map_err(|e| format!("check failed to run: {e}"))?;
                    if lhs != rhs {
                        pass = false;
                        witness = json!({
                            "mu": report::partition_value(mu),
                            "nu": report::partition_value(nu),
                        });
                        break 'outer;
                    }
                }
            }
            let rep = report::report(
                "exchange",
                report::params(vec![
                    ("seed", json!(seed)),
                    ("wmax", json!(wmax)),
                    ("failing_pair", witness),
                ]),
                Some(d),
                &partitions,
                pass,
            );
            Ok(emit(format, &rep))
        }
        Command::VerifyVanishing { n, wmax, family } => {
            let mut s = Sampler::new(seed);
            let (pass, detail, parts) = match family {
                Family::Sqw => {
                    let (q, a, b) = s.parameter_pair(wmax + n + 2, (wmax + 3) as i64);
                    let t = vanishing_table(n, wmax, &a, &b, &q)
                        .map_err(|e| format!("check failed to run: {e}"))?;
                    (
                        t.pass(),
                        format!(
                            "{} violations, {} diagonal failures",
                            t.violations.len(),
                            t.diagonal_failures.len()
                        ),
                        t.partitions,
                    )
                }
                Family::Tilde => {
                    let (q, a, _b) = s.parameter_pair(wmax + n + 2, (wmax + 3) as i64);
                    let t = vanishing_tilde(n, wmax, &a, &q)
                        .map_err(|e| format!("check failed to run: {e}"))?;
                    (
                        t.pass(),
                        format!(
                            "{} violations, {} diagonal failures",
                            t.violations.len(),
                            t.diagonal_failures.len()
                        ),
                        t.partitions,
                    )
                }
                Family::El => {
                    let (d, c) = s.linear_parameters(wmax + n + 2, (wmax + 3) as i64);
                    let t = vanishing_el(n, wmax, &c, &d)
                        .map_err(|e| format!("check failed to run: {e}"))?;
                    (
                        t.pass(),
                        format!(
                            "{} violations, {} diagonal failures",
                            t.violations.len(),
                            t.diagonal_failures.len()
                        ),
                        t.partitions,
                    )
                }
                Family::SolveF => return Err("--family solve-f has no vanishing table".into()),
            };
            let rep = report::report(
                "vanishing",
                report::params(vec![
                    ("seed", json!(seed)),
                    ("n", json!(n)),
                    ("wmax", json!(wmax)),
                    ("detail", json!(detail)),
                ]),
                None,
                &parts,
                pass,
            );
            Ok(emit(format, &rep))
        }
        Command::VerifyPieri { kmax, table } => {
            let grids: Vec<(String, Grid)> = match table {
                Some(path) => vec![(format!("{path:?}"), read_grid(&path)?)],
                None => vec![
                    ("seeded geometric".into(), suite::sample_q_grid(seed, 2, kmax + 3).0),
                    (
                        "seeded arithmetic".into(),
                        suite::sample_linear_grid(seed.wrapping_add(100), 2, kmax + 3).0,
                    ),
                ],
            };
            let mut pass = true;
            let mut witness = Value::Null;
            'outer: for (name, g) in &grids {
                for k in 1..=kmax {
                    let res =
                        pieri_residual(g, k).map_err(|e| format!("check failed to run: {e}"))?;
                    if !res.is_zero() {
                        pass = false;
                        witness = json!({"grid": name, "k": k,
                                         "residual": sympoly_json(&res)});
                        break 'outer;
                    }
                }
            }
            let rep = report::report(
                "pieri",
                report::params(vec![
                    ("seed", json!(seed)),
                    ("kmax", json!(kmax)),
                    ("failing_case", witness),
                ]),
                None,
                &[],
                pass,
            );
            Ok(emit(format, &rep))
        }
        Command::Interpolate { table, lambda } => {
            let g = read_grid(&table)?;
            let la = parse_partition(&lambda)?;
            let poly = solve_f(&g, &la).map_err(|e| format!("interpolation failed: {e}"))?;
            match format {
                Format::Pretty => println!("{}", sympoly_string(&poly)),
                _ => {
                    let rep = json!({
                        "schema": report::SCHEMA,
                        "identity": "interpolate",
                        "parameters": {"lambda": report::partition_value(&la)},
                        "polynomial": sympoly_json(&poly),
                        "pass": true,
                    });
                    println!("{}", report::render(&rep, false));
                }
            }
            Ok(true)
        }
        Command::ClassifyGrid { table } => {
            let g = read_grid(&table)?;
            let cls = classify_grid(&g).map_err(|e| format!("classification failed: {e}"))?;
            let rep = json!({
                "schema": report::SCHEMA,
                "identity": "classify-grid",
                "classification": cls.to_json(),
                "pass": true,
            });
            match format {
                Format::Pretty => println!("{}", report::render(&cls.to_json(), true)),
                _ => println!("{}", report::render(&rep, false)),
            }
            Ok(true)
        }
        Command::Suite => {
            let outcomes =
                suite::run_all(seed).map_err(|e| format!("suite failed to run: {e}"))?;
            let mut all_pass = true;
            match format {
                Format::Pretty => {
                    for o in &outcomes {
                        let mark = if o.pass { "PASS" } else { "FAIL" };
                        println!("[{mark}] {:2}. {:32} {}", o.index, o.name, o.detail);
                        all_pass &= o.pass;
                    }
                    println!("suite: {}", if all_pass { "PASS" } else { "FAIL" });
                }
                Format::Json => {
                    let reports: Vec<Value> = outcomes
                        .iter()
                        .map(|o| {
                            all_pass &= o.pass;
                            json!({
                                "schema": report::SCHEMA,
                                "identity": o.name,
                                "index": o.index,
                                "parameters": {"seed": seed},
                                "detail": o.detail,
                                "pass": o.pass,
                            })
                        })
                        .collect();
                    println!("{}", report::render(&Value::Array(reports), false));
                }
                Format::Csv => {
                    let rows: Vec<Value> = outcomes
                        .iter()
                        .map(|o| {
                            all_pass &= o.pass;
                            json!({"identity": o.name, "pass": o.pass, "detail": o.detail})
                        })
                        .collect();
                    print!("{}", report::render_csv(&rows));
                }
            }
            Ok(all_pass)
        }
    }
}
