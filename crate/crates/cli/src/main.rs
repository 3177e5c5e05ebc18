//! `vgit`: batch front end over vgit-core. Every invocation prints one JSON
//! object on stdout carrying a `"schema"` field.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{Map, Value};

use vgit_core::criterion::{mu_min, stability_verdict_with, OneParamSubgroup, SearchOptions};
use vgit_core::curve::{make_witness, PointedCurve, Surface, WitnessKind};
use vgit_core::exact::rational::{format_rational, parse_rational};
use vgit_core::exact::Rational;
use vgit_core::hessian::{class_table, relative_hessian_class, symmetrized_class_quadric, wall_slope};
use vgit_core::inflection::inflection_report;
use vgit_core::walls::{chamber_report, classify_at_wall, run_negative_control, verify_in, wall_slopes, Outcome, PropositionTable};
use vgit_core::Error;

const SCHEMA: &str = "vgit/v1";

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "vgit", version, about = "Exact VGIT computations for pointed plane and quadric curves")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Exit 3 when a structural membership test is undecided.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CurveArg {
    /// Curve file (JSON); `-` reads stdin.
    #[arg(long)]
    curve: String,
}

#[derive(Args, Debug)]
struct SurfaceDegree {
    #[arg(long, value_parser = parse_surface)]
    surface: Surface,
    #[arg(long)]
    degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stability verdict at a slope.
    Verdict {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, value_parser = parse_slope)]
        slope: Rational,
        /// Frames tried by the destabilizer search.
        #[arg(long, default_value_t = SearchOptions::default().budget)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact μ_min of a diagonal subgroup and the achieving pair.
    Mu {
        #[command(flatten)]
        curve: CurveArg,
        /// Weights `r0,r1[,r2]`; on P2 a missing r2 is `−r0−r1`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_parser = parse_slope)]
        slope: Rational,
    },
    /// Vanishing sequences, inflection weights and special-locus predicates.
    Inflect {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Region of a curve at the wall.
    Classify {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Relative Hessian class, or a table over degrees with `--table`.
    HessianClass {
        #[arg(long, value_parser = parse_surface)]
        surface: Surface,
        #[arg(long, required_unless_present = "table")]
        degree: Option<u32>,
        /// `M` on P2, `M1,M2` on the quadric.
        #[arg(long, required_unless_present = "table")]
        m: Option<String>,
        #[arg(long)]
        symmetrized: bool,
        /// Rows for the standard twists over a degree range such as `3-6`.
        #[arg(long, conflicts_with_all = ["degree", "m", "symmetrized"])]
        table: Option<String>,
    },
    /// Edge and wall slopes.
    Walls {
        #[command(flatten)]
        at: SurfaceDegree,
    },
    /// Wall and chamber report.
    Chamber {
        #[command(flatten)]
        at: SurfaceDegree,
    },
    /// Check proposition parameter tables.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Restrict to one degree; defaults to every listed degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Write a witness curve.
    Witness {
        #[arg(long, value_parser = parse_kind)]
        kind: WitnessKind,
        #[arg(long)]
        degree: Option<u32>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_surface(s: &str) -> Result<Surface, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<WitnessKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_slope(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

struct Output {
    body: Value,
    code: u8,
}

impl Output {
    fn ok(v: impl Serialize) -> Result<Self, Failure> {
        Ok(Output { body: to_value(v)?, code: 0 })
    }
}

fn to_value(v: impl Serialize) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure { code: EXIT_USAGE, message: format!("serialization: {e}") })
}

fn read_curve(arg: &CurveArg) -> Result<PointedCurve, Failure> {
    let text = if arg.curve == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&arg.curve).map_err(|e| usage(format!("cannot read {}: {e}", arg.curve)))?
    };
    let text = strip_schema(text);
    PointedCurve::from_json(&text).map_err(|e| usage(format!("{}: {e}", arg.curve)))
}

// accept `witness` stdout, which carries the schema tag
fn strip_schema(text: String) -> String {
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(mut m)) if m.get("schema").and_then(Value::as_str) == Some(SCHEMA) => {
            m.remove("schema");
            Value::Object(m).to_string()
        }
        _ => text,
    }
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("malformed {what} {s:?}"))))
        .collect()
}

fn parse_range(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || usage(format!("malformed degree range {s:?} (expected e.g. 3-6)"));
    let (a, b) = match s.split_once('-') {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let (a, b) = (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn undecided(strict: bool, flag: bool) -> u8 {
    if strict && flag {
        EXIT_UNDECIDED
    } else {
        0
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Verdict { curve, slope, budget, seed } => {
            let c = read_curve(curve)?;
            let v = stability_verdict_with(&c, slope, SearchOptions { budget: *budget, seed: *seed })?;
            let code = undecided(cli.strict, v.undecided);
            Ok(Output { body: to_value(&v)?, code })
        }
        Command::Mu { curve, lambda, slope } => {
            let c = read_curve(curve)?;
            let mut w = parse_ints(lambda, "weights")?;
            if c.surface == Surface::P2 && w.len() == 2 {
                w.push(-w[0] - w[1]);
            }
            let l = OneParamSubgroup::new(c.surface, w)?;
            let mu = mu_min(&c, &l, slope)?;
            let mut body = to_value(&mu)?;
            body["lambda"] = to_value(&l.weights)?;
            body["slope"] = Value::String(format_rational(slope));
            Ok(Output { body, code: 0 })
        }
        Command::Inflect { curve } => {
            let r = inflection_report(&read_curve(curve)?)?;
            let code = undecided(cli.strict, r.undecided);
            Ok(Output { body: to_value(&r)?, code })
        }
        Command::Classify { curve } => {
            let r = classify_at_wall(&read_curve(curve)?)?;
            let code = undecided(cli.strict, r.undecided);
            Ok(Output { body: to_value(&r)?, code })
        }
        Command::HessianClass { surface, degree, m, symmetrized, table } => {
            if let Some(range) = table {
                let rows = class_table(*surface, &parse_range(range)?)?;
                return Output::ok(serde_json::json!({ "rows": rows }));
            }
            let (d, m) = (degree.expect("required by clap"), m.as_deref().expect("required by clap"));
            let m: Vec<u32> = parse_ints(m, "twist")?
                .into_iter()
                .map(|k| u32::try_from(k).map_err(|_| usage("twists are nonnegative")))
                .collect::<Result<_, _>>()?;
            let class = match (surface, *symmetrized) {
                (Surface::Quadric, true) if m.len() == 2 => symmetrized_class_quadric(d, m[0], m[1])?,
                (Surface::Quadric, true) => return Err(usage("--symmetrized takes M1,M2")),
                (Surface::P2, true) => return Err(usage("--symmetrized applies to the quadric only")),
                _ => relative_hessian_class(*surface, d, &m)?,
            };
            let mut body = to_value(&class)?;
            body["slope"] = match wall_slope(&class) {
                Ok(s) => Value::String(format_rational(&s)),
                Err(_) => Value::Null,
            };
            Ok(Output { body, code: 0 })
        }
        Command::Walls { at } => Output::ok(wall_slopes(at.surface, at.degree)?),
        Command::Chamber { at } => Output::ok(chamber_report(at.surface, at.degree)?),
        Command::Verify { id, all, degree } => verify(id.as_deref(), *all, *degree),
        Command::Witness { kind, degree, out } => {
            let d = degree.or(kind.fixed_degree()).ok_or_else(|| usage(format!("{kind} needs --degree")))?;
            let curve = make_witness(*kind, d)?;
            let text = if cli.pretty { curve.to_json_pretty() } else { curve.to_json() };
            match out {
                Some(path) => {
                    fs::write(path, format!("{text}\n"))
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    Output::ok(serde_json::json!({ "written": path.display().to_string(), "kind": kind.tag(), "degree": d }))
                }
                None => Ok(Output { body: serde_json::from_str(&text).expect("curve json"), code: 0 }),
            }
        }
    }
}

fn verify(id: Option<&str>, all: bool, degree: Option<u32>) -> Result<Output, Failure> {
    let table = PropositionTable::load()?;
    let ids: Vec<String> = match id {
        Some(id) => vec![table.entry(id)?.id.clone()],
        None => {
            debug_assert!(all);
            table.ids().into_iter().map(String::from).collect()
        }
    };
    let mut checks = Vec::new();
    for pid in &ids {
        let entry = table.entry(pid)?;
        let degrees = match degree {
            Some(d) if id.is_some() || entry.degrees.contains(&d) => vec![d],
            Some(_) => continue,
            None => entry.degrees.clone(),
        };
        for d in degrees {
            checks.push(verify_in(&table, pid, d)?);
        }
    }
    let mut controls = Vec::new();
    if all {
        for control in &table.negative_controls {
            let base = table.entry(&control.base)?;
            let degrees = match degree {
                Some(d) if base.degrees.contains(&d) => vec![d],
                Some(_) => Vec::new(),
                None => base.degrees.clone(),
            };
            for d in degrees {
                controls.push(run_negative_control(&table, control, d)?);
            }
        }
    }
    let pass = checks.iter().all(|c| c.outcome == Outcome::Pass) && controls.iter().all(|c| c.behaves);
    let body = if id.is_some() && checks.len() == 1 {
        to_value(&checks[0])?
    } else {
        serde_json::json!({ "pass": pass, "checks": checks, "negative_controls": controls })
    };
    Ok(Output { body, code: if pass { 0 } else { EXIT_VERIFY } })
}

fn emit(body: Value, pretty: bool) {
    let mut obj = Map::new();
    obj.insert("schema".into(), Value::String(SCHEMA.into()));
    match body {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    let v = Value::Object(obj);
    let text = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) }.expect("json");
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            emit(out.body, cli.pretty);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
