//! Batch front-end: one JSON job document in, one JSON report document out.
//!
//! A job file holds a single job object or an array of jobs; each job names
//! a command and carries its payload inline (see the README for schemas).
//! Reports echo the input byte-for-byte, carry exact rationals, and include
//! the witness for every boolean check. Exit codes: 0 all checks pass,
//! 1 some check failed, 2 usage or schema error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::{json, Value};

use nonarch_core::jets::{gg_dim, jet_ldl_check, pullback, Jet, JetDifferential, TorusMap};
use nonarch_core::nevanlinna::{
    dlog_check, exponent_spread, fmt_residual, jensen_residual, ldl_check, nevanlinna_report,
    Target,
};
use nonarch_core::pwl::{PiecewiseLinear, PwlData};
use nonarch_core::rat::{format_rat, parse_rat, ExtRat, Prime, Rat};
use nonarch_core::series::{AnnulusWindow, LaurentPoly, RationalFn};
use nonarch_core::tropical::{
    cube_disjointness, fundamental_reduce, translates_met, trop_map, Cube, Lattice, TropPath,
    TropPoint,
};
use nonarch_core::valued::ValuedScalar;
use num::Zero;

#[derive(Parser)]
#[command(name = "nonarch")]
#[command(about = "Exact non-archimedean Nevanlinna, jet-differential and tropical checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a JSON job file and write the report document.
    Run {
        /// Path to the job file (a job object or an array of jobs).
        jobfile: PathBuf,
        /// Write the report document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the prime for every job.
        #[arg(long)]
        p: Option<u64>,
    },
}

/// Fields every job carries besides its payload.
#[derive(Deserialize)]
struct JobHeader {
    command: String,
    #[serde(default)]
    p: Option<u64>,
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: String,
    input: &'a RawValue,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

enum JobError {
    /// Malformed payload: wrong shape, unknown command, bad rational.
    Schema(String),
    /// A module precondition was violated; carries its name.
    Module(String),
}

impl From<nonarch_core::Error> for JobError {
    fn from(e: nonarch_core::Error) -> Self {
        JobError::Module(e.to_string())
    }
}

fn schema<E: std::fmt::Display>(e: E) -> JobError {
    JobError::Schema(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { jobfile, out, p } => run_file(&jobfile, out.as_deref(), p),
    }
}

fn run_file(jobfile: &std::path::Path, out: Option<&std::path::Path>, p: Option<u64>) -> ExitCode {
    let text = match fs::read_to_string(jobfile) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", jobfile.display());
            return ExitCode::from(2);
        }
    };
    let jobs: Vec<Box<RawValue>> = match serde_json::from_str::<Vec<Box<RawValue>>>(&text) {
        Ok(list) => list,
        Err(_) => match serde_json::from_str::<Box<RawValue>>(&text) {
            Ok(single) => vec![single],
            Err(e) => {
                eprintln!("job file is not valid JSON: {e}");
                return ExitCode::from(2);
            }
        },
    };

    let override_prime = match p.map(Prime::new).transpose() {
        Ok(prime) => prime,
        Err(e) => {
            eprintln!("bad --p: {e}");
            return ExitCode::from(2);
        }
    };

    let mut reports: Vec<Report<'_>> = Vec::with_capacity(jobs.len());
    let mut any_error = false;
    let mut any_failed = false;
    for raw in &jobs {
        let header: Result<JobHeader, _> = serde_json::from_str(raw.get());
        let report = match header {
            Err(e) => {
                any_error = true;
                Report {
                    command: String::new(),
                    input: raw,
                    pass: false,
                    result: None,
                    error: Some(format!("schema: {e}")),
                }
            }
            Ok(header) => {
                let prime = match override_prime {
                    Some(p) => Ok(Some(p)),
                    None => header.p.map(Prime::new).transpose(),
                };
                let outcome = prime
                    .map_err(|e| JobError::Schema(e.to_string()))
                    .and_then(|p| dispatch(&header.command, raw.get(), p));
                match outcome {
                    Ok((result, pass)) => {
                        if !pass {
                            any_failed = true;
                        }
                        let report = Report {
                            command: header.command.clone(),
                            input: raw,
                            pass,
                            result: Some(result),
                            error: None,
                        };
                        if let Some(path) = &header.out {
                            if let Ok(doc) = serde_json::to_string_pretty(&report) {
                                let _ = fs::write(path, doc);
                            }
                        }
                        report
                    }
                    Err(err) => {
                        any_error = true;
                        let (kind, message) = match err {
                            JobError::Schema(m) => ("schema", m),
                            JobError::Module(m) => ("precondition", m),
                        };
                        Report {
                            command: header.command.clone(),
                            input: raw,
                            pass: false,
                            result: None,
                            error: Some(format!("{kind}: {message}")),
                        }
                    }
                }
            }
        };
        reports.push(report);
    }

    // reports serialize directly so the raw input echo keeps its bytes
    let document = serde_json::to_string_pretty(&reports).unwrap();
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &document) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{document}"),
    }

    if any_error {
        ExitCode::from(2)
    } else if any_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

// ---------------------------------------------------------------------------
// payload helpers

/// Rebuild a Laurent polynomial under a different prime context.
fn recontext(f: LaurentPoly, prime: Option<Prime>) -> LaurentPoly {
    match prime {
        Some(p) if p != f.prime() => {
            LaurentPoly::from_terms(f.terms().map(|(n, c)| (n, c.clone())), p)
        }
        _ => f,
    }
}

fn recontext_rational(f: RationalFn, prime: Option<Prime>) -> Result<RationalFn, JobError> {
    match prime {
        Some(p) if p != f.prime() => Ok(RationalFn::new(
            recontext(f.num().clone(), Some(p)),
            recontext(f.den().clone(), Some(p)),
        )?),
        _ => Ok(f),
    }
}

fn recontext_map(map: TorusMap, prime: Option<Prime>) -> Result<TorusMap, JobError> {
    match prime {
        Some(p) if p != map.prime() => {
            let coords = map
                .coords()
                .iter()
                .map(|f| recontext_rational(f.clone(), Some(p)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TorusMap::new(coords, map.window().clone(), map.log_count())?)
        }
        _ => Ok(map),
    }
}

fn ext_to_json(v: &ExtRat) -> Value {
    Value::String(v.to_string())
}

fn pwl_to_json(f: &PiecewiseLinear) -> Value {
    serde_json::to_value(PwlData::from(f)).unwrap()
}

fn rats_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rat(q))).collect())
}

fn parse_rats(strings: &[String]) -> Result<Vec<Rat>, JobError> {
    strings
        .iter()
        .map(|s| parse_rat(s).map_err(JobError::from))
        .collect()
}

fn parse_target(s: &str) -> Result<Target, JobError> {
    Target::from_wire(s).map_err(JobError::from)
}

fn payload<T: serde::de::DeserializeOwned>(raw: &str) -> Result<T, JobError> {
    serde_json::from_str(raw).map_err(schema)
}

// ---------------------------------------------------------------------------
// dispatch

fn dispatch(command: &str, raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    match command {
        "norm" => cmd_norm(raw, prime),
        "newton" => cmd_newton(raw, prime),
        "count-zeros" => cmd_count_zeros(raw, prime),
        "nevanlinna" => cmd_nevanlinna(raw, prime),
        "fmt-check" => cmd_fmt_check(raw, prime),
        "ldl-check" => cmd_ldl_check(raw, prime),
        "dlog-check" => cmd_dlog_check(raw, prime),
        "jensen-check" => cmd_jensen_check(raw, prime),
        "jet-eval" => cmd_jet_eval(raw),
        "jet-pullback" => cmd_jet_pullback(raw, prime),
        "jet-ldl-check" => cmd_jet_ldl_check(raw, prime),
        "gg-dim" => cmd_gg_dim(raw),
        "trop-point" => cmd_trop_point(raw, prime),
        "trop-map" => cmd_trop_map(raw, prime),
        "lattice-reduce" => cmd_lattice_reduce(raw),
        "translates-met" => cmd_translates_met(raw, prime),
        "cube-check" => cmd_cube_check(raw),
        other => Err(JobError::Schema(format!("unknown command {other:?}"))),
    }
}

fn cmd_norm(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: Value,
        #[serde(default)]
        t: Option<String>,
    }
    let input: In = payload(raw)?;
    let is_rational = input.f.get("num").is_some();
    if is_rational {
        let f: RationalFn = serde_json::from_value(input.f).map_err(schema)?;
        let f = recontext_rational(f, prime)?;
        let t = input
            .t
            .ok_or_else(|| JobError::Schema("rational norms need a log-radius t".into()))?;
        let t = parse_rat(&t)?;
        let norm = f.gauss_norm(&t);
        Ok((json!({ "norm": ext_to_json(&norm) }), true))
    } else {
        let f: LaurentPoly = serde_json::from_value(input.f).map_err(schema)?;
        let f = recontext(f, prime);
        match input.t {
            Some(t) => {
                let t = parse_rat(&t)?;
                Ok((json!({ "norm": ext_to_json(&f.gauss_norm(&t)) }), true))
            }
            None => {
                let trop = f.lognorm_fn()?;
                let terms: Vec<Value> = trop
                    .terms()
                    .map(|(n, c)| json!({ "slope": n, "intercept": format_rat(c) }))
                    .collect();
                Ok((json!({ "tropical": terms }), true))
            }
        }
    }
}

fn cmd_newton(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: LaurentPoly,
    }
    let input: In = payload(raw)?;
    let f = recontext(input.f, prime);
    let polygon = f.newton_polygon()?;
    let (ord0, radii) = f.zero_radii()?;
    let vertices: Vec<Value> = polygon
        .vertices()
        .iter()
        .map(|(n, c)| json!([n, format_rat(c)]))
        .collect();
    let zeros: Vec<Value> = radii
        .iter()
        .map(|(tau, mult)| json!({ "log_radius": format_rat(tau), "multiplicity": mult }))
        .collect();
    Ok((
        json!({ "vertices": vertices, "ord0": ord0, "zeros": zeros }),
        true,
    ))
}

fn cmd_count_zeros(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: LaurentPoly,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext(input.f, prime);
    let zeros = f.count_zeros(&input.window)?;
    Ok((json!({ "zeros": zeros }), true))
}

fn cmd_nevanlinna(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: RationalFn,
        a: String,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext_rational(input.f, prime)?;
    let target = parse_target(&input.a)?;
    let report = nevanlinna_report(&f, &target, &input.window)?;
    Ok((serde_json::to_value(&report).map_err(schema)?, true))
}

fn cmd_fmt_check(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: RationalFn,
        a: String,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext_rational(input.f, prime)?;
    let target = parse_target(&input.a)?;
    let residual = fmt_residual(&f, &target, &input.window)?;
    let spread = exponent_spread(&f);
    let bound = nonarch_core::rat::rat_int(2 * spread);
    let disk = input.window.is_disk();
    let pass = if disk {
        residual.leftmost_slope().is_zero()
    } else {
        residual.max_abs_slope() <= bound
    };
    Ok((
        json!({
            "residual": pwl_to_json(&residual),
            "window": input.window,
            "exponent_spread": spread,
            "slope_bound": format_rat(&bound),
            "max_abs_slope": format_rat(&residual.max_abs_slope()),
            "leftmost_slope": format_rat(residual.leftmost_slope()),
            "disk_window": disk,
            "holds": pass,
        }),
        pass,
    ))
}

fn cmd_ldl_check(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: RationalFn,
        k: u32,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext_rational(input.f, prime)?;
    let report = ldl_check(&f, input.k, &input.window)?;
    Ok((
        json!({
            "holds": report.holds,
            "vacuous": report.margin.is_none(),
            "margin": report.margin.as_ref().map(pwl_to_json),
            "counterexample_t": report.counterexample_t.as_ref().map(format_rat),
            "window": input.window,
        }),
        report.holds,
    ))
}

fn cmd_dlog_check(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: RationalFn,
        k: u32,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext_rational(input.f, prime)?;
    let report = dlog_check(&f, input.k, &input.window)?;
    Ok((
        json!({
            "holds": report.holds,
            "C": report.c.as_ref().map(format_rat),
            "window": input.window,
        }),
        report.holds,
    ))
}

fn cmd_jensen_check(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        f: LaurentPoly,
        window: AnnulusWindow,
    }
    let input: In = payload(raw)?;
    let f = recontext(input.f, prime);
    let residual = jensen_residual(&f, &input.window)?;
    let pass = residual.is_zero();
    Ok((
        json!({
            "identically_zero": pass,
            "residual": pwl_to_json(&residual),
            "window": input.window,
        }),
        pass,
    ))
}

fn cmd_jet_eval(raw: &str) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        omega: JetDifferential,
        jet: Jet,
        #[serde(default)]
        basepoint: Option<Vec<String>>,
    }
    let input: In = payload(raw)?;
    let value = match input.basepoint {
        Some(point) => {
            let point = parse_rats(&point)?;
            input.omega.evaluate(&input.jet, &point)?
        }
        None => input.omega.evaluate_at_jet(&input.jet)?,
    };
    Ok((json!({ "value": format_rat(&value) }), true))
}

fn cmd_jet_pullback(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        omega: JetDifferential,
        map: TorusMap,
    }
    let input: In = payload(raw)?;
    let map = recontext_map(input.map, prime)?;
    let phi = pullback(&input.omega, &map)?;
    Ok((
        json!({
            "phi": serde_json::to_value(&phi).map_err(schema)?,
            "weight": input.omega.weight(),
        }),
        true,
    ))
}

fn cmd_jet_ldl_check(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        omega: JetDifferential,
        map: TorusMap,
    }
    let input: In = payload(raw)?;
    let map = recontext_map(input.map, prime)?;
    let report = jet_ldl_check(&input.omega, &map)?;
    Ok((
        json!({
            "holds": report.holds,
            "vacuous": report.vacuous,
            "C": report.c.as_ref().map(format_rat),
            "phi": serde_json::to_value(&report.phi).map_err(schema)?,
            "window": map.window(),
        }),
        report.holds,
    ))
}

fn cmd_gg_dim(raw: &str) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        n: u64,
        k: u64,
        m: u64,
    }
    let input: In = payload(raw)?;
    if input.n == 0 || input.k == 0 {
        return Err(JobError::Schema("gg-dim needs n, k >= 1".into()));
    }
    let dim = gg_dim(input.n, input.k, input.m);
    let value = match u64::try_from(dim.clone()) {
        Ok(small) => json!(small),
        Err(_) => json!(dim.to_string()),
    };
    Ok((json!({ "dim": value }), true))
}

fn cmd_trop_point(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        x: Vec<String>,
    }
    let input: In = payload(raw)?;
    let prime =
        prime.ok_or_else(|| JobError::Schema("trop-point needs a prime (job p or --p)".into()))?;
    let coords = parse_rats(&input.x)?
        .into_iter()
        .map(|q| ValuedScalar::new(q, prime))
        .collect::<Vec<_>>();
    let point = nonarch_core::tropical::trop_point(&coords)?;
    Ok((json!({ "point": rats_to_json(&point.0) }), true))
}

fn cmd_trop_map(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        map: TorusMap,
    }
    let input: In = payload(raw)?;
    let map = recontext_map(input.map, prime)?;
    let path = trop_map(&map)?;
    let coords: Vec<Value> = path.coords().iter().map(pwl_to_json).collect();
    Ok((json!({ "path": coords, "window": map.window() }), true))
}

fn cmd_lattice_reduce(raw: &str) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        x: Vec<String>,
        lattice: Lattice,
    }
    let input: In = payload(raw)?;
    let x = TropPoint(parse_rats(&input.x)?);
    let (gamma, residue) = fundamental_reduce(&x, &input.lattice)?;
    Ok((
        json!({ "gamma": gamma, "residue": rats_to_json(&residue.0) }),
        true,
    ))
}

fn cmd_translates_met(raw: &str, prime: Option<Prime>) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        lattice: Lattice,
        window: AnnulusWindow,
        #[serde(default)]
        path: Option<Vec<PwlData>>,
        #[serde(default)]
        map: Option<TorusMap>,
    }
    let input: In = payload(raw)?;
    let path = match (input.path, input.map) {
        (Some(data), None) => {
            let coords = data
                .into_iter()
                .map(|d| d.into_pwl(input.window.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            TropPath::new(coords)?
        }
        (None, Some(map)) => trop_map(&recontext_map(map, prime)?)?,
        _ => {
            return Err(JobError::Schema(
                "translates-met needs exactly one of path or map".into(),
            ))
        }
    };
    let met = translates_met(&path, &input.lattice, &input.window)?;
    Ok((json!({ "count": met.len(), "gammas": met }), true))
}

fn cmd_cube_check(raw: &str) -> Result<(Value, bool), JobError> {
    #[derive(Deserialize)]
    struct In {
        eps: String,
        #[serde(default)]
        g: Option<usize>,
        #[serde(default)]
        center: Option<Vec<String>>,
    }
    let input: In = payload(raw)?;
    let eps = parse_rat(&input.eps)?;
    let center = match input.center {
        Some(c) => parse_rats(&c)?,
        None => vec![Rat::zero(); input.g.unwrap_or(1)],
    };
    if let Some(g) = input.g {
        if g != center.len() {
            return Err(JobError::Schema("center length must match g".into()));
        }
    }
    let cube = Cube::new(center, eps)?;
    let report = cube_disjointness(&cube);
    Ok((
        json!({ "disjoint": report.disjoint, "witness": report.witness }),
        report.disjoint,
    ))
}
