mod examples;
mod grammar;
mod json;
mod ppm;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use petalab_core::diffpoly::{tc0_construct, verify_inversion_identity, verify_sheilsmall_transform};
use petalab_core::error::Error;
use petalab_core::exactalg::text::{format_ratfun, parse_rational, parse_ratfun};
use petalab_core::exactalg::{rat, BigRational, ExactRatFun};
use petalab_core::petals::{
    build_f_map, build_g_map, critical_points, orbit_to_petal, parabolic_points, petal_report,
    Location, OrbitCaps,
};
use petalab_core::rootlab::find_roots;
use petalab_core::theorems::{check_bound, fuzz, zero_census, TheoremId};
use serde_json::{json, Value};

use json::OutputFormat;

const EXIT_PASS: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "petalab",
    about = "Zero-distribution laboratory for differential polynomials of real rational functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for all randomized campaigns.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Working precision in bits for numeric root finding.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Output path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: json, csv, or ppm (basin only).
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    #[arg(long, default_value_t = 0.05)]
    capture_radius: f64,
    #[arg(long, default_value_t = 0.05)]
    angle_tol: f64,
    #[arg(long, default_value_t = 1e8)]
    escape_radius: f64,
}

impl OrbitArgs {
    fn caps(&self) -> OrbitCaps {
        OrbitCaps {
            max_iter: self.max_iter,
            capture_radius: self.capture_radius,
            angle_tol: self.angle_tol,
            escape_radius: self.escape_radius,
            ..OrbitCaps::default()
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the transform identities exactly.
    Identities {
        /// Which identity: sheilsmall, inversion, or tc0.
        #[arg(long)]
        check: String,
        /// Rational function f in "num ; den" text form.
        #[arg(long)]
        f: Option<String>,
        /// Rational function g (inversion identity input).
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        c: Option<String>,
    },
    /// Find and classify all roots of a polynomial or rational function.
    Zeros {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        ratfun: Option<String>,
    },
    /// Check one quantitative bound instance.
    Bounds {
        /// cor1 | thm_rat | cor_crat | thm4pol | thm9_rat
        #[arg(long)]
        thm: String,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Exact K/L/M/N/P zero census of a real polynomial.
    Census {
        #[arg(long)]
        g: String,
    },
    /// Parabolic points, predicted petal angles, and critical orbits.
    Petals {
        /// Map expression, e.g. "z - z^3/3".
        #[arg(long)]
        map: Option<String>,
        /// Build F from f (requires --m).
        #[arg(long)]
        f: Option<String>,
        /// Build G from g (requires --n).
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Skip orbit iteration (report fixed points and angles only).
        #[arg(long)]
        no_orbits: bool,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Render a petal basin raster (binary PPM).
    Basin {
        #[arg(long)]
        map: String,
        /// Grid center "re" or "re,im".
        #[arg(long, default_value = "0")]
        center: String,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        /// Height defaults to width.
        #[arg(long)]
        height: Option<f64>,
        /// Pixels per side (square unless --res-y).
        #[arg(long, default_value_t = 512)]
        res: u32,
        #[arg(long)]
        res_y: Option<u32>,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Reproduce the six worked example families.
    Examples,
    /// Run seeded fuzz campaigns over the bound checkers and petals.
    Fuzz {
        /// thm_rat | thm4pol | thm9_rat | census | petals | negative_controls | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match OutputFormat::parse(&cli.format) {
        Some(f) => f,
        None => {
            eprintln!(
                "{}",
                json::to_string(&json::error_object(
                    "usage",
                    &format!("unknown format {:?}", cli.format)
                ))
            );
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli, format) {
        Ok((payload, code)) => {
            if let Err(e) = emit(&cli.out, payload) {
                eprintln!(
                    "{}",
                    json::to_string(&json::error_object("io", &e.to_string()))
                );
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            let kind = match &err {
                Error::Parse { .. } => "parse",
                Error::Precondition(_) => "precondition",
                Error::NonConvergence { .. } => "non_convergence",
                _ => "input",
            };
            eprintln!(
                "{}",
                json::to_string(&json::error_object(kind, &err.to_string()))
            );
            ExitCode::from(EXIT_USAGE)
        }
    }
}

enum Payload {
    Text(String),
    Bytes(Vec<u8>),
}

fn emit(out: &Option<PathBuf>, payload: Payload) -> std::io::Result<()> {
    use std::io::Write;
    match (out, payload) {
        (Some(path), Payload::Text(s)) => std::fs::write(path, s),
        (Some(path), Payload::Bytes(b)) => std::fs::write(path, b),
        (None, Payload::Text(s)) => {
            print!("{s}");
            Ok(())
        }
        (None, Payload::Bytes(b)) => std::io::stdout().write_all(&b),
    }
}

fn parse_c(c: &Option<String>) -> petalab_core::Result<BigRational> {
    match c {
        None => Ok(rat(0)),
        Some(s) => parse_rational(s),
    }
}

fn run(cli: &Cli, format: OutputFormat) -> petalab_core::Result<(Payload, u8)> {
    match &cli.cmd {
        Cmd::Identities { check, f, g, m, c } => cmd_identities(check, f, g, *m, c),
        Cmd::Zeros { poly, ratfun } => cmd_zeros(cli, format, poly, ratfun),
        Cmd::Bounds { thm, f, g, m, n, c } => cmd_bounds(cli, thm, f, g, *m, *n, c),
        Cmd::Census { g } => cmd_census(g),
        Cmd::Petals {
            map,
            f,
            g,
            m,
            n,
            no_orbits,
            orbit,
        } => cmd_petals(cli, map, f, g, *m, *n, *no_orbits, orbit),
        Cmd::Basin {
            map,
            center,
            width,
            height,
            res,
            res_y,
            orbit,
        } => cmd_basin(cli, format, map, center, *width, *height, *res, *res_y, orbit),
        Cmd::Examples => cmd_examples(cli),
        Cmd::Fuzz { suite, trials } => cmd_fuzz(cli, suite, *trials),
    }
}

fn cmd_identities(
    check: &str,
    f: &Option<String>,
    g: &Option<String>,
    m: u32,
    c: &Option<String>,
) -> petalab_core::Result<(Payload, u8)> {
    let input = |name: &str, v: &Option<String>| -> petalab_core::Result<ExactRatFun> {
        v.as_deref()
            .ok_or_else(|| Error::precondition(format!("--{name} is required for this check")))
            .and_then(parse_ratfun)
    };
    let (report, pass) = match check {
        "sheilsmall" => {
            let f = input("f", f)?;
            let ok = verify_sheilsmall_transform(&f, m)?;
            (
                json!({ "check": "sheilsmall", "f": format_ratfun(&f), "m": m, "pass": ok }),
                ok,
            )
        }
        "inversion" => {
            let g = input("g", g)?;
            let c = parse_c(c)?;
            let ok = verify_inversion_identity(&g, m, &c)?;
            (
                json!({
                    "check": "inversion",
                    "g": format_ratfun(&g),
                    "m": m,
                    "c": petalab_core::exactalg::text::format_rational(&c),
                    "pass": ok,
                }),
                ok,
            )
        }
        "tc0" => {
            let f = input("f", f)?;
            let c = parse_c(c)?;
            let out = tc0_construct(&f, m, &c)?;
            (
                json!({
                    "check": "tc0",
                    "f": format_ratfun(&f),
                    "m": m,
                    "c": petalab_core::exactalg::text::format_rational(&c),
                    "g": format_ratfun(&out.g),
                    "H": format_ratfun(&out.h),
                    "pass": out.checks,
                }),
                out.checks,
            )
        }
        other => {
            return Err(Error::precondition(format!(
                "unknown identity check {other:?} (sheilsmall | inversion | tc0)"
            )))
        }
    };
    let doc = json::envelope("identities", report);
    Ok((
        Payload::Text(json::to_string(&doc)),
        if pass { EXIT_PASS } else { EXIT_VIOLATION },
    ))
}

fn cmd_zeros(
    cli: &Cli,
    format: OutputFormat,
    poly: &Option<String>,
    ratfun: &Option<String>,
) -> petalab_core::Result<(Payload, u8)> {
    let num = match (poly, ratfun) {
        (Some(p), None) => petalab_core::exactalg::text::parse_poly(p)?,
        (None, Some(r)) => parse_ratfun(r)?.num().clone(),
        _ => {
            return Err(Error::precondition(
                "exactly one of --poly or --ratfun is required",
            ))
        }
    };
    let set = find_roots(&num, cli.precision)?;
    match format {
        OutputFormat::Csv => {
            let rows = set
                .entries
                .iter()
                .map(|e| {
                    let (re, im) = e.value.to_f64_pair();
                    vec![
                        format!("{:.12e}", json::fixed(re)),
                        format!("{:.12e}", json::fixed(im)),
                        e.multiplicity.to_string(),
                        match &e.class {
                            petalab_core::RootClass::Real => "real".to_string(),
                            petalab_core::RootClass::ConjugatePair { partner } => {
                                format!("pair:{partner}")
                            }
                        },
                    ]
                })
                .collect();
            let csv = json::csv_of_entries(&["re", "im", "multiplicity", "class"], rows);
            Ok((Payload::Text(csv), EXIT_PASS))
        }
        _ => {
            let doc = json::envelope("zeros", json::root_set(&set));
            Ok((Payload::Text(json::to_string(&doc)), EXIT_PASS))
        }
    }
}

fn cmd_bounds(
    cli: &Cli,
    thm: &str,
    f: &Option<String>,
    g: &Option<String>,
    m: Option<u32>,
    n: Option<u32>,
    c: &Option<String>,
) -> petalab_core::Result<(Payload, u8)> {
    let id = TheoremId::parse(thm)
        .ok_or_else(|| Error::precondition(format!("unknown theorem id {thm:?}")))?;
    let fun = match (f, g) {
        (Some(s), None) | (None, Some(s)) => parse_ratfun(s)?,
        _ => {
            return Err(Error::precondition(
                "exactly one of --f or --g is required",
            ))
        }
    };
    let m_or_n = m
        .or(n)
        .ok_or_else(|| Error::precondition("--m or --n is required"))?;
    let c = parse_c(c)?;
    let report = check_bound(id, &fun, m_or_n, &c, cli.precision)?;
    let pass = report.pass;
    let doc = json::envelope("bounds", json::bound_report(&report));
    Ok((
        Payload::Text(json::to_string(&doc)),
        if pass { EXIT_PASS } else { EXIT_VIOLATION },
    ))
}

fn cmd_census(g: &str) -> petalab_core::Result<(Payload, u8)> {
    let g = parse_ratfun(g)?;
    let census = zero_census(&g)?;
    let d = g.degree();
    let doc = json::envelope(
        "census",
        json!({
            "g": format_ratfun(&g),
            "d": d,
            "K": census.k,
            "L": census.l,
            "M": census.m,
            "N": census.n,
            "P": census.p,
            "inequality_L": census.inequality_l_holds(),
            "inequality_d": census.inequality_d_holds(d),
        }),
    );
    Ok((Payload::Text(json::to_string(&doc)), EXIT_PASS))
}

fn resolve_map(
    map: &Option<String>,
    f: &Option<String>,
    g: &Option<String>,
    m: Option<u32>,
    n: Option<u32>,
) -> petalab_core::Result<ExactRatFun> {
    match (map, f, g) {
        (Some(expr), None, None) => grammar::parse_map(expr),
        (None, Some(f), None) => {
            let m = m.ok_or_else(|| Error::precondition("--m is required with --f"))?;
            build_f_map(&parse_ratfun(f)?, m)
        }
        (None, None, Some(g)) => {
            let n = n.ok_or_else(|| Error::precondition("--n is required with --g"))?;
            build_g_map(&parse_ratfun(g)?, n)
        }
        _ => Err(Error::precondition(
            "exactly one of --map, --f (with --m), or --g (with --n) is required",
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_petals(
    cli: &Cli,
    map: &Option<String>,
    f: &Option<String>,
    g: &Option<String>,
    m: Option<u32>,
    n: Option<u32>,
    no_orbits: bool,
    orbit: &OrbitArgs,
) -> petalab_core::Result<(Payload, u8)> {
    let map = resolve_map(map, f, g, m, n)?;
    let points = parabolic_points(&map, cli.precision)?;
    let crit = critical_points(&map, cli.precision)?;

    let points_json: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "location": match &p.location {
                    Location::Finite(z) => {
                        let (re, im) = z.to_f64_pair();
                        json!({ "re": json::float(re), "im": json::float(im) })
                    }
                    Location::Infinity => json!("infinity"),
                },
                "multiplicity": p.multiplicity,
                "petal_count": p.petal_count,
                "predicted_angles": p.predicted_angles.iter().map(|&a| json::float(a)).collect::<Vec<_>>(),
            })
        })
        .collect();

    let mut report = json!({
        "map": format_ratfun(&map),
        "parabolic_points": points_json,
        "critical_points": json::root_set(&crit),
    });

    if !no_orbits {
        let caps = orbit.caps();
        let entries: Vec<_> = crit
            .entries
            .iter()
            .map(|e| orbit_to_petal(&map, &e.value, &points, &caps))
            .collect();
        let summary = petal_report(&points, &entries);
        report["orbits"] = json!(entries
            .iter()
            .map(|e| {
                json!({
                    "start": { "re": json::float(e.start.0), "im": json::float(e.start.1) },
                    "outcome": serde_json::to_value(&e.outcome).unwrap(),
                    "measured_angle": e.measured_angle.map(json::float),
                    "iterations_used": e.iterations_used,
                })
            })
            .collect::<Vec<_>>());
        report["petal_report"] = serde_json::to_value(&summary).unwrap();
    }

    let doc = json::envelope("petals", report);
    Ok((Payload::Text(json::to_string(&doc)), EXIT_PASS))
}

#[allow(clippy::too_many_arguments)]
fn cmd_basin(
    cli: &Cli,
    format: OutputFormat,
    map: &str,
    center: &str,
    width: f64,
    height: Option<f64>,
    res: u32,
    res_y: Option<u32>,
    orbit: &OrbitArgs,
) -> petalab_core::Result<(Payload, u8)> {
    let map = grammar::parse_map(map)?;
    let points = parabolic_points(&map, cli.precision)?;
    let center = parse_center(center)?;
    let grid = ppm::GridSpec {
        center,
        width,
        height: height.unwrap_or(width),
        res_x: res,
        res_y: res_y.unwrap_or(res),
    };
    // Raster pixels get a tighter default budget than single orbits.
    let caps = OrbitCaps {
        max_iter: if orbit.max_iter == 1_000_000 {
            20_000
        } else {
            orbit.max_iter
        },
        capture_radius: orbit.capture_radius,
        angle_tol: orbit.angle_tol,
        escape_radius: orbit.escape_radius,
        tail_window: 200,
    };
    let raster = ppm::render(&map, &points, &caps, &grid);
    match format {
        OutputFormat::Json => {
            let doc = json::envelope(
                "basin",
                json!({ "map": format_ratfun(&map), "stats": raster.stats }),
            );
            Ok((Payload::Text(json::to_string(&doc)), EXIT_PASS))
        }
        _ => Ok((Payload::Bytes(raster.ppm), EXIT_PASS)),
    }
}

fn parse_center(s: &str) -> petalab_core::Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse_one = |t: &str| -> petalab_core::Result<f64> {
        t.trim()
            .parse::<f64>()
            .map_err(|e| Error::parse(0, format!("bad coordinate {t:?}: {e}")))
    };
    match parts.as_slice() {
        [re] => Ok((parse_one(re)?, 0.0)),
        [re, im] => Ok((parse_one(re)?, parse_one(im)?)),
        _ => Err(Error::parse(0, "center must be \"re\" or \"re,im\"")),
    }
}

fn cmd_examples(cli: &Cli) -> petalab_core::Result<(Payload, u8)> {
    let results = examples::run_all(cli.precision)?;
    let all_pass = results.iter().all(|r| r.pass());
    let doc = json::envelope(
        "examples",
        json!({
            "all_pass": all_pass,
            "examples": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        }),
    );
    Ok((
        Payload::Text(json::to_string(&doc)),
        if all_pass { EXIT_PASS } else { EXIT_VIOLATION },
    ))
}

fn cmd_fuzz(cli: &Cli, suite: &str, trials: Option<usize>) -> petalab_core::Result<(Payload, u8)> {
    let mut reports: Vec<Value> = Vec::new();
    let mut violations = 0usize;
    let precision = cli.precision;
    let seed = cli.seed;

    let mut run_suite = |name: &str| -> petalab_core::Result<()> {
        match name {
            "thm_rat" => {
                let c = fuzz::fuzz_thm_rat(seed, trials.unwrap_or(200), &[5, 6, 7], precision)?;
                violations += c.violations;
                reports.push(serde_json::to_value(&c).unwrap());
            }
            "thm4pol" => {
                let c = fuzz::fuzz_thm4pol(seed, trials.unwrap_or(200), precision)?;
                violations += c.violations;
                reports.push(serde_json::to_value(&c).unwrap());
            }
            "thm9_rat" => {
                let c = fuzz::fuzz_thm9(seed, trials.unwrap_or(100), precision)?;
                violations += c.violations;
                reports.push(serde_json::to_value(&c).unwrap());
            }
            "census" => {
                let c = fuzz::fuzz_census(seed, trials.unwrap_or(200), precision)?;
                violations += c.violations;
                reports.push(serde_json::to_value(&c).unwrap());
            }
            "petals" => {
                let a = petalab_core::petals::fuzz::fuzz_angle_law(
                    seed,
                    trials.unwrap_or(60),
                    precision,
                )?;
                if !a.passed() {
                    violations += 1;
                }
                let o = petalab_core::petals::fuzz::fuzz_orbits(
                    seed,
                    trials.unwrap_or(60).min(12),
                    precision,
                )?;
                if !o.passed() {
                    violations += 1;
                }
                reports.push(json!({
                    "suite": "petals",
                    "angle_law": serde_json::to_value(&a).unwrap(),
                    "orbits": serde_json::to_value(&o).unwrap(),
                }));
            }
            "negative_controls" => {
                let controls = fuzz::negative_controls(precision)?;
                let bad = controls.iter().filter(|c| !c.confirmed).count();
                violations += bad;
                reports.push(json!({
                    "suite": "negative_controls",
                    "controls": serde_json::to_value(&controls).unwrap(),
                }));
            }
            other => {
                return Err(Error::precondition(format!("unknown fuzz suite {other:?}")));
            }
        }
        Ok(())
    };

    if suite == "all" {
        for name in [
            "thm_rat",
            "thm4pol",
            "thm9_rat",
            "census",
            "petals",
            "negative_controls",
        ] {
            run_suite(name)?;
        }
    } else {
        run_suite(suite)?;
    }

    let doc = json::envelope(
        "fuzz",
        json!({
            "seed": seed,
            "violations": violations,
            "campaigns": reports,
        }),
    );
    Ok((
        Payload::Text(json::to_string(&doc)),
        if violations == 0 {
            EXIT_PASS
        } else {
            EXIT_VIOLATION
        },
    ))
}
