//! Command-line front end. The heavy lifting lives in the library; this
//! module parses arguments, renders one of three output formats, and maps
//! errors onto stable exit codes:
//!
//! * 0: success (for `verify`, all checks passed)
//! * 1: a verification suite failed
//! * 2: malformed input (flags, polynomial text, integers)
//! * 3: domain error (non-prime modulus, constant polynomial, ...)
//!
//! Diagnostics go to stderr as a single line `error[code]: message`;
//! stdout carries only data.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::classify::{classify_with_bound, Classification, Verdict};
use crate::modp::{m_p, weak_local_scan, Certainty, ScanStatus};
use crate::numtheory::PrimeSupport;
use crate::orbits::{orbit, OrbitOutcome};
use crate::polynomial::Polynomial;
use crate::verify::{
    scan_point_sets, theorem_suite_with, SuiteOptions, DEFAULT_SUITE_SEED, SUITE_NAMES,
};
use crate::{Error, Result, DEFAULT_PRIME_BOUND, SCHEMA};

/// Environment variable consulted for the default prime bound when a
/// subcommand takes no explicit `--primes-up-to`.
pub const PRIME_BOUND_ENV: &str = "NILORBIT_PRIME_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "nilorbit",
    version,
    about = "Orbits of integer polynomial maps and their vanishing behavior modulo primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for data on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for scan-heavy commands (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for the randomized verification suites
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate a polynomial at a base point and report how the orbit
    /// resolves (zero hit, cycle, divergence)
    Orbit {
        /// Polynomial as comma-separated coefficients, constant first
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Integer base point
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Step budget for linear orbits (higher degrees resolve exactly)
        #[arg(long, default_value_t = 100)]
        max_steps: u64,
        /// Follow the orbit modulo this prime instead
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// First vanishing step of the orbit modulo one prime
    Mp {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Prime modulus
        #[arg(long)]
        p: u64,
    },
    /// Vanishing data for every prime up to a bound
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Comma-separated primes to exempt
        #[arg(long)]
        exclude: Option<String>,
        #[arg(long)]
        primes_up_to: Option<u64>,
    },
    /// Decide the vanishing class of (polynomial, base point, exempt set)
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        exclude: Option<String>,
        #[arg(long)]
        primes_up_to: Option<u64>,
    },
    /// Run a bundled cross-validation suite ("all" runs every suite)
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        primes_up_to: Option<u64>,
    },
    /// Probe a window of base points for zero-hitting orbits and
    /// local-nilpotency candidates
    Explore {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Window half-width: base points -range..=range
        #[arg(long)]
        range: i64,
        #[arg(long)]
        primes_up_to: Option<u64>,
    },
}

/// Parse `args` and execute. Data is written to `out`, diagnostics to
/// `err`; the return value is the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return clap_exit(e, out, err),
    };
    if let Some(n) = cli.threads {
        // a pool can only be installed once per process; a repeat run()
        // in the same process keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {}", e.code(), e);
            e.exit_code()
        }
    }
}

fn clap_exit(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(out, "{}", e.render());
            0
        }
        _ => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error[cli-parse]: {first}");
            2
        }
    }
}

fn parse_poly(text: &str) -> Result<Polynomial> {
    text.parse()
}

fn parse_base_point(text: &str) -> Result<BigInt> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer '{text}'")))
}

fn parse_exclude(text: &Option<String>) -> Result<PrimeSupport> {
    match text {
        None => Ok(PrimeSupport::empty()),
        Some(list) => {
            let mut primes = Vec::new();
            for part in list.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let p: u64 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime '{part}' in '{list}'")))?;
                primes.push(p);
            }
            PrimeSupport::new(primes)
        }
    }
}

// flag, then environment, then the built-in default
fn effective_prime_bound(flag: Option<u64>) -> Result<u64> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PRIME_BOUND_ENV) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::Parse(format!("bad {PRIME_BOUND_ENV} value '{text}'"))
        }),
        Err(_) => Ok(DEFAULT_PRIME_BOUND),
    }
}

fn wrap(command: &str, mut payload: Value) -> Value {
    let obj = payload.as_object_mut().expect("payload objects only");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    payload
}

fn emit(out: &mut dyn Write, text: String) -> Result<i32> {
    match writeln!(out, "{}", text.trim_end()) {
        Ok(()) => Ok(0),
        // downstream closed the pipe; not our error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(0),
        Err(e) => Err(Error::InvalidArgument(format!("write failed: {e}"))),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Orbit {
            poly,
            r,
            max_steps,
            modulus,
        } => {
            let u = parse_poly(poly)?;
            let base = parse_base_point(r)?;
            match modulus {
                None => run_orbit(&u, &base, *max_steps, cli.format, out),
                Some(p) => run_orbit_mod(&u, &base, *p, cli.format, out),
            }
        }
        Command::Mp { poly, r, p } => {
            let u = parse_poly(poly)?;
            let base = parse_base_point(r)?;
            run_mp(&u, &base, *p, cli.format, out)
        }
        Command::Scan {
            poly,
            r,
            exclude,
            primes_up_to,
        } => {
            let u = parse_poly(poly)?;
            let base = parse_base_point(r)?;
            let excluded = parse_exclude(exclude)?;
            let bound = effective_prime_bound(*primes_up_to)?;
            run_scan(&u, &base, &excluded, bound, cli.format, out)
        }
        Command::Classify {
            poly,
            r,
            exclude,
            primes_up_to,
        } => {
            let u = parse_poly(poly)?;
            let base = parse_base_point(r)?;
            let excluded = parse_exclude(exclude)?;
            let bound = effective_prime_bound(*primes_up_to)?;
            run_classify(&u, &base, &excluded, bound, cli.format, out)
        }
        Command::Verify {
            suite,
            primes_up_to,
        } => {
            let opts = SuiteOptions {
                prime_bound: *primes_up_to,
                seed: cli.seed.unwrap_or(DEFAULT_SUITE_SEED),
            };
            run_verify(suite, &opts, cli.format, out)
        }
        Command::Explore {
            poly,
            range,
            primes_up_to,
        } => {
            let u = parse_poly(poly)?;
            let bound = effective_prime_bound(*primes_up_to)?;
            run_explore(&u, *range, bound, cli.format, out)
        }
    }
}

// ---------------------------------------------------------------------------
// orbit

fn trajectory_line(base: &BigInt, outcome: &OrbitOutcome) -> String {
    let mut parts = vec![base.to_string()];
    parts.extend(outcome.trajectory().iter().map(|x| x.to_string()));
    parts.join(" -> ")
}

fn outcome_line(outcome: &OrbitOutcome) -> String {
    match outcome {
        OrbitOutcome::HitsZero { index, .. } => {
            format!("hits zero at step {index}")
        }
        OrbitOutcome::EntersCycle {
            preperiod,
            period,
            cycle,
            ..
        } => {
            let c: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            format!(
                "enters a {period}-cycle after {preperiod} steps (cycle {}); no iterate is zero",
                c.join(", ")
            )
        }
        OrbitOutcome::Escapes {
            step, escape_bound, ..
        } => format!(
            "diverges: |x| reaches {escape_bound} at step {step} and at least doubles from then on; no iterate is zero"
        ),
        OrbitOutcome::Exhausted { max_steps, .. } => {
            format!("unresolved within {max_steps} steps")
        }
    }
}

fn run_orbit(
    u: &Polynomial,
    base: &BigInt,
    max_steps: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let outcome = orbit(u, base, max_steps)?;
    match format {
        Format::Text => emit(
            out,
            format!(
                "{} at r = {}\norbit: {}\noutcome: {}",
                u.pretty(),
                base,
                trajectory_line(base, &outcome),
                outcome_line(&outcome)
            ),
        ),
        Format::Json => {
            let mut payload = json!({
                "polynomial": u.to_string(),
                "r": base.to_string(),
                "outcome": outcome.kind(),
                "trajectory": outcome.trajectory().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            let obj = payload.as_object_mut().expect("object");
            match &outcome {
                OrbitOutcome::HitsZero { index, .. } => {
                    obj.insert("index".into(), json!(index));
                }
                OrbitOutcome::EntersCycle {
                    preperiod,
                    period,
                    cycle,
                    ..
                } => {
                    obj.insert("preperiod".into(), json!(preperiod));
                    obj.insert("period".into(), json!(period));
                    obj.insert(
                        "cycle".into(),
                        json!(cycle.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    );
                }
                OrbitOutcome::Escapes {
                    step, escape_bound, ..
                } => {
                    obj.insert("step".into(), json!(step));
                    obj.insert("escape_bound".into(), json!(escape_bound.to_string()));
                }
                OrbitOutcome::Exhausted { max_steps, .. } => {
                    obj.insert("max_steps".into(), json!(max_steps));
                }
            }
            emit(out, wrap("orbit", payload).to_string())
        }
        Format::Csv => {
            let mut rows = vec!["step,value".to_string(), format!("0,{base}")];
            for (i, x) in outcome.trajectory().iter().enumerate() {
                rows.push(format!("{},{}", i + 1, x));
            }
            emit(out, rows.join("\n"))
        }
    }
}

fn run_orbit_mod(
    u: &Polynomial,
    base: &BigInt,
    p: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let data = m_p(u, base, p)?;
    // the rho has preperiod + period distinct states; replay them
    let start = base.mod_floor(&BigInt::from(p));
    let mut x = u64::try_from(&start).expect("reduced residue fits");
    let mut residues = vec![x];
    for _ in 1..(data.preperiod + data.period) {
        x = u.eval_mod(x, p)?;
        residues.push(x);
    }
    match format {
        Format::Text => {
            let shown: Vec<String> = residues.iter().map(|v| v.to_string()).collect();
            let vanish = match data.m_p {
                Some(m) => format!("first zero residue at step {m}"),
                None => "no iterate vanishes at this prime".to_string(),
            };
            emit(
                out,
                format!(
                    "{} at r = {} (mod {p})\nresidues: {} then repeats (preperiod {}, period {})\n{}",
                    u.pretty(),
                    base,
                    shown.join(" -> "),
                    data.preperiod,
                    data.period,
                    vanish
                ),
            )
        }
        Format::Json => emit(
            out,
            wrap(
                "orbit",
                json!({
                    "polynomial": u.to_string(),
                    "r": base.to_string(),
                    "mod": p,
                    "residues": residues,
                    "m_p": data.m_p,
                    "preperiod": data.preperiod,
                    "period": data.period,
                }),
            )
            .to_string(),
        ),
        Format::Csv => {
            let mut rows = vec!["step,residue".to_string()];
            for (i, v) in residues.iter().enumerate() {
                rows.push(format!("{i},{v}"));
            }
            emit(out, rows.join("\n"))
        }
    }
}

// ---------------------------------------------------------------------------
// mp

fn run_mp(
    u: &Polynomial,
    base: &BigInt,
    p: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let data = m_p(u, base, p)?;
    match format {
        Format::Text => {
            let headline = match data.m_p {
                Some(m) => format!("m_p = {m}"),
                None => "no vanishing step: p is a witness".to_string(),
            };
            emit(
                out,
                format!(
                    "{} at r = {}, p = {p}: {} (preperiod {}, period {})",
                    u.pretty(),
                    base,
                    headline,
                    data.preperiod,
                    data.period
                ),
            )
        }
        Format::Json => emit(
            out,
            wrap(
                "mp",
                json!({
                    "polynomial": u.to_string(),
                    "r": base.to_string(),
                    "p": data.p,
                    "m_p": data.m_p,
                    "preperiod": data.preperiod,
                    "period": data.period,
                }),
            )
            .to_string(),
        ),
        Format::Csv => {
            let m = data.m_p.map_or("-".to_string(), |m| m.to_string());
            emit(
                out,
                format!(
                    "p,m_p,preperiod,period\n{},{},{},{}",
                    data.p, m, data.preperiod, data.period
                ),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// scan

fn run_scan(
    u: &Polynomial,
    base: &BigInt,
    excluded: &PrimeSupport,
    bound: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let report = weak_local_scan(u, base, excluded, bound)?;
    match format {
        Format::Text => {
            let status = match report.status {
                ScanStatus::WitnessFound { first } => format!(
                    "witness found: no iterate vanishes at p = {first} (refutation is proved)"
                ),
                ScanStatus::AllFoundUpToBound => format!(
                    "every scanned prime admits a vanishing step (inconclusive at bound {bound})"
                ),
            };
            let witnesses = if report.witnesses.is_empty() {
                "none".to_string()
            } else {
                let shown: Vec<String> = report
                    .witnesses
                    .iter()
                    .take(8)
                    .map(|p| p.to_string())
                    .collect();
                let suffix = if report.witnesses.len() > 8 { ", ..." } else { "" };
                format!("{}{suffix}", shown.join(", "))
            };
            emit(
                out,
                format!(
                    "scan of {} at r = {}, excluded {{{}}}, primes up to {}\n{}\nscanned {} primes, witnesses: {}",
                    u.pretty(),
                    base,
                    report
                        .excluded
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    report.prime_bound,
                    status,
                    report.results.len(),
                    witnesses
                ),
            )
        }
        Format::Json => emit(out, wrap("scan", report.to_json()).to_string()),
        Format::Csv => emit(out, report.to_csv()),
    }
}

// ---------------------------------------------------------------------------
// classify

fn describe_verdict(c: &Classification) -> String {
    match &c.verdict {
        Verdict::Nilpotent { index } => {
            format!("some iterate of the base point is exactly zero (index {index})")
        }
        Verdict::InSr => {
            "every prime admits a vanishing step, yet no iterate is zero".to_string()
        }
        Verdict::WeaklyLocallyNilpotentOutsideA => {
            "every prime outside the exempt set admits a vanishing step; no iterate is zero"
                .to_string()
        }
        Verdict::NotWeaklyLocallyNilpotent { witness } => match witness {
            Some(p) => format!("no iterate vanishes at p = {p}"),
            None => "some prime admits no vanishing step".to_string(),
        },
        Verdict::OutOfExactScope => {
            "no complete rule covers this query; scan evidence only".to_string()
        }
    }
}

fn run_classify(
    u: &Polynomial,
    base: &BigInt,
    excluded: &PrimeSupport,
    bound: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let c = classify_with_bound(u, base, excluded, bound)?;
    match format {
        Format::Text => {
            let certainty = match c.certainty() {
                Certainty::Proved => "proved",
                Certainty::Inconclusive => "inconclusive",
            };
            emit(
                out,
                format!(
                    "{} at r = {}, excluded {{{}}}\nverdict: {} ({})\nrule: {}\ncertainty: {}",
                    u.pretty(),
                    base,
                    excluded
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    c.verdict.name(),
                    describe_verdict(&c),
                    c.provenance,
                    certainty
                ),
            )
        }
        Format::Json => emit(out, wrap("classify", c.to_json()).to_string()),
        Format::Csv => {
            let index = match &c.verdict {
                Verdict::Nilpotent { index } => index.to_string(),
                _ => "-".to_string(),
            };
            let witness = match &c.verdict {
                Verdict::NotWeaklyLocallyNilpotent { witness: Some(p) } => p.to_string(),
                _ => "-".to_string(),
            };
            let certainty = match c.certainty() {
                Certainty::Proved => "proved",
                Certainty::Inconclusive => "inconclusive",
            };
            emit(
                out,
                format!(
                    "verdict,index,witness,rule,certainty\n{},{},{},{},{}",
                    c.verdict.name(),
                    index,
                    witness,
                    c.provenance,
                    certainty
                ),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// verify

fn run_verify(
    suite: &str,
    opts: &SuiteOptions,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut outcomes = Vec::new();
    for name in names {
        outcomes.push(theorem_suite_with(name, opts)?);
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    match format {
        Format::Text => {
            let mut text = String::new();
            for outcome in &outcomes {
                text.push_str(&outcome.summary());
            }
            text.push_str(&format!(
                "verify: {}",
                if all_passed { "PASS" } else { "FAIL" }
            ));
            emit(out, text)?;
        }
        Format::Json => {
            let payload = json!({
                "suites": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
                "passed": all_passed,
            });
            emit(out, wrap("verify", payload).to_string())?;
        }
        Format::Csv => {
            let mut rows = vec!["suite,check,passed,detail".to_string()];
            for outcome in &outcomes {
                for check in &outcome.checks {
                    rows.push(format!(
                        "{},{},{},\"{}\"",
                        outcome.name,
                        check.label,
                        check.passed,
                        check.detail.replace('"', "'")
                    ));
                }
            }
            emit(out, rows.join("\n"))?;
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// explore

fn run_explore(
    u: &Polynomial,
    range: i64,
    bound: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let scan = scan_point_sets(u, range, bound)?;
    match format {
        Format::Text => emit(out, scan.summary()),
        Format::Json => emit(out, wrap("explore", scan.to_json()).to_string()),
        Format::Csv => {
            // every zero-hitting point also appears as a candidate, so one
            // table with an index column carries both lists
            let indices: std::collections::BTreeMap<String, String> = scan
                .nilpotent_points
                .iter()
                .map(|(r, index)| (r.to_string(), index.to_string()))
                .collect();
            let mut rows = vec!["r,verdict,index,certainty".to_string()];
            for candidate in &scan.candidates {
                let key = candidate.point.to_string();
                let index = indices.get(&key).cloned().unwrap_or_else(|| "-".into());
                let certainty = match candidate.certainty {
                    Certainty::Proved => "proved",
                    Certainty::Inconclusive => "inconclusive",
                };
                rows.push(format!("{key},{},{index},{certainty}", candidate.verdict));
            }
            emit(out, rows.join("\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["nilorbit"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_names_the_successor_rule() {
        let (code, out, err) = invoke(&["classify", "--poly", "1,1", "--r", "1"]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("InSr"));
        assert!(out.contains("Thm4.1(4)"));
    }

    #[test]
    fn mp_reports_the_worked_example() {
        let (code, out, _) = invoke(&["mp", "--poly", "-2,4", "--r", "0", "--p", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("m_p = 3"));
    }

    #[test]
    fn scan_finds_the_first_witness() {
        let (code, out, _) = invoke(&[
            "scan",
            "--poly",
            "-2,4",
            "--r",
            "1",
            "--primes-up-to",
            "100",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("p = 5"), "got: {out}");
    }

    #[test]
    fn json_outputs_carry_the_schema_tag() {
        for args in [
            vec!["orbit", "--poly", "0,0,1", "--r", "2", "--format", "json"],
            vec!["mp", "--poly", "1,1", "--r", "0", "--p", "7", "--format", "json"],
            vec![
                "scan", "--poly", "1,1", "--r", "1", "--primes-up-to", "50", "--format", "json",
            ],
            vec!["classify", "--poly", "1,1", "--r", "1", "--format", "json"],
            vec![
                "explore", "--poly", "-1,1", "--range", "3", "--primes-up-to", "50", "--format",
                "json",
            ],
        ] {
            let (code, out, err) = invoke(&args);
            assert_eq!(code, 0, "args {args:?}, stderr: {err}");
            let parsed: Value = serde_json::from_str(&out).expect("valid json");
            assert_eq!(parsed["schema"], json!(SCHEMA), "args {args:?}");
        }
    }

    #[test]
    fn parse_errors_exit_two_with_one_diagnostic_line() {
        let (code, _, err) = invoke(&["classify", "--poly", "1,,2", "--r", "1"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert!(err.starts_with("error[parse]:"), "got: {err}");

        let (code, _, err) = invoke(&["classify", "--poly", "1,1"]);
        assert_eq!(code, 2, "missing --r must be a usage error");
        assert!(err.starts_with("error[cli-parse]:"));
    }

    #[test]
    fn domain_errors_exit_three() {
        let (code, _, err) = invoke(&["mp", "--poly", "1,1", "--r", "0", "--p", "6"]);
        assert_eq!(code, 3);
        assert!(err.starts_with("error[invalid-modulus]:"), "got: {err}");

        let (code, _, err) = invoke(&["orbit", "--poly", "5", "--r", "0"]);
        assert_eq!(code, 3);
        assert!(err.starts_with("error[constant-polynomial]:"));

        let (code, _, err) = invoke(&["verify", "--suite", "thm9.9"]);
        assert_eq!(code, 3);
        assert!(err.starts_with("error[unknown-suite]:"));
    }

    #[test]
    fn negative_coefficients_parse_in_both_flag_styles() {
        let (code, out, _) = invoke(&["classify", "--poly=-2,4", "--r=0"]);
        assert_eq!(code, 0);
        assert!(out.contains("InSr"), "got: {out}");
        let (code2, out2, _) = invoke(&["classify", "--poly", "-2,4", "--r", "0"]);
        assert_eq!(code2, 0);
        assert_eq!(out, out2);
    }

    #[test]
    fn orbit_csv_has_the_fixed_header() {
        let (code, out, _) = invoke(&[
            "orbit", "--poly", "-1,1", "--r", "3", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("step,value"));
        assert_eq!(lines.next(), Some("0,3"));
        assert_eq!(lines.next(), Some("1,2"));
    }

    #[test]
    fn orbit_mod_replays_the_residue_rho() {
        let (code, out, _) = invoke(&[
            "orbit", "--poly", "-2,4", "--r", "0", "--mod", "3", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        // 0 -> 1 -> 2 -> 0 mod 3
        assert_eq!(out.trim(), "step,residue\n0,0\n1,1\n2,2");
    }

    #[test]
    fn verify_runs_a_fast_suite_clean() {
        let (code, out, err) = invoke(&[
            "verify",
            "--suite",
            "lemma3.2-contrapositive",
            "--primes-up-to",
            "500",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("verify: PASS"), "got: {out}");
    }

    #[test]
    fn help_prints_to_stdout_and_exits_zero() {
        let (code, out, err) = invoke(&["--help"]);
        assert_eq!(code, 0);
        assert!(err.is_empty());
        assert!(out.contains("classify"));
        assert!(out.contains("verify"));
    }

    struct ClosedPipe;

    impl std::io::Write for ClosedPipe {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::ErrorKind::BrokenPipe.into())
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn closed_stdout_is_a_quiet_success() {
        let mut err = Vec::new();
        let args = ["nilorbit", "classify", "--poly", "1,1", "--r", "1"];
        let code = run(args.iter().map(|s| s.to_string()), &mut ClosedPipe, &mut err);
        assert_eq!(code, 0);
        assert!(String::from_utf8(err).unwrap().is_empty());
    }
}
