//! Command-line front end: construct codes and enumerate their Lee weight
//! distributions, verify lemma/theorem closed forms against enumeration,
//! and batch-verify across m.
//!
//! Exit codes: 0 pass, 2 usage/scope error, 3 verification failure,
//! 4 internal assertion.

use std::fmt::Write as _;
use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use z4lee::verify::{code_summary, run_subject, Subject};
use z4lee::{
    predict, report::VerificationReport, CodeSummary, DefiningSetSpec, Error, FieldCtx,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

const IDENTITY_SAMPLES: u32 = 1000;
const IDENTITY_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "z4lee",
    about = "Z4-linear codes from Galois ring trace defining sets: exact Lee weight enumeration and closed-form verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Extension degree m (1..=15)
    #[arg(long)]
    m: u32,
    /// Defining polynomial override, e.g. 0xb (bit i = coefficient of X^i)
    #[arg(long)]
    poly: Option<String>,
    /// Output format
    #[arg(long, default_value = "table")]
    format: String,
    /// Write output to this path instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Worker thread cap for sweeps (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and enumerate its exact Lee weight distribution
    Construct {
        #[command(flatten)]
        common: CommonOpts,
        /// Defining set: single:t | pair:t1,t2 | complement:t
        #[arg(long)]
        set: String,
    },
    /// Verify one subject against enumeration at the given m
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// lemma2|lemma4|lemma9|lemma10|moments|theorem1|theorem2|theorem3|identities|table2
        subject: String,
    },
    /// Verify subjects across a list of odd m values
    Batch {
        /// Comma-separated odd m list, e.g. 3,5,7
        #[arg(long)]
        m: String,
        /// Comma-separated subject list
        #[arg(long)]
        subjects: String,
        #[arg(long, default_value = "table")]
        format: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = panic::catch_unwind(|| dispatch(cli));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal assertion: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn dispatch(cli: Cli) -> u8 {
    match cli.command {
        Command::Construct { common, set } => with_pool(common.workers, || cmd_construct(&common, &set)),
        Command::Verify { common, subject } => with_pool(common.workers, || cmd_verify(&common, &subject)),
        Command::Batch {
            m,
            subjects,
            format,
            out,
            workers,
        } => with_pool(workers, || cmd_batch(&m, &subjects, &format, out.as_deref())),
    }
}

fn with_pool(workers: Option<usize>, f: impl FnOnce() -> u8 + Send) -> u8 {
    match workers {
        None => f(),
        Some(0) => {
            eprintln!("error: --workers must be positive");
            EXIT_USAGE
        }
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build();
            match pool {
                Ok(pool) => pool.install(f),
                Err(e) => {
                    eprintln!("error: cannot build worker pool: {e}");
                    EXIT_USAGE
                }
            }
        }
    }
}

/// Scope-ish errors are usage (exit 2); everything else is an internal
/// assertion (exit 4).
fn error_exit(e: &Error) -> u8 {
    match e {
        Error::InvalidField(_)
        | Error::ConfigParse { .. }
        | Error::EmptyDefiningSet { .. }
        | Error::EvenM(_)
        | Error::OutOfTheoremScope(_)
        | Error::ZeroCode => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn build_ctx(m: u32, poly: &Option<String>) -> Result<FieldCtx, Error> {
    match poly {
        None => FieldCtx::with_default_poly(m),
        Some(s) => {
            let hex = s.strip_prefix("0x").ok_or_else(|| {
                Error::InvalidField(format!("--poly `{s}` must start with 0x"))
            })?;
            let p = u32::from_str_radix(hex, 16)
                .map_err(|_| Error::InvalidField(format!("bad hex in --poly `{s}`")))?;
            FieldCtx::new(m, p)
        }
    }
}

fn emit(out: &Option<String>, payload: &str) -> u8 {
    match out {
        None => {
            print!("{payload}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, payload) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {path}: {e}");
                EXIT_USAGE
            }
        },
    }
}

fn cmd_construct(common: &CommonOpts, set: &str) -> u8 {
    let spec = match DefiningSetSpec::parse(set) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let ctx = match build_ctx(common.m, &common.poly) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };
    let summary = match code_summary(&ctx, spec) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };

    // Oracle comparison when the closed forms cover this cell.
    let (oracle_cmp, oracle_note) = match predict(common.m, spec) {
        Ok(p) => (
            Some(z4lee::report::compare_code(&p, &summary.to_enumerated())),
            None,
        ),
        Err(Error::OutOfTheoremScope(reason)) => (None, Some(reason)),
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };

    let payload = match common.format.as_str() {
        "table" => construct_table(&summary, &oracle_cmp, &oracle_note),
        "csv" => {
            let mut s = String::from("lee_weight,frequency\n");
            for (w, f) in &summary.dist {
                let _ = writeln!(s, "{w},{f}");
            }
            s
        }
        "json" => {
            let mut v = summary.to_json();
            v["oracle"] = match (&oracle_cmp, &oracle_note) {
                (Some(c), _) => serde_json::json!({
                    "status": if c.pass() { "pass" } else { "fail" },
                    "diffs": c.diffs,
                }),
                (None, Some(reason)) => serde_json::json!({ "status": "none", "reason": reason }),
                _ => serde_json::Value::Null,
            };
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        other => {
            eprintln!("error: unknown format `{other}`");
            return EXIT_USAGE;
        }
    };

    let code = emit(&common.out, &payload);
    if code != EXIT_OK {
        return code;
    }
    match oracle_cmp {
        Some(c) if !c.pass() => EXIT_VERIFY_FAIL,
        _ => EXIT_OK,
    }
}

fn construct_table(
    summary: &CodeSummary,
    oracle: &Option<z4lee::CompareOutcome>,
    note: &Option<String>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m          {}", summary.m);
    let _ = writeln!(s, "poly       {:#x}", summary.poly);
    let _ = writeln!(s, "set        {}", summary.spec);
    let _ = writeln!(s, "n          {}", summary.n);
    let _ = writeln!(s, "codewords  {}", summary.codewords);
    let _ = writeln!(s, "type       4^{} 2^{}", summary.k1, summary.k2);
    match summary.d_lee {
        Some(d) => {
            let _ = writeln!(s, "d_L        {d}");
        }
        None => {
            let _ = writeln!(s, "d_L        - (zero code)");
        }
    }
    let _ = writeln!(s);
    let wmax = summary
        .dist
        .keys()
        .map(|w| w.to_string().len())
        .max()
        .unwrap_or(1)
        .max("lee_weight".len());
    let fmax = summary
        .dist
        .values()
        .map(|f| f.to_string().len())
        .max()
        .unwrap_or(1)
        .max("frequency".len());
    let _ = writeln!(s, "{:>wmax$}  {:>fmax$}", "lee_weight", "frequency");
    for (w, f) in &summary.dist {
        let _ = writeln!(s, "{w:>wmax$}  {f:>fmax$}");
    }
    let _ = writeln!(s);
    match (oracle, note) {
        (Some(c), _) if c.pass() => {
            let _ = writeln!(s, "oracle: PASS");
        }
        (Some(c), _) => {
            let _ = writeln!(s, "oracle: FAIL");
            for d in &c.diffs {
                let _ = writeln!(
                    s,
                    "  {}: predicted {} enumerated {}",
                    d.key, d.predicted, d.enumerated
                );
            }
        }
        (None, Some(reason)) => {
            let _ = writeln!(s, "oracle: none ({reason})");
        }
        (None, None) => {
            let _ = writeln!(s, "oracle: none");
        }
    }
    s
}

fn cmd_verify(common: &CommonOpts, subject: &str) -> u8 {
    let subject = match Subject::parse(subject) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = subject.check_scope(common.m) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let ctx = match build_ctx(common.m, &common.poly) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };
    let reports = match run_subject(&ctx, subject, IDENTITY_SAMPLES, IDENTITY_SEED) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };
    emit_reports(&reports, &common.format, &common.out)
}

fn emit_reports(reports: &[VerificationReport], format: &str, out: &Option<String>) -> u8 {
    let all_pass = reports.iter().all(|r| r.passed());
    let payload = match format {
        "table" => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "{} {} m={} ({} ms)",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.subject,
                    r.m,
                    r.runtime_ms
                );
                for d in &r.diffs {
                    let _ = writeln!(
                        s,
                        "     {}: predicted {} enumerated {}",
                        d.key, d.predicted, d.enumerated
                    );
                }
            }
            let _ = writeln!(
                s,
                "{}: {} sub-case(s)",
                if all_pass { "PASS" } else { "FAIL" },
                reports.len()
            );
            s
        }
        "json" => format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).unwrap()
        ),
        other => {
            eprintln!("error: format `{other}` not supported for verification reports");
            return EXIT_USAGE;
        }
    };
    let code = emit(out, &payload);
    if code != EXIT_OK {
        return code;
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

fn cmd_batch(m_list: &str, subjects: &str, format: &str, out: Option<&str>) -> u8 {
    let ms: Result<Vec<u32>, _> = m_list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u32>())
        .collect();
    let ms = match ms {
        Ok(v) if !v.is_empty() => v,
        _ => {
            eprintln!("error: --m must be a comma-separated list of integers");
            return EXIT_USAGE;
        }
    };
    let subject_names: Vec<&str> = subjects
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    if subject_names.is_empty() {
        eprintln!("error: --subjects must name at least one subject");
        return EXIT_USAGE;
    }
    let mut parsed = Vec::new();
    for name in &subject_names {
        match Subject::parse(name) {
            Ok(s) => parsed.push(s),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    // Validate the whole matrix up front: every cell must be in scope.
    for &m in &ms {
        if m % 2 == 0 || m > z4lee::MAX_M {
            eprintln!("error: batch m values must be odd and <= {}", z4lee::MAX_M);
            return EXIT_USAGE;
        }
        for s in &parsed {
            if let Err(e) = s.check_scope(m) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }

    let mut cells = Vec::new();
    let mut any_fail = false;
    for &m in &ms {
        let ctx = match FieldCtx::with_default_poly(m) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return error_exit(&e);
            }
        };
        for s in &parsed {
            let start = std::time::Instant::now();
            let reports = match run_subject(&ctx, *s, IDENTITY_SAMPLES, IDENTITY_SEED) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return error_exit(&e);
                }
            };
            let pass = reports.iter().all(|r| r.passed());
            any_fail |= !pass;
            cells.push(serde_json::json!({
                "m": m,
                "subject": s.name(),
                "status": if pass { "pass" } else { "fail" },
                "sub_cases": reports.len(),
                "runtime_ms": start.elapsed().as_millis() as u64,
            }));
        }
    }

    let payload = match format {
        "table" => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>3}  {:<12} {:<6} {:>9}", "m", "subject", "status", "ms");
            for c in &cells {
                let _ = writeln!(
                    s,
                    "{:>3}  {:<12} {:<6} {:>9}",
                    c["m"], c["subject"].as_str().unwrap(), c["status"].as_str().unwrap().to_uppercase(), c["runtime_ms"]
                );
            }
            let _ = writeln!(s, "{}", if any_fail { "FAIL" } else { "PASS" });
            s
        }
        "json" => {
            let v = serde_json::json!({
                "status": if any_fail { "fail" } else { "pass" },
                "cells": cells,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        other => {
            eprintln!("error: unknown format `{other}`");
            return EXIT_USAGE;
        }
    };
    let out_owned = out.map(|s| s.to_string());
    let code = emit(&out_owned, &payload);
    if code != EXIT_OK {
        return code;
    }
    if any_fail {
        EXIT_VERIFY_FAIL
    } else {
        EXIT_OK
    }
}
