//! `charvar`: E-polynomials of SL/PGL(2,3) character varieties of free
//! groups, with a finite-field verification suite.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on usage
//! or guard errors.

mod model;
mod symbolic;

use std::io::{self, Write};
use std::process::ExitCode;

use charvar::oracle::{verify_suite, CountReport, VerifyLevel};
use charvar::{RankParam, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use model::{character_variety, euler_summary, strata_table, Group};
use symbolic::{symbolic_suite, SymbolicCheck};

/// Version of the JSON output layout; see `schema/output.schema.json`.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "charvar",
    version,
    about = "E-polynomials of SL/PGL(n,C) character varieties of free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

impl From<Level> for VerifyLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Quick => VerifyLevel::Quick,
            Level::Full => VerifyLevel::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print e(M) for the group and rank, optionally with every stratum.
    Compute {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        r: u32,
        /// Include the full strata table.
        #[arg(long)]
        strata: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print Euler characteristics of M and its smooth, singular and abelian loci.
    Euler {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        r: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate e(M) at an integer q.
    Eval {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        q: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the exact identity suite and the finite-field point counts.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        /// Worker threads for the point counts.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
        jobs: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Outcome {
    Ok(String),
    Mismatch(String),
}

fn envelope(command: &str, body: Value) -> String {
    let mut v = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n"
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

fn cmd_compute(group: Group, r: RankParam, strata: bool, format: Format) -> Result<String> {
    let m = character_variety(group, r)?;
    if !strata {
        return Ok(match format {
            Format::Text => format!("{m}\n"),
            Format::Json => envelope(
                "compute",
                json!({ "group": group, "r": r.get(), "M": m.to_string() }),
            ),
            Format::Csv => csv_rows(
                &["group", "r", "M"],
                [[group.name().to_string(), r.get().to_string(), m.to_string()]],
            ),
        });
    }
    let table = strata_table(group, r)?;
    Ok(match format {
        Format::Text => {
            let width = table.strata.iter().map(|e| e.id.len()).max().unwrap_or(0);
            let mut out = String::new();
            for e in &table.strata {
                out.push_str(&format!("{:<width$}  {}\n", e.id, e.epoly));
            }
            out
        }
        Format::Json => {
            let mut body = to_value(&table);
            body["group"] = json!(group);
            body["r"] = json!(r.get());
            body["M"] = json!(m.to_string());
            envelope("compute", body)
        }
        Format::Csv => csv_rows(
            &["id", "epoly", "description"],
            table
                .strata
                .iter()
                .map(|e| [e.id.clone(), e.epoly.to_string(), e.description.clone()]),
        ),
    })
}

fn cmd_euler(group: Group, r: RankParam, format: Format) -> Result<String> {
    let e = euler_summary(group, r)?;
    let note = e.abelian_discrepancy.then(|| {
        format!(
            "computed chi_abelian = {} differs from the claimed value 3^(r-2) = {}",
            e.chi_abelian,
            e.claimed_chi_abelian
                .as_ref()
                .expect("claimed value present for rank 3")
        )
    });
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "chi_M={}\nchi_smooth={}\nchi_singular={}\nchi_abelian={}\n",
                e.chi_m, e.chi_smooth, e.chi_singular, e.chi_abelian
            );
            if let Some(n) = &note {
                out.push_str(&format!("note: {n}\n"));
            }
            out
        }
        Format::Json => {
            let mut body = to_value(&e);
            body["group"] = json!(group);
            body["r"] = json!(r.get());
            if let Some(n) = note {
                body["note"] = json!(n);
            }
            envelope("euler", body)
        }
        Format::Csv => csv_rows(
            &[
                "group",
                "r",
                "chi_M",
                "chi_smooth",
                "chi_singular",
                "chi_abelian",
                "claimed_chi_abelian",
                "abelian_discrepancy",
            ],
            [[
                group.name().to_string(),
                r.get().to_string(),
                e.chi_m.to_string(),
                e.chi_smooth.to_string(),
                e.chi_singular.to_string(),
                e.chi_abelian.to_string(),
                e.claimed_chi_abelian
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
                e.abelian_discrepancy.to_string(),
            ]],
        ),
    })
}

fn cmd_eval(group: Group, r: RankParam, q: i64, format: Format) -> Result<String> {
    let value = character_variety(group, r)?
        .eval_integer(q)
        .expect("character variety polynomials are integral");
    Ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Json => envelope(
            "eval",
            json!({ "group": group, "r": r.get(), "q": q, "value": value.to_string() }),
        ),
        Format::Csv => csv_rows(
            &["group", "r", "q", "value"],
            [[
                group.name().to_string(),
                r.get().to_string(),
                q.to_string(),
                value.to_string(),
            ]],
        ),
    })
}

fn render_verify(
    level: VerifyLevel,
    jobs: u32,
    checks: &[SymbolicCheck],
    reports: &[CountReport],
    passed: bool,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
            let mut out = String::new();
            for c in checks {
                out.push_str(&format!("{} symbolic: {}\n", mark(c.passed), c.name));
                if let Some(d) = &c.detail {
                    out.push_str(&format!("     {d}\n"));
                }
            }
            for r in reports {
                out.push_str(&format!(
                    "{} oracle: SL({}, F_{}) r={} {} count={} expected={} ({:.2}s)\n",
                    mark(r.matched),
                    r.n,
                    r.q,
                    r.r,
                    r.predicate,
                    r.raw_count,
                    r.poly_at_q,
                    r.elapsed_seconds
                ));
                if let (false, Some(d)) = (r.matched, &r.diagnostic) {
                    out.push_str(&format!("     {d}\n"));
                }
            }
            out.push_str(if passed {
                "all checks passed\n"
            } else {
                "verification FAILED\n"
            });
            out
        }
        Format::Json => envelope(
            "verify",
            json!({
                "level": level.to_string(),
                "jobs": jobs,
                "passed": passed,
                "symbolic": checks,
                "reports": reports,
            }),
        ),
        Format::Csv => csv_rows(
            &[
                "n",
                "q",
                "r",
                "predicate",
                "count",
                "expected",
                "match",
                "seconds",
            ],
            reports.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.q.to_string(),
                    r.r.to_string(),
                    r.predicate.to_string(),
                    r.raw_count.to_string(),
                    r.poly_at_q.to_string(),
                    r.matched.to_string(),
                    format!("{:.3}", r.elapsed_seconds),
                ]
            }),
        ),
    }
}

fn cmd_verify(level: Level, jobs: u32, format: Format) -> Result<Outcome> {
    let level = VerifyLevel::from(level);
    let checks = symbolic_suite(level);
    let reports = verify_suite(level, jobs as usize)?;
    let passed = checks.iter().all(|c| c.passed) && reports.iter().all(|r| r.matched);
    if format == Format::Csv {
        for c in checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "symbolic check failed: {}: {}",
                c.name,
                c.detail.as_deref().unwrap_or("")
            );
        }
    }
    let out = render_verify(level, jobs, &checks, &reports, passed, format);
    Ok(if passed {
        Outcome::Ok(out)
    } else {
        Outcome::Mismatch(out)
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    Ok(match cli.command {
        Command::Compute {
            group,
            r,
            strata,
            format,
        } => Outcome::Ok(cmd_compute(group, RankParam::new(r)?, strata, format)?),
        Command::Euler { group, r, format } => {
            Outcome::Ok(cmd_euler(group, RankParam::new(r)?, format)?)
        }
        Command::Eval {
            group,
            r,
            q,
            format,
        } => Outcome::Ok(cmd_eval(group, RankParam::new(r)?, q, format)?),
        Command::Verify {
            level,
            jobs,
            format,
        } => cmd_verify(level, jobs, format)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(cli) {
        Ok(Outcome::Ok(text)) => (text, 0),
        Ok(Outcome::Mismatch(text)) => (text, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
