//! Command line front end. Exit codes: 0 success, 1 a scan or check found a
//! violation, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::components::decompose;
use crate::error::{Error, Result};
use crate::exact::wire;
use crate::expansion::{reduce_to_odd, to_blocks, BlockExpansion};
use crate::harness::{run_scan, ScanKind, ScanOptions, ScanReport, THREADS_ENV};
use crate::oracle::{brute_v, stable_lambda};
use crate::special::{oeis_diagonal_check, problem_scan, tm_table, tn_monotone_check, OeisArray};
use crate::tails::{cusick, delta, mu};

#[derive(Parser, Debug)]
#[command(
    name = "cusick",
    version,
    about = "Exact sum-of-digits correlations and Cusick densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    /// An integer, or with --blocks an extended expansion such as "(2,3,5,inf)"
    t: String,
    /// Read `t` as a block expansion
    #[arg(long)]
    blocks: bool,
}

impl Target {
    /// The expansion and its display label. Even integers are reduced to
    /// their odd part, which has the same correlations; 0 maps to `()`.
    fn resolve(&self) -> Result<(BlockExpansion, String)> {
        if self.blocks {
            let b: BlockExpansion = self.t.parse()?;
            return Ok((b.clone(), b.to_string()));
        }
        let t: u64 = self
            .t
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a nonnegative integer: {:?}", self.t)))?;
        if t == 0 {
            return Ok((BlockExpansion::empty(), "0".into()));
        }
        let (odd, _) = reduce_to_odd(t)?;
        Ok((to_blocks(odd)?, t.to_string()))
    }
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Largest t to check
    #[arg(long, default_value_t = 4095)]
    max: u64,
    /// Worker threads
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
    /// CSV output; a .jsonl mirror and a checkpoint are written beside it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Continue from the checkpoint next to --out
    #[arg(long)]
    resume: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cusick density c_t
    Ct {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// mu_t(m)
    Mu {
        #[command(flatten)]
        target: Target,
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        json: bool,
    },
    /// Delta_t(a) = sum_{m >= a} mu_t(m)
    Delta {
        #[command(flatten)]
        target: Target,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        json: bool,
    },
    /// Laurent coefficients of the components C_{N,n}(theta)
    Components {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Rows of -3 gamma_t(pi)
    TmTable {
        #[arg(long, default_value_t = 5)]
        rows: u32,
        #[arg(long)]
        json: bool,
    },
    /// Diagonal of the recurrence array against B_m(0)
    OeisCheck {
        #[arg(long, default_value_t = 10)]
        max_m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force counting
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Exhaustive scans
    Scan {
        #[command(subcommand)]
        what: ScanCommand,
    },
    /// Conjecture and identity checks
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// c_t by counting n < 2^lambda
    Ct {
        t: u64,
        #[arg(long)]
        lambda: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// c_t > 1/2
    Cusick(ScanArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// c_t >= c_{t_N}
    ConjExtreme(ScanArgs),
    /// c_t >= lim c_{2^K t - 1}
    AppendOnes(ScanArgs),
    /// c_t > c after appending 01^inf
    AppendZeroOnes(ScanArgs),
    /// c_t = c_{t'} for the reversed expansion
    Reversal(ScanArgs),
    /// c_{t_N} strictly decreasing
    #[command(name = "monotone-tN")]
    MonotoneTn {
        #[arg(long, default_value_t = 50)]
        max: u32,
        #[arg(long)]
        json: bool,
    },
    /// a_{N,q} > 0 for 1 <= q <= N-3
    #[command(name = "problem-aNq")]
    ProblemANq {
        #[arg(long, default_value_t = 60)]
        max: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, json: bool, value: serde_json::Value, text: &str) -> Result<()> {
    if json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Ct { target, json } => {
            let (blocks, label) = target.resolve()?;
            let c = wire(&cusick(&blocks));
            emit(
                out,
                json,
                json!({"t": label, "c": c}),
                &format!("c_{label} = {c}"),
            )?;
        }
        Command::Mu { target, m, json } => {
            let (blocks, label) = target.resolve()?;
            let v = wire(&mu(&blocks, m));
            emit(
                out,
                json,
                json!({"t": label, "m": m, "mu": v}),
                &format!("mu_{label}({m}) = {v}"),
            )?;
        }
        Command::Delta { target, a, json } => {
            let (blocks, label) = target.resolve()?;
            let v = wire(&delta(&blocks, a));
            emit(
                out,
                json,
                json!({"t": label, "a": a, "delta": v}),
                &format!("Delta_{label}({a}) = {v}"),
            )?;
        }
        Command::Components { target, json } => {
            let (blocks, label) = target.resolve()?;
            let set = decompose(&blocks)?;
            if json {
                let parts: Vec<_> = set
                    .fourier_parts
                    .iter()
                    .enumerate()
                    .map(|(n, f)| {
                        let coeffs: serde_json::Map<_, _> = f
                            .terms()
                            .map(|(j, c)| (j.to_string(), json!(wire(c))))
                            .collect();
                        json!({"n": n, "coefficients": coeffs})
                    })
                    .collect();
                writeln!(
                    out,
                    "{}",
                    json!({"t": label, "N": set.n_pairs, "components": parts})
                )?;
            } else {
                writeln!(out, "t = {label}, N = {}", set.n_pairs)?;
                for (n, f) in set.fourier_parts.iter().enumerate() {
                    let terms: Vec<_> = f
                        .terms()
                        .map(|(j, c)| format!("{j}: {}", wire(c)))
                        .collect();
                    writeln!(out, "n = {n}: {{{}}}", terms.join(", "))?;
                }
            }
        }
        Command::TmTable { rows, json } => {
            let table = tm_table(rows)?;
            if json {
                let rows: Vec<Vec<String>> = table
                    .rows
                    .iter()
                    .map(|r| r.iter().map(wire).collect())
                    .collect();
                writeln!(out, "{}", json!({"rows": rows}))?;
            } else {
                for row in &table.rows {
                    let cells: Vec<_> = row.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
            }
        }
        Command::OeisCheck { max_m, json } => {
            let report = oeis_diagonal_check(max_m);
            if json {
                let rows: Vec<_> = report
                    .rows
                    .iter()
                    .map(|(m, a, b)| json!({"m": m, "array": wire(a), "frak_b": wire(b)}))
                    .collect();
                writeln!(
                    out,
                    "{}",
                    json!({"rows": rows, "agrees": report.agrees(), "first_mismatch": report.first_mismatch})
                )?;
            } else {
                let array = OeisArray::new(max_m as usize, max_m as usize);
                for row in array.rows() {
                    let cells: Vec<_> = row.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
                for (m, a, b) in &report.rows {
                    let mark = if a == b { "=" } else { "!=" };
                    writeln!(out, "m = {m}: A = {a} {mark} B(0) = {b}")?;
                }
            }
            // a mismatch is informative, not a failure
        }
        Command::Oracle {
            what: OracleCommand::Ct { t, lambda, json },
        } => {
            let lambda = lambda.unwrap_or_else(|| stable_lambda(t));
            let v = wire(&brute_v(t, lambda, 0)?);
            emit(
                out,
                json,
                json!({"t": t.to_string(), "lambda": lambda, "c": v}),
                &format!("v({t}, {lambda}, 0) = {v}"),
            )?;
        }
        Command::Scan {
            what: ScanCommand::Cusick(args),
        } => return scan(ScanKind::Cusick, args, out),
        Command::Verify { what } => match what {
            VerifyCommand::ConjExtreme(args) => {
                return scan(ScanKind::ExtremeLowerBound, args, out)
            }
            VerifyCommand::AppendOnes(args) => return scan(ScanKind::AppendOnes, args, out),
            VerifyCommand::AppendZeroOnes(args) => {
                return scan(ScanKind::AppendZeroOnes, args, out)
            }
            VerifyCommand::Reversal(args) => return scan(ScanKind::Reversal, args, out),
            VerifyCommand::MonotoneTn { max, json } => {
                if max < 2 {
                    return Err(Error::Precondition("--max must be at least 2".into()));
                }
                let ok = tn_monotone_check(max);
                emit(
                    out,
                    json,
                    json!({"check": "monotone-tN", "max": max, "holds": ok}),
                    &format!("c_(t_N) strictly decreasing for N <= {max}: {ok}"),
                )?;
                return Ok(if ok { 0 } else { 1 });
            }
            VerifyCommand::ProblemANq { max, json } => {
                let report = problem_scan(max);
                let ok = report.holds();
                emit(
                    out,
                    json,
                    json!({
                        "check": "problem-aNq",
                        "max": max,
                        "checked": report.checked,
                        "failures": report.failures,
                        "holds": ok,
                    }),
                    &format!(
                        "a_(N,q) > 0 for 1 <= q <= N-3, 4 <= N <= {max}: {ok} ({} pairs)",
                        report.checked
                    ),
                )?;
                return Ok(if ok { 0 } else { 1 });
            }
        },
    }
    Ok(0)
}

fn scan(kind: ScanKind, args: ScanArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = ScanOptions {
        threads: args.threads,
        out: args.out,
        resume: args.resume,
        ..ScanOptions::default()
    };
    let report = run_scan(kind, args.max, &opts)?;
    if args.json {
        writeln!(out, "{}", report_json(&report))?;
    } else {
        writeln!(out, "{report}")?;
        for v in &report.violations {
            writeln!(
                out,
                "violation: t = {} c = {} bound = {}",
                v.t,
                wire(&v.c),
                wire(&v.bound)
            )?;
        }
    }
    Ok(if report.holds() { 0 } else { 1 })
}

fn report_json(report: &ScanReport) -> serde_json::Value {
    json!({
        "scan": report.kind.name(),
        "range": [report.range.0, report.range.1],
        "checked": report.checked,
        "violations": report.violations.iter().map(|r| r.t).collect::<Vec<_>>(),
        "equalities": report.equality_ts(),
        "resumed_from": report.resumed_from,
        "wall_time": report.wall_time,
    })
}
