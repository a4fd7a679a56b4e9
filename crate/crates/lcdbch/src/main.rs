//! Command-line front end: leader tables, closed-form deltas, dimensions,
//! code construction, and verification sweeps, with JSON on stdout and an
//! optional CSV leader cache.
//!
//! Exit codes: 0 ok, 1 assertion failure, 2 invalid input, 3 desk-scale
//! limit exceeded.

use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lcdbch::code::{build_code, is_lcd, min_distance_exhaustive, DEFAULT_DISTANCE_BUDGET};
use lcdbch::cosets::{top_leaders, CosetContext, LeaderMethod, LeaderRecord};
use lcdbch::dims::{dimension_closed_form, dimension_exact, distance_lower_bound, BchSpec};
use lcdbch::leaders::{delta_set, to_u64};
use lcdbch::verify::{all_passed, run_conjecture, run_examples, run_props};
use lcdbch::{Error, Result};

/// Environment variable naming the directory for the leader-table cache.
const CACHE_DIR_ENV: &str = "LCDBCH_CACHE_DIR";
const CACHE_FILE: &str = "leaders.csv";

#[derive(Parser)]
#[command(
    name = "lcdbch",
    about = "Cyclotomic coset leaders and LCD BCH code parameters for lengths (q^m+1)/lambda",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Fast descending scan when n = q^m + 1, brute force otherwise.
    Auto,
    /// Full partition walk of Z_n.
    Brute,
    /// Descending scan with the O(m) leader criterion (lambda = 1 only).
    Fast,
    /// Closed-form leader table with provenance.
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum DimMode {
    Exact,
    Closed,
    /// Compute both and fail (exit 1) on divergence.
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Examples,
    Conjecture,
    Props,
}

#[derive(Subcommand)]
enum Cmd {
    /// Largest coset leaders modulo (q^m+1)/lambda with coset sizes.
    Leaders {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Dimension of the code with designed distance delta and offset b.
    Dim {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Designed distance (see --delta-is-code-param).
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
        #[arg(long, value_enum, default_value_t = DimMode::Exact)]
        mode: DimMode,
        /// Interpret --delta as the code's literal designed distance
        /// (default). Pass =false to supply the leader-interval index
        /// delta - 1 instead.
        #[arg(long, default_value_t = true, action = ArgAction::Set,
              num_args = 0..=1, default_missing_value = "true")]
        delta_is_code_param: bool,
    },
    /// Construct the code: generator polynomial, LCD check, distance search.
    Code {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
        /// Codeword-enumeration budget for the exact distance; 0 skips it.
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        distance_budget: u64,
        /// Also print the generator coefficients (ascending).
        #[arg(long)]
        emit_generator: bool,
        #[arg(long, default_value_t = true, action = ArgAction::Set,
              num_args = 0..=1, default_missing_value = "true")]
        delta_is_code_param: bool,
    },
    /// Run a verification suite; nonzero exit on any failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Single exponent for the conjecture suite.
        #[arg(long)]
        m: Option<u64>,
        /// Even-exponent sweep bound for the conjecture suite.
        #[arg(long, default_value_t = 8)]
        m_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) | Error::Uncovered(_) => 2,
                Error::DeskScale(_) => 3,
                Error::BudgetExceeded { .. } | Error::Inconsistent(_) => 1,
            })
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Leaders {
            q,
            m,
            lambda,
            count,
            method,
        } => cmd_leaders(q, m, lambda, count, method),
        Cmd::Dim {
            q,
            m,
            lambda,
            delta,
            b,
            mode,
            delta_is_code_param,
        } => cmd_dim(
            q,
            m,
            lambda,
            literal_delta(delta, delta_is_code_param)?,
            b,
            mode,
        ),
        Cmd::Code {
            q,
            m,
            lambda,
            delta,
            b,
            distance_budget,
            emit_generator,
            delta_is_code_param,
        } => cmd_code(
            q,
            m,
            lambda,
            literal_delta(delta, delta_is_code_param)?,
            b,
            distance_budget,
            emit_generator,
        ),
        Cmd::Verify { suite, q, m, m_max } => cmd_verify(suite, q, m, m_max),
    }
}

fn literal_delta(delta: u64, is_code_param: bool) -> Result<u64> {
    if is_code_param {
        Ok(delta)
    } else {
        delta
            .checked_add(1)
            .ok_or_else(|| Error::InvalidInput("delta overflows".into()))
    }
}

fn cmd_leaders(q: u64, m: u64, lambda: u64, count: usize, method: MethodArg) -> Result<ExitCode> {
    let start = Instant::now();
    if let MethodArg::Closed = method {
        let ds = delta_set(q, m, lambda)?;
        let n = match to_u64(&ds.n) {
            Ok(v) => json!(v),
            Err(_) => json!(ds.n.to_string()),
        };
        let elapsed = start.elapsed().as_millis() as u64;
        for e in ds.entries.iter().take(count) {
            let leader = match to_u64(&e.value) {
                Ok(v) => json!(v),
                Err(_) => json!(e.value.to_string()),
            };
            println!(
                "{}",
                json!({
                    "q": q, "m": m, "lambda": lambda, "n": n,
                    "rank": e.rank,
                    "leader": leader,
                    "coset_size": e.size,
                    "method": "closed",
                    "provenance": e.provenance.as_str(),
                    "elapsed_ms": elapsed,
                })
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    let big_n = lcdbch::modmath::pow_big(q, m) + 1u32;
    let n = to_u64(&(big_n / lambda))?;
    let resolved = match method {
        MethodArg::Brute => LeaderMethod::Brute,
        MethodArg::Fast => LeaderMethod::Fast,
        MethodArg::Auto => {
            if lambda == 1 && q % 2 == 1 && q >= 3 && (2..40).contains(&m) {
                LeaderMethod::Fast
            } else {
                LeaderMethod::Brute
            }
        }
        MethodArg::Closed => unreachable!(),
    };
    let cache_dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from);
    let cached = cache_dir
        .as_deref()
        .and_then(|dir| cache_lookup(dir, q, m, lambda, count, resolved));
    let (entries, from_cache) = match cached {
        Some(entries) => (entries, true),
        None => {
            let ctx = CosetContext::new(q, n)?;
            let table = top_leaders(&ctx, count, resolved)?;
            if let Some(dir) = cache_dir.as_deref() {
                if let Err(e) = cache_append(dir, q, m, lambda, &table.entries, resolved) {
                    eprintln!("cache write failed: {e}");
                }
            }
            (table.entries, false)
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    for e in &entries {
        println!(
            "{}",
            json!({
                "q": q, "m": m, "lambda": lambda, "n": n,
                "rank": e.rank,
                "leader": e.leader,
                "coset_size": e.size,
                "method": resolved.as_str(),
                "cached": from_cache,
                "elapsed_ms": elapsed,
            })
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dim(q: u64, m: u64, lambda: u64, delta: u64, b: u64, mode: DimMode) -> Result<ExitCode> {
    let start = Instant::now();
    let spec = BchSpec::new(q, m, lambda, delta, b)?;
    let n = spec.n_u64()?;
    let (k, provenance, method, diverged) = match mode {
        DimMode::Exact => (
            dimension_exact(&spec)?,
            "brute-force".to_string(),
            "exact",
            None,
        ),
        DimMode::Closed => {
            let (k, p) = dimension_closed_form(&spec)?;
            (k, p.as_str().to_string(), "closed", None)
        }
        DimMode::Both => {
            let exact = dimension_exact(&spec)?;
            let (closed, p) = dimension_closed_form(&spec)?;
            let diverged = (closed != exact).then_some((exact, closed));
            (exact, p.as_str().to_string(), "both", diverged)
        }
    };
    println!(
        "{}",
        json!({
            "q": q, "m": m, "lambda": lambda, "n": n, "b": b, "delta": delta,
            "k": k,
            "d_lower": distance_lower_bound(&spec),
            "d_exact": serde_json::Value::Null,
            "lcd": serde_json::Value::Null,
            "provenance": provenance,
            "method": method,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        })
    );
    if let Some((exact, closed)) = diverged {
        eprintln!("assertion failed: exact k = {exact}, closed form k = {closed}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_code(
    q: u64,
    m: u64,
    lambda: u64,
    delta: u64,
    b: u64,
    distance_budget: u64,
    emit_generator: bool,
) -> Result<ExitCode> {
    let start = Instant::now();
    let spec = BchSpec::new(q, m, lambda, delta, b)?;
    let n = spec.n_u64()?;
    let d_lower = distance_lower_bound(&spec);
    match build_code(&spec) {
        Ok(code) => {
            let lcd = is_lcd(&code)?;
            let d_exact = if distance_budget == 0 {
                None
            } else {
                match min_distance_exhaustive(&code, distance_budget, Some(d_lower)) {
                    Ok(r) => Some(r.d),
                    Err(Error::BudgetExceeded { upper_bound }) => {
                        eprintln!(
                            "distance search budget exhausted; {d_lower} <= d <= {upper_bound}"
                        );
                        None
                    }
                    Err(e) => return Err(e),
                }
            };
            println!(
                "{}",
                json!({
                    "q": q, "m": m, "lambda": lambda, "n": n, "b": b, "delta": delta,
                    "k": code.k,
                    "d_lower": d_lower,
                    "d_exact": d_exact,
                    "lcd": lcd,
                    "provenance": "brute-force",
                    "method": "constructed",
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                })
            );
            if emit_generator {
                println!("{}", json!({ "generator": code.generator.coeffs }));
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::DeskScale(msg)) => {
            eprintln!("field construction skipped: {msg}");
            let k =
                dimension_exact(&spec).or_else(|_| dimension_closed_form(&spec).map(|(k, _)| k))?;
            println!(
                "{}",
                json!({
                    "q": q, "m": m, "lambda": lambda, "n": n, "b": b, "delta": delta,
                    "k": k,
                    "d_lower": d_lower,
                    "d_exact": serde_json::Value::Null,
                    "lcd": serde_json::Value::Null,
                    "provenance": "brute-force",
                    "method": "params-only",
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(e),
    }
}

fn cmd_verify(suite: Suite, q: u64, m: Option<u64>, m_max: u64) -> Result<ExitCode> {
    let outcomes = match suite {
        Suite::Examples => run_examples(),
        Suite::Props => run_props(),
        Suite::Conjecture => {
            let ms: Vec<u64> = match m {
                Some(m) => vec![m],
                None => (1..=m_max / 2).map(|i| 2 * i).collect(),
            };
            run_conjecture(q, &ms)
        }
    };
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    let (passed, total) = (outcomes.iter().filter(|o| o.passed).count(), outcomes.len());
    println!("{passed}/{total} checks passed");
    Ok(if all_passed(&outcomes) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cache_path(dir: &Path) -> PathBuf {
    dir.join(CACHE_FILE)
}

fn cache_lookup(
    dir: &Path,
    q: u64,
    m: u64,
    lambda: u64,
    count: usize,
    method: LeaderMethod,
) -> Option<Vec<LeaderRecord>> {
    let text = fs::read_to_string(cache_path(dir)).ok()?;
    let mut by_rank: Vec<Option<LeaderRecord>> = vec![None; count];
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            continue;
        }
        let parse = |i: usize| fields[i].trim().parse::<u64>().ok();
        if (parse(0)?, parse(1)?, parse(2)?) != (q, m, lambda)
            || fields[6].trim() != method.as_str()
        {
            continue;
        }
        let rank = parse(3)? as usize;
        if rank >= 1 && rank <= count {
            by_rank[rank - 1] = Some(LeaderRecord {
                rank,
                leader: parse(4)?,
                size: parse(5)?,
            });
        }
    }
    by_rank.into_iter().collect()
}

fn cache_append(
    dir: &Path,
    q: u64,
    m: u64,
    lambda: u64,
    entries: &[LeaderRecord],
    method: LeaderMethod,
) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let lock = dir.join(format!("{CACHE_FILE}.lock"));
    let mut acquired = false;
    for _ in 0..200 {
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => {
                acquired = true;
                break;
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                std::thread::sleep(std::time::Duration::from_millis(5));
            }
            Err(e) => return Err(e),
        }
    }
    if !acquired {
        return Err(std::io::Error::new(
            std::io::ErrorKind::TimedOut,
            "cache lock busy",
        ));
    }
    let result = (|| {
        let path = cache_path(dir);
        let fresh = !path.exists();
        let mut file = OpenOptions::new().create(true).append(true).open(&path)?;
        if fresh {
            writeln!(file, "q,m,lambda,rank,leader,coset_size,method")?;
        }
        for e in entries {
            writeln!(
                file,
                "{q},{m},{lambda},{},{},{},{}",
                e.rank,
                e.leader,
                e.size,
                method.as_str()
            )?;
        }
        Ok(())
    })();
    let _ = fs::remove_file(&lock);
    result
}
