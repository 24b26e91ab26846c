//! Command-line front end: entanglement curves, hypergraph export, single
//! state measurement, Grover traces, and the self-verification suites.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use hyperstate::entanglement::{
    geometric_measure_bruteforce_seeded, geometric_measure_m1, geometric_measure_m2_seeded,
    EntanglementResult,
};
use hyperstate::grover::run_grover;
use hyperstate::hypergraph::{grover_m1_hypergraph, grover_m2_hypergraph};
use hyperstate::state::{SolutionSet, StateVector};
use hyperstate::verify::{run_checks, VerifyLevel};

#[derive(Parser)]
#[command(
    name = "hyperstate",
    version,
    about = "Grover post-oracle states, their hypergraphs, and their geometric entanglement"
)]
struct Cli {
    /// Seed for the multi-start optimizers (decimal or 0x-prefixed hex).
    #[arg(
        long,
        global = true,
        env = "HYPERSTATE_SEED",
        default_value = "0x5EED",
        value_parser = parse_seed
    )]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement E_n as CSV over a range of qubit counts.
    Curve {
        /// Number of marked solutions, 1 or 2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        m: u8,
        /// Largest qubit count (rows run from n = 2), at most 16.
        #[arg(long)]
        n_max: usize,
        /// Hamming distance for m = 2: a number or "all" (the default).
        #[arg(long)]
        d: Option<DistanceArg>,
        /// Cross-check rows with n <= 5 against the brute-force optimizer.
        #[arg(long)]
        verify: bool,
    },
    /// Hypergraph of a canonical Grover state as JSON or DOT.
    Hypergraph {
        #[arg(long)]
        n: usize,
        /// Number of marked solutions, 1 or 2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        m: u8,
        /// Hamming distance; required for m = 2.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Geometric measure of a single state, as JSON.
    Measure {
        /// Qubit count (with --solutions).
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated solution indices (with --n).
        #[arg(long, value_delimiter = ',')]
        solutions: Option<Vec<usize>>,
        /// Read the state from a file: first line n, then 2^n lines "re im".
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Success-probability trace of full Grover iterations, as CSV.
    Grover {
        #[arg(long)]
        n: usize,
        /// Comma-separated solution indices.
        #[arg(long, value_delimiter = ',')]
        solutions: Vec<usize>,
        #[arg(long)]
        iterations: usize,
    },
    /// Run the self-check suites and report each invariant.
    Verify {
        #[arg(long = "verify-level", alias = "level", value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Restricted,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Clone)]
enum DistanceArg {
    All,
    Fixed(usize),
}

impl FromStr for DistanceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            Ok(DistanceArg::All)
        } else {
            s.parse::<usize>()
                .map(DistanceArg::Fixed)
                .map_err(|_| format!("expected a distance or \"all\", got {s:?}"))
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|_| format!("invalid seed {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let seed = cli.seed;
    let (text, code) = match cli.command {
        Command::Curve { m, n_max, d, verify } => cmd_curve(m, n_max, d, verify, seed)?,
        Command::Hypergraph { n, m, d, format } => (cmd_hypergraph(n, m, d, format)?, ExitCode::SUCCESS),
        Command::Measure {
            n,
            solutions,
            state_file,
            method,
        } => (cmd_measure(n, solutions, state_file, method, seed)?, ExitCode::SUCCESS),
        Command::Grover {
            n,
            solutions,
            iterations,
        } => (cmd_grover(n, solutions, iterations)?, ExitCode::SUCCESS),
        Command::Verify { level } => cmd_verify(level, seed),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write output: {e}"))?,
        None => print!("{text}"),
    }
    Ok(code)
}

/// Twelve significant digits, scientific.
fn fmt_f(x: f64) -> String {
    format!("{:.11e}", x)
}

fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - mag);
    (x * scale).round() / scale
}

fn cmd_curve(
    m: u8,
    n_max: usize,
    d: Option<DistanceArg>,
    verify: bool,
    seed: u64,
) -> Result<(String, ExitCode), String> {
    if n_max > 16 {
        return Err(format!("--n-max is capped at 16, got {n_max}"));
    }
    if n_max < 2 {
        return Err("--n-max must be at least 2".into());
    }
    if m == 1 && d.is_some() {
        return Err("--d only applies to --m 2".into());
    }
    if let Some(DistanceArg::Fixed(k)) = &d {
        if *k == 0 || *k > n_max {
            return Err(format!("--d must be in 1..=n-max, got {k}"));
        }
    }

    let mut rows: Vec<(usize, Option<usize>, EntanglementResult)> = Vec::new();
    for n in 2..=n_max {
        if m == 1 {
            let r = geometric_measure_m1(n).map_err(|e| e.to_string())?;
            rows.push((n, None, r));
        } else {
            let distances: Vec<usize> = match &d {
                None | Some(DistanceArg::All) => (1..=n).collect(),
                Some(DistanceArg::Fixed(k)) => {
                    if *k <= n {
                        vec![*k]
                    } else {
                        vec![]
                    }
                }
            };
            for dist in distances {
                let r = geometric_measure_m2_seeded(n, dist, seed).map_err(|e| e.to_string())?;
                rows.push((n, Some(dist), r));
            }
        }
    }

    let mut csv = String::from("n,m,d,E,overlap,alpha,beta,gamma,delta\n");
    for (n, dist, r) in &rows {
        let blocks = r.optimal.blocks();
        let (gamma, delta) = if blocks.len() == 2 {
            (fmt_f(blocks[1].alpha), fmt_f(blocks[1].beta))
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            n,
            m,
            dist.map(|v| v.to_string()).unwrap_or_default(),
            fmt_f(r.value),
            fmt_f(r.max_overlap_sq),
            fmt_f(blocks[0].alpha),
            fmt_f(blocks[0].beta),
            gamma,
            delta,
        );
    }

    if verify {
        let mut failures = 0usize;
        for (n, dist, r) in rows.iter().filter(|(n, ..)| *n <= 5) {
            let sols = match dist {
                None => SolutionSet::canonical_m1(*n),
                Some(dd) => SolutionSet::canonical_m2(*n, *dd),
            }
            .map_err(|e| e.to_string())?;
            let state = StateVector::uniform_superposition(*n)
                .and_then(|s| s.apply_oracle(&sols))
                .map_err(|e| e.to_string())?;
            let brute =
                geometric_measure_bruteforce_seeded(&state, seed).map_err(|e| e.to_string())?;
            let diff = (brute.value - r.value).abs();
            let label = match dist {
                None => format!("n={n}"),
                Some(dd) => format!("n={n}, d={dd}"),
            };
            if diff > 1e-6 {
                eprintln!("verify FAIL {label}: restricted {} vs brute-force {}", r.value, brute.value);
                failures += 1;
            } else {
                eprintln!("verify ok {label}: |diff| = {diff:.3e}");
            }
        }
        if failures > 0 {
            return Ok((csv, ExitCode::from(1)));
        }
    }
    Ok((csv, ExitCode::SUCCESS))
}

fn cmd_hypergraph(n: usize, m: u8, d: Option<usize>, format: Format) -> Result<String, String> {
    let h = match (m, d) {
        (1, None) => grover_m1_hypergraph(n).map_err(|e| e.to_string())?,
        (1, Some(_)) => return Err("--d only applies to --m 2".into()),
        (2, Some(d)) => grover_m2_hypergraph(n, d).map_err(|e| e.to_string())?,
        (2, None) => return Err("--m 2 requires --d".into()),
        _ => unreachable!("clap validates --m"),
    };
    Ok(match format {
        Format::Json => {
            let mut s = h.to_json();
            s.push('\n');
            s
        }
        Format::Dot => h.to_dot(),
    })
}

#[derive(Serialize)]
struct MeasureOutput {
    method: &'static str,
    seed: u64,
    n: usize,
    value: f64,
    overlap: f64,
    converged: bool,
    starts: usize,
    angles: Vec<AngleOutput>,
}

#[derive(Serialize)]
struct AngleOutput {
    block_size: usize,
    alpha: f64,
    beta: f64,
}

fn cmd_measure(
    n: Option<usize>,
    solutions: Option<Vec<usize>>,
    state_file: Option<PathBuf>,
    method: Method,
    seed: u64,
) -> Result<String, String> {
    let (state, sols) = match (n, solutions, state_file) {
        (Some(n), Some(list), None) => {
            let sols = SolutionSet::new(n, list).map_err(|e| e.to_string())?;
            let state = StateVector::uniform_superposition(n)
                .and_then(|s| s.apply_oracle(&sols))
                .map_err(|e| e.to_string())?;
            (state, Some(sols))
        }
        (None, None, Some(path)) => {
            let state = read_state_file(&path)?;
            (state, None)
        }
        _ => {
            return Err("provide either --n with --solutions, or --state-file".into());
        }
    };

    let result = match method {
        Method::Bruteforce => {
            geometric_measure_bruteforce_seeded(&state, seed).map_err(|e| e.to_string())?
        }
        Method::Restricted => {
            let sols = match sols {
                Some(s) => s,
                None => rew_solutions(&state).ok_or_else(|| {
                    "restricted method needs a real equally weighted state with one or two \
                     phase flips; use --method bruteforce"
                        .to_string()
                })?,
            };
            match sols.solutions() {
                [_] => geometric_measure_m1(state.n()).map_err(|e| e.to_string())?,
                [a, b] => {
                    let d = (a ^ b).count_ones() as usize;
                    geometric_measure_m2_seeded(state.n(), d, seed).map_err(|e| e.to_string())?
                }
                _ => {
                    return Err(format!(
                        "restricted method supports 1 or 2 solutions, got {}; use --method bruteforce",
                        sols.len()
                    ));
                }
            }
        }
    };

    let out = MeasureOutput {
        method: match method {
            Method::Restricted => "restricted",
            Method::Bruteforce => "bruteforce",
        },
        seed,
        n: state.n(),
        value: round_sig(result.value),
        overlap: round_sig(result.max_overlap_sq),
        converged: result.converged,
        starts: result.starts_used,
        angles: result
            .optimal
            .blocks()
            .iter()
            .map(|b| AngleOutput {
                block_size: b.size,
                alpha: round_sig(b.alpha),
                beta: round_sig(b.beta),
            })
            .collect(),
    };
    let mut text = serde_json::to_string(&out).map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

/// Recover a solution set from a real equally weighted state, allowing for
/// an overall −1 (which does not affect the measure).
fn rew_solutions(state: &StateVector) -> Option<SolutionSet> {
    let n = state.n();
    let r = 1.0 / (state.dim() as f64).sqrt();
    let mut minus = Vec::new();
    for (x, a) in state.amplitudes().iter().enumerate() {
        if a.im.abs() > 1e-9 {
            return None;
        }
        if (a.re - r).abs() <= 1e-9 {
            continue;
        }
        if (a.re + r).abs() <= 1e-9 {
            minus.push(x);
        } else {
            return None;
        }
    }
    let m = minus.len();
    if (1..=2).contains(&m) {
        return SolutionSet::new(n, minus).ok();
    }
    let complement = state.dim() - m;
    if (1..=2).contains(&complement) {
        let flipped: Vec<usize> = (0..state.dim()).filter(|x| !minus.contains(x)).collect();
        return SolutionSet::new(n, flipped).ok();
    }
    None
}

fn read_state_file(path: &PathBuf) -> Result<StateVector, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or("state file is empty")?
        .parse()
        .map_err(|_| "first line must be the qubit count")?;
    let dim = 1usize
        .checked_shl(n as u32)
        .ok_or_else(|| format!("unreasonable qubit count {n}"))?;
    let mut amps = Vec::with_capacity(dim);
    for (i, line) in lines.enumerate() {
        if i >= dim {
            return Err(format!("expected {dim} amplitude lines, found more"));
        }
        let mut parts = line.split_whitespace();
        let re: f64 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| format!("bad amplitude on line {}", i + 2))?;
        let im: f64 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| format!("bad amplitude on line {}", i + 2))?;
        if parts.next().is_some() {
            return Err(format!("trailing tokens on line {}", i + 2));
        }
        amps.push(Complex64::new(re, im));
    }
    if amps.len() != dim {
        return Err(format!("expected {dim} amplitude lines, found {}", amps.len()));
    }
    StateVector::from_amplitudes(amps, 1e-9).map_err(|e| e.to_string())
}

fn cmd_grover(n: usize, solutions: Vec<usize>, iterations: usize) -> Result<String, String> {
    let sols = SolutionSet::new(n, solutions).map_err(|e| e.to_string())?;
    let trace = run_grover(n, &sols, iterations, false).map_err(|e| e.to_string())?;
    let mut csv = String::from("iteration,success_probability\n");
    for step in &trace.steps {
        let _ = writeln!(csv, "{},{}", step.iteration, fmt_f(step.success_probability));
    }
    Ok(csv)
}

fn cmd_verify(level: Level, seed: u64) -> (String, ExitCode) {
    let level = match level {
        Level::Quick => VerifyLevel::Quick,
        Level::Full => VerifyLevel::Full,
    };
    let checks = run_checks(level, seed);
    let mut report = String::new();
    let mut failed = 0usize;
    for c in &checks {
        if !c.passed {
            failed += 1;
        }
        let _ = writeln!(
            report,
            "{} {:<36} max_err {:>10.3e}  tol {:>8.1e}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.max_error,
            c.tolerance,
            c.details
        );
    }
    let _ = writeln!(
        report,
        "{} checks: {} passed, {failed} failed (seed {seed:#x})",
        checks.len(),
        checks.len() - failed,
    );
    let code = if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    (report, code)
}
