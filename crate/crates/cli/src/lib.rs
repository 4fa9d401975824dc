//! Command-line front end for `klucas-core`.
//!
//! Exit codes: 0 on success with no survivors, 1 when a search reports
//! survivors or a lemma suite fails, 2 on usage or parameter errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use klucas_core::diophantine_bounds::{
    a_max, discriminant, m_range, n_window_certified, solve_bl_k_bounds, solve_matveev_k_bound, K_CEILING,
};
use klucas_core::kgen_seq::{term, Family, SeqParams};
use klucas_core::report::{csv_rows, from_jsonl, to_human, to_jsonl, CSV_HEADER};
use klucas_core::root_analysis::dominant_root;
use klucas_core::search_campaigns::{
    shard, CampaignConfig, CampaignReport, Case0Config, Case12Config, Case3Config, SmallConfig,
};
use klucas_core::two_adic::{lucas_congruence, nu2, predicted_lucas_nu2, ResidueDecomposition};
use klucas_core::verify::{run_all, run_suite, Scale, SUITES};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "KLUCAS_WORKERS";

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "klucas", version, about = "Generalized Lucas numbers and discriminant searches")]
struct Cli {
    /// Worker threads; defaults to $KLUCAS_WORKERS or the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one term of the k-generalized Lucas or Fibonacci sequence.
    Term {
        #[arg(long, value_enum, default_value = "lucas")]
        family: FamilyArg,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Print the discriminant Delta_k and its 2-adic valuation.
    Disc {
        #[arg(long)]
        k: u64,
    },
    /// Print nu_2 of L_n^(k) with the residue that predicts it.
    Nu2 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
    },
    /// Print a certified enclosure of the dominant root of g_k.
    Root {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 128)]
        bits: u32,
    },
    /// Run the invariant suites.
    VerifyLemmas {
        #[arg(long, value_enum, default_value = "full")]
        scale: ScaleArg,
        /// Run only this suite.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
    },
    /// Run one of the searches.
    Search {
        #[command(subcommand)]
        campaign: SearchCommand,
    },
    /// Merge JSONL shard reports into one report.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the derived bounds on k, n, m and a.
    Bounds {
        /// Also print the n-window and m range at this k (> 200).
        #[arg(long)]
        k: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// 2 <= k <= 200, 0 <= n <= 2529 by direct comparison.
    Small {
        #[arg(long, default_value_t = 2)]
        k_lo: u64,
        #[arg(long, default_value_t = 200)]
        k_hi: u64,
        #[arg(long, default_value_t = 2529)]
        n_max: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// n = m(k+1).
    Case0 {
        #[arg(long, default_value_t = 200)]
        k_hi: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// n = r + m(k+1) with r in {1, 2}, even k in [k-lo, k-hi).
    Case12 {
        #[arg(long, default_value_t = 202)]
        k_lo: u64,
        #[arg(long, default_value_t = 70_000_000)]
        k_hi: u64,
        #[arg(long, default_value_t = 100)]
        modulus_bits: u64,
        /// Use 4m^2 + 6m + 1 for r = 2, as in the original search script.
        #[arg(long)]
        appendix_compat: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// n = r + m(k+1) with 3 <= r <= k.
    Case3 {
        #[arg(long, default_value_t = 150)]
        modulus_extra_bits: u64,
        /// Scan m over the recomputed envelope instead of [9, 55].
        #[arg(long)]
        widened: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Run only shard i of N, written as i/N.
    #[arg(long, value_parser = parse_shard)]
    shard: Option<(u64, u64)>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Leave elapsed time out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Lucas,
    Fibonacci,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    Human,
}

fn parse_shard(s: &str) -> Result<(u64, u64), String> {
    let (i, n) = s.split_once('/').ok_or("expected i/N")?;
    let i: u64 = i.trim().parse().map_err(|_| format!("bad shard index {i:?}"))?;
    let n: u64 = n.trim().parse().map_err(|_| format!("bad shard count {n:?}"))?;
    if n == 0 || i >= n {
        return Err(format!("shard {i}/{n} needs 0 <= i < N"));
    }
    Ok((i, n))
}

fn workers(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(w) = flag {
        if w == 0 {
            bail!("--workers must be at least 1");
        }
        return Ok(w);
    }
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let w: usize = v
            .parse()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| anyhow!("{WORKERS_ENV}={v:?} is not a positive integer"))?;
        return Ok(w);
    }
    Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = workers(cli.workers).and_then(|w| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build()?;
        // output is buffered so the pool never touches the caller's writer
        let mut buf = Vec::new();
        let code = pool.install(|| dispatch(cli.command, &mut buf))?;
        out.write_all(&buf)?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Term { family, k, n } => {
            let family = match family {
                FamilyArg::Lucas => Family::Lucas,
                FamilyArg::Fibonacci => Family::Fibonacci,
            };
            writeln!(out, "{}", term(SeqParams::new(k, family)?, n)?)?;
            Ok(0)
        }
        Command::Disc { k } => {
            let d = discriminant(k)?;
            let v = nu2(&d.delta);
            writeln!(out, "{}", d.delta)?;
            writeln!(out, "nu2 = {v}")?;
            writeln!(out, "sign of Disc(g_k) = {}", d.sign())?;
            Ok(0)
        }
        Command::Nu2 { k, n } => nu2_command(k, n, out),
        Command::Root { k, bits } => {
            let r = dominant_root(k, bits)?;
            writeln!(out, "lo = {:.17}", r.lo.to_f64())?;
            writeln!(out, "hi = {:.17}", r.hi.to_f64())?;
            writeln!(out, "width <= 2^-{}", r.precision_bits)?;
            Ok(0)
        }
        Command::VerifyLemmas { scale, suite } => {
            let scale = match scale {
                ScaleArg::Quick => Scale::Quick,
                ScaleArg::Full => Scale::Full,
            };
            let results = match suite {
                Some(name) => vec![run_suite(&name, scale).ok_or_else(|| anyhow!("unknown suite {name}"))?],
                None => run_all(scale),
            };
            let mut ok = true;
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} ({} cases, {} failures)", r.name, r.cases, r.failures.len())?;
                ok &= r.passed();
                for f in r.failures.iter().take(MAX_LISTED_FAILURES) {
                    writeln!(
                        out,
                        "  {} [{}]: expected {}, got {}",
                        f.lemma, f.params, f.expected, f.actual
                    )?;
                }
                if r.failures.len() > MAX_LISTED_FAILURES {
                    writeln!(out, "  ... {} more", r.failures.len() - MAX_LISTED_FAILURES)?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Search { campaign } => search_command(campaign, out),
        Command::Merge { inputs, out: opts } => {
            let mut merged: Option<CampaignReport> = None;
            for path in &inputs {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let report = from_jsonl(&text).with_context(|| format!("parsing {}", path.display()))?;
                merged = Some(match merged {
                    None => report,
                    Some(m) => m.merge(report)?,
                });
            }
            let report = merged.expect("at least one input");
            emit(report, &opts, out)
        }
        Command::Bounds { k } => bounds_command(k, out),
    }
}

fn nu2_command(k: u64, n: u64, out: &mut dyn Write) -> anyhow::Result<i32> {
    let value = term(SeqParams::lucas(k)?, i64::try_from(n)?)?;
    let d = ResidueDecomposition::of_index(k, n);
    writeln!(out, "nu2 = {}", nu2(&value))?;
    writeln!(out, "m = {}, r = {}", d.m, d.r)?;
    let c = lucas_congruence(k, d.m, d.r)?;
    writeln!(out, "L_n = {} (mod 2^{})", c.residue, c.modulus_exp)?;
    if d.r >= 3 {
        match predicted_lucas_nu2(k, d.m, d.r)? {
            Some(p) => writeln!(out, "predicted nu2 = {p}")?,
            None => writeln!(out, "predicted nu2 = at least {}", c.modulus_exp)?,
        }
    }
    Ok(0)
}

fn search_command(cmd: SearchCommand, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (config, common) = match cmd {
        SearchCommand::Small {
            k_lo,
            k_hi,
            n_max,
            common,
        } => (
            CampaignConfig::Small(SmallConfig {
                k_min: k_lo,
                k_max: k_hi,
                n_max,
            }),
            common,
        ),
        SearchCommand::Case0 { k_hi, common } => (CampaignConfig::Case0(Case0Config { k_max: k_hi }), common),
        SearchCommand::Case12 {
            k_lo,
            k_hi,
            modulus_bits,
            appendix_compat,
            common,
        } => (
            CampaignConfig::Case12(Case12Config {
                k_lo,
                k_hi,
                modulus_bits,
                appendix_compat,
            }),
            common,
        ),
        SearchCommand::Case3 {
            modulus_extra_bits,
            widened,
            common,
        } => {
            let c = if widened {
                Case3Config::widened(modulus_extra_bits)?
            } else {
                Case3Config::paper_range(modulus_extra_bits)
            };
            (CampaignConfig::Case3(c), common)
        }
    };
    let (piece, of) = common.shard.unwrap_or((0, 1));
    let report = shard(&config, piece, of)?;
    emit(report, &common.out, out)
}

fn emit(report: CampaignReport, opts: &OutputArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let report = if opts.no_timing { report.without_timing() } else { report };
    let text = match opts.format {
        Format::Jsonl => to_jsonl(&report),
        Format::Human => to_human(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for row in csv_rows(&report) {
                w.write_record(&row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    match &opts.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(if report.survivor_count() > 0 { 1 } else { 0 })
}

fn bounds_command(k: Option<u64>, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mv = solve_matveev_k_bound()?;
    let bl = solve_bl_k_bounds()?;
    let (m_lo, m_hi) = m_range(K_CEILING)?;
    writeln!(out, "largest k with (k/2) log 2 < 3.5e11 (log k)^2 log(3k log k): {}", mv.k_max)?;
    writeln!(out, "largest n below the window at that k: {}", mv.n_max)?;
    writeln!(out, "largest k with B = 10 log 2: {}", bl.const_branch_k_max)?;
    writeln!(out, "largest k with k - 1 < 1123 B^2 log k log(k+1): {}", bl.k_max)?;
    writeln!(out, "m range for 200 < k < {K_CEILING}: [{m_lo}, {m_hi}]")?;
    writeln!(out, "largest a - 1 for k < {K_CEILING}: {}", a_max(K_CEILING)? - 1)?;
    if let Some(k) = k {
        let w = n_window_certified(k, 128)?;
        writeln!(out, "n window at k = {k}: ({:.6}, {:.6})", w.lo.midpoint_f64(), w.hi.midpoint_f64())?;
        writeln!(out, "largest a at k = {k}: {}", a_max(k)?)?;
    }
    Ok(0)
}
