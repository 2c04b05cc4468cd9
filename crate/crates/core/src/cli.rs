//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 runtime error.

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::asymptotics::{limits_for_family, LimitConstants};
use crate::experiment::{run_experiment, write_records, ExperimentConfig, OutputFormat};
use crate::oracle::{enumerate_min_covers, enumerate_plane_trees, max_matching, nullity_exact, MAX_ENUM_N};
use crate::sampler::{mix64, Method, SamplerConfig, TreeSampler};
use crate::tree::read_outdeg_lines;
use crate::tricolour::tricolour;
use crate::weights::WeightFamily;

const FAMILY_GRAMMAR: &str = "families: poisson:LAMBDA | geometric:P | binary:W0,W2 | \
powerlaw:THETA[,MEAN] | factorial:ALPHA | explicit:w0,w1,...,wK";

#[derive(Parser, Debug)]
#[command(name = "tricolor", version, about = "Random simply generated trees and their tricolourations", after_help = FAMILY_GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw trees and print them as outdeg-lines.
    Sample {
        #[arg(long)]
        family: WeightFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long)]
        degree_cap: Option<usize>,
    },
    /// Read outdeg-lines on stdin, print `COLOURS<TAB>n_g n_o n_r I M N`.
    Tricolor,
    /// Print the limit constants of a family as JSON.
    Limits {
        #[arg(long)]
        family: WeightFamily,
    },
    /// Monte Carlo table of colour fractions against their limits.
    Experiment {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the tricolouring against brute force on every tree up to K vertices.
    OracleCheck {
        #[arg(long = "max-n")]
        max_n: usize,
    },
}

/// Runs one invocation (`argv[0]` is the program name).
pub fn cli_dispatch<I, T>(argv: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    let _ = writeln!(stderr, "{FAMILY_GRAMMAR}");
                    1
                }
            };
        }
    };
    match run(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

type BoxError = Box<dyn std::error::Error>;

fn run(cmd: Command, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, BoxError> {
    match cmd {
        Command::Sample {
            family,
            n,
            count,
            seed,
            method,
            degree_cap,
        } => {
            let mut cfg = SamplerConfig::new(n, seed).with_method(method);
            cfg.degree_cap = degree_cap;
            let sampler = TreeSampler::new(&family, &cfg)?;
            let mut out = BufWriter::new(stdout);
            for i in 0..count {
                let tree = sampler.sample_seeded(mix64(seed, i as u64))?;
                writeln!(out, "{tree}")?;
            }
            out.flush()?;
            Ok(0)
        }
        Command::Tricolor => {
            let mut out = BufWriter::new(stdout);
            for tree in read_outdeg_lines(stdin) {
                let tc = tricolour(&tree?);
                let s = tc.stats()?;
                writeln!(
                    out,
                    "{}\t{} {} {} {} {} {}",
                    tc.colour_string(),
                    tc.n_green,
                    tc.n_orange,
                    tc.n_red,
                    s.independence,
                    s.matching,
                    s.nullity
                )?;
            }
            out.flush()?;
            Ok(0)
        }
        Command::Limits { family } => {
            let lc = limits_for_family(&family)?;
            writeln!(stdout, "{}", limits_json(&lc))?;
            Ok(0)
        }
        Command::Experiment {
            family,
            sizes,
            replicates,
            seed,
            format,
            method,
            out,
        } => {
            let mut cfg = ExperimentConfig::new(&family, sizes, replicates, seed)?;
            cfg.method = method;
            let outcome = run_experiment(&cfg)?;
            for f in &outcome.failures {
                writeln!(stderr, "n={}: {}", f.n, f.error)?;
            }
            match out {
                Some(path) => write_records(BufWriter::new(File::create(path)?), &outcome.records, format)?,
                None => write_records(BufWriter::new(stdout), &outcome.records, format)?,
            }
            Ok(if outcome.records.is_empty() { 2 } else { 0 })
        }
        Command::OracleCheck { max_n } => {
            if max_n == 0 || max_n > MAX_ENUM_N {
                writeln!(stderr, "--max-n must be in 1..={MAX_ENUM_N}")?;
                return Ok(1);
            }
            let mut all_ok = true;
            for n in 1..=max_n {
                let (trees, bad) = oracle_check_size(n)?;
                all_ok &= bad == 0;
                let verdict = if bad == 0 { "pass" } else { "FAIL" };
                writeln!(stdout, "n={n} trees={trees} mismatches={bad} {verdict}")?;
            }
            Ok(if all_ok { 0 } else { 2 })
        }
    }
}

/// Compares colours and `(I, M, N)` with the brute-force oracle for every
/// tree of size `n`. Returns (trees checked, mismatches).
pub fn oracle_check_size(n: usize) -> Result<(usize, usize), BoxError> {
    let mut trees = 0;
    let mut bad = 0;
    for t in enumerate_plane_trees(n)? {
        trees += 1;
        let tc = tricolour(&t);
        let report = enumerate_min_covers(&t)?;
        let s = tc.stats()?;
        let ok = tc.colours == report.colours()
            && s.independence == n - report.cover_size
            && s.matching == max_matching(&t)
            && s.nullity == nullity_exact(&t)? as i64;
        bad += usize::from(!ok);
    }
    Ok((trees, bad))
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// JSON object with 12 significant digits per value.
pub fn limits_json(lc: &LimitConstants) -> String {
    let r = |x| round_sig(x, 12);
    let rounded = LimitConstants {
        q: r(lc.q),
        q_tilde: r(lc.q_tilde),
        p_green: r(lc.p_green),
        p_orange: r(lc.p_orange),
        p_red: r(lc.p_red),
        lim_i: r(lc.lim_i),
        lim_m: r(lc.lim_m),
        lim_n: r(lc.lim_n),
        regime: lc.regime,
    };
    serde_json::to_string(&rounded).expect("plain struct serializes")
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut stdout = io::stdout();
    let mut stderr = io::stderr();
    let code = cli_dispatch(std::env::args_os(), &mut input, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    code
}
