//! `alg`: command-line front end for the finite algebra workbench.
//!
//! [`run`] takes an argument vector and returns the exit status and the
//! rendered output; the binary only prints it. Exit status 0 means every
//! verdict held (possibly up to a bound), 1 means some verdict failed and
//! its witness was printed, 2 means a usage, format or cap error.

pub mod catalog;
mod commands;
pub mod error;
pub mod format;
pub mod report;
pub mod source;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;
pub use report::{OutputMode, Record, Status};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Environment variable naming the default catalog source.
pub const CATALOG_ENV: &str = "ALG_CATALOG";

#[derive(Parser, Debug)]
#[command(name = "alg", version, about = "Finite algebras, filters, and bounded checks of logical principles")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputMode::Text, global = true)]
    format: OutputMode,
    /// Seed for every sampled test.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Worker threads for per-algebra work.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Largest carrier for congruence and filter lattices.
    #[arg(long, default_value_t = alg_core::congruence::DEFAULT_CAP, global = true)]
    cap: usize,
    /// Catalog source: directory, file, named algebra, or `<class>:max=N`.
    #[arg(long, global = true)]
    catalog: Option<String>,
    /// Designated sets: `least`, `all`, or an explicit `{a,b,...}`.
    #[arg(long, default_value = "least", global = true)]
    designate: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IlVariant {
    Il,
    Dual,
    Simple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LemFormArg {
    Pcp,
    Ddt,
    Cyclic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check membership of every algebra in a class.
    Check {
        file: String,
        #[arg(long)]
        class: String,
    },
    /// List the congruence lattice.
    Congruences { file: String },
    /// Decide semisimplicity.
    Semisimple { file: String },
    /// List the deductive filters.
    Filters { file: String },
    /// Matrix consequence over the catalog.
    Consequence {
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        phi: String,
    },
    /// Inconsistency lemma (plain, dual, or restricted to simple filters).
    IlCheck {
        file: String,
        #[arg(long, default_value = "flew-il")]
        family: String,
        #[arg(long, default_value = "auto")]
        bound: String,
        #[arg(long, value_enum, default_value_t = IlVariant::Il)]
        variant: IlVariant,
    },
    /// Least n in a range validating the excluded middle axiom.
    LemCheck {
        file: String,
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "1..5")]
        n: String,
        #[arg(long, value_enum, default_value_t = LemFormArg::Pcp)]
        form: LemFormArg,
    },
    /// Deduction theorem.
    DdtCheck {
        file: String,
        #[arg(long, default_value = "flew-ddt")]
        family: String,
        #[arg(long, default_value = "auto")]
        bound: String,
    },
    /// Proof by cases.
    PcpCheck {
        file: String,
        #[arg(long, default_value = "join-pcp")]
        family: String,
        #[arg(long, default_value = "auto")]
        bound: String,
    },
    /// Semisimplicity against the excluded middle over a catalog.
    CrossCheck {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum, default_value_t = LemFormArg::Pcp)]
        form: LemFormArg,
        /// Size bound used when no catalog is given.
        #[arg(long, default_value_t = 5)]
        max: usize,
    },
    /// Glivenko-style translation checks.
    Glivenko {
        /// A shipped pair: classical, s4-s5, ikn4:n=N, mipc-ws5, bl-mv.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        weak: Option<String>,
        #[arg(long)]
        strong: Option<String>,
        #[arg(long)]
        scheme: Option<String>,
        /// Size bound for shipped pairs.
        #[arg(long, default_value_t = 5)]
        max: usize,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, default_value = "")]
        gamma: String,
        /// Check this many random formulas instead of `--phi`.
        #[arg(long)]
        sample: Option<usize>,
        /// Local form with a unary scheme family over `--weak`.
        #[arg(long)]
        local: bool,
        #[arg(long, default_value = "flew-il")]
        family: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Exact rational countermodel to the local deduction theorem over
    /// the real unit interval.
    LukCounterexample {
        #[arg(long)]
        n: u32,
    },
    /// Enumerate a class up to isomorphism.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        size: usize,
        /// Only the given size rather than every size up to it.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plain validity of a rule over the catalog.
    RuleCheck {
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        phi: String,
    },
    /// Antiadmissibility of a rule over the catalog.
    Antiadmissible {
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        phi: String,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub catalog: Option<String>,
    pub designation: source::Designation,
    pub output: OutputMode,
    pub cap: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl RunConfig {
    fn from_args(g: &GlobalArgs, env_catalog: Option<String>) -> Result<RunConfig, CliError> {
        let hard = alg_core::congruence::DEFAULT_CAP;
        if g.cap == 0 || g.cap > hard {
            return Err(CliError::usage(format!("--cap must be between 1 and {hard}")));
        }
        if g.jobs == 0 {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        Ok(RunConfig {
            catalog: g.catalog.clone().or(env_catalog),
            designation: source::Designation::parse(&g.designate)?,
            output: g.format,
            cap: g.cap,
            seed: g.seed,
            jobs: g.jobs,
        })
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run with `ALG_CATALOG` read from the process environment.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(CATALOG_ENV).ok())
}

/// Run with an explicit value standing in for `ALG_CATALOG`.
pub fn run_with_env<I, T>(args: I, env_catalog: Option<String>) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    RunOutput { code: 0, stdout: text, stderr: String::new() }
                }
                clap::error::ErrorKind::InvalidSubcommand => RunOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("unknown command\n{text}"),
                },
                _ => RunOutput { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let outcome = RunConfig::from_args(&cli.global, env_catalog)
        .and_then(|cfg| commands::dispatch(&cfg, cli.command).map(|r| (cfg, r)));
    match outcome {
        Ok((cfg, records)) => RunOutput {
            code: report::exit_code(&records),
            stdout: report::render(&records, cfg.output),
            stderr: String::new(),
        },
        Err(e) => RunOutput { code: 2, stdout: String::new(), stderr: format!("{e}\n") },
    }
}

/// Map `f` over `items` on up to `jobs` threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}
