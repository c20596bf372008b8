use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use subsetsum::bounds::{ConstantChoice, Theorem};
use subsetsum::counting::MethodChoice;
use subsetsum::suites::{run_all, Scale};

use crate::config::{Format, JobConfig, KRange, StructureConfig, Targets};
use crate::error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
use crate::plan::{self, Mode};
use crate::report;

#[derive(Parser)]
#[command(name = "subsetsum", version, about = "Exact k-subset sum counting and bound verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count N(k, b) for every k in range and every target.
    Count(JobArgs),
    /// Theorem bounds and applicability, without counting.
    Bound(JobArgs),
    /// Counts against a theorem bound, with a summary.
    Verify(JobArgs),
    /// The Cartesian grid of structures, domains and polynomials.
    Sweep(JobArgs),
    /// Run the invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct JobArgs {
    /// TOML job file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Z_n: N, A..B or N1,N2,...
    #[arg(long)]
    zn: Vec<String>,
    /// F_q: P,T or P,T,m0,...,mT with a monic irreducible modulus.
    #[arg(long)]
    fq: Vec<String>,
    /// Product of cyclic groups: N1,N2,...
    #[arg(long)]
    abelian: Vec<String>,
    /// full, list:e1;e2;... or complement:e1;e2;...
    #[arg(long)]
    domain: Vec<String>,
    /// Coefficients a0,a1,...,ad.
    #[arg(long)]
    poly: Vec<String>,
    /// Subset size A or inclusive range A..B.
    #[arg(long)]
    k: Option<KRange>,
    /// all, or targets e1;e2;...
    #[arg(long)]
    b: Option<Targets>,
    /// auto, bruteforce, dp, charsum, closedform or crosscheck.
    #[arg(long)]
    method: Option<MethodChoice>,
    /// zn, fq or abelian.
    #[arg(long)]
    theorem: Option<Theorem>,
    /// hua, dingqi or cz.
    #[arg(long)]
    constant: Option<ConstantChoice>,
    /// Largest relative residual accepted from the character sum.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Work limit per instance, applied to enumeration, DP cells and
    /// character-sum operations alike.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Omit timestamps, thread count and wall times.
    #[arg(long)]
    no_meta: bool,
    /// Write here (atomically) instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the merged job as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// The complete grids instead of the interactive subset.
    #[arg(long)]
    full: bool,
    /// Omit the elapsed time line.
    #[arg(long)]
    no_meta: bool,
}

impl JobArgs {
    fn config(&self) -> Result<JobConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => JobConfig::load(path)?,
            None => JobConfig::default(),
        };
        if !(self.zn.is_empty() && self.fq.is_empty() && self.abelian.is_empty()) {
            let mut structures = Vec::new();
            for t in &self.zn {
                structures.extend(StructureConfig::parse_zn(t)?);
            }
            for t in &self.fq {
                structures.push(StructureConfig::parse_fq(t)?);
            }
            for t in &self.abelian {
                structures.push(StructureConfig::parse_abelian(t)?);
            }
            cfg.structures = Some(structures);
        }
        if !self.domain.is_empty() {
            cfg.domains = self.domain.clone();
        }
        if !self.poly.is_empty() {
            cfg.polys = self.poly.clone();
        }
        cfg.k = self.k.or(cfg.k);
        cfg.b = self.b.clone().or(cfg.b);
        cfg.method = self.method.or(cfg.method);
        cfg.theorem = self.theorem.or(cfg.theorem);
        cfg.constant = self.constant.or(cfg.constant);
        cfg.format = self.format.or(cfg.format);
        cfg.jobs = self.jobs.or(cfg.jobs);
        if self.no_meta {
            cfg.no_meta = Some(true);
        }
        if let Some(t) = self.tolerance {
            cfg.budget.tolerance = Some(t);
        }
        if let Some(b) = self.budget {
            cfg.budget.enumeration = Some(b);
            cfg.budget.table_cells = Some(b);
            cfg.budget.charsum_ops = Some(b);
        }
        Ok(cfg)
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs.filter(|&n| n > 0) {
        // only fails if a pool already exists, which keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run_job(mode: Mode, args: &JobArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = args.config()?;
    if args.print_config {
        report::emit(&cfg.to_toml(), args.output.as_deref(), out)?;
        return Ok(EXIT_OK);
    }
    let job = plan::plan(mode, &cfg)?;
    set_jobs(cfg.jobs);
    let report = report::run(&job, &cfg);
    report::emit(&report.render(job.format)?, args.output.as_deref(), out)?;
    Ok(report.summary.exit_code())
}

fn selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let scale = if args.full { Scale::Full } else { Scale::Quick };
    let outcomes = run_all(scale);
    let mut code = EXIT_OK;
    for o in &outcomes {
        writeln!(out, "{o}")?;
        for f in &o.failures {
            writeln!(out, "    {f}")?;
        }
        if !o.passed() {
            code = EXIT_VERIFICATION;
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    writeln!(out, "{passed}/{} suites passed", outcomes.len())?;
    if !args.no_meta {
        writeln!(out, "elapsed {:.1}s", start.elapsed().as_secs_f64())?;
    }
    Ok(code)
}

/// Parse `args` (program name first), run, and return the exit status.
/// Reports go to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    let result = match &cli.command {
        Command::Count(a) => run_job(Mode::Count, a, out),
        Command::Bound(a) => run_job(Mode::Bound, a, out),
        Command::Verify(a) => run_job(Mode::Verify, a, out),
        Command::Sweep(a) => run_job(Mode::Sweep, a, out),
        Command::Selftest(a) => selftest(a, out),
    };
    result.unwrap_or_else(|e| {
        eprintln!("subsetsum: {e}");
        e.exit_code()
    })
}
