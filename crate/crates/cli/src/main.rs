//! `mu-curves`: runs the verification pipeline and writes a report.

mod cache;
mod fixtures;
mod report;
mod stages;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mu_core::geometry::ChartLabel;

use cache::Cache;
use fixtures::FixtureSet;
use report::Report;
use stages::{closure, Context, Stage, StageReport};

#[derive(Parser)]
#[command(name = "mu-curves", version, about = "Verify torus-fixed curves on the Mukai-Umemura threefold")]
struct Cli {
    /// Read fixtures from this directory instead of the built-in copies.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Charts to report in the variety stage (repeatable; default all).
    #[arg(long, global = true, value_parser = parse_chart)]
    chart: Vec<ChartLabel>,
    /// Cache directory; overrides MU_CURVES_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Print per-stage progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run stages and emit a report.
    Run {
        /// Comma-separated stages, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        stages: Vec<StageArg>,
        /// Write the report here; a text summary still goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check one fixture against the computation.
    Verify {
        #[arg(long)]
        fixture: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Rep,
    Net,
    Variety,
    Curves,
    Deform,
    Poincare,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_chart(s: &str) -> Result<ChartLabel, String> {
    s.parse::<ChartLabel>().map_err(|_| format!("unknown chart `{s}`; expected p12, p10, p-10 or p-12"))
}

fn requested(args: &[StageArg]) -> Vec<Stage> {
    let mut out = Vec::new();
    for a in args {
        match a {
            StageArg::All => out.extend(Stage::ALL),
            StageArg::Rep => out.push(Stage::Rep),
            StageArg::Net => out.push(Stage::Net),
            StageArg::Variety => out.push(Stage::Variety),
            StageArg::Curves => out.push(Stage::Curves),
            StageArg::Deform => out.push(Stage::Deform),
            StageArg::Poincare => out.push(Stage::Poincare),
        }
    }
    out
}

fn run_pipeline(cli: &Cli, fx: &FixtureSet, stages: &[Stage]) -> Report {
    let charts = if cli.chart.is_empty() {
        ChartLabel::ALL.to_vec()
    } else {
        let mut c = cli.chart.clone();
        c.sort();
        c.dedup();
        c
    };
    let options: Vec<&str> = charts.iter().map(|c| c.name()).collect();
    let options = options.join(",");
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().map(Cache::new).or_else(Cache::from_env)
    };
    let ctx = Context::new(fx, charts);
    let mut done: Vec<(Stage, StageReport)> = Vec::new();
    for s in closure(stages) {
        let key = cache::key(s, fx.digest_source(), &options);
        if let Some(hit) = cache.as_ref().and_then(|c| c.load(s, key)) {
            if cli.verbose {
                eprintln!("{s}: cached");
            }
            done.push((s, hit));
            continue;
        }
        let t = std::time::Instant::now();
        let r = ctx.run(s, &done).unwrap_or_else(|e| StageReport::error(e.to_string()));
        if cli.verbose {
            eprintln!("{s}: {:?} in {:.2?}", r.status, t.elapsed());
        }
        if let Some(c) = &cache {
            if let Err(e) = c.store(s, key, &r) {
                eprintln!("warning: cannot write cache: {e}");
            }
        }
        done.push((s, r));
    }
    Report::from_stages(done)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let fx = match FixtureSet::load(cli.fixtures.as_deref()) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("mismatch: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.command {
        Command::Run { stages, out, format } => {
            let report = run_pipeline(&cli, &fx, &requested(stages));
            let doc = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &doc) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                    print!("{}", report.to_text());
                }
                None => print!("{doc}"),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Verify { fixture } => {
            let Some(stage) = Stage::owning(fixture) else {
                eprintln!("error: unknown fixture `{fixture}`; expected one of {}", fixtures::NAMES.join(", "));
                return ExitCode::from(3);
            };
            let report = run_pipeline(&cli, &fx, &[stage]);
            let mut code = 0;
            for (s, r) in report.stages() {
                if r.status == stages::Status::Error {
                    eprintln!("error in {s}: {}", r.payload["error"].as_str().unwrap_or(""));
                    code = 3;
                }
                for m in r.mismatches.iter().filter(|m| m.fixture.as_deref() == Some(fixture.as_str())) {
                    println!("mismatch: {}", m.message);
                    if code == 0 {
                        code = 2;
                    }
                }
            }
            if code == 0 {
                println!("{fixture}: verified");
            }
            ExitCode::from(code)
        }
    }
}
