use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qfbim_core::bimodule::BimoduleDescriptor;
use qfbim_core::geo::GeoSpec;
use qfbim_core::harness::corpus::{geo_corpus, geo_spec, BIMODULE_NAMES};
use qfbim_core::harness::{
    diff_reports, run_scenario, Cache, Check, CheckSpec, Recipe, Report, RunOptions, Scenario,
};
use qfbim_core::qf::Route;
use qfbim_core::ring::RingDescriptor;
use qfbim_core::{Caps, Error};

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "qfbim", version, about = "Quasi-Frobenius checks for finite bimodules and GEO rings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Limit on enumerated lattices and closures.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Directory for cached check results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the full JSON report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    Ring {
        #[command(subcommand)]
        action: RingCmd,
    },
    Bimodule {
        #[command(subcommand)]
        action: BimoduleCmd,
    },
    Translations {
        #[command(subcommand)]
        action: TranslationsCmd,
    },
    Geo {
        #[command(subcommand)]
        action: GeoCmd,
    },
    Verify {
        #[command(subcommand)]
        action: VerifyCmd,
    },
    Report {
        #[command(subcommand)]
        action: ReportCmd,
    },
    Scenario {
        #[command(subcommand)]
        action: ScenarioCmd,
    },
    /// List the built-in bimodules and GEO rings.
    Corpus,
}

#[derive(Subcommand)]
enum RingCmd {
    /// Order, radical, center and units of a ring.
    Info {
        /// Modulus, GEO corpus name, descriptor JSON or @file.
        #[arg(long)]
        ring: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Azumaya,
    Annihilator,
    Socle,
    All,
}

#[derive(Subcommand)]
enum BimoduleCmd {
    /// Decide QF along one or all routes.
    Check {
        /// Corpus name, descriptor JSON or @file.
        #[arg(long)]
        bimodule: String,
        #[arg(long, value_enum, default_value = "all")]
        route: RouteArg,
    },
}

#[derive(Subcommand)]
enum TranslationsCmd {
    /// Translation rings, their centers and radicals.
    Build {
        #[arg(long)]
        bimodule: String,
    },
}

#[derive(Subcommand)]
enum GeoCmd {
    /// Build a GEO ring and check its invariants and socle.
    Build {
        /// Corpus name, spec JSON or @file.
        #[arg(long)]
        spec: String,
    },
    /// Center, translation decomposition and QF verdicts.
    Verify {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Matrix-ring and socle checks for a bimodule with QF canonical bimodule.
    Th4 {
        #[arg(long, default_value = "column_z4_2_1")]
        bimodule: String,
    },
    /// QF of regular and canonical bimodules across GEO rings.
    Th4plus1 {
        /// Repeatable; defaults to the whole GEO corpus.
        #[arg(long)]
        spec: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Compare two JSON reports ignoring timings.
    Diff { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    Run { path: PathBuf },
}

fn read_arg(arg: &str) -> Result<Option<String>, Error> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok(Some(std::fs::read_to_string(path)?));
    }
    Ok(arg.trim_start().starts_with('{').then(|| arg.to_string()))
}

fn bimodule_recipe(arg: &str) -> Result<Recipe, Error> {
    Ok(match read_arg(arg)? {
        Some(text) => Recipe::Bimodule { bimodule: serde_json::from_str::<BimoduleDescriptor>(&text)? },
        None => Recipe::NamedBimodule { name: arg.into() },
    })
}

fn spec_recipe(arg: &str) -> Result<Recipe, Error> {
    Ok(match read_arg(arg)? {
        Some(text) => Recipe::Geo { spec: serde_json::from_str::<GeoSpec>(&text)? },
        None if geo_spec(arg).is_some() => Recipe::NamedGeo { name: arg.into() },
        None => return Err(Error::InvalidInput(format!("unknown GEO ring '{arg}'"))),
    })
}

fn ring_recipe(arg: &str) -> Result<Recipe, Error> {
    if let Ok(m) = arg.parse::<u64>() {
        return Ok(Recipe::Ring { ring: RingDescriptor::residue(m) });
    }
    Ok(match read_arg(arg)? {
        Some(text) => Recipe::Ring { ring: RingDescriptor::from_json(&text)? },
        None => spec_recipe(arg)?,
    })
}

fn scenario(cmd: &Command) -> Result<Scenario, Error> {
    let one = |name: &str, recipe: Recipe, checks: Vec<(&str, Check)>| {
        let mut s = Scenario::new(name).construct("x", recipe);
        for (id, c) in checks {
            s = s.check(id, "x", c);
        }
        s
    };
    Ok(match cmd {
        Command::Ring { action: RingCmd::Info { ring } } => {
            one("ring info", ring_recipe(ring)?, vec![("ring_info", Check::RingInfo {})])
        }
        Command::Bimodule { action: BimoduleCmd::Check { bimodule, route } } => {
            let routes = match route {
                RouteArg::Azumaya => vec![Route::Azumaya],
                RouteArg::Annihilator => vec![Route::Annihilator],
                RouteArg::Socle => vec![Route::Socle],
                RouteArg::All => Route::ALL.to_vec(),
            };
            let check = Check::Qf { routes: Some(routes), expect: None };
            one("bimodule check", bimodule_recipe(bimodule)?, vec![("qf", check)])
        }
        Command::Translations { action: TranslationsCmd::Build { bimodule } } => one(
            "translations build",
            bimodule_recipe(bimodule)?,
            vec![("center_intersection", Check::CenterIntersection {}), ("radical_compatibility", Check::RadicalCompatibility {})],
        ),
        Command::Geo { action: GeoCmd::Build { spec } } => one(
            "geo build",
            spec_recipe(spec)?,
            vec![("invariants", Check::GeoInvariants {}), ("socle", Check::GeoSocle {})],
        ),
        Command::Geo { action: GeoCmd::Verify { spec } } => one(
            "geo verify",
            spec_recipe(spec)?,
            vec![
                ("center", Check::GeoCenter { expect_order: None }),
                ("decomposition", Check::GeoDecomposition { expect_orders: None }),
                ("verdict", Check::GeoVerdict {}),
            ],
        ),
        Command::Verify { action: VerifyCmd::Th4 { bimodule } } => {
            one("verify th4", bimodule_recipe(bimodule)?, vec![("th4", Check::Th4 {})])
        }
        Command::Verify { action: VerifyCmd::Th4plus1 { spec } } => {
            let names: Vec<String> = if spec.is_empty() {
                geo_corpus().into_iter().map(|(n, _)| n.to_string()).collect()
            } else {
                spec.clone()
            };
            let mut s = Scenario::new("verify th4plus1");
            let mut ids = Vec::new();
            for (i, arg) in names.iter().enumerate() {
                let id = if geo_spec(arg).is_some() { arg.clone() } else { format!("spec{i}") };
                s = s.construct(&id, spec_recipe(arg)?);
                ids.push(id);
            }
            s.checks.push(CheckSpec {
                id: "th4plus1".into(),
                target: None,
                targets: ids,
                check: Check::Th4plus1 {},
                expected_source: None,
            });
            s
        }
        Command::Scenario { action: ScenarioCmd::Run { path } } => Scenario::load(path)?,
        Command::Report { .. } | Command::Corpus => unreachable!("handled before"),
    })
}

fn load_report(path: &PathBuf) -> Result<Value, Error> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Write errors (a closed pipe) are ignored: the exit code still reports
/// the outcome.
fn print_report(report: &Report, json: bool) {
    let mut out = std::io::stdout().lock();
    let text = if json { report.to_json() } else { report.lines().join("\n") };
    let _ = writeln!(out, "{text}");
}

fn run(cli: Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Report { action: ReportCmd::Diff { a, b } } => {
            let diffs = diff_reports(&load_report(a)?, &load_report(b)?);
            if diffs.is_empty() {
                println!("identical modulo timings");
                return Ok(0);
            }
            for d in &diffs {
                println!("differs at {d}");
            }
            return Ok(1);
        }
        Command::Corpus => {
            println!("bimodules: {}", BIMODULE_NAMES.join(", "));
            println!("also regular_<geo ring>");
            for (name, spec) in geo_corpus() {
                println!("{name}: {}", spec.label());
            }
            return Ok(0);
        }
        _ => {}
    }
    let s = scenario(&cli.command)?;
    let g = &cli.global;
    let mut caps = Caps::default();
    if let Some(cap) = g.cap {
        caps.lattice = cap;
        caps.closure = cap;
    }
    if let Some(seed) = g.seed {
        caps.seed = seed;
    }
    let cache = g.cache.as_ref().map(Cache::open).transpose()?;
    let report = run_scenario(&s, &RunOptions { caps, cache })?;
    print_report(&report, g.json);
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { 2 } else { INPUT_ERROR })
        }
    }
}
