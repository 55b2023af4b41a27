use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use twg_core::bracket::BracketEngine;
use twg_core::ribbon::{intersection_number_comb, self_intersection_comb};
use twg_core::scan::{default_max_len, ScanConfig, ScanKind};
use twg_core::words::{enumerate_directed, enumerate_undirected};
use twg_core::{
    DirectedClass, GeometricEngine, Holonomy, LinComb, SurfacePresentation, UndirectedClass,
};

mod golden;

#[derive(Parser)]
#[command(name = "twg", version, about = "Goldman and TWG brackets of curves on surfaces")]
struct Cli {
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two classes.
    Bracket(BracketArgs),
    /// Geometric intersection number of two classes.
    Intersect(PairArgs),
    /// Self-intersection number of a class.
    Simple(SingleArgs),
    /// List classes up to a length.
    Enumerate(EnumerateArgs),
    /// Run an exhaustive scan and report violations.
    Scan(ScanArgs),
    /// Check both engines against the golden examples.
    VerifyGoldenset(GoldenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Comb,
    Geom,
    Both,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "comb")]
    engine: Engine,
    /// Holonomy config JSON for the geometric engine.
    #[arg(long)]
    holonomy: Option<PathBuf>,
}

#[derive(Args)]
struct BracketArgs {
    /// Surface name or surface config JSON.
    surface: String,
    x: String,
    y: String,
    /// Goldman bracket of directed classes.
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    /// TWG bracket of undirected classes (the default).
    #[arg(long)]
    undirected: bool,
    #[command(flatten)]
    engine: EngineArgs,
    /// Print terms as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PairArgs {
    surface: String,
    x: String,
    y: String,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct SingleArgs {
    surface: String,
    x: String,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value = "pants")]
    surface: String,
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    /// List directed classes instead of undirected ones.
    #[arg(long)]
    directed: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ScanKind,
    #[arg(long, default_value = "pants")]
    surface: String,
    /// Defaults to 6 on pants and torus1, 4 elsewhere.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    holonomy: Option<PathBuf>,
    /// Directory for the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Examine a random subset of this many pairs.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GoldenArgs {
    /// Golden set JSON (default: the built-in set).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    engine: Engine,
}

fn parse_kind(s: &str) -> Result<ScanKind, String> {
    s.parse().map_err(|e: twg_core::Error| e.to_string())
}

pub(crate) fn load_surface(s: &str) -> Result<SurfacePresentation> {
    if let Ok(surface) = SurfacePresentation::by_name(s) {
        return Ok(surface);
    }
    let path = Path::new(s);
    if path.exists() {
        return SurfacePresentation::load(path).with_context(|| format!("loading surface {s}"));
    }
    bail!("unknown surface {s:?}: expected pants, torus1, sphere4, genus2 or a config file")
}

pub(crate) fn load_holonomy(surface: &SurfacePresentation, file: Option<&Path>) -> Result<Holonomy> {
    let rho = match file {
        Some(f) => Holonomy::load(f).with_context(|| format!("loading holonomy {}", f.display()))?,
        None => Holonomy::shipped(surface.name()).ok_or_else(|| {
            anyhow!("no shipped holonomy for {}; pass --holonomy <file>", surface.name())
        })?,
    };
    if rho.surface().name() != surface.name() {
        bail!("holonomy is for {}, not {}", rho.surface().name(), surface.name());
    }
    Ok(rho)
}

/// Exit status: success, or a reported failure (violations, disagreement).
enum Outcome {
    Ok,
    Failed,
}

fn print_bracket<K: Ord + Clone + std::fmt::Display>(label: Option<&str>, l: &LinComb<K>, json: bool) {
    let body = if json { l.to_json() } else { l.to_string() };
    match label {
        Some(label) => println!("{label:<5} {body}"),
        None => println!("{body}"),
    }
}

fn engines(e: Engine) -> (bool, bool) {
    (e != Engine::Geom, e != Engine::Comb)
}

fn verdict<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> Outcome {
    match (a, b) {
        (Some(a), Some(b)) if a == b => {
            println!("ENGINES AGREE");
            Outcome::Ok
        }
        (Some(_), Some(_)) => {
            println!("ENGINES DISAGREE");
            Outcome::Failed
        }
        _ => Outcome::Ok,
    }
}

fn cmd_bracket(a: BracketArgs) -> Result<Outcome> {
    let surface = load_surface(&a.surface)?;
    let x = surface.parse_class(&a.x)?;
    let y = surface.parse_class(&a.y)?;
    let (use_comb, use_geom) = engines(a.engine.engine);
    let geo = if use_geom {
        Some(GeometricEngine::new(load_holonomy(&surface, a.engine.holonomy.as_deref())?))
    } else {
        None
    };
    let both = use_comb && use_geom;
    let label = |s| both.then_some(s);
    let _ = a.undirected;
    if a.directed {
        let (x, y) = (DirectedClass::new(x), DirectedClass::new(y));
        let c = use_comb.then(|| BracketEngine::new(&surface).goldman(&x, &y)).transpose()?;
        let g = geo.as_ref().map(|g| g.goldman(&x, &y)).transpose()?;
        for (name, l) in [("comb", &c), ("geom", &g)] {
            if let Some(l) = l {
                print_bracket(label(name), l, a.json);
            }
        }
        Ok(verdict(&c, &g))
    } else {
        let (x, y) = (UndirectedClass::new(x), UndirectedClass::new(y));
        let c = use_comb.then(|| BracketEngine::new(&surface).twg(&x, &y)).transpose()?;
        let g = geo.as_ref().map(|g| g.twg(&x, &y)).transpose()?;
        for (name, l) in [("comb", &c), ("geom", &g)] {
            if let Some(l) = l {
                print_bracket(label(name), l, a.json);
            }
        }
        Ok(verdict(&c, &g))
    }
}

fn cmd_intersect(a: PairArgs) -> Result<Outcome> {
    let surface = load_surface(&a.surface)?;
    let x = UndirectedClass::new(surface.parse_class(&a.x)?);
    let y = UndirectedClass::new(surface.parse_class(&a.y)?);
    let (use_comb, use_geom) = engines(a.engine.engine);
    let c = use_comb.then(|| intersection_number_comb(&x, &y, &surface)).transpose()?;
    let g = if use_geom {
        let geo = GeometricEngine::new(load_holonomy(&surface, a.engine.holonomy.as_deref())?);
        Some(geo.intersection_number(&x, &y)?)
    } else {
        None
    };
    report_counts("i", &c, &g)
}

fn cmd_simple(a: SingleArgs) -> Result<Outcome> {
    let surface = load_surface(&a.surface)?;
    let x = UndirectedClass::new(surface.parse_class(&a.x)?);
    let (use_comb, use_geom) = engines(a.engine.engine);
    let c = use_comb.then(|| self_intersection_comb(&x, &surface)).transpose()?;
    let g = if use_geom {
        let geo = GeometricEngine::new(load_holonomy(&surface, a.engine.holonomy.as_deref())?);
        Some(geo.self_crossings(&x)?)
    } else {
        None
    };
    let out = report_counts("self-intersection", &c, &g)?;
    if let Some(k) = c.or(g) {
        println!("{}", if k == 0 { "simple" } else { "not simple" });
    }
    Ok(out)
}

fn report_counts(name: &str, c: &Option<usize>, g: &Option<usize>) -> Result<Outcome> {
    match (c, g) {
        (Some(c), Some(g)) => {
            println!("comb  {name} = {c}");
            println!("geom  {name} = {g}");
        }
        (Some(v), None) | (None, Some(v)) => println!("{name} = {v}"),
        (None, None) => {}
    }
    Ok(verdict(c, g))
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<Outcome> {
    let surface = load_surface(&a.surface)?;
    let n = surface.generators();
    let names: Vec<String> = if a.directed {
        enumerate_directed(n, a.max_len).iter().map(|c| format!("⟨{c}⟩")).collect()
    } else {
        enumerate_undirected(n, a.max_len).iter().map(|c| format!("⟨{c}⟩")).collect()
    };
    for name in &names {
        println!("{name}");
    }
    log::info!("{} classes", names.len());
    Ok(Outcome::Ok)
}

fn cmd_scan(a: ScanArgs) -> Result<Outcome> {
    let surface = load_surface(&a.surface)?;
    let max_len = a.max_len.unwrap_or_else(|| default_max_len(surface.name()));
    if max_len == 0 {
        bail!("--max-len must be at least 1");
    }
    let mut cfg = ScanConfig::new(a.kind, surface.clone(), max_len);
    if let Some(h) = &a.holonomy {
        cfg.holonomy = Some(load_holonomy(&surface, Some(h))?);
    }
    cfg.sample = a.sample;
    cfg.seed = a.seed;
    let report = cfg.run()?;
    if a.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(dir) = &a.out {
        let path = report.write_to(dir)?;
        eprintln!("report written to {}", path.display());
    }
    Ok(if report.passed() { Outcome::Ok } else { Outcome::Failed })
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Bracket(a) => cmd_bracket(a),
        Command::Intersect(a) => cmd_intersect(a),
        Command::Simple(a) => cmd_simple(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Scan(a) => cmd_scan(a),
        Command::VerifyGoldenset(a) => golden::verify(a.file.as_deref(), a.engine),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
