//! Command-line front end: catalog preparation, detection runs, benchmark
//! sweeps, and partition statistics.
//!
//! Exit codes: 0 when no collision is found, 2 when a collision witness
//! is reported, 1 on any error (including usage errors).

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use orbitguard::dynamics::{GravParam, KeplerDynamics};
use orbitguard::engine::{
    detect_4d_with, detect_basic_aabb, detect_brute, Algorithm, CollisionWitness, DetectOptions,
    ProblemInstance, RunStats, WorldObject,
};
use orbitguard::ingest::{dedupe, parse_any_catalog, scale_catalog, write_catalog, CatalogObject};
use orbitguard::partition::{
    build_bands, detect_partitioned, edge_cover_check, stats_csv, RadialExtent,
};

const EXIT_NONE: i32 = 0;
const EXIT_ERROR: i32 = 1;
const EXIT_WITNESS: i32 = 2;

#[derive(Parser)]
#[command(
    name = "orbitguard",
    about = "Broad-phase collision prediction for orbital catalogs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run collision detection over a catalog.
    Detect(DetectArgs),
    /// Time the detectors over a sweep of catalog sizes; emits CSV.
    Bench(BenchArgs),
    /// Scale a catalog up or down and write it in canonical form.
    Gen(GenArgs),
    /// Report altitude-band occupancy for one or more partition counts.
    PartitionStats(PartitionStatsArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Catalog file: TLE text or canonical catalog format.
    #[arg(long)]
    input: PathBuf,
    /// Box half-edge in meters. TLE inputs carry no size, so this sets
    /// it (default 1.0); for canonical inputs it overrides the per-object
    /// radii when given.
    #[arg(long = "radius-m")]
    radius_m: Option<f64>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Detection algorithm: brute, basic-aabb, or aabb-4d.
    #[arg(long, default_value = "aabb-4d")]
    algo: Algorithm,
    /// Time horizon in seconds; must be a whole number of steps.
    #[arg(long = "horizon-s")]
    horizon_s: f64,
    /// Time step in seconds.
    #[arg(long = "step-s")]
    step_s: f64,
    /// Number of altitude bands (aabb-4d only; 1 = unpartitioned).
    #[arg(long, default_value_t = 1)]
    partitions: usize,
    /// Worker threads for partitioned runs; 0 = one per core.
    #[arg(long, env = "ORBITGUARD_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Check loop invariants at every iteration (slower).
    #[arg(long)]
    verify: bool,
    /// Truncate or grow the catalog to this many objects first.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for catalog growth.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Catalog sizes to sweep, comma-separated (e.g. 100,1000,10000).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Algorithms to time, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "basic-aabb,aabb-4d")]
    algo: Vec<Algorithm>,
    /// Partition counts to time (applied to aabb-4d only).
    #[arg(long, value_delimiter = ',', default_value = "1")]
    partitions: Vec<usize>,
    #[arg(long = "horizon-s")]
    horizon_s: f64,
    #[arg(long = "step-s")]
    step_s: f64,
    #[arg(long, env = "ORBITGUARD_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Target object count.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop entries with element-wise identical orbits first.
    #[arg(long)]
    dedupe: bool,
    /// Output path for the canonical catalog (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionStatsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Partition count for the per-band table.
    #[arg(long, default_value_t = 16)]
    partitions: usize,
    /// Optional extra partition counts; emits a max-band-count table.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<usize>,
    /// Output path for the per-band CSV (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output path for the sweep CSV (stdout if omitted).
    #[arg(long = "sweep-out")]
    sweep_out: Option<PathBuf>,
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_NONE };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Command::Detect(args) => cmd_detect(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
        Command::PartitionStats(args) => cmd_partition_stats(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_ERROR);
        }
    }
}

/// Load a catalog in either format, applying the radius policy.
fn load_catalog(args: &InputArgs) -> Result<Vec<CatalogObject>> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let (mut objects, issues) =
        parse_any_catalog(&text, GravParam::default(), args.radius_m.unwrap_or(1.0))
            .with_context(|| format!("parsing {}", args.input.display()))?;
    for issue in &issues {
        eprintln!("warning: {}: {}", args.input.display(), issue.error);
    }
    if let Some(r) = args.radius_m {
        for o in &mut objects {
            o.radius_m = r;
        }
    }
    Ok(objects)
}

fn build_instance(
    objects: &[CatalogObject],
    horizon_s: f64,
    step_s: f64,
) -> Result<ProblemInstance> {
    let world: Vec<WorldObject> = objects
        .iter()
        .map(|o| {
            WorldObject::new(
                o.id,
                o.radius_m,
                Box::new(KeplerDynamics::new(o.elements, GravParam::default(), step_s)),
            )
        })
        .collect();
    Ok(ProblemInstance::new(world, horizon_s, step_s)?)
}

fn catalog_extents(objects: &[CatalogObject]) -> Vec<RadialExtent> {
    objects
        .iter()
        .map(|o| RadialExtent {
            id: o.id,
            lo_m: o.elements.perigee_m(),
            hi_m: o.elements.apogee_m(),
            radius_m: o.radius_m,
        })
        .collect()
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct WitnessJson {
    a: u32,
    b: u32,
    step: u64,
    t_s: f64,
}

impl From<&CollisionWitness> for WitnessJson {
    fn from(w: &CollisionWitness) -> Self {
        Self {
            a: w.a.0,
            b: w.b.0,
            step: w.step,
            t_s: w.t_s,
        }
    }
}

#[derive(Serialize)]
struct StatsJson {
    iterations: u64,
    tree_inserts: u64,
    tree_updates: u64,
    queries: u64,
    resolve_passes: u64,
}

impl From<&RunStats> for StatsJson {
    fn from(s: &RunStats) -> Self {
        Self {
            iterations: s.iterations,
            tree_inserts: s.tree_inserts,
            tree_updates: s.tree_updates,
            queries: s.queries,
            resolve_passes: s.resolve_passes,
        }
    }
}

#[derive(Serialize)]
struct DetectReport {
    schema_version: u32,
    command: &'static str,
    input: String,
    algorithm: String,
    n_objects: usize,
    horizon_s: f64,
    step_s: f64,
    radius_m: Option<f64>,
    partitions: usize,
    verify: bool,
    witness: Option<WitnessJson>,
    wall_s: f64,
    stats: StatsJson,
    band_sizes: Vec<usize>,
}

fn cmd_detect(args: DetectArgs) -> Result<i32> {
    let mut objects = load_catalog(&args.input)?;
    if let Some(n) = args.n {
        objects = scale_catalog(&objects, n, args.seed)?;
    }
    if args.partitions > 1 && args.algo != Algorithm::Aabb4d {
        bail!("--partitions applies only to the aabb-4d algorithm");
    }
    let opts = DetectOptions {
        verify: args.verify,
        ..Default::default()
    };

    // Timing starts after parsing: it covers instance setup, tree
    // construction, and the detection run itself.
    let started = Instant::now();
    let mut instance = build_instance(&objects, args.horizon_s, args.step_s)?;
    let (witness, stats, band_sizes) = if args.partitions > 1 {
        let extents = catalog_extents(&objects);
        let set = build_bands(&extents, args.partitions);
        edge_cover_check(&extents, &set)?;
        let report = detect_partitioned(&instance, &set, &opts, args.workers)?;
        let mut stats = RunStats::default();
        for band in &report.band_reports {
            stats.iterations += band.stats.iterations;
            stats.tree_inserts += band.stats.tree_inserts;
            stats.tree_updates += band.stats.tree_updates;
            stats.queries += band.stats.queries;
            stats.resolve_passes += band.stats.resolve_passes;
        }
        let sizes = set.bands.iter().map(|b| b.members.len()).collect();
        (report.witness, stats, sizes)
    } else {
        match args.algo {
            Algorithm::Brute => (detect_brute(&mut instance), RunStats::default(), vec![]),
            Algorithm::BasicAabb => {
                (detect_basic_aabb(&mut instance), RunStats::default(), vec![])
            }
            Algorithm::Aabb4d => {
                let report = detect_4d_with(&mut instance, &opts)?;
                (report.witness, report.stats, vec![])
            }
        }
    };
    let wall_s = started.elapsed().as_secs_f64();

    match &witness {
        Some(w) => println!("collision: {w} (step {})", w.step),
        None => println!("none"),
    }
    let report = DetectReport {
        schema_version: 1,
        command: "detect",
        input: args.input.input.display().to_string(),
        algorithm: args.algo.to_string(),
        n_objects: objects.len(),
        horizon_s: args.horizon_s,
        step_s: args.step_s,
        radius_m: args.input.radius_m,
        partitions: args.partitions,
        verify: args.verify,
        witness: witness.as_ref().map(WitnessJson::from),
        wall_s,
        stats: StatsJson::from(&stats),
        band_sizes,
    };
    let json = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{json}"),
    }
    Ok(if witness.is_some() { EXIT_WITNESS } else { EXIT_NONE })
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let source = load_catalog(&args.input)?;
    // One CSV column per (algorithm, partition-count) configuration.
    let mut configs: Vec<(Algorithm, usize)> = Vec::new();
    for &algo in &args.algo {
        if algo == Algorithm::Aabb4d {
            for &p in &args.partitions {
                configs.push((algo, p));
            }
        } else {
            configs.push((algo, 1));
        }
    }
    let mut csv = String::from("n");
    for (algo, p) in &configs {
        csv.push_str(&format!(",{algo}_p{p}"));
    }
    csv.push('\n');

    for &n in &args.n {
        let objects = scale_catalog(&source, n, args.seed)?;
        csv.push_str(&n.to_string());
        for &(algo, parts) in &configs {
            let started = Instant::now();
            let mut instance = build_instance(&objects, args.horizon_s, args.step_s)?;
            let witness = match (algo, parts) {
                (Algorithm::Brute, _) => detect_brute(&mut instance),
                (Algorithm::BasicAabb, _) => detect_basic_aabb(&mut instance),
                (Algorithm::Aabb4d, 1) => {
                    detect_4d_with(&mut instance, &DetectOptions::default())?.witness
                }
                (Algorithm::Aabb4d, _) => {
                    let extents = catalog_extents(&objects);
                    let set = build_bands(&extents, parts);
                    edge_cover_check(&extents, &set)?;
                    detect_partitioned(&instance, &set, &DetectOptions::default(), args.workers)?
                        .witness
                }
            };
            let wall_s = started.elapsed().as_secs_f64();
            if let Some(w) = witness {
                eprintln!(
                    "warning: n={n} {algo} p={parts}: collision found ({w}); \
                     timing measures a truncated run"
                );
            }
            csv.push_str(&format!(",{wall_s:.6}"));
            log::info!(target: "orbitguard::bench", "n={n} algo={algo} p={parts} wall_s={wall_s:.6}");
        }
        csv.push('\n');
    }
    write_or_print(&args.out, &csv)?;
    Ok(EXIT_NONE)
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let mut objects = load_catalog(&args.input)?;
    if args.dedupe {
        let (kept, removed) = dedupe(objects);
        for (gone, kept_id) in &removed {
            eprintln!("dropped {gone}: same orbit as {kept_id}");
        }
        objects = kept;
    }
    let scaled = scale_catalog(&objects, args.n, args.seed)?;
    write_or_print(&args.out, &write_catalog(&scaled))?;
    Ok(EXIT_NONE)
}

fn cmd_partition_stats(args: PartitionStatsArgs) -> Result<i32> {
    let objects = load_catalog(&args.input)?;
    if objects.is_empty() {
        bail!("source catalog is empty");
    }
    let extents = catalog_extents(&objects);
    let set = build_bands(&extents, args.partitions);
    edge_cover_check(&extents, &set)?;
    write_or_print(&args.out, &stats_csv(&set))?;

    if !args.sweep.is_empty() {
        let mut csv = String::from("p,max_band_count\n");
        for &p in &args.sweep {
            let sweep_set = build_bands(&extents, p);
            let max = sweep_set
                .bands
                .iter()
                .map(|b| b.members.len())
                .max()
                .unwrap_or(0);
            csv.push_str(&format!("{p},{max}\n"));
        }
        write_or_print(&args.sweep_out, &csv)?;
    }
    Ok(EXIT_NONE)
}
