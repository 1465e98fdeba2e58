//! Command-line front end: verify scene files, run seeded fuzz campaigns,
//! explain verdicts and print generated scenes.
//!
//! Exit codes: 0 when every row passes, 1 when some row fails or errors,
//! 2 on unusable input.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use multipoint::generate::{generate, GenUniverse, GeneratorConfig, Preset};
use multipoint::herbert::{explain, to_tsv, HerbertReport};
use multipoint::scene::{parse_scene, Scene, SceneError};

pub const SEED_ENV: &str = "MULTIPOINT_SEED";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "multipoint",
    version,
    about = "Exact multiple-point manifolds and Herbert's formula"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify every `verify` directive of the given scene files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        repro: ReproArgs,
    },
    /// Generate and verify `count` scenes with consecutive seeds.
    Fuzz {
        #[arg(long, value_parser = parse_universe)]
        universe: GenUniverse,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        repro: ReproArgs,
    },
    /// Verify scene files and describe the evidence for each row.
    Explain {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print a generated scene.
    Gen {
        #[arg(long, value_parser = parse_preset, default_value = "torus")]
        preset: Preset,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Component count, `n` or `lo-hi`.
        #[arg(long, value_parser = parse_range)]
        components: Option<RangeInclusive<usize>>,
        /// Vertices per component, `n` or `lo-hi`.
        #[arg(long, value_parser = parse_range)]
        segments: Option<RangeInclusive<usize>>,
        #[arg(long)]
        budget: Option<usize>,
        /// Only accept curves without double points.
        #[arg(long)]
        embedded: bool,
    },
}

#[derive(Args, Debug)]
struct ReproArgs {
    /// Where reproducer files for failing scenes are written.
    #[arg(long, default_value = ".")]
    repro_dir: PathBuf,
}

fn parse_universe(s: &str) -> Result<GenUniverse, String> {
    s.parse()
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid count '{t}'"));
    match s.split_once('-') {
        Some((a, b)) => Ok(num(a)?..=num(b)?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

/// The seed after applying the environment override.
fn effective_seed(flag: u64) -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_ENV} is not a 64-bit seed: '{v}'")),
        Err(_) => Ok(flag),
    }
}

fn exit_code(reports: &[HerbertReport]) -> i32 {
    if reports.iter().all(HerbertReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn scene_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scene".into())
}

fn load(path: &Path) -> Result<(Scene, Vec<HerbertReport>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let scene = parse_scene(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let built = scene.build().map_err(|e: SceneError| match e.violation() {
        Some(_) => format!("{}: rejected: {e}", path.display()),
        None => format!("{}: {e}", path.display()),
    })?;
    let reports = built.verify(&scene_id(path));
    Ok((scene, reports))
}

/// The scene followed by the explanation of each failing report, as
/// comments.
fn reproducer(scene: &Scene, reports: &[HerbertReport]) -> String {
    let mut out = String::new();
    for r in reports.iter().filter(|r| !r.passed()) {
        for line in explain(r).lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&scene.to_string());
    out
}

fn write_reproducer(dir: &Path, name: &str, scene: &Scene, reports: &[HerbertReport], err: &mut dyn Write) {
    let path = dir.join(format!("{name}.fail.scene"));
    match fs::create_dir_all(dir).and_then(|_| fs::write(&path, reproducer(scene, reports))) {
        Ok(()) => {
            let _ = writeln!(err, "reproducer written to {}", path.display());
        }
        Err(e) => {
            let _ = writeln!(err, "could not write reproducer {}: {e}", path.display());
        }
    }
}

fn verify_files(files: &[PathBuf], repro: &ReproArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut all = Vec::new();
    for path in files {
        match load(path) {
            Ok((scene, reports)) => {
                if exit_code(&reports) != EXIT_PASS {
                    write_reproducer(&repro.repro_dir, &scene_id(path), &scene, &reports, err);
                }
                all.extend(reports);
            }
            Err(e) => {
                let _ = writeln!(err, "{e}");
                return EXIT_INPUT;
            }
        }
    }
    let _ = write!(out, "{}", to_tsv(&all));
    exit_code(&all)
}

fn explain_files(files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut all = Vec::new();
    for path in files {
        match load(path) {
            Ok((_, reports)) => all.extend(reports),
            Err(e) => {
                let _ = writeln!(err, "{e}");
                return EXIT_INPUT;
            }
        }
    }
    for r in &all {
        let _ = write!(out, "{}", explain(r));
    }
    exit_code(&all)
}

enum FuzzOutcome {
    Verified(Scene, Vec<HerbertReport>),
    Rejected(String),
}

/// Generate and verify one fuzz scene.
pub fn fuzz_one(universe: GenUniverse, seed: u64) -> Result<(Scene, Vec<HerbertReport>), String> {
    let scene = generate(&GeneratorConfig::for_fuzz(universe, seed)).map_err(|e| e.to_string())?;
    let built = scene.build().map_err(|e| e.to_string())?;
    let reports = built.verify(&format!("{universe}-{seed}"));
    Ok((scene, reports))
}

fn fuzz(
    universe: GenUniverse,
    count: u64,
    seed: u64,
    repro: &ReproArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let outcomes: Vec<FuzzOutcome> = (seed..seed.saturating_add(count))
        .into_par_iter()
        .map(|s| match fuzz_one(universe, s) {
            Ok((scene, reports)) => FuzzOutcome::Verified(scene, reports),
            Err(e) => FuzzOutcome::Rejected(e),
        })
        .collect();
    let mut all = Vec::new();
    let mut code = EXIT_PASS;
    for (i, o) in outcomes.into_iter().enumerate() {
        let s = seed + i as u64;
        match o {
            FuzzOutcome::Verified(scene, reports) => {
                if exit_code(&reports) != EXIT_PASS {
                    write_reproducer(&repro.repro_dir, &format!("fuzz-{universe}-{s}"), &scene, &reports, err);
                    code = EXIT_FAIL;
                }
                all.extend(reports);
            }
            FuzzOutcome::Rejected(e) => {
                let _ = writeln!(err, "seed {s}: {e}");
                code = EXIT_FAIL;
            }
        }
    }
    let _ = write!(out, "{}", to_tsv(&all));
    let failed = all.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(
        err,
        "{count} {universe} scenes from seed {seed}: {} reports, {failed} not passing",
        all.len()
    );
    code
}

/// Run with explicit output streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    match cli.command {
        Command::Verify { files, repro } => verify_files(&files, &repro, out, err),
        Command::Explain { files } => explain_files(&files, out, err),
        Command::Fuzz {
            universe,
            count,
            seed,
            repro,
        } => match effective_seed(seed) {
            Ok(s) => fuzz(universe, count, s, &repro, out, err),
            Err(e) => {
                let _ = writeln!(err, "{e}");
                EXIT_INPUT
            }
        },
        Command::Gen {
            preset,
            seed,
            components,
            segments,
            budget,
            embedded,
        } => {
            let seed = match effective_seed(seed) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    return EXIT_INPUT;
                }
            };
            let mut cfg = if embedded {
                GeneratorConfig::embedded(preset, seed)
            } else {
                GeneratorConfig::new(preset, seed)
            };
            if let Some(c) = components {
                cfg.components = c;
            }
            if let Some(s) = segments {
                cfg.segments = s;
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            match generate(&cfg) {
                Ok(scene) => {
                    let _ = write!(out, "{scene}");
                    EXIT_PASS
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    EXIT_INPUT
                }
            }
        }
    }
}

/// Run on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
