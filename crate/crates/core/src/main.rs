//! Command-line front end.
//!
//! Exit codes: 0 all verdicts confirmed, 2 any refuted, 3 any unverified,
//! 64 usage error, 65 construction error, 66 size-cap violation.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use egqldpc::analysis::{
    claim_check, exact_distance, sweep, verify_distance_floor, CheckOptions, FamilyKind,
    DEFAULT_DIM_CAP, DEFAULT_WEIGHT_BUDGET,
};
use egqldpc::builder::{assemble_stabilizer, build_code, BuildError, CodeFamily, DEFAULT_SIZE_CAP};
use egqldpc::geometry::GeometrySpec;
use egqldpc::io::{
    matrix_rows_as_strings, parse_alist, write_alist, write_mtx, write_report, BundleMetadata,
    ExportBundle,
};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_BUILD: u8 = 65;
const EXIT_SIZE_CAP: u8 = 66;

#[derive(Parser)]
#[command(
    name = "egqldpc",
    version,
    about = "Euclidean-geometry quantum LDPC code toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    H1,
    H2,
    Parallel,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Alist,
    Mtx,
    Json,
}

#[derive(Args)]
struct CodeSelector {
    /// Code family
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Geometry dimension (>= 2)
    #[arg(long)]
    m: usize,
    /// Field order (any prime power within the size cap)
    #[arg(long)]
    q: u32,
    /// Parallel-class index (family = parallel only)
    #[arg(long)]
    class: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print geometry statistics or enumerate lines / parallel classes
    Geom {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        list_lines: bool,
        #[arg(long)]
        list_classes: bool,
    },
    /// Build a code and export its matrices
    Build {
        #[command(flatten)]
        selector: CodeSelector,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "alist")]
        format: FormatArg,
    },
    /// Check every claimed parameter and print the verdict report
    Check {
        #[command(flatten)]
        selector: CodeSelector,
    },
    /// Compute the minimum distance of a parity-check matrix in alist format
    Distance {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Kernel-dimension cap for exact enumeration
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        exact_cap: usize,
        /// Run the bounded low-weight search up to this weight instead
        #[arg(long)]
        floor: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_BUDGET)]
        budget: u64,
    },
    /// Run claim checks over a configured set of families and geometries
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Deserialize)]
struct SweepConfig {
    families: Vec<String>,
    cases: Vec<(usize, u32)>,
}

fn size_cap() -> u64 {
    std::env::var("EGQLDPC_SIZE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

fn build_exit(e: &BuildError) -> u8 {
    match e {
        BuildError::UnsupportedGeometry { .. } => EXIT_SIZE_CAP,
        _ => EXIT_BUILD,
    }
}

fn resolve_family(selector: &CodeSelector) -> Result<CodeFamily, String> {
    match selector.family {
        FamilyArg::H1 => Ok(CodeFamily::Punctured),
        FamilyArg::H2 => Ok(CodeFamily::Full),
        FamilyArg::Parallel => Ok(CodeFamily::ParallelClass(
            selector
                .class
                .ok_or("--class is required for --family parallel")?,
        )),
    }
}

fn coords(v: &[egqldpc::field::FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.code().to_string()).collect();
    format!("({})", parts.join(","))
}

fn run_geom(
    m: usize,
    q: u32,
    stats: bool,
    list_lines: bool,
    list_classes: bool,
) -> Result<u8, (u8, String)> {
    let size = (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    let cap = size_cap();
    if size > cap {
        return Err((
            EXIT_SIZE_CAP,
            BuildError::UnsupportedGeometry { size, cap }.to_string(),
        ));
    }
    let g = GeometrySpec::for_order(m, q).map_err(|e| (EXIT_BUILD, e.to_string()))?;
    let default_stats = !list_lines && !list_classes;
    if stats || default_stats {
        let s = g.stats();
        println!(
            "points={} lines={} classes={} lines/point={} points/line={} parallels/line={}",
            s.n_points,
            s.n_lines,
            s.n_classes,
            s.lines_per_point,
            s.points_per_line,
            s.parallels_per_line
        );
    }
    if list_lines {
        for (i, l) in g.lines().iter().enumerate() {
            let pts: Vec<String> = l.points.iter().map(|p| p.to_string()).collect();
            println!(
                "line {i}: class={} direction={} base={} points=[{}]",
                l.class_id,
                coords(&l.direction),
                l.base(),
                pts.join(",")
            );
        }
    }
    if list_classes {
        for c in g.parallel_classes() {
            let bases: Vec<String> = c.lines.iter().map(|l| l.base().to_string()).collect();
            println!(
                "class {}: direction={} lines={} bases=[{}]",
                c.class_id,
                coords(&c.direction),
                c.lines.len(),
                bases.join(",")
            );
        }
    }
    Ok(EXIT_OK)
}

fn run_build(
    selector: &CodeSelector,
    out: &PathBuf,
    format: FormatArg,
) -> Result<u8, (u8, String)> {
    let family = resolve_family(selector).map_err(|e| (EXIT_USAGE, e))?;
    let cap = size_cap();
    let report = claim_check(family, selector.m, selector.q, cap, CheckOptions::default())
        .map_err(|e| (build_exit(&e), format!("{}: {e}", e.name())))?;
    let code = build_code(family, selector.m, selector.q, cap)
        .map_err(|e| (build_exit(&e), format!("{}: {e}", e.name())))?;
    let stabilizer = assemble_stabilizer(&code);
    let metadata = BundleMetadata::from_report(&report);
    std::fs::create_dir_all(out).map_err(|e| (EXIT_BUILD, format!("IoError: {e}")))?;
    let write = |name: &str, content: String| -> Result<(), (u8, String)> {
        std::fs::write(out.join(name), content).map_err(|e| (EXIT_BUILD, format!("IoError: {e}")))
    };
    match format {
        FormatArg::Alist => {
            write("core.alist", write_alist(&code.core))?;
            write("h_orth.alist", write_alist(&code.h_orth))?;
            write("stabilizer.alist", write_alist(&stabilizer))?;
            write("metadata.txt", metadata.to_text())?;
        }
        FormatArg::Mtx => {
            write("core.mtx", write_mtx(&code.core))?;
            write("h_orth.mtx", write_mtx(&code.h_orth))?;
            write("stabilizer.mtx", write_mtx(&stabilizer))?;
            write("metadata.txt", metadata.to_text())?;
        }
        FormatArg::Json => {
            let bundle = ExportBundle {
                metadata,
                core: matrix_rows_as_strings(&code.core),
                h_orth: matrix_rows_as_strings(&code.h_orth),
                stabilizer: matrix_rows_as_strings(&stabilizer),
            };
            let text = serde_json::to_string_pretty(&bundle)
                .map_err(|e| (EXIT_BUILD, format!("SerializeError: {e}")))?;
            write("bundle.json", text + "\n")?;
        }
    }
    println!("wrote {}", out.display());
    Ok(EXIT_OK)
}

fn run_check(selector: &CodeSelector) -> Result<u8, (u8, String)> {
    let family = resolve_family(selector).map_err(|e| (EXIT_USAGE, e))?;
    let report = claim_check(
        family,
        selector.m,
        selector.q,
        size_cap(),
        CheckOptions::default(),
    )
    .map_err(|e| (build_exit(&e), format!("{}: {e}", e.name())))?;
    print!("{}", write_report(&report));
    if report.any_refuted() {
        Ok(EXIT_REFUTED)
    } else if report.any_unverified() {
        Ok(EXIT_UNVERIFIED)
    } else {
        Ok(EXIT_OK)
    }
}

fn run_distance(
    input: &PathBuf,
    exact_cap: usize,
    floor: Option<usize>,
    budget: u64,
) -> Result<u8, (u8, String)> {
    let text = std::fs::read_to_string(input).map_err(|e| (EXIT_BUILD, format!("IoError: {e}")))?;
    let matrix = parse_alist(&text).map_err(|e| (EXIT_BUILD, e.to_string()))?;
    let result = match floor {
        Some(w) => verify_distance_floor(&matrix, w, budget),
        None => exact_distance(&matrix, exact_cap).map_err(|e| (EXIT_BUILD, e.to_string()))?,
    };
    println!("kind={}", result.kind);
    println!("value={}", result.value_display());
    println!("work={}", result.work);
    if let Some(w) = &result.witness {
        let support: Vec<String> = w.support().iter().map(|c| c.to_string()).collect();
        println!("witness={}", support.join(","));
    }
    Ok(EXIT_OK)
}

fn run_sweep(config_path: &PathBuf) -> Result<u8, (u8, String)> {
    let text =
        std::fs::read_to_string(config_path).map_err(|e| (EXIT_BUILD, format!("IoError: {e}")))?;
    let config: SweepConfig =
        serde_json::from_str(&text).map_err(|e| (EXIT_USAGE, format!("ConfigError: {e}")))?;
    let families: Result<Vec<FamilyKind>, String> =
        config.families.iter().map(|f| f.parse()).collect();
    let families = families.map_err(|e| (EXIT_USAGE, e))?;
    let report = sweep(
        &families,
        &config.cases,
        size_cap(),
        CheckOptions::default(),
    );
    for item in &report.items {
        let class = item
            .class_index
            .map(|i| format!(" class={i}"))
            .unwrap_or_default();
        match &item.outcome {
            Ok(r) => {
                let verdicts: Vec<String> =
                    r.verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!(
                    "family={} m={} q={}{} n={} k_paper={} k_computed={} d={} {}",
                    item.family,
                    item.m,
                    item.q,
                    class,
                    r.n,
                    r.paper.k,
                    r.computed_k,
                    r.distance.value_display(),
                    verdicts.join(" ")
                );
            }
            Err(e) => {
                println!(
                    "family={} m={} q={}{} error={e}",
                    item.family, item.m, item.q, class
                );
            }
        }
    }
    for (m, q, consistent) in &report.parallel_consistency {
        println!("parallel-consistency m={m} q={q} consistent={consistent}");
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match &cli.cmd {
        Cmd::Geom {
            m,
            q,
            stats,
            list_lines,
            list_classes,
        } => run_geom(*m, *q, *stats, *list_lines, *list_classes),
        Cmd::Build {
            selector,
            out,
            format,
        } => run_build(selector, out, *format),
        Cmd::Check { selector } => run_check(selector),
        Cmd::Distance {
            input,
            exact_cap,
            floor,
            budget,
        } => run_distance(input, *exact_cap, *floor, *budget),
        Cmd::Sweep { config } => run_sweep(config),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
