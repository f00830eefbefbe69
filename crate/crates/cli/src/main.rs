use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posetlab::checkers::{build_report, normalize_property};
use posetlab::gallery::facts::{self, SuiteReport};
use posetlab::gallery::johnstone::Bounds;
use posetlab::relations::{wb_failure, wwb_failure};
use posetlab::search::{scan, GenConfig};
use posetlab::{dsl, Error, LadderPoset, SymSet};

mod config;

use config::Config;

/// Exit status for claims that do not hold.
const EXIT_MISMATCH: u8 = 1;
/// Exit status for usage, input and parse errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "posetlab", version, about = "Weak way-below, quasiexactness and friends on symbolic dcpos")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the property report of a presentation.
    Check {
        file: PathBuf,
        /// Comma-separated property names (default: all).
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide `G ≪_w x` or `G ≪ x`; exits 1 when the relation fails.
    Rel {
        file: PathBuf,
        #[arg(long, conflicts_with = "wb", required_unless_present = "wb")]
        wwb: bool,
        #[arg(long)]
        wb: bool,
        /// A set literal such as `{a, X(3..)}` or comma-separated elements.
        g: String,
        x: String,
        /// Also run the bounded brute-force oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Audit the registered facts.
    Gallery {
        #[arg(long, conflicts_with = "poset", required_unless_present = "poset")]
        run_all: bool,
        #[arg(long)]
        poset: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Grid bound for certificate audits.
        #[arg(long = "bounds-m")]
        bounds_m: Option<u64>,
        /// Largest finite set size for certificate audits.
        #[arg(long = "bounds-s")]
        bounds_s: Option<usize>,
    },
    /// Scan seeded random presentations for a property combination.
    Search {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long)]
        query: String,
        /// Directory for matched presentations and `summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 4)]
        max_base: u32,
        #[arg(long, default_value_t = 2)]
        max_ladders: u32,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 3)]
        max_constant: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Export the Hasse diagram of a truncation.
    Export {
        file: PathBuf,
        #[arg(long, required = true)]
        dot: bool,
        #[arg(long)]
        depth: Option<u64>,
    },
}

/// Failure carrying its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SuiteFailure(_) | Error::ImplicationViolation { .. } | Error::CertificateRejected(_) => {
                EXIT_MISMATCH
            }
            _ => EXIT_USAGE,
        };
        Fail { code, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<LadderPoset, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    dsl::load(&text).map_err(|e| match e {
        Error::Parse(pe) => Fail::usage(format!("{}:{pe}", path.display())),
        e => Fail::usage(format!("{}: {e}", path.display())),
    })
}

fn parse_g(p: &LadderPoset, g: &str) -> Result<SymSet, Fail> {
    let t = g.trim();
    if t.starts_with('{') {
        return Ok(p.parse_set(t)?);
    }
    let mut s = p.empty();
    for part in t.split(',').filter(|s| !s.trim().is_empty()) {
        s.insert(p.parse_elem(part)?);
    }
    Ok(s)
}

fn cmd_check(file: &Path, properties: &[String], format: Format) -> Result<u8, Fail> {
    let p = load(file)?;
    let names = properties
        .iter()
        .map(|n| normalize_property(n).map_err(|_| Fail::usage(format!("unknown property `{n}`"))))
        .collect::<Result<Vec<&str>, Fail>>()?;
    let select = (!names.is_empty()).then_some(names.as_slice());
    let r = build_report(&p, select);
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", r.to_json()),
    }
    Ok(0)
}

fn cmd_rel(cfg: &Config, file: &Path, wb: bool, g: &str, x: &str, oracle: bool) -> Result<u8, Fail> {
    let p = load(file)?;
    let gs = parse_g(&p, g)?;
    let xe = p.parse_elem(x)?;
    let (sym, holds) = if wb {
        let f = wb_failure(&p, &gs, xe)?;
        let holds = f.is_none();
        println!("{} << {}: {holds}", p.display_set(&gs), p.display(xe));
        if let Some((z, shape)) = f {
            println!("  escapes at {} via {}", p.display(z), p.display_shape(&shape));
        }
        ("<<", holds)
    } else {
        let f = wwb_failure(&p, &gs, xe)?;
        let holds = f.is_none();
        println!("{} <<_w {}: {holds}", p.display_set(&gs), p.display(xe));
        if let Some(shape) = f {
            println!("  misses shape {}", p.display_shape(&shape));
        }
        ("<<_w", holds)
    };
    if oracle {
        let depth = p.uniformity_threshold() + cfg.nstar_slack();
        let o = if wb { p.oracle_wb(&gs, xe, depth)? } else { p.oracle_wwb(&gs, xe, depth)? };
        println!("  oracle {sym} at depth {depth}: {o}");
        if o != holds {
            return Err(Fail { code: EXIT_MISMATCH, message: "symbolic and oracle verdicts differ".into() });
        }
    }
    Ok(if holds { 0 } else { EXIT_MISMATCH })
}

fn print_suite(r: &SuiteReport, format: Format) {
    match format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("suite serializes")),
    }
}

fn cmd_gallery(poset: Option<&str>, bounds: Bounds, format: Format) -> Result<u8, Fail> {
    let r = facts::evaluate(&facts::registry(), poset, bounds)?;
    print_suite(&r, format);
    let bad = r.failures();
    if bad.is_empty() {
        Ok(0)
    } else {
        Err(Error::SuiteFailure(bad).into())
    }
}

fn cmd_search(gen: GenConfig, count: u64, query: &str, out: Option<&Path>, jobs: usize, format: Format) -> Result<u8, Fail> {
    let s = scan(&gen, count, query, jobs)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&s).expect("summary serializes")),
        Format::Text => {
            println!(
                "scanned {} presentations: {} rejected, {} dcpos, {} matches for `{}`",
                s.count,
                s.rejected,
                s.dcpos,
                s.matches.len(),
                s.query
            );
            for m in &s.matches {
                println!("  {} {}", m.index, m.report.poset);
            }
        }
    }
    if let Some(dir) = out {
        let io = |e: std::io::Error| Fail::usage(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for m in &s.matches {
            std::fs::write(dir.join(format!("{}.pos", m.report.poset)), &m.source).map_err(io)?;
        }
        let summary = serde_json::to_string_pretty(&s).expect("summary serializes");
        std::fs::write(dir.join("summary.json"), summary + "\n").map_err(io)?;
    }
    Ok(0)
}

fn cmd_export(file: &Path, depth: u64) -> Result<u8, Fail> {
    let p = load(file)?;
    print!("{}", dsl::export_dot(&p, depth)?);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let cfg = Config::from_env().map_err(Fail::usage)?;
    match cli.cmd {
        Cmd::Check { file, properties, format } => cmd_check(&file, &properties, format),
        Cmd::Rel { file, wb, g, x, oracle, .. } => cmd_rel(&cfg, &file, wb, &g, &x, oracle),
        Cmd::Gallery { poset, format, bounds_m, bounds_s, .. } => {
            let bounds = cfg.bounds(bounds_m, bounds_s);
            cmd_gallery(poset.as_deref(), bounds, format)
        }
        Cmd::Search { seed, count, query, out, jobs, max_base, max_ladders, density, max_constant, format } => {
            let gen = GenConfig { seed, max_base, max_ladders, density, max_constant };
            cmd_search(gen, count, &query, out.as_deref(), jobs, format)
        }
        Cmd::Export { file, depth, .. } => cmd_export(&file, depth.unwrap_or(cfg.depth())),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
