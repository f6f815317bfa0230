//! The `mcwc` command-line tool.

pub mod catalog;
pub mod export;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mcwc::bounds::{all_bounds, all_bounds_2d, best_bound};
use mcwc::code::{verify_2d, verify_generalized_packing, verify_mcwc, PackingInstance, VerificationReport};
use mcwc::constructions::{
    code_from_drp, concatenate, construct_k4_packing_with, drp_from_alpha_resolvable, latin_drp, mcwc_w1_d4,
    mcwc_w2_d4, mcwc_w3_d4_with, product_construction, ConstructionCertificate,
};
use mcwc::designs::DesignStore;
use mcwc::format::{read_code, read_code_file, read_packing, write_code, write_packing};
use mcwc::search::{max_code_search, SearchBudget};
use mcwc::{Code, Shape};

use catalog::{Catalog, CatalogEntry, ShapeKey};

#[derive(Debug, Parser)]
#[command(name = "mcwc", version, about = "Multiply constant-weight codes: bounds, constructions and exact search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every applicable upper bound for a shape.
    Bound(BoundArgs),
    /// Build a code or packing from one of the explicit families.
    Construct(ConstructArgs),
    /// Check a code or packing file.
    Verify(VerifyArgs),
    /// Exact maximum-code search.
    Search(SearchArgs),
    /// Look up or list known values.
    Catalog(CatalogArgs),
    /// Write a code file as JSON.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Part lengths, comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    pub lengths: Vec<usize>,
    /// Part weights, comma separated.
    #[arg(long = "w", value_delimiter = ',', required = true)]
    pub weights: Vec<usize>,
    #[arg(long = "d")]
    pub distance: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape> {
        Ok(Shape::new(self.lengths.clone(), self.weights.clone(), self.distance)?)
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Also print the two-dimensional bounds.
    #[arg(long = "2d", requires = "l")]
    pub two_d: bool,
    /// Column weight for two-dimensional codes.
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    W1d4,
    W2d4,
    W3d4,
    K4,
    Latin,
    AlphaDrp,
    Product,
    Concat,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Number of parts (w1d4, w2d4, w3d4).
    #[arg(long)]
    pub m: Option<usize>,
    /// Part length, or part lengths for k4.
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Block composition for k4.
    #[arg(long = "w", value_delimiter = ',')]
    pub w: Vec<usize>,
    /// alpha-drp: number of points of the design.
    #[arg(long)]
    pub points: Option<usize>,
    /// alpha-drp: block size.
    #[arg(long)]
    pub k: Option<usize>,
    /// alpha-drp: design index.
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    /// alpha-drp: α.
    #[arg(long, default_value_t = 1)]
    pub alpha: usize,
    /// alpha-drp: vertical tiling factor (`s·t` = number of classes).
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// product: inner code files, in symbol order.
    #[arg(long, num_args = 1..)]
    pub inner: Vec<PathBuf>,
    /// product: outer code file.
    #[arg(long)]
    pub outer: Option<PathBuf>,
    /// product: minimum distance within each inner code.
    #[arg(long)]
    pub d1: Option<usize>,
    /// product: minimum distance of the union of the inner codes.
    #[arg(long)]
    pub d2: Option<usize>,
    /// concat: input code file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// concat: vertical copies.
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    /// concat: horizontal copies.
    #[arg(long, default_value_t = 1)]
    pub b: usize,
    #[arg(long)]
    pub designs_dir: Option<PathBuf>,
    /// Output file; the certificate goes next to it with a `.cert` suffix.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Also check column weights.
    #[arg(long = "2d", requires = "l")]
    pub two_d: bool,
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of candidate words to enumerate.
    #[arg(long)]
    pub candidate_cap: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long = "n", value_delimiter = ',')]
    pub lengths: Vec<usize>,
    #[arg(long = "w", value_delimiter = ',')]
    pub weights: Vec<usize>,
    #[arg(long = "d")]
    pub distance: Option<usize>,
    /// Rewrite the ledger keeping one record per shape.
    #[arg(long)]
    pub compact: bool,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub file: PathBuf,
    /// Certificate to embed; defaults to `<file>.cert` when present.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cert_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".cert");
    PathBuf::from(s)
}

fn store(dir: &Option<PathBuf>) -> DesignStore {
    match dir {
        Some(d) => DesignStore::with_dir(d),
        None => DesignStore::from_env(),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: Family) -> Result<T> {
    v.ok_or_else(|| anyhow!("--family {family:?} needs --{flag}"))
}

fn single_n(args: &ConstructArgs) -> Result<usize> {
    match args.n.as_slice() {
        [n] => Ok(*n),
        _ => bail!("--family {:?} takes a single --n", args.family),
    }
}

enum Built {
    Code(Code),
    Packing(PackingInstance),
}

fn build(args: &ConstructArgs) -> Result<(Built, ConstructionCertificate)> {
    let f = args.family;
    let (built, cert) = match f {
        Family::W1d4 => {
            let (c, cert) = mcwc_w1_d4(need(args.m, "m", f)?, single_n(args)?)?;
            (Built::Code(c), cert)
        }
        Family::W2d4 => {
            let (c, cert) = mcwc_w2_d4(need(args.m, "m", f)?, single_n(args)?)?;
            (Built::Code(c), cert)
        }
        Family::W3d4 => {
            let (c, cert) = mcwc_w3_d4_with(&store(&args.designs_dir), need(args.m, "m", f)?, single_n(args)?)?;
            (Built::Code(c), cert)
        }
        Family::K4 => {
            let (p, cert) = construct_k4_packing_with(&store(&args.designs_dir), &args.n, &args.w)?;
            (Built::Packing(p), cert)
        }
        Family::Latin => {
            let (_, c, cert) = latin_drp(single_n(args)?)?;
            (Built::Code(c), cert)
        }
        Family::AlphaDrp => {
            let design = store(&args.designs_dir).alpha_resolvable_bibd(
                need(args.points, "points", f)?,
                need(args.k, "k", f)?,
                args.lambda,
                args.alpha,
            )?;
            let r = design.class_count();
            let (s, t) = match (args.s, args.t) {
                (Some(s), Some(t)) => (s, t),
                (Some(s), None) => (s, r / s.max(1)),
                (None, Some(t)) => (r / t.max(1), t),
                (None, None) => (1, r),
            };
            let (drp, cert) = drp_from_alpha_resolvable(&design, s, t)?;
            (Built::Code(code_from_drp(&drp)?), cert)
        }
        Family::Product => {
            let outer = read_code_file(args.outer.as_deref().ok_or_else(|| anyhow!("--family product needs --outer"))?)?;
            if args.inner.is_empty() {
                bail!("--family product needs --inner files");
            }
            let inner = args
                .inner
                .iter()
                .map(|p| read_code_file(p))
                .collect::<mcwc::Result<Vec<_>>>()?;
            let (c, cert) = product_construction(&inner, &outer, need(args.d1, "d1", f)?, need(args.d2, "d2", f)?)?;
            (Built::Code(c), cert)
        }
        Family::Concat => {
            let input = read_code_file(args.input.as_deref().ok_or_else(|| anyhow!("--family concat needs --input"))?)?;
            let (c, cert) = concatenate(&input, args.a, args.b)?;
            (Built::Code(c), cert)
        }
    };
    Ok((built, cert))
}

fn write_out(out: &mut dyn Write, path: Option<&Path>, text: &str, cert: Option<&ConstructionCertificate>) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            if let Some(c) = cert {
                let cp = cert_path(p);
                std::fs::write(&cp, c.to_kv()).with_context(|| format!("writing {}", cp.display()))?;
            }
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_bound(args: &BoundArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let shape = args.shape.shape()?;
    let mut lines: Vec<String> = all_bounds(&shape).iter().map(|b| b.to_string()).collect();
    if args.two_d {
        let l = args.l.expect("clap requires --l with --2d");
        lines.extend(all_bounds_2d(&shape, l)?.iter().map(|b| b.to_string()));
    }
    let mut seen = std::collections::HashSet::new();
    for line in lines.iter().filter(|l| seen.insert(l.as_str())) {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "best {}", best_bound(&shape))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let (built, cert) = build(args)?;
    let text = match &built {
        Built::Code(c) => write_code(c),
        Built::Packing(p) => write_packing(p),
    };
    write_out(out, args.out.as_deref(), &text, Some(&cert))?;
    out.write_all(cert.to_kv().as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

enum Loaded {
    Code(Code),
    Packing(PackingInstance),
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or_default();
    if first.starts_with("PACKING") {
        Ok(Loaded::Packing(read_packing(&text).with_context(|| path.display().to_string())?))
    } else {
        Ok(Loaded::Code(read_code(&text).with_context(|| path.display().to_string())?))
    }
}

fn report_words(report: &VerificationReport, words: &[String]) -> String {
    let mut msg = report.describe_failure().unwrap_or_else(|| "unknown failure".into());
    if let Some((a, b)) = report.violating_pair {
        msg.push_str(&format!("\n  {}\n  {}", words[a], words[b]));
    }
    if let Some(i) = report.weight_violation.or(report.column_violation) {
        msg.push_str(&format!("\n  {}", words[i]));
    }
    msg
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let (report, size, distance, words) = match load(&args.file)? {
        Loaded::Code(c) => {
            let report = if args.two_d {
                verify_2d(&c, args.l.expect("clap requires --l with --2d"))?
            } else {
                verify_mcwc(&c)
            };
            let words: Vec<String> = c.iter().map(|w| w.to_string()).collect();
            (report, c.len(), c.shape().distance(), words)
        }
        Loaded::Packing(p) => {
            let report = verify_generalized_packing(&p);
            let words: Vec<String> = p.blocks.iter().map(|b| b.to_string()).collect();
            let d = 2 * (p.total_weight() + 1).saturating_sub(p.strength);
            (report, p.len(), d, words)
        }
    };
    if !report.passed() {
        writeln!(out, "FAIL {}", report_words(&report, &words))?;
        return Ok(ExitCode::FAILURE);
    }
    let cp = cert_path(&args.file);
    if cp.exists() {
        let cert = ConstructionCertificate::parse_kv(&std::fs::read_to_string(&cp)?)?;
        if cert.size != size || cert.distance != distance {
            writeln!(
                out,
                "FAIL certificate {} claims size {} distance {}, file has size {size} distance {distance}",
                cp.display(),
                cert.size,
                cert.distance
            )?;
            return Ok(ExitCode::FAILURE);
        }
    }
    writeln!(out, "pass size={size} distance={distance}")?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let shape = args.shape.shape()?;
    let time = args.budget_secs.map(Duration::from_secs_f64);
    let mut budget = SearchBudget::new(args.budget_nodes, time)
        .context("give --budget-nodes or --budget-secs")?
        .with_workers(args.workers)
        .with_seed(args.seed);
    if let Some(cap) = args.candidate_cap {
        budget = budget.with_candidate_cap(cap);
    }
    let outcome = max_code_search(&shape, &budget)?;
    if let Some(p) = &args.out {
        write_out(out, Some(p), &write_code(&outcome.code), None)?;
    }
    writeln!(
        out,
        "size={} status={} nodes={} elapsed={:.3}s",
        outcome.size(),
        outcome.status,
        outcome.nodes,
        outcome.elapsed.as_secs_f64()
    )?;
    if let Some(b) = &outcome.upper_bound {
        writeln!(out, "bound {b}")?;
    }
    if outcome.proved() {
        let mut cat = Catalog::open(Catalog::resolve_path(args.catalog.as_deref()))?;
        let entry = CatalogEntry::new(
            &ShapeKey::of(&shape),
            outcome.size() as u64,
            true,
            format!("search nodes={}", outcome.nodes),
        );
        if cat.record(entry)? {
            writeln!(out, "recorded in {}", cat.path().display())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(args: &CatalogArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let mut cat = Catalog::open(Catalog::resolve_path(args.catalog.as_deref()))?;
    if args.compact {
        let kept = cat.compact()?;
        writeln!(out, "compacted {} to {kept} records", cat.path().display())?;
        return Ok(ExitCode::SUCCESS);
    }
    match (args.lengths.is_empty(), args.distance) {
        (true, None) => {
            for e in cat.entries() {
                writeln!(out, "{}\t{}", e.key, e.summary())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        (false, Some(d)) => {
            if args.lengths.len() != args.weights.len() {
                bail!("--n and --w must have the same number of parts");
            }
            match cat.lookup(&ShapeKey::new(&args.lengths, &args.weights, d)) {
                Some(e) => {
                    writeln!(out, "{}", e.summary())?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    writeln!(out, "unknown")?;
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        _ => bail!("give --n, --w and --d together, or none of them to list"),
    }
}

fn cmd_export(args: &ExportArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let code = match load(&args.file)? {
        Loaded::Code(c) => c,
        Loaded::Packing(p) => {
            let d = 2 * (p.total_weight() + 1).saturating_sub(p.strength);
            mcwc::code::blocks_to_code(&p, d)?
        }
    };
    let cp = args.cert.clone().unwrap_or_else(|| cert_path(&args.file));
    let cert = if cp.exists() {
        Some(ConstructionCertificate::parse_kv(&std::fs::read_to_string(&cp)?)?)
    } else if args.cert.is_some() {
        bail!("certificate {} not found", cp.display());
    } else {
        None
    };
    let json = serde_json::to_string_pretty(&export::ExportDoc::new(&code, cert.as_ref()))?;
    write_out(out, args.out.as_deref(), &format!("{json}\n"), None)?;
    Ok(ExitCode::SUCCESS)
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode> {
    match &cli.command {
        Command::Bound(a) => cmd_bound(a, out),
        Command::Construct(a) => cmd_construct(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
        Command::Export(a) => cmd_export(a, out),
    }
}
