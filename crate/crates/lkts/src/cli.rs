//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lkts_core::verify::{cross_check_locate, TripleRank};
use lkts_core::{builtin_denniston15, BaseLargeSet, Construction, Field, Geometry, Point, PointVector, Triple};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::base_file::read_base;
use crate::certify::{certify_paths, report_labels, Level};
use crate::design_file::DesignFile;
use crate::labels::{parse_coords, Encoding, PointLabels};

pub const BUILTIN_DENNISTON15: &str = "builtin:denniston15";

#[derive(Debug, Parser)]
#[command(name = "lkts", version, about = "Large sets of Kirkman triple systems of order q^n + 2")]
pub struct Cli {
    /// Seed for any random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the field parameters used for GF(q).
    Info {
        /// Field order.
        #[arg(long)]
        q: u32,
        /// Expected extension degree; checked against q.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Build designs of the large set and write one file per design.
    Construct(ConstructArgs),
    /// Certify design files.
    Verify {
        /// Glob pattern (quote it) or a directory.
        #[arg(long)]
        files: String,
        #[arg(long, value_enum, default_value_t = Level::Lkts)]
        level: Level,
        /// Print every file's certificate, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Certify a base large set of KTS(q+2).
    VerifyBase {
        /// A base file or `builtin:denniston15`.
        #[arg(value_name = "BASE")]
        base: String,
    },
    /// Find the design and class containing a triple.
    Locate {
        #[command(flatten)]
        setup: Setup,
        /// Three points, e.g. "1:1 3:9 9:3" or "inf1 inf2 5:7".
        #[arg(long, conflicts_with = "samples")]
        triple: Option<String>,
        /// Instead of one triple, cross-check this many random triples.
        #[arg(long)]
        samples: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct Setup {
    /// Field order, a prime power congruent to 1 mod 6.
    #[arg(long)]
    pub q: u32,
    /// Dimension of the vector space over GF(q).
    #[arg(long)]
    pub n: usize,
    /// A base file or `builtin:denniston15`.
    #[arg(long)]
    pub base: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Canonical,
    Appendix,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub setup: Setup,
    /// Design label, coordinates joined by `:` (e.g. 0:0).
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub w: Option<String>,
    /// Every design of the large set.
    #[arg(long)]
    pub all: bool,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Canonical)]
    pub format: Format,
}

/// Reads a base file, or the built-in LKTS(15).
pub fn resolve_base(source: &str) -> Result<BaseLargeSet> {
    if source == BUILTIN_DENNISTON15 {
        return Ok(builtin_denniston15());
    }
    if let Some(name) = source.strip_prefix("builtin:") {
        bail!("unknown built-in base `{name}`; available: denniston15");
    }
    read_base(Path::new(source)).with_context(|| format!("loading base {source}"))
}

fn context(setup: &Setup) -> Result<Construction> {
    let field = Field::for_order(setup.q).map_err(|e| anyhow!("q = {}: {e}", setup.q))?;
    let geom = Geometry::new(field, setup.n).map_err(|e| anyhow!("n = {}: {e}", setup.n))?;
    ensure!(geom.size().checked_add(2).is_some(), "q^n + 2 does not fit in 32 bits");
    let base = resolve_base(&setup.base)?;
    let cert = base.validate();
    ensure!(cert.passed(), "base {} is not a large set:\n{cert}", setup.base);
    Construction::new(geom, base).map_err(|e| anyhow!("{e}"))
}

fn parse_w(ctx: &Construction, label: &str) -> Result<PointVector> {
    let coords = parse_coords(label).ok_or_else(|| anyhow!("bad design label `{label}`"))?;
    ctx.geometry().vector(&coords).map_err(|e| anyhow!("design label `{label}`: {e}"))
}

/// Runs a command, writing reports to `out`. Returns the exit code for a
/// completed run; errors are for bad input.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode> {
    match cli.command {
        Command::Info { q, k } => info(q, k, out),
        Command::Construct(args) => construct(&args, out),
        Command::Verify { files, level, verbose } => verify(&files, level, verbose, out),
        Command::VerifyBase { base } => {
            let base = resolve_base(&base)?;
            let cert = base.validate();
            write!(out, "{cert}")?;
            Ok(exit(cert.passed()))
        }
        Command::Locate { setup, triple, samples } => locate(&setup, triple.as_deref(), samples, cli.seed, out),
    }
}

fn exit(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn info(q: u32, k: Option<u32>, out: &mut dyn Write) -> Result<ExitCode> {
    let field = Field::for_order(q).map_err(|e| anyhow!("q = {q}: {e}"))?;
    let spec = field.spec();
    if let Some(k) = k {
        ensure!(k == spec.k, "q = {q} = {}^{}, not a degree-{k} extension", spec.p, spec.k);
    }
    let modulus: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
    writeln!(out, "field: GF({q})")?;
    writeln!(out, "p: {}", spec.p)?;
    writeln!(out, "k: {}", spec.k)?;
    writeln!(out, "modulus: [{}]", modulus.join(", "))?;
    writeln!(out, "g: {}", field.generator())?;
    writeln!(out, "omega: {}", field.omega())?;
    writeln!(out, "t: {}", spec.t)?;
    Ok(ExitCode::SUCCESS)
}

fn construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let ctx = context(&args.setup)?;
    let encoding = match args.format {
        Format::Canonical => Encoding::Canonical,
        Format::Appendix => Encoding::Appendix,
    };
    let labels = PointLabels::new(args.setup.q, args.setup.n as u32).expect("checked in context");
    ensure!(labels.supports(encoding), "appendix format is only defined for q = 13, n = 2");
    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let g = ctx.geometry();
    let targets: Vec<PointVector> = match &args.w {
        Some(label) => vec![parse_w(&ctx, label)?],
        None => (0..g.size()).map(|id| g.decode(Point(id)).expect("in range")).collect(),
    };
    let origin = (targets.len() > 1 && ctx.base().is_translation_invariant()).then(|| ctx.build_design(&g.zero()));
    let written: Vec<PathBuf> = targets
        .par_iter()
        .map(|w| -> Result<PathBuf> {
            let design = match &origin {
                Some(o) => ctx.translate_design(o, w),
                None => ctx.build_design(w),
            };
            let file = DesignFile::from_design(&ctx, &design).with_encoding(encoding)?;
            let path = args.out.join(file.file_name());
            std::fs::write(&path, file.render()).with_context(|| format!("writing {}", path.display()))?;
            Ok(path)
        })
        .collect::<Result<_>>()?;
    writeln!(out, "wrote {} design file(s) of order {} to {}", written.len(), ctx.order(), args.out.display())?;
    Ok(ExitCode::SUCCESS)
}

fn expand_files(pattern: &str) -> Result<Vec<PathBuf>> {
    let path = Path::new(pattern);
    let pattern = if path.is_dir() { format!("{}/*.txt", pattern.trim_end_matches('/')) } else { pattern.to_string() };
    let mut paths =
        glob::glob(&pattern).with_context(|| format!("bad glob `{pattern}`"))?.collect::<Result<Vec<_>, _>>()?;
    paths.sort();
    Ok(paths)
}

fn verify(pattern: &str, level: Level, verbose: bool, out: &mut dyn Write) -> Result<ExitCode> {
    let paths = expand_files(pattern)?;
    let report = certify_paths(&paths, level);
    for f in &report.files {
        let status = if f.cert.passed() { "pass" } else { "fail" };
        writeln!(out, "{}: {status}", f.path.display())?;
        if verbose || !f.cert.passed() {
            for line in f.render().lines() {
                writeln!(out, "  {line}")?;
            }
        }
    }
    match report_labels(&report) {
        Some((labels, enc)) => write!(out, "{}", report.overall.render(&|p| labels.label(p, enc)))?,
        None => write!(out, "{}", report.overall)?,
    }
    Ok(exit(report.passed()))
}

fn parse_triple(labels: &PointLabels, text: &str) -> Result<Triple> {
    let pts = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|tok| labels.parse_canonical(tok).ok_or_else(|| anyhow!("bad point `{tok}`")))
        .collect::<Result<Vec<_>>>()?;
    let &[a, b, c] = pts.as_slice() else {
        bail!("a triple needs exactly 3 points, got {}", pts.len());
    };
    Triple::new(a, b, c).ok_or_else(|| anyhow!("triple `{text}` repeats a point"))
}

fn locate(
    setup: &Setup,
    triple: Option<&str>,
    samples: Option<u64>,
    seed: u64,
    out: &mut dyn Write,
) -> Result<ExitCode> {
    let ctx = context(setup)?;
    let labels = PointLabels::new(setup.q, setup.n as u32).expect("checked in context");
    match (triple, samples) {
        (Some(text), _) => {
            let t = parse_triple(&labels, text)?;
            let (w, id) = ctx.locate_triple(&t).map_err(|e| anyhow!("{e}"))?;
            let w: Vec<u32> = w.coords().iter().map(|c| c.index()).collect();
            writeln!(out, "w={} class={id}", crate::labels::join_coords(&w))?;
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(n)) => {
            let rank = TripleRank::new(ctx.order());
            let mut rng = StdRng::seed_from_u64(seed);
            let picks: Vec<Triple> =
                (0..n).map(|_| rank.unrank(rng.gen_range(0..rank.total())).expect("rank in range")).collect();
            let cert = cross_check_locate(&ctx, picks);
            write!(out, "{}", cert.render(&|p| labels.canonical(p)))?;
            Ok(exit(cert.passed()))
        }
        (None, None) => bail!("give --triple or --samples"),
    }
}
