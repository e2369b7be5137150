//! `mvpoly`: enumerate, count, decompose, collapse, draw and validate MV
//! polytopes from the command line.
//!
//! Exit codes: 0 on success, 1 when a requested check fails, 2 on bad input.

mod doc;
mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mv_core::bz::{self, BzDatum};
use mv_core::rep::{self, Counter, EnumerateOptions};
use mv_core::system::DEFAULT_RANK_CAP;
use mv_core::{primes, sln, CartanDatum, Coweight, Family, RootSystem};
use serde::Serialize;

use doc::{Group, KeyFormat, PolytopeDocument};

#[derive(Parser)]
#[command(name = "mvpoly", version, about = "Exact combinatorics of MV polytopes")]
struct Cli {
    /// Run enumerations on this many worker threads.
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
    /// Largest rank accepted.
    #[arg(long, global = true, env = "MVPOLY_RANK_CAP", default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every MV polytope with lowest vertex 0 and highest vertex COWEIGHT, one JSON document per line.
    Enumerate {
        family: Family,
        rank: usize,
        /// Simple-coroot coordinates, e.g. 1,1.
        #[arg(long, allow_hyphen_values = true)]
        coweight: String,
        /// Key type A chamber weights by subsets such as "13".
        #[arg(long)]
        subset_keys: bool,
        /// Include Lusztig data along every reduced word.
        #[arg(long)]
        lusztig: bool,
    },
    /// Weight or tensor product multiplicities.
    Mult {
        #[command(subcommand)]
        kind: MultKind,
    },
    /// Prime MV polytopes and their clusters.
    Primes {
        family: Family,
        rank: usize,
        #[arg(long)]
        subset_keys: bool,
        /// Refuse to run when there are more BZ choices than this.
        #[arg(long, default_value_t = primes::DEFAULT_CHOICE_CAP)]
        choice_cap: u128,
    },
    /// Collapse a Kostant picture of SL_n and compare with the facet of its MV polytope.
    Collapse {
        #[arg(long)]
        n: usize,
        /// Label to remove; every label when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// JSON array of [a, b, p] triples.
        #[arg(long, conflicts_with = "entries")]
        picture: Option<String>,
        /// Entries in lexicographic root order, e.g. 2,1,1.
        #[arg(long)]
        entries: Option<String>,
    },
    /// Draw the polytopes of a document file as SVG.
    Draw {
        /// Input file, or - for standard input.
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Pixels per unit coroot length.
        #[arg(long, default_value_t = 40.0)]
        unit: f64,
        /// The two directions of the face, 1-based.
        #[arg(long, default_value = "1,2")]
        face: String,
        /// Vertex of the face as a 1-based reduced word; the lowest vertex by default.
        #[arg(long, default_value = "")]
        at: String,
    },
    /// Check the tropical Pluecker relations and edge inequalities.
    Validate {
        /// Input file, or - for standard input.
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum MultKind {
    /// Dimension of the MU weight space of V(LAMBDA).
    Weight {
        family: Family,
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, value_enum, default_value_t = Method::Mv)]
        method: Method,
        /// Also evaluate Kostant's formula and fail on disagreement.
        #[arg(long)]
        check_oracle: bool,
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },
    /// Multiplicity of V(NU) in V(LAMBDA) tensor V(MU).
    Tensor {
        family: Family,
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Also evaluate Steinberg's formula and fail on disagreement.
        #[arg(long)]
        check_oracle: bool,
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Count MV polytopes fitting in the Weyl polytope.
    Mv,
    /// Count with only the canonical-basis condition.
    Canonical,
}

struct Ctx {
    rank_cap: usize,
    parallel: bool,
}

impl Ctx {
    fn system(&self, family: Family, rank: usize) -> Result<RootSystem> {
        Ok(RootSystem::with_rank_cap(CartanDatum::new(family, rank)?, self.rank_cap)?)
    }

    fn options(&self) -> EnumerateOptions {
        EnumerateOptions {
            parallel: self.parallel,
            ..EnumerateOptions::default()
        }
    }
}

fn coweight(sys: &RootSystem, s: &str) -> Result<Coweight> {
    let v = doc::parse_coords(s)?;
    if v.len() != sys.rank() {
        bail!("expected {} coordinates, got {s:?}", sys.rank());
    }
    Ok(Coweight(v))
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn key_format(subset: bool) -> KeyFormat {
    if subset {
        KeyFormat::Subset
    } else {
        KeyFormat::Weight
    }
}

fn enumerate(ctx: &Ctx, family: Family, rank: usize, mu: &str, subset: bool, lusztig: bool) -> Result<ExitCode> {
    let sys = ctx.system(family, rank)?;
    let mu = coweight(&sys, mu)?;
    let keys = key_format(subset);
    doc::check_keys(&sys, keys)?;
    let words: Vec<Vec<usize>> = if lusztig { sys.longest_words().to_vec() } else { Vec::new() };
    let polys = rep::enumerate_mv_with(&sys, &mu, &ctx.options())?;
    let group = Group { family, rank };
    let mut out = io::stdout().lock();
    for p in &polys {
        let d = PolytopeDocument::new(&sys, group, p.datum(), keys).annotate(&sys, p.datum(), &words);
        serde_json::to_writer(&mut out, &d)?;
        writeln!(out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn report_mult(value: u64, oracle: Option<i64>) -> ExitCode {
    println!("{value}");
    match oracle {
        Some(o) if o != value as i64 => {
            eprintln!("oracle mismatch: counted {value}, oracle gives {o}");
            ExitCode::from(1)
        }
        _ => ExitCode::SUCCESS,
    }
}

fn mult(ctx: &Ctx, kind: MultKind) -> Result<ExitCode> {
    match kind {
        MultKind::Weight {
            family,
            rank,
            lambda,
            mu,
            method,
            check_oracle,
            inject_mismatch,
        } => {
            let sys = ctx.system(family, rank)?;
            let (lambda, mu) = (coweight(&sys, &lambda)?, coweight(&sys, &mu)?);
            let counter = Counter::with_options(&sys, ctx.options());
            let mut value = match method {
                Method::Mv => counter.weight_mult_mv(&lambda, &mu)?,
                Method::Canonical => counter.weight_mult_canonical(&lambda, &mu)?,
            };
            value += u64::from(inject_mismatch);
            let oracle = check_oracle.then(|| rep::kostant_mult_oracle(&sys, &lambda, &mu));
            Ok(report_mult(value, oracle))
        }
        MultKind::Tensor {
            family,
            rank,
            lambda,
            mu,
            nu,
            check_oracle,
            inject_mismatch,
        } => {
            let sys = ctx.system(family, rank)?;
            let (lambda, mu, nu) = (coweight(&sys, &lambda)?, coweight(&sys, &mu)?, coweight(&sys, &nu)?);
            let counter = Counter::with_options(&sys, ctx.options());
            let value = counter.tensor_mult(&lambda, &mu, &nu)? + u64::from(inject_mismatch);
            let oracle = check_oracle.then(|| rep::steinberg_oracle(&sys, &lambda, &mu, &nu));
            Ok(report_mult(value, oracle))
        }
    }
}

#[derive(Serialize)]
struct ClusterDoc {
    /// Picked term per canonical relation.
    choice: Vec<usize>,
    generators: Vec<usize>,
    rays: usize,
}

#[derive(Serialize)]
struct CatalogDoc {
    group: Group,
    choices: usize,
    /// Number of choice cones of each dimension.
    cone_dimensions: BTreeMap<usize, usize>,
    primes: Vec<PolytopeDocument>,
    clusters: Vec<ClusterDoc>,
}

fn primes_cmd(ctx: &Ctx, family: Family, rank: usize, subset: bool, cap: u128) -> Result<ExitCode> {
    let sys = ctx.system(family, rank)?;
    let keys = key_format(subset);
    doc::check_keys(&sys, keys)?;
    let cat = primes::prime_catalog_with_cap(&sys, cap)?;
    let group = Group { family, rank };
    let word = vec![sys.longest_words()[0].clone()];
    let mut cone_dimensions = BTreeMap::new();
    for &d in &cat.dims {
        *cone_dimensions.entry(d).or_insert(0) += 1;
    }
    let out = CatalogDoc {
        group,
        choices: cat.choice_count,
        cone_dimensions,
        primes: cat
            .primes
            .iter()
            .map(|p| PolytopeDocument::new(&sys, group, p, keys).annotate(&sys, p, &word))
            .collect(),
        clusters: cat
            .clusters
            .iter()
            .map(|c| ClusterDoc {
                choice: c.choice.picks.clone(),
                generators: c.generators.clone(),
                rays: c.rays,
            })
            .collect(),
    };
    print_json(&out)?;
    if !cat.orphans.is_empty() {
        eprintln!("{} choice cones lie in no maximal cone", cat.orphans.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CollapseDoc {
    n: usize,
    k: usize,
    picture: Vec<[i64; 3]>,
    collapsed: Vec<[i64; 3]>,
    facet: Vec<[i64; 3]>,
    /// `mu_{u w_0'} - mu_u` in length-n coordinates.
    displacement: Vec<i64>,
    verified: bool,
}

fn collapse(n: usize, k: Option<usize>, picture: Option<String>, entries: Option<String>) -> Result<ExitCode> {
    let sys = sln::system(n)?;
    let pic = match (picture, entries) {
        (Some(json), _) => {
            let triples: Vec<[i64; 3]> = serde_json::from_str(&json).context("malformed picture JSON")?;
            sln::KostantPicture::from_triples(n, &triples)?
        }
        (None, Some(e)) => sln::KostantPicture::from_entries(n, &doc::parse_coords(&e)?)?,
        (None, None) => sln::KostantPicture::zero(n),
    };
    let ks: Vec<usize> = match k {
        Some(k) if k == 0 || k > n => bail!("k must lie in 1..={n}"),
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    let m = bz::from_lusztig(&sys, &sln::picture_to_lusztig(&sys, &pic)?)?;
    let mut ok = true;
    let mut out = io::stdout().lock();
    for k in ks {
        let collapsed = sln::collapse(&pic, k)?;
        let facet = sln::facet_lusztig(&sys, &m, k)?;
        let verified = sln::verify_collapse(&sys, &m, &pic, k);
        ok &= verified;
        let d = CollapseDoc {
            n,
            k,
            picture: pic.to_triples(),
            collapsed: collapsed.to_triples(),
            facet: facet.to_triples(),
            displacement: sln::coweight_to_gl(&sln::facet_displacement(&sys, &m, k)?),
            verified,
        };
        serde_json::to_writer(&mut out, &d)?;
        writeln!(out)?;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn load(ctx: &Ctx, input: &Path) -> Result<(RootSystem, Vec<PolytopeDocument>, Vec<BzDatum>)> {
    let docs = doc::read_documents(&read_input(input)?)?;
    let group = docs[0].group;
    if docs.iter().any(|d| d.group != group) {
        bail!("documents describe different groups");
    }
    let sys = ctx.system(group.family, group.rank)?;
    let data = docs.iter().map(|d| d.datum(&sys)).collect::<Result<_>>()?;
    Ok((sys, docs, data))
}

fn draw(ctx: &Ctx, input: &Path, out: &Path, unit: f64, face: &str, at: &str) -> Result<ExitCode> {
    let (sys, _, data) = load(ctx, input)?;
    if sys.rank() < 2 {
        bail!("drawing needs rank at least 2");
    }
    let dirs = doc::parse_coords(face)?;
    let [i, j] = dirs[..] else {
        bail!("--face takes two directions");
    };
    if i < 1 || j < 1 {
        bail!("--face directions are 1-based");
    }
    let word: Vec<usize> = if at.trim().is_empty() {
        Vec::new()
    } else {
        doc::parse_coords(at)?
            .into_iter()
            .map(|x| usize::try_from(x - 1).map_err(|_| anyhow!("--at letters are 1-based")))
            .collect::<Result<_>>()?
    };
    if word.iter().any(|&x| x >= sys.rank()) {
        bail!("--at letter out of range");
    }
    let w = sys.weyl().from_word(&word)?;
    let face = svg::Face {
        w,
        i: i as usize - 1,
        j: j as usize - 1,
    };
    let picture = svg::draw(&sys, &data, face, unit)?;
    fs::write(out, picture).with_context(|| format!("cannot write {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ValidationDoc {
    valid: bool,
    pluecker: Vec<String>,
    edges: Vec<String>,
}

fn validate(ctx: &Ctx, input: &Path) -> Result<ExitCode> {
    let (sys, _, data) = load(ctx, input)?;
    let mut all = true;
    let mut out = io::stdout().lock();
    for m in &data {
        let report = bz::check(&sys, m);
        all &= report.is_valid();
        let d = ValidationDoc {
            valid: report.is_valid(),
            pluecker: report.pluecker.iter().map(ToString::to_string).collect(),
            edges: report.edges.iter().map(ToString::to_string).collect(),
        };
        serde_json::to_writer(&mut out, &d)?;
        writeln!(out)?;
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ctx = Ctx {
        rank_cap: cli.rank_cap,
        parallel: cli.parallel.is_some(),
    };
    let body = || match cli.command {
        Command::Enumerate {
            family,
            rank,
            coweight,
            subset_keys,
            lusztig,
        } => enumerate(&ctx, family, rank, &coweight, subset_keys, lusztig),
        Command::Mult { kind } => mult(&ctx, kind),
        Command::Primes {
            family,
            rank,
            subset_keys,
            choice_cap,
        } => primes_cmd(&ctx, family, rank, subset_keys, choice_cap),
        Command::Collapse { n, k, picture, entries } => collapse(n, k, picture, entries),
        Command::Draw {
            input,
            out,
            unit,
            face,
            at,
        } => draw(&ctx, &input, &out, unit, &face, &at),
        Command::Validate { input } => validate(&ctx, &input),
    };
    match cli.parallel {
        Some(0) => bail!("--parallel needs at least one thread"),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(body),
        None => body(),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
