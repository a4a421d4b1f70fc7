use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_seeds::charmap::{
    binary_matroid, find_integer_charmap, idcm_orbits, matroid_universe, mod2_charmaps, supports_dcm,
};
use toric_seeds::classify::{
    betti_z2, color_sequences, extend_database, fingerprint, is_pl_sphere, is_seed, is_suspension,
    pipeline_with_progress, reduce_to_seed, PipelineConfig, SeedDatabase, PICARD,
};
use toric_seeds::format::{read_complexes, read_matrix, save_complexes, Ring, TextMatrix};
use toric_seeds::rcurves::{degree_inequality, mnf_vertex_partitions, optimal_partition, weakly_optimal_partitions, Partition};
use toric_seeds::search::{ubt_property, SearchJob, DEFAULT_CAP_BITS};
use toric_seeds::{CharMatrixI64, Error, PureComplex, VertexSet};

mod verify;

#[derive(Parser)]
#[command(name = "toric-seeds", version, about = "Enumerate weak pseudo-manifolds and classify toric colorable seeds")]
struct Cli {
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, env = "TORIC_SEEDS_THREADS")]
    threads: Option<usize>,
    /// Refuse combination spaces larger than 2^BITS.
    #[arg(long, global = true, value_name = "BITS", default_value_t = DEFAULT_CAP_BITS)]
    cap: u32,
    /// Report progress on stderr.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print representatives of the injective dual characteristic matrix orbits.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = PICARD)]
        p: usize,
    },
    /// Enumerate weak pseudo-manifolds inside a facet universe.
    Enumerate(EnumerateArgs),
    /// Run the seed classification for one dimension.
    Pipeline {
        #[arg(long)]
        n: usize,
        /// Seed database directory; created or extended as needed.
        #[arg(long, value_name = "DIR")]
        seed_db: Option<PathBuf>,
        /// Write the seeds found to this .cplx file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compare the fast code paths against brute-force references.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Report invariants of every complex in a .cplx file.
    Analyze {
        file: PathBuf,
        /// A characteristic map (.mat, Z or Z2) to test partitions against.
        #[arg(long, value_name = "FILE")]
        lambda: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    /// Characteristic map (.mat) whose matroid bases form the universe.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "universe"])]
    lambda: Option<PathBuf>,
    /// Use the matroid universes of the IDCM orbits for this n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = PICARD)]
    p: usize,
    /// Restrict to one orbit (0-based); all orbits otherwise.
    #[arg(long, requires = "n")]
    orbit: Option<usize>,
    /// Facet universe given directly as a .cplx file.
    #[arg(long, value_name = "FILE", conflicts_with = "n")]
    universe: Option<PathBuf>,
    /// Affine properties to impose.
    #[arg(long, value_enum)]
    props: Vec<Prop>,
    /// Facets every output must contain (.cplx).
    #[arg(long, value_name = "FILE")]
    require: Option<PathBuf>,
    /// Facets no output may contain (.cplx).
    #[arg(long, value_name = "FILE")]
    forbid: Option<PathBuf>,
    /// Write the complexes found to this .cplx file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    /// At most as many facets as the cyclic polytope boundary.
    Ubt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Suite {
    All,
    Wpm,
    Iso,
    Cyclic,
    Homology,
}

/// Raised when the link constraints admit no solution.
#[derive(Debug, thiserror::Error)]
#[error("required and forbidden facets admit no weak pseudo-manifold")]
struct Infeasible;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Infeasible>().is_some() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => 2,
        Some(Error::MissingStratum { .. }) => 4,
        Some(Error::CapExceeded { .. }) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let ctx = Ctx { cap: cli.cap, progress: cli.progress };
    match cli.command {
        Command::Orbits { n, p } => cmd_orbits(n, p),
        Command::Enumerate(args) => cmd_enumerate(&ctx, &args),
        Command::Pipeline { n, seed_db, out } => cmd_pipeline(&ctx, n, seed_db.as_deref(), out.as_deref()),
        Command::Verify { suite } => verify::run(suite),
        Command::Analyze { file, lambda } => cmd_analyze(&file, lambda.as_deref()),
    }
}

struct Ctx {
    cap: u32,
    progress: bool,
}

fn cmd_orbits(n: usize, p: usize) -> anyhow::Result<()> {
    let orbits = idcm_orbits(n, p)?;
    println!("# n={n} p={p} orbits={}", orbits.len());
    for (i, d) in orbits.iter().enumerate() {
        let rows: Vec<String> = d.rows()[..n].iter().map(|r| format!("{r:0p$b}")).collect();
        println!("{i}: {}", rows.join(" "));
    }
    Ok(())
}

fn facets_of(path: &Path) -> anyhow::Result<Vec<VertexSet>> {
    let ks = read_complexes(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ks.iter().flat_map(|k| k.facets().iter().copied()).collect())
}

fn cmd_enumerate(ctx: &Ctx, args: &EnumerateArgs) -> anyhow::Result<()> {
    let universes: Vec<PureComplex> = if let Some(path) = &args.lambda {
        let mat = read_matrix(path).with_context(|| format!("reading {}", path.display()))?;
        vec![binary_matroid(&mat.to_char_z2())?.into_complex()]
    } else if let Some(path) = &args.universe {
        read_complexes(path).with_context(|| format!("reading {}", path.display()))?
    } else if let Some(n) = args.n {
        let orbits = idcm_orbits(n, args.p)?;
        match args.orbit {
            Some(i) if i >= orbits.len() => bail!("orbit index {i} out of range, n={n} has {} orbits", orbits.len()),
            Some(i) => vec![matroid_universe(&orbits[i])],
            None => orbits.iter().map(matroid_universe).collect(),
        }
    } else {
        bail!("one of --lambda, --universe or --n is required");
    };
    let required = args.require.as_deref().map(facets_of).transpose()?.unwrap_or_default();
    let forbidden = args.forbid.as_deref().map(facets_of).transpose()?.unwrap_or_default();

    let mut union = BTreeSet::new();
    let total = universes.len();
    for (i, u) in universes.iter().enumerate() {
        let mut job = SearchJob::new(u)?.with_cap_bits(ctx.cap);
        for prop in &args.props {
            match prop {
                Prop::Ubt => job = job.with_property(ubt_property(u.n())),
            }
        }
        if !required.is_empty() || !forbidden.is_empty() {
            match job.with_link_constraints(&required, &forbidden)? {
                Some(j) => job = j,
                None if total == 1 => return Err(Infeasible.into()),
                None => continue,
            }
        }
        let found = if ctx.progress {
            job.run_with_progress(|done, all| eprint!("\runiverse {}/{total}: {done}/{all}", i + 1))?
        } else {
            job.run()?
        };
        if ctx.progress {
            eprintln!();
        }
        if total > 1 {
            println!("universe {i}: {} facets, {} complexes", u.facet_count(), found.len());
        }
        union.extend(found);
    }
    let found: Vec<PureComplex> = union.into_iter().collect();
    println!("complexes={}", found.len());
    if let Some(out) = &args.out {
        save_complexes(out, &found, Some("weak pseudo-manifolds"))?;
    }
    Ok(())
}

fn cmd_pipeline(ctx: &Ctx, n: usize, seed_db: Option<&Path>, out: Option<&Path>) -> anyhow::Result<()> {
    let mut db = match seed_db {
        Some(dir) if dir.join("index.txt").exists() => SeedDatabase::load(dir)?,
        _ => SeedDatabase::bootstrap(),
    };
    let config = PipelineConfig { threads: 0, cap_bits: ctx.cap };
    if n > 2 {
        for r in extend_database(&mut db, n - 1, &config)? {
            println!("# filled lower stratum n={}: {} seeds", r.n, r.total());
        }
    }
    let start = Instant::now();
    let report = pipeline_with_progress(n, &db, &config, |done, all| {
        if ctx.progress {
            eprintln!("orbit {done}/{all}");
        }
    })?;
    println!("{report}");
    println!("# elapsed {:.1}s", start.elapsed().as_secs_f64());
    let seeds = report.all_seeds();
    db.insert_stratum(n, PICARD, seeds.clone());
    if let Some(dir) = seed_db {
        db.save(dir)?;
    }
    if let Some(path) = out {
        let comment = format!("seeds of dimension {} with Picard number {PICARD}", n - 1);
        save_complexes(path, &seeds, Some(&comment))?;
    }
    Ok(())
}

fn show_partition(p: &Partition) -> String {
    let parts: Vec<String> = p.iter().map(|s| format!("{{{s}}}")).collect();
    parts.join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_analyze(file: &Path, lambda: Option<&Path>) -> anyhow::Result<()> {
    let ks = read_complexes(file).with_context(|| format!("reading {}", file.display()))?;
    let lambda: Option<TextMatrix> = lambda.map(read_matrix).transpose()?;
    for (i, k) in ks.iter().enumerate() {
        if i > 0 {
            println!();
        }
        let (k, _) = k.compacted();
        let fp = fingerprint(&k);
        println!("complex {i}: m={} n={} picard={} facets={}", fp.m, fp.n, k.picard(), fp.facets);
        println!("f-vector: {:?}", fp.f_vector);
        let mnfs: Vec<String> = k.minimal_nonfaces().iter().map(|s| format!("{{{s}}}")).collect();
        println!("minimal non-faces: {}", mnfs.join(" "));
        let seqs = color_sequences(&k);
        for v in 1..=k.m() {
            println!("  color sequence {v}: {:?}", seqs[v]);
        }
        println!("weak pseudo-manifold: {}", yes(k.is_weak_pseudomanifold()));
        println!("betti (mod 2): {:?}", betti_z2(&k));
        let seed = is_seed(&k);
        println!("seed: {}", yes(seed));
        if !seed {
            let s = reduce_to_seed(&k);
            println!("reduces to a seed with m={} n={}", s.m(), s.n());
        }
        match is_suspension(&k) {
            Some(s) => println!("suspension: yes, poles {} {}", s.poles.0, s.poles.1),
            None => println!("suspension: no"),
        }
        let p = k.picard();
        if (1..=6).contains(&p) {
            println!("DCM: {}", yes(supports_dcm(&k, p, false).is_some()));
            println!("IDCM: {}", yes(supports_dcm(&k, p, true).is_some()));
        }
        let lift = find_integer_charmap::<i64>(&k);
        println!("integer lift: {}", yes(lift.is_some()));
        if let Some((_, l)) = &lift {
            for row in l.rows() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                println!("  {}", cells.join(" "));
            }
        }
        if k.n() > 0 && k.m() <= 11 {
            match is_pl_sphere(&k, &SeedDatabase::bootstrap()) {
                Ok(b) => println!("PL sphere: {}", yes(b)),
                Err(e) => println!("PL sphere: unknown ({e})"),
            }
        }
        let parts = mnf_vertex_partitions(&k);
        if parts.is_empty() {
            println!("partitions: none");
        } else {
            println!("partitions: {}", parts.len());
            for p in &parts {
                println!("  {}", show_partition(p));
            }
        }
        match &lambda {
            Some(t) if t.cols() != k.m() => println!("lambda: {} columns, complex has {} vertices", t.cols(), k.m()),
            Some(t) if t.ring == Ring::Z => {
                let l: CharMatrixI64 = t.to_char_z()?;
                println!("lambda non-singular: {}", yes(l.is_nonsingular(&k)));
                let d = degree_inequality(&k, &l);
                println!("degree inequality: {} <= {} tight={}", d.lhs, d.rhs, d.tight);
                match optimal_partition(&k, &l) {
                    Some(p) => println!("optimal partition: {}", show_partition(&p)),
                    None => println!("optimal partition: none"),
                }
            }
            Some(t) => {
                let l = t.to_char_z2();
                println!("lambda non-singular: {}", yes(l.is_nonsingular(&k)));
                let weak = weakly_optimal_partitions(&k, &l);
                println!("weakly optimal partitions: {}", weak.len());
                for p in &weak {
                    println!("  {}", show_partition(p));
                }
            }
            None => {
                let weak = mod2_charmaps(&k).iter().filter(|l| !weakly_optimal_partitions(&k, l).is_empty()).count();
                println!("mod-2 maps with a weakly optimal partition: {weak}");
            }
        }
    }
    Ok(())
}
