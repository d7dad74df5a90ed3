use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use relage::ideals::{
    is_initial_segment, is_up_directed, minimal_amalgams_with_representatives, oracle_from_token, IdealOracle,
    RegistryOptions,
};
use relage::structures::{age, find_embedding, parse_structure, write_structure, Signature, Structure};
use relage::Error;

mod ash_cmd;
mod metric_cmd;

#[derive(Parser)]
#[command(name = "relage", version, about = "Finite relational structures, ages and ideals")]
struct Cli {
    /// Worker threads for the parallel searches; 0 lets the runtime pick.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an embedding of A into B.
    Embed { a: PathBuf, b: PathBuf },
    /// List the isomorphism types of substructures up to a size.
    Age {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Minimal amalgams of A and B inside an ideal.
    Amalgams {
        a: PathBuf,
        b: PathBuf,
        /// Defaults to every structure over the signature of A.
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        registry: RegistryArgs,
    },
    /// Check that an oracle is hereditary and up-directed on small members.
    CheckIdeal {
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Largest common extension searched; defaults to twice the size.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        registry: RegistryArgs,
    },
    /// Grow a structure whose small substructures are the members.
    Grow {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        check: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        registry: RegistryArgs,
    },
    /// Metric spaces and their threshold encodings.
    #[command(subcommand)]
    Metric(metric_cmd::MetricCommand),
    /// Ashes and their coloured graphs.
    #[command(subcommand)]
    Ash(ash_cmd::AshCommand),
    /// Encode a binary structure as one ternary relation, or decode.
    Encode3 {
        /// Binary structure to encode, or ternary structure with --decode.
        file: PathBuf,
        /// Spine size.
        #[arg(long, default_value_t = 5)]
        nat: usize,
        #[arg(long)]
        decode: bool,
        /// Binary relations of the decoded structure; defaults to the
        /// fewest that cover every used index.
        #[arg(long)]
        relations: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RegistryArgs {
    /// Binary relations of the `all` ideal.
    #[arg(long, default_value_t = 1)]
    relations: usize,
    /// Threshold levels of the metric ideals.
    #[arg(long, default_value_t = relage::metric::DEFAULT_LEVELS)]
    levels: usize,
}

impl RegistryArgs {
    fn oracle(&self, token: &str) -> anyhow::Result<Box<dyn IdealOracle>> {
        let opts = RegistryOptions {
            signature: Signature::binary(self.relations),
            levels: self.levels,
        };
        Ok(oracle_from_token(token, &opts)?)
    }
}

/// Whether the command found what it was asked for.
pub(crate) enum Status {
    Found,
    NotFound,
}

impl Status {
    pub(crate) fn from_bool(b: bool) -> Self {
        if b {
            Status::Found
        } else {
            Status::NotFound
        }
    }
}

pub(crate) fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn read_structure(path: &Path) -> anyhow::Result<Structure> {
    parse_structure(&read(path)?).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

/// Writes to `out`, or to standard output.
pub(crate) fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global()?;
    }
    match cli.command {
        Command::Embed { a, b } => {
            let (a, b) = (read_structure(&a)?, read_structure(&b)?);
            match find_embedding(&a, &b)? {
                Some(f) => {
                    println!("embedding {}", join(f.images()));
                    Ok(Status::Found)
                }
                None => {
                    println!("no embedding");
                    Ok(Status::NotFound)
                }
            }
        }
        Command::Age { file, max_size } => {
            let s = read_structure(&file)?;
            let types = age(&s, max_size);
            for t in &types {
                println!("type {} {}", t.size(), t.to_hex());
            }
            println!("count {}", types.len());
            Ok(Status::Found)
        }
        Command::Amalgams { a, b, ideal, registry } => {
            let (a, b) = (read_structure(&a)?, read_structure(&b)?);
            let o: Box<dyn IdealOracle> = match ideal {
                Some(t) => registry.oracle(&t)?,
                None => Box::new(relage::ideals::full_oracle(a.signature().clone())),
            };
            let found = minimal_amalgams_with_representatives(&a, &b, o.as_ref())?;
            for (code, rep) in &found {
                println!("amalgam {} {}", code.size(), code.to_hex());
                for line in write_structure(rep).lines() {
                    println!("  {line}");
                }
            }
            println!("count {}", found.len());
            Ok(Status::from_bool(!found.is_empty()))
        }
        Command::CheckIdeal {
            ideal,
            max_size,
            bound,
            registry,
        } => {
            let o = registry.oracle(&ideal)?;
            let seg = is_initial_segment(o.as_ref(), max_size)?;
            match &seg {
                Ok(()) => println!("initial-segment ok"),
                Err(v) => println!("initial-segment violation subset {}", join(&v.subset)),
            }
            let dir = is_up_directed(o.as_ref(), max_size, bound.unwrap_or(2 * max_size))?;
            match dir.failure {
                None => println!("up-directed ok pairs {}", dir.witnesses.len()),
                Some((i, j)) => println!(
                    "up-directed failure members {} {} sizes {} {}",
                    i,
                    j,
                    dir.members[i].size(),
                    dir.members[j].size()
                ),
            }
            Ok(Status::from_bool(seg.is_ok() && dir.holds()))
        }
        Command::Grow {
            ideal,
            size,
            check,
            seed,
            out,
            log,
            registry,
        } => {
            let o = registry.oracle(&ideal)?;
            let (g, glog) = relage::fraisse::grow(o.as_ref(), size, check, seed)?;
            let report = relage::fraisse::verify_realization(&g, o.as_ref(), check)?;
            match &out {
                Some(p) => emit(Some(p), &write_structure(&g))?,
                None => print!("{}", write_structure(&g)),
            }
            if let Some(p) = &log {
                emit(Some(p), &glog.to_text())?;
            }
            println!("size {}", g.size());
            println!("stages {} injected {}", glog.stages.len(), glog.injections().count());
            println!("{}", if glog.incomplete { "incomplete" } else { "complete" });
            println!("missing {} extra {}", report.missing.len(), report.extra.len());
            for m in &report.missing {
                println!("missing-type {} {}", m.size(), m.to_hex());
            }
            Ok(Status::from_bool(!glog.incomplete && report.holds()))
        }
        Command::Metric(m) => metric_cmd::run(m),
        Command::Ash(a) => ash_cmd::run(a),
        Command::Encode3 {
            file,
            nat,
            decode,
            relations,
            out,
        } => {
            let s = read_structure(&file)?;
            if decode {
                let spine = relage::encode3::recover_spine(&s)?;
                let wide = relage::encode3::decode(&s, &Signature::binary(spine.len()))?;
                let used = (0..spine.len()).rev().find(|&z| !wide.table(z).is_empty()).map_or(0, |z| z + 1);
                let r = relations.unwrap_or(used);
                if r < used {
                    bail!(Error::Decode(format!("relation {} is used but only {r} were asked for", used - 1)));
                }
                let core = relage::encode3::decode(&s, &Signature::binary(r))?;
                println!("# spine {}", spine.len());
                emit(out.as_deref(), &write_structure(&core))?;
            } else {
                let t = relage::encode3::encode(&s, nat)?;
                emit(out.as_deref(), &write_structure(&t.to_structure()))?;
                println!("# spine {} core {} triples {}", t.spine_size(), t.core_size(), t.triples().len());
            }
            Ok(Status::Found)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Found) => ExitCode::from(0),
        Ok(Status::NotFound) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Resource(_))));
            ExitCode::from(if resource { 3 } else { 2 })
        }
    }
}
