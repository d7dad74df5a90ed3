use std::path::{Path, PathBuf};

use anyhow::bail;
use clap::{Args, Subcommand};
use relage::metric::{
    decode_rel, embed_euclid, embed_line, encode_auto, encode_rel, omega_t, omit_distance_grow, parse_metric,
    write_metric, MetricSpace, Rational, Scalar, ThresholdEncoding,
};
use relage::structures::write_structure;

use crate::{emit, read, read_structure, Status};

#[derive(Args, Clone)]
pub struct Numeric {
    /// Compute in floating point with this relative tolerance instead of
    /// exact rationals.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
pub enum MetricCommand {
    /// Coordinates on the line, if the space embeds.
    EmbedLine {
        file: PathBuf,
        #[command(flatten)]
        num: Numeric,
    },
    /// Coordinates in ℝ^dim, if the space embeds.
    EmbedEuclid {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        num: Numeric,
    },
    /// Distances realized, optionally only those from one point.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        base: Option<usize>,
        #[command(flatten)]
        num: Numeric,
    },
    /// A largest subset with all distances at least t.
    Omega {
        file: PathBuf,
        #[arg(long)]
        t: String,
        #[command(flatten)]
        num: Numeric,
    },
    /// Threshold encoding as a structure.
    Encode {
        file: PathBuf,
        /// Use the realized distances as thresholds.
        #[arg(long, conflicts_with = "thresholds")]
        auto: bool,
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        num: Numeric,
    },
    /// Distance matrix of a threshold encoding.
    Decode {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        num: Numeric,
    },
    /// Place translated copies of line spaces avoiding forbidden distances.
    OmitGrow {
        /// Distance files of the targets.
        targets: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        forbid: Vec<String>,
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        num: Numeric,
    },
}

fn scalar<S: Scalar>(s: &str) -> anyhow::Result<S> {
    match S::parse_scalar(s) {
        Some(v) => Ok(v),
        None => bail!(relage::Error::Input(format!("invalid number `{s}`"))),
    }
}

fn space<S: Scalar>(path: &Path, tol: Option<f64>) -> anyhow::Result<MetricSpace<S>> {
    let m: MetricSpace<S> = parse_metric(&read(path)?).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))?;
    Ok(match tol {
        Some(t) => {
            let matrix = (0..m.size()).map(|i| (0..m.size()).map(|j| m.dist(i, j)).collect()).collect();
            MetricSpace::with_tolerance(matrix, t)?
        }
        None => m,
    })
}

pub fn run(cmd: MetricCommand) -> anyhow::Result<Status> {
    let tol = match &cmd {
        MetricCommand::EmbedLine { num, .. }
        | MetricCommand::EmbedEuclid { num, .. }
        | MetricCommand::Spectrum { num, .. }
        | MetricCommand::Omega { num, .. }
        | MetricCommand::Encode { num, .. }
        | MetricCommand::Decode { num, .. }
        | MetricCommand::OmitGrow { num, .. } => num.tolerance,
    };
    match tol {
        Some(_) => run_with::<f64>(cmd, tol),
        None => run_with::<Rational>(cmd, None),
    }
}

fn run_with<S: Scalar>(cmd: MetricCommand, tol: Option<f64>) -> anyhow::Result<Status> {
    match cmd {
        MetricCommand::EmbedLine { file, .. } => {
            let m: MetricSpace<S> = space(&file, tol)?;
            match embed_line(&m) {
                Some(x) => {
                    for (i, v) in x.iter().enumerate() {
                        println!("point {i} {v}");
                    }
                    Ok(Status::Found)
                }
                None => {
                    println!("not embeddable");
                    Ok(Status::NotFound)
                }
            }
        }
        MetricCommand::EmbedEuclid { file, dim, .. } => {
            let m: MetricSpace<S> = space(&file, tol)?;
            match embed_euclid(&m, dim) {
                Some(x) => {
                    for (i, p) in x.iter().enumerate() {
                        let c: Vec<String> = p.iter().map(|v| format!("{v:.9}")).collect();
                        println!("point {i} {}", c.join(" "));
                    }
                    Ok(Status::Found)
                }
                None => {
                    println!("not embeddable");
                    Ok(Status::NotFound)
                }
            }
        }
        MetricCommand::Spectrum { file, base, .. } => {
            let m: MetricSpace<S> = space(&file, tol)?;
            for d in m.spectrum(base)? {
                println!("distance {d}");
            }
            Ok(Status::Found)
        }
        MetricCommand::Omega { file, t, .. } => {
            let m: MetricSpace<S> = space(&file, tol)?;
            let sep = omega_t(&m, &scalar::<S>(&t)?);
            let w: Vec<String> = sep.witness.iter().map(|x| x.to_string()).collect();
            println!("omega {}", sep.size);
            println!("witness {}", w.join(" "));
            if !sep.exact {
                println!("upper-bound {}", sep.upper_bound);
            }
            Ok(Status::Found)
        }
        MetricCommand::Encode {
            file,
            auto,
            thresholds,
            out,
            ..
        } => {
            let m: MetricSpace<S> = space(&file, tol)?;
            let e = if auto || thresholds.is_empty() {
                encode_auto(&m)
            } else {
                let th = thresholds.iter().map(|t| scalar::<S>(t)).collect::<anyhow::Result<Vec<_>>>()?;
                encode_rel(&m, &th)?
            };
            emit(out.as_deref(), &write_structure(e.structure()))?;
            Ok(Status::Found)
        }
        MetricCommand::Decode { file, out, .. } => {
            let e: ThresholdEncoding<S> = ThresholdEncoding::from_structure(read_structure(&file)?)?;
            emit(out.as_deref(), &write_metric(&decode_rel(&e)?))?;
            Ok(Status::Found)
        }
        MetricCommand::OmitGrow {
            targets,
            forbid,
            window,
            seed,
            ..
        } => {
            let forbidden = forbid.iter().map(|a| scalar::<S>(a)).collect::<anyhow::Result<Vec<_>>>()?;
            let ts = targets.iter().map(|p| space::<S>(p, tol)).collect::<anyhow::Result<Vec<_>>>()?;
            let g = omit_distance_grow(&forbidden, &ts, scalar::<S>(&window)?, seed)?;
            for p in &g.placements {
                println!("placed {} offset {}", p.target, p.offset);
            }
            for t in &g.unplaced {
                println!("unplaced {t}");
            }
            for (i, x) in g.points.iter().enumerate() {
                println!("point {i} {x}");
            }
            Ok(Status::from_bool(!g.incomplete()))
        }
    }
}
