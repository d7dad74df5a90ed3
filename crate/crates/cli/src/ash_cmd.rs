use std::path::PathBuf;

use anyhow::bail;
use clap::{Subcommand, ValueEnum};
use relage::ash::{
    as_membership, check_ash_axioms, directed_join, graph_ash, poset_ash, representation_size_bound, standard_ash, Ash,
};
use relage::structures::write_structure;

use crate::{read_structure, Status};

#[derive(Clone, Copy, ValueEnum)]
pub enum Flavor {
    Standard,
    Graph,
    Poset,
}

#[derive(Subcommand)]
pub enum AshCommand {
    /// Build an ash and report on it.
    Demo {
        #[arg(long, value_enum, default_value = "standard")]
        flavor: Flavor,
        #[arg(long, default_value_t = 2)]
        parts: usize,
        #[arg(long, default_value_t = 2)]
        part_size: usize,
        #[arg(long, default_value_t = 1)]
        cap: usize,
        /// Graph or order structure for the graph and poset flavors.
        #[arg(long)]
        structure: Option<PathBuf>,
        /// Check the first two axioms on unions of at most this many colours.
        #[arg(long)]
        truncation: Option<usize>,
        /// Join two coloured graphs.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        join: Vec<PathBuf>,
        /// Largest graph searched for the size certificate.
        #[arg(long, default_value_t = 6)]
        bound_limit: usize,
    },
}

pub fn run(cmd: AshCommand) -> anyhow::Result<Status> {
    let AshCommand::Demo {
        flavor,
        parts,
        part_size,
        cap,
        structure,
        truncation,
        join,
        bound_limit,
    } = cmd;
    let a: Ash = match (flavor, &structure) {
        (Flavor::Standard, _) => standard_ash(parts, part_size, cap)?,
        (Flavor::Graph, Some(p)) => graph_ash(&read_structure(p)?)?,
        (Flavor::Poset, Some(p)) => poset_ash(&read_structure(p)?)?,
        _ => bail!(relage::Error::Input("this flavor needs --structure".into())),
    };
    println!("colours {}", a.ground());
    let mut ok = true;
    if let Some(t) = truncation {
        let r = check_ash_axioms(&a, t);
        match r.axiom1_failure {
            None => println!("axiom1 ok"),
            Some(c) => println!("axiom1 failure {}", a.colour_name(c)),
        }
        match &r.axiom2_failure {
            None => println!("axiom2 ok truncation {t} unions {}", r.unions_checked),
            Some((u, _)) => {
                let names: Vec<&str> = u.iter().map(|&c| a.colour_name(c)).collect();
                println!("axiom2 failure union {}", names.join(" "));
            }
        }
        if let Some(w) = &r.axiom3_witness {
            let names: Vec<&str> = w.iter().map(|&c| a.colour_name(c)).collect();
            println!("non-member {}", names.join(" "));
        }
        ok &= r.holds();
    }
    if matches!(flavor, Flavor::Standard) {
        let b = representation_size_bound(&a, bound_limit)?;
        println!("bound {}", b.bound);
        match &b.certificate {
            Some(c) => println!("certificate no member on {} vertices nodes {}", c.vertices, c.nodes_explored),
            None => println!("certificate none within {bound_limit} vertices"),
        }
    }
    if let [x, y] = &join[..] {
        let (c1, c2) = (read_structure(x)?, read_structure(y)?);
        let j = directed_join(&c1, &c2, &a)?;
        print!("{}", write_structure(&j.graph));
        let verdict = as_membership(&j.graph, &a)?;
        println!("# join {} member {:?}", if j.complete { "complete" } else { "incomplete" }, verdict);
        ok &= j.complete;
    }
    Ok(Status::from_bool(ok))
}
