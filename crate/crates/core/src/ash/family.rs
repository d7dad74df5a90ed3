use crate::error::{Error, Result};
use crate::ideals::is_simple_graph;
use crate::metric::{MetricSpace, Rational, Scalar};
use crate::structures::{Signature, Structure, StructureBuilder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AshFlavor {
    /// `parts` disjoint blocks of `part_size` colours; a set is a member
    /// when it meets every block in at most `cap` colours.
    Standard {
        parts: usize,
        part_size: usize,
        cap: usize,
    },
    /// Colours are vertices; a set is a member when one of its vertices is
    /// adjacent to all the others.
    Graph { adjacency: Structure },
    /// Colours are elements; a set is a member when it has a greatest
    /// element.
    Poset { order: Structure },
}

/// A finite family of subsets of a finite colour set.
///
/// No finite family satisfies every ash axiom; see
/// [`check_ash_axioms`](super::check_ash_axioms) for the region in which a
/// finite one behaves like an ash.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ash {
    flavor: AshFlavor,
    signature: Signature,
}

impl Ash {
    pub fn flavor(&self) -> &AshFlavor {
        &self.flavor
    }

    /// Number of colours.
    pub fn ground(&self) -> usize {
        self.signature.len()
    }

    /// One binary relation per colour.
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn colour_name(&self, c: usize) -> &str {
        self.signature.name(c)
    }

    /// Whether subsets of members are members.
    pub fn downward_closed(&self) -> bool {
        matches!(self.flavor, AshFlavor::Standard { .. })
    }

    /// Membership of a set of colours; `set` must be free of repeats.
    pub fn member(&self, set: &[usize]) -> bool {
        match &self.flavor {
            AshFlavor::Standard {
                parts,
                part_size,
                cap,
            } => {
                let mut count = vec![0usize; *parts];
                set.iter().all(|&c| {
                    count[c / part_size] += 1;
                    count[c / part_size] <= *cap
                })
            }
            AshFlavor::Graph { adjacency } => set
                .iter()
                .any(|&v| set.iter().all(|&u| u == v || adjacency.holds(0, &[v, u]))),
            AshFlavor::Poset { order } => set
                .iter()
                .any(|&x| set.iter().all(|&y| order.holds(0, &[y, x]))),
        }
    }

    /// Block of a colour in the standard flavor.
    pub fn part_of(&self, c: usize) -> Option<usize> {
        match self.flavor {
            AshFlavor::Standard { part_size, .. } => Some(c / part_size),
            _ => None,
        }
    }
}

pub fn standard_ash(parts: usize, part_size: usize, cap: usize) -> Result<Ash> {
    if parts == 0 || part_size == 0 || cap == 0 {
        return Err(Error::Input("parts, part size and cap must be positive".into()));
    }
    let names = (0..parts).flat_map(|p| (0..part_size).map(move |i| (format!("c{p}_{i}"), 2)));
    Ok(Ash {
        flavor: AshFlavor::Standard {
            parts,
            part_size,
            cap,
        },
        signature: Signature::new(names)?,
    })
}

fn vertex_signature(n: usize) -> Result<Signature> {
    Signature::new((0..n).map(|v| (format!("v{v}"), 2)))
}

pub fn graph_ash(adjacency: &Structure) -> Result<Ash> {
    let sig = adjacency.signature();
    if sig.len() != 1 || sig.arity(0) != 2 || !is_simple_graph(adjacency, 0) {
        return Err(Error::Input("expected a loopless undirected graph".into()));
    }
    Ok(Ash {
        signature: vertex_signature(adjacency.size())?,
        flavor: AshFlavor::Graph {
            adjacency: adjacency.clone(),
        },
    })
}

/// `order` holds `(x, y)` when `x ≤ y`.
pub fn poset_ash(order: &Structure) -> Result<Ash> {
    let sig = order.signature();
    if sig.len() != 1 || sig.arity(0) != 2 {
        return Err(Error::Input("expected one binary order relation".into()));
    }
    let n = order.size();
    let le = |x: usize, y: usize| order.holds(0, &[x, y]);
    for x in 0..n {
        if !le(x, x) {
            return Err(Error::Input(format!("not reflexive at {x}")));
        }
        for y in 0..n {
            if x != y && le(x, y) && le(y, x) {
                return Err(Error::Input(format!("not antisymmetric on {x} {y}")));
            }
            for z in 0..n {
                if le(x, y) && le(y, z) && !le(x, z) {
                    return Err(Error::Input(format!("not transitive on {x} {y} {z}")));
                }
            }
        }
    }
    Ok(Ash {
        signature: vertex_signature(n)?,
        flavor: AshFlavor::Poset {
            order: order.clone(),
        },
    })
}

/// The subsets of `{0, …, n-1}` ordered by inclusion; element `i` is the
/// set whose bits are those of `i`.
pub fn subset_poset(n: usize) -> Structure {
    let size = 1usize << n;
    let sig = Signature::new([("le", 2)]).expect("valid");
    let mut b = StructureBuilder::new(sig, size);
    for x in 0..size {
        for y in 0..size {
            if x & y == x {
                b.add(0, vec![x, y]).expect("in range");
            }
        }
    }
    b.build()
}

/// Vertices at distance at least `1` are adjacent.
pub fn space_to_graph<S: Scalar>(m: &MetricSpace<S>) -> Structure {
    let sig = Signature::new([("E", 2)]).expect("valid");
    let one = S::from_i64(1);
    let mut b = StructureBuilder::new(sig, m.size());
    for x in 0..m.size() {
        for y in 0..m.size() {
            if x != y && m.dist(x, y) >= one {
                b.add(0, vec![x, y]).expect("in range");
            }
        }
    }
    b.build()
}

/// Distance `1` on edges and `1/2` elsewhere.
pub fn graph_to_space(g: &Structure) -> Result<MetricSpace<Rational>> {
    if g.signature().len() != 1 || g.signature().arity(0) != 2 || !is_simple_graph(g, 0) {
        return Err(Error::Input("expected a loopless undirected graph".into()));
    }
    MetricSpace::from_fn(g.size(), |x, y| {
        if g.holds(0, &[x, y]) {
            Rational::from_integer(1)
        } else {
            Rational::new(1, 2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Structure {
        let sig = Signature::new([("E", 2)]).unwrap();
        Structure::from_tuples(sig, n, (1..n).flat_map(|i| [(0, vec![i - 1, i]), (0, vec![i, i - 1])])).unwrap()
    }

    #[test]
    fn standard_members() {
        let a = standard_ash(3, 4, 1).unwrap();
        assert_eq!(a.ground(), 12);
        assert!(a.member(&[0, 4, 8]));
        assert!(!a.member(&[0, 1]));
        assert!(a.member(&[]) && a.member(&[5]));
        assert!(standard_ash(0, 1, 1).is_err());
    }

    #[test]
    fn graph_members() {
        let star = Structure::from_tuples(
            Signature::new([("E", 2)]).unwrap(),
            3,
            [(0, vec![0, 1]), (0, vec![1, 0]), (0, vec![0, 2]), (0, vec![2, 0])],
        )
        .unwrap();
        let a = graph_ash(&star).unwrap();
        assert!(a.member(&[1]));
        assert!(a.member(&[0, 1]) && !a.member(&[1, 2]));
        assert!(a.member(&[0, 1, 2]));
        let directed = Structure::from_tuples(Signature::new([("E", 2)]).unwrap(), 2, [(0, vec![0, 1])]).unwrap();
        assert!(graph_ash(&directed).is_err());
        assert!(!a.downward_closed());
        assert!(graph_ash(&path(4)).is_ok());
    }

    #[test]
    fn poset_members() {
        let p = subset_poset(2);
        let a = poset_ash(&p).unwrap();
        // elements: 0 = ∅, 1 = {0}, 2 = {1}, 3 = {0,1}
        assert!(!a.member(&[0, 1, 2]));
        assert!(a.member(&[0, 1, 3]));
        assert!(!a.member(&[1, 2]));
        let chain = crate::ideals::chain(&Signature::new([("le", 2)]).unwrap(), 4);
        assert!(poset_ash(&chain).is_err(), "strict orders are not reflexive");
    }

    #[test]
    fn space_and_graph() {
        let m = MetricSpace::from_line(&[0, 1, 3].map(Rational::from_integer)).unwrap();
        assert_eq!(space_to_graph(&m).tuple_count(), 6);
        let tri = space_to_graph(&m);
        let s = graph_to_space(&tri).unwrap();
        assert!((0..3).all(|x| (0..3).all(|y| x == y || s.dist(x, y) == Rational::from_integer(1))));
        let g = path(5);
        assert_eq!(space_to_graph(&graph_to_space(&g).unwrap()), g);
    }
}
