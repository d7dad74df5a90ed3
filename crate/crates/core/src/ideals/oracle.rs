use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::structures::{
    all_structures, canonical_labeling, cell_count, IsoType, Signature, Structure,
    StructureBuilder, ENUMERATION_CELL_LIMIT,
};

/// An effective presentation of a set of isomorphism types.
///
/// `contains` must be isomorphism-invariant. `members_of_size(n)` returns one
/// representative per isomorphism class of members with exactly `n`
/// elements and must be complete for every `n <= complete_up_to()`; the
/// predicates in this module trust that declaration.
pub trait IdealOracle: Send + Sync {
    fn name(&self) -> &str;

    fn signature(&self) -> &Signature;

    fn contains(&self, s: &Structure) -> bool;

    fn members_of_size(&self, n: usize) -> Result<Vec<Structure>>;

    /// Largest size for which the generator is complete; `None` means every
    /// size.
    fn complete_up_to(&self) -> Option<usize> {
        None
    }
}

impl fmt::Debug for dyn IdealOracle + '_ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealOracle({})", self.name())
    }
}

/// Members of size at most `max_size`, smallest first, each size sorted by
/// canonical code.
pub fn members_up_to(o: &dyn IdealOracle, max_size: usize) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    for n in 0..=max_size {
        out.extend(o.members_of_size(n)?);
    }
    Ok(out)
}

pub fn member_codes(o: &dyn IdealOracle, max_size: usize) -> Result<BTreeSet<IsoType>> {
    Ok(members_up_to(o, max_size)?
        .iter()
        .map(crate::structures::canonical_form)
        .collect())
}

pub(crate) fn check_generator_bound(o: &dyn IdealOracle, n: usize) -> Result<()> {
    match o.complete_up_to() {
        Some(limit) if n > limit => Err(Error::Resource(format!(
            "oracle `{}` enumerates members completely only up to size {limit}",
            o.name()
        ))),
        _ => Ok(()),
    }
}

/// Canonical representatives of the members among `candidates`, one per
/// class, sorted by code.
pub fn dedup_members<I>(o: &dyn IdealOracle, candidates: I) -> Vec<Structure>
where
    I: IntoIterator<Item = Structure>,
{
    let mut seen = BTreeMap::new();
    for s in candidates {
        if !o.contains(&s) {
            continue;
        }
        let (code, perm) = canonical_labeling(&s);
        seen.entry(code).or_insert_with(|| s.relabel(&perm));
    }
    seen.into_values().collect()
}

type Predicate = Box<dyn Fn(&Structure) -> bool + Send + Sync>;
type GeneratorFn = Box<dyn Fn(usize) -> Vec<Structure> + Send + Sync>;

/// How a [`PredicateOracle`] produces candidate members.
pub enum Generator {
    /// Filter every structure over the signature.
    Exhaustive,
    /// Filter every loopless undirected graph; the signature must be a
    /// single binary relation.
    Graphs,
    /// Caller-supplied candidates by size; they are filtered by the
    /// predicate and deduplicated.
    Custom(GeneratorFn),
}

/// An oracle given by a membership predicate and a generator.
pub struct PredicateOracle {
    name: String,
    signature: Signature,
    member: Predicate,
    generator: Generator,
    complete_up_to: Option<usize>,
}

impl PredicateOracle {
    pub fn new<F>(name: impl Into<String>, signature: Signature, member: F, generator: Generator) -> Self
    where
        F: Fn(&Structure) -> bool + Send + Sync + 'static,
    {
        let complete_up_to = match &generator {
            Generator::Exhaustive => Some(exhaustive_limit(&signature)),
            Generator::Graphs => Some(GRAPH_LIMIT),
            Generator::Custom(_) => None,
        };
        Self {
            name: name.into(),
            signature,
            member: Box::new(member),
            generator,
            complete_up_to,
        }
    }

    /// Overrides the declared completeness bound.
    pub fn complete_up_to_size(mut self, limit: Option<usize>) -> Self {
        self.complete_up_to = limit;
        self
    }
}

impl IdealOracle for PredicateOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn contains(&self, s: &Structure) -> bool {
        s.signature() == &self.signature && (self.member)(s)
    }

    fn members_of_size(&self, n: usize) -> Result<Vec<Structure>> {
        check_generator_bound(self, n)?;
        Ok(match &self.generator {
            Generator::Exhaustive => dedup_members(self, all_structures(&self.signature, n)?),
            Generator::Graphs => dedup_members(self, simple_graphs(&self.signature, n)?),
            Generator::Custom(f) => dedup_members(self, f(n)),
        })
    }

    fn complete_up_to(&self) -> Option<usize> {
        self.complete_up_to
    }
}

const GRAPH_LIMIT: usize = 6;

fn exhaustive_limit(sig: &Signature) -> usize {
    if sig.is_empty() {
        return usize::MAX;
    }
    (0..)
        .take_while(|&n| cell_count(sig, n).is_some_and(|c| c <= ENUMERATION_CELL_LIMIT))
        .last()
        .unwrap_or(0)
}

/// Every loopless undirected graph on `n` vertices over the single binary
/// relation of `sig`.
pub fn simple_graphs(sig: &Signature, n: usize) -> Result<Vec<Structure>> {
    if sig.len() != 1 || sig.arity(0) != 2 {
        return Err(Error::Input(
            "graph enumeration needs a single binary relation".into(),
        ));
    }
    let pairs = k_subsets(n, 2);
    if pairs.len() > 21 {
        return Err(Error::Resource(format!(
            "{} vertex pairs; graph enumeration stops at 7 vertices",
            pairs.len()
        )));
    }
    Ok((0u32..1 << pairs.len())
        .map(|mask| {
            let mut b = StructureBuilder::new(sig.clone(), n);
            for (bit, p) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    b.add(0, vec![p[0], p[1]]).expect("in range");
                    b.add(0, vec![p[1], p[0]]).expect("in range");
                }
            }
            b.build()
        })
        .collect())
}

/// Symmetric and irreflexive.
pub fn is_simple_graph(s: &Structure, rel: usize) -> bool {
    s.table(rel)
        .iter()
        .all(|t| t[0] != t[1] && s.holds(rel, &[t[1], t[0]]))
}

/// Every finite structure over `signature`.
pub fn full_oracle(signature: Signature) -> PredicateOracle {
    PredicateOracle::new("all", signature, |_| true, Generator::Exhaustive)
}

/// Loopless undirected graphs without a triangle, over `E/2`.
pub fn triangle_free() -> PredicateOracle {
    let sig = Signature::new([("E", 2)]).expect("valid");
    PredicateOracle::new(
        "triangle-free",
        sig,
        |s| {
            if !is_simple_graph(s, 0) {
                return false;
            }
            let n = s.size();
            !(0..n).any(|a| {
                (a + 1..n).any(|b| {
                    s.holds(0, &[a, b]) && (b + 1..n).any(|c| s.holds(0, &[a, c]) && s.holds(0, &[b, c]))
                })
            })
        },
        Generator::Graphs,
    )
}

/// Strict linear orders over `lt/2`.
pub fn linear_orders() -> PredicateOracle {
    let sig = Signature::new([("lt", 2)]).expect("valid");
    let gen_sig = sig.clone();
    PredicateOracle::new(
        "linear-orders",
        sig,
        is_strict_linear_order,
        Generator::Custom(Box::new(move |n| vec![chain(&gen_sig, n)])),
    )
}

/// The chain `0 < 1 < ... < n-1` over a single binary relation.
pub fn chain(sig: &Signature, n: usize) -> Structure {
    let mut b = StructureBuilder::new(sig.clone(), n);
    for i in 0..n {
        for j in i + 1..n {
            b.add(0, vec![i, j]).expect("in range");
        }
    }
    b.build()
}

pub fn is_strict_linear_order(s: &Structure) -> bool {
    let n = s.size();
    for a in 0..n {
        if s.holds(0, &[a, a]) {
            return false;
        }
        for b in a + 1..n {
            if s.holds(0, &[a, b]) == s.holds(0, &[b, a]) {
                return false;
            }
        }
    }
    (0..n).all(|a| {
        (0..n).all(|b| !s.holds(0, &[a, b]) || (0..n).all(|c| !s.holds(0, &[b, c]) || s.holds(0, &[a, c])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        // Unlabeled simple graphs: 1, 1, 2, 4, 11.
        let o = PredicateOracle::new(
            "graphs",
            Signature::new([("E", 2)]).unwrap(),
            |s| is_simple_graph(s, 0),
            Generator::Graphs,
        );
        let counts: Vec<usize> = (0..=4).map(|n| o.members_of_size(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11]);
    }

    #[test]
    fn triangle_free_counts() {
        // Triangle-free graphs on 3 vertices: all but the triangle.
        let o = triangle_free();
        assert_eq!(o.members_of_size(3).unwrap().len(), 3);
        assert_eq!(o.members_of_size(4).unwrap().len(), 11 - 4);
    }

    #[test]
    fn one_chain_per_size() {
        let o = linear_orders();
        for n in 0..5 {
            let m = o.members_of_size(n).unwrap();
            assert_eq!(m.len(), 1);
            assert!(o.contains(&m[0]));
        }
    }

    #[test]
    fn exhaustive_generator_declares_its_limit() {
        let o = full_oracle(Signature::binary(1));
        assert_eq!(o.complete_up_to(), Some(5));
        assert_eq!(o.members_of_size(3).unwrap().len(), 104);
        assert!(matches!(o.members_of_size(6), Err(Error::Resource(_))));
    }

    #[test]
    fn membership_requires_the_signature() {
        let o = linear_orders();
        assert!(!o.contains(&chain(&Signature::binary(1), 2)));
    }
}
