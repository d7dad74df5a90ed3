use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::subsets_up_to;
use crate::error::{Error, Result};
use crate::ideals::extend::extend;
use crate::ideals::{members_up_to, IdealOracle};
use crate::structures::{canonical_form, Structure};

/// A member whose restriction to `subset` is not a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentViolation {
    pub member: Structure,
    pub subset: Vec<usize>,
    pub restriction: Structure,
}

/// Checks that the members of size at most `max_size` are closed under
/// restriction; returns the first violation.
pub fn is_initial_segment(
    o: &dyn IdealOracle,
    max_size: usize,
) -> Result<Result<(), SegmentViolation>> {
    for m in members_up_to(o, max_size)? {
        for x in subsets_up_to(m.size(), m.size()) {
            let r = m.restrict(&x)?;
            if !o.contains(&r) {
                return Ok(Err(SegmentViolation {
                    member: m,
                    subset: x,
                    restriction: r,
                }));
            }
        }
    }
    Ok(Ok(()))
}

/// Outcome of [`is_up_directed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedReport {
    /// The members checked, in generator order.
    pub members: Vec<Structure>,
    /// `(i, j, c)`: `c` is a member extending `members[i]` and `members[j]`.
    pub witnesses: Vec<(usize, usize, Structure)>,
    /// First pair with no common extension within the bound.
    pub failure: Option<(usize, usize)>,
}

impl DirectedReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Searches a common member extension of size at most `search_bound` for
/// every unordered pair of members of size at most `max_size`.
pub fn is_up_directed(
    o: &dyn IdealOracle,
    max_size: usize,
    search_bound: usize,
) -> Result<DirectedReport> {
    if search_bound < 2 * max_size {
        return Err(Error::Input(format!(
            "search bound {search_bound} is below twice the member size {max_size}"
        )));
    }
    let members = members_up_to(o, max_size)?;
    let mut witnesses = Vec::new();
    for i in 0..members.len() {
        for j in i..members.len() {
            match extend(&members[i], &members[j], o, search_bound)? {
                Some(ext) => witnesses.push((i, j, ext.structure)),
                None => {
                    return Ok(DirectedReport {
                        members,
                        witnesses,
                        failure: Some((i, j)),
                    })
                }
            }
        }
    }
    Ok(DirectedReport {
        members,
        witnesses,
        failure: None,
    })
}

/// Whether every listed reduct of `s` is, up to isomorphism, the same reduct
/// of a member with `s.size()` elements.
pub fn hat_closure_member(
    s: &Structure,
    o: &dyn IdealOracle,
    index_subsets: &[Vec<usize>],
) -> Result<bool> {
    if s.signature() != o.signature() {
        return Err(Error::Input("structure and oracle signatures differ".into()));
    }
    if o.contains(s) {
        return Ok(true);
    }
    let members = o.members_of_size(s.size())?;
    for idx in index_subsets {
        let target = canonical_form(&s.reduct(idx)?);
        let mut found = false;
        for m in &members {
            if canonical_form(&m.reduct(idx)?) == target {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Relabels members randomly and reports a pair on which membership
/// disagrees.
pub fn spot_check_invariance(
    o: &dyn IdealOracle,
    max_size: usize,
    samples_per_member: usize,
    seed: u64,
) -> Result<Option<(Structure, Structure)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in members_up_to(o, max_size)? {
        let mut perm: Vec<usize> = (0..m.size()).collect();
        for _ in 0..samples_per_member {
            perm.shuffle(&mut rng);
            let r = m.relabel(&perm);
            if !o.contains(&r) {
                return Ok(Some((m, r)));
            }
        }
    }
    Ok(None)
}

/// Canonical codes of every reduct of the members of one size to the given
/// relation indices.
pub fn reduct_shadow(
    o: &dyn IdealOracle,
    size: usize,
    indices: &[usize],
) -> Result<BTreeSet<crate::structures::IsoType>> {
    o.members_of_size(size)?
        .iter()
        .map(|m| Ok(canonical_form(&m.reduct(indices)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{
        is_simple_graph, linear_orders, triangle_free, Generator, PredicateOracle,
    };
    use crate::structures::{Signature, StructureBuilder};

    #[test]
    fn hereditary_classes_are_initial_segments() {
        assert_eq!(is_initial_segment(&triangle_free(), 4).unwrap(), Ok(()));
        assert_eq!(is_initial_segment(&linear_orders(), 4).unwrap(), Ok(()));
    }

    #[test]
    fn exactly_three_elements_is_not() {
        let o = PredicateOracle::new(
            "three",
            Signature::binary(1),
            |s| s.size() == 3,
            Generator::Exhaustive,
        );
        let v = is_initial_segment(&o, 3).unwrap().unwrap_err();
        assert_eq!(v.member.size(), 3);
        assert!(v.subset.len() < 3);
    }

    #[test]
    fn directed_examples() {
        let r = is_up_directed(&linear_orders(), 3, 6).unwrap();
        assert!(r.holds());
        let r = is_up_directed(&triangle_free(), 2, 4).unwrap();
        assert!(r.holds());
        for (i, j, c) in &r.witnesses {
            assert!(triangle_free().contains(c));
            assert!(crate::structures::embeds(&r.members[*i], c).unwrap());
            assert!(crate::structures::embeds(&r.members[*j], c).unwrap());
        }
    }

    #[test]
    fn edgeless_or_complete_is_not_directed() {
        let o = PredicateOracle::new(
            "edgeless-or-complete",
            Signature::new([("E", 2)]).unwrap(),
            |s| {
                let n = s.size();
                is_simple_graph(s, 0) && (s.tuple_count() == 0 || s.tuple_count() == n * (n - 1))
            },
            Generator::Graphs,
        );
        let r = is_up_directed(&o, 2, 4).unwrap();
        let (i, j) = r.failure.unwrap();
        let mut sizes = [r.members[i].tuple_count(), r.members[j].tuple_count()];
        sizes.sort_unstable();
        assert_eq!(sizes, [0, 2]);
        assert!(r.members[i].size() == 2 && r.members[j].size() == 2);
    }

    #[test]
    fn bound_must_cover_both_members() {
        assert!(matches!(
            is_up_directed(&linear_orders(), 3, 5),
            Err(Error::Input(_))
        ));
    }

    fn flagged_orders() -> PredicateOracle {
        // lt is a strict linear order and F holds exactly of the least element
        let sig = Signature::new([("lt", 2), ("F", 1)]).unwrap();
        let gen_sig = sig.clone();
        PredicateOracle::new(
            "flagged",
            sig.clone(),
            move |s| {
                let lt = s.reduct(&[0]).unwrap();
                if !crate::ideals::is_strict_linear_order(&lt) {
                    return false;
                }
                (0..s.size()).all(|x| {
                    let least = (0..s.size()).all(|y| y == x || s.holds(0, &[x, y]));
                    s.holds(1, &[x]) == least
                })
            },
            Generator::Custom(Box::new(move |n| {
                let mut b = StructureBuilder::new(gen_sig.clone(), n);
                for i in 0..n {
                    for j in i + 1..n {
                        b.add(0, vec![i, j]).unwrap();
                    }
                }
                if n > 0 {
                    b.add(1, vec![0]).unwrap();
                }
                vec![b.build()]
            })),
        )
    }

    #[test]
    fn hat_closure_examples() {
        let o = flagged_orders();
        let m = o.members_of_size(3).unwrap().remove(0);
        assert!(hat_closure_member(&m, &o, &[vec![0], vec![1]]).unwrap());
        let e = Structure::empty(o.signature().clone(), 0);
        assert!(hat_closure_member(&e, &o, &[vec![0, 1]]).unwrap());
        // a chain whose flag sits on the top element: each single reduct is
        // a member shape, the joint reduct is not
        let mut b = m.to_builder(0);
        b.remove(1, &vec![0]);
        b.add(1, vec![2]).unwrap();
        let s = b.build();
        assert!(hat_closure_member(&s, &o, &[vec![0], vec![1]]).unwrap());
        assert!(!hat_closure_member(&s, &o, &[vec![0, 1]]).unwrap());
        // two flags: the unary reduct is no member shape
        let mut b = m.to_builder(0);
        b.add(1, vec![2]).unwrap();
        assert!(!hat_closure_member(&b.build(), &o, &[vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn builtins_are_invariant_on_samples() {
        assert_eq!(spot_check_invariance(&triangle_free(), 5, 4, 7).unwrap(), None);
        assert_eq!(spot_check_invariance(&linear_orders(), 6, 4, 7).unwrap(), None);
    }
}
