use std::collections::{BTreeMap, BTreeSet};

use super::{canonical_form, IsoType, Signature, Structure, Tuple};
use crate::combinatorics::{all_tuples, subsets_up_to};
use crate::error::{Error, Result};

/// The restrictions of `s` to every subset of at most `max_size` elements,
/// keyed by the subset.
pub fn skeleton(s: &Structure, max_size: usize) -> Vec<(Vec<usize>, Structure)> {
    subsets_up_to(s.size(), max_size)
        .into_iter()
        .map(|x| {
            let r = s.restrict(&x).expect("subsets are in range");
            (x, r)
        })
        .collect()
}

/// The isomorphism types of all induced substructures with at most
/// `max_size` elements.
pub fn age(s: &Structure, max_size: usize) -> BTreeSet<IsoType> {
    skeleton(s, max_size)
        .iter()
        .map(|(_, r)| canonical_form(r))
        .collect()
}

/// Like [`age`], with one representative restriction per type.
pub fn age_with_representatives(s: &Structure, max_size: usize) -> BTreeMap<IsoType, Structure> {
    let mut out = BTreeMap::new();
    for (_, r) in skeleton(s, max_size) {
        out.entry(canonical_form(&r)).or_insert(r);
    }
    out
}

/// Number of tuple cells a structure on `n` elements has over `sig`.
pub fn cell_count(sig: &Signature, n: usize) -> Option<usize> {
    (0..sig.len()).try_fold(0usize, |acc, i| {
        n.checked_pow(sig.arity(i) as u32)
            .and_then(|c| acc.checked_add(c))
    })
}

/// Largest number of free tuple cells the exhaustive enumerators accept.
pub const ENUMERATION_CELL_LIMIT: usize = 26;

/// Every structure on `n` elements over `sig`, in order of the bitmask over
/// all cells (relations in signature order, tuples lexicographically).
pub fn all_structures(sig: &Signature, n: usize) -> Result<impl Iterator<Item = Structure>> {
    let cells: Vec<(usize, Tuple)> = (0..sig.len())
        .flat_map(|rel| {
            all_tuples(n, sig.arity(rel))
                .into_iter()
                .map(move |t| (rel, t))
        })
        .collect();
    if cells.len() > ENUMERATION_CELL_LIMIT {
        return Err(Error::Resource(format!(
            "{} free tuple cells on {n} elements; the exhaustive limit is {ENUMERATION_CELL_LIMIT}",
            cells.len()
        )));
    }
    let sig = sig.clone();
    Ok((0u64..(1u64 << cells.len())).map(move |mask| {
        let mut tables = vec![BTreeSet::new(); sig.len()];
        for (bit, (rel, t)) in cells.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                tables[*rel].insert(t.clone());
            }
        }
        Structure::new_unchecked(sig.clone(), n, tables)
    }))
}

/// One canonical representative per isomorphism class of structures on
/// exactly `n` elements, sorted by code.
pub fn iso_classes(sig: &Signature, n: usize) -> Result<Vec<Structure>> {
    let mut seen = BTreeMap::new();
    for s in all_structures(sig, n)? {
        let (code, perm) = super::canonical_labeling(&s);
        seen.entry(code).or_insert_with(|| s.relabel(&perm));
    }
    Ok(seen.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph(n: usize, edges: &[(usize, usize)]) -> Structure {
        Structure::from_tuples(
            Signature::binary(1),
            n,
            edges.iter().map(|&(a, b)| (0, vec![a, b])),
        )
        .unwrap()
    }

    #[test]
    fn age_zero_is_the_empty_type() {
        let s = digraph(3, &[(0, 1)]);
        let a = age(&s, 0);
        assert_eq!(a.len(), 1);
        assert_eq!(a.iter().next().unwrap(), &canonical_form(&digraph(0, &[])));
    }

    #[test]
    fn age_of_directed_three_cycle() {
        let s = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let expected: BTreeSet<IsoType> = [
            digraph(0, &[]),
            digraph(1, &[]),
            digraph(2, &[(0, 1)]),
        ]
        .iter()
        .map(canonical_form)
        .collect();
        assert_eq!(age(&s, 2), expected);
        // no loop, no double edge, no edgeless pair among the 2-subsets
        assert!(!age(&s, 2).contains(&canonical_form(&digraph(1, &[(0, 0)]))));
        assert!(!age(&s, 2).contains(&canonical_form(&digraph(2, &[(0, 1), (1, 0)]))));
    }

    #[test]
    fn age_is_monotone_in_the_bound() {
        let s = digraph(4, &[(0, 1), (1, 2), (3, 3)]);
        for k in 1..=4 {
            assert!(age(&s, k - 1).is_subset(&age(&s, k)));
        }
    }

    #[test]
    fn class_counts_for_one_binary_relation() {
        // Known counts of digraphs with loops allowed: 1, 2, 10, 104.
        let sig = Signature::binary(1);
        let counts: Vec<usize> = (0..=3).map(|n| iso_classes(&sig, n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 10, 104]);
    }

    #[test]
    fn enumeration_limit() {
        assert!(matches!(
            all_structures(&Signature::binary(2), 4),
            Err(Error::Resource(_))
        ));
    }
}
