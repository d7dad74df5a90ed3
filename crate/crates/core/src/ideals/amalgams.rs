use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::combinatorics::{all_tuples, k_subsets, permutations};
use crate::error::{Error, Result};
use crate::ideals::IdealOracle;
use crate::structures::{
    canonical_labeling, embeds, is_embedding, ElementMap, IsoType, Signature, Structure,
    StructureBuilder, Tuple,
};

/// Largest number of free tuples enumerated for one placement of `a` and
/// `b` in [`minimal_amalgams`].
pub const MINIMAL_AMALGAM_FREE_LIMIT: usize = 22;

/// Canonical codes of the members `C` that contain copies of `a` and `b`
/// and lose one of them whenever a point is deleted.
pub fn minimal_amalgams(a: &Structure, b: &Structure, o: &dyn IdealOracle) -> Result<BTreeSet<IsoType>> {
    Ok(minimal_amalgams_with_representatives(a, b, o)?.into_keys().collect())
}

/// Like [`minimal_amalgams`], with a canonically labeled representative
/// for each code.
///
/// Such a `C` is covered by the two copies, so the candidates are built by
/// placing `a` on the first points, overlaying `b` along a partial
/// identification, and choosing every tuple that neither copy determines.
pub fn minimal_amalgams_with_representatives(
    a: &Structure,
    b: &Structure,
    o: &dyn IdealOracle,
) -> Result<BTreeMap<IsoType, Structure>> {
    let sig = a.signature();
    if b.signature() != sig {
        return Err(Error::Input("the two structures have different signatures".into()));
    }
    let mut out = BTreeMap::new();
    let (na, nb) = (a.size(), b.size());
    for k in 0..=na.min(nb) {
        for dom in k_subsets(nb, k) {
            let b_part = b.restrict(&dom)?;
            for img in k_subsets(na, k) {
                for perm in permutations(k) {
                    let f = ElementMap::new(perm.iter().map(|&p| img[p]).collect());
                    if !is_embedding(&f, &b_part, a)? {
                        continue;
                    }
                    let mut map = vec![usize::MAX; nb];
                    for (i, &d) in dom.iter().enumerate() {
                        map[d] = f.get(i);
                    }
                    let mut next = na;
                    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
                        *m = next;
                        next += 1;
                    }
                    for (code, rep) in covered_candidates(a, b, &map, next, o)? {
                        out.entry(code).or_insert(rep);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn covered_candidates(
    a: &Structure,
    b: &Structure,
    map: &[usize],
    size: usize,
    o: &dyn IdealOracle,
) -> Result<Vec<(IsoType, Structure)>> {
    let sig = a.signature();
    let mut base = a.to_builder(size - a.size());
    for rel in 0..sig.len() {
        for t in b.table(rel) {
            base.add(rel, t.iter().map(|&x| map[x]).collect())?;
        }
    }
    let mut in_b = vec![false; size];
    for &y in map {
        in_b[y] = true;
    }
    let free: Vec<(usize, Tuple)> = (0..sig.len())
        .flat_map(|rel| {
            all_tuples(size, sig.arity(rel))
                .into_iter()
                .filter(|t| t.iter().any(|&x| x >= a.size()) && t.iter().any(|&x| !in_b[x]))
                .map(move |t| (rel, t))
        })
        .collect();
    if free.len() > MINIMAL_AMALGAM_FREE_LIMIT {
        return Err(Error::Resource(format!(
            "{} free tuples for one placement; the limit is {MINIMAL_AMALGAM_FREE_LIMIT}",
            free.len()
        )));
    }
    let base = base.build();
    let found: Vec<(IsoType, Structure)> = (0u64..1 << free.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut c = base.to_builder(0);
            for (bit, (rel, t)) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    c.add(*rel, t.clone()).expect("in range");
                }
            }
            let c = c.build();
            if !o.contains(&c) || !is_minimal_cover(a, b, &c) {
                return None;
            }
            let (code, perm) = canonical_labeling(&c);
            Some((code, c.relabel(&perm)))
        })
        .collect();
    Ok(found)
}

/// Deleting any point of `c` destroys every copy of `a` or every copy of
/// `b`.
pub fn is_minimal_cover(a: &Structure, b: &Structure, c: &Structure) -> bool {
    (0..c.size()).all(|x| {
        let rest: Vec<usize> = (0..c.size()).filter(|&y| y != x).collect();
        let d = c.restrict(&rest).expect("in range");
        !embeds(a, &d).unwrap_or(false) || !embeds(b, &d).unwrap_or(false)
    })
}

/// The one-point structure over `k` binary relations with every loop.
pub fn all_loops_point(k: usize) -> Structure {
    Structure::from_tuples(Signature::binary(k), 1, (0..k).map(|r| (r, vec![0, 0])))
        .expect("valid")
}

/// The one-point structure over `k` binary relations with no tuple.
pub fn no_loops_point(k: usize) -> Structure {
    Structure::empty(Signature::binary(k), 1)
}

/// The structures `C_n`, `n < k`, on `{0, 1}`: `0` carries every loop, `1`
/// none, and the only other tuple is `R_n(0, 1)`.
pub fn single_cross_family(k: usize) -> Result<Vec<Structure>> {
    if k == 0 {
        return Err(Error::Input("the family needs at least one relation".into()));
    }
    let sig = Signature::binary(k);
    Ok((0..k)
        .map(|n| {
            let mut b = StructureBuilder::new(sig.clone(), 2);
            for r in 0..k {
                b.add(r, vec![0, 0]).expect("in range");
            }
            b.add(n, vec![0, 1]).expect("in range");
            b.build()
        })
        .collect())
}
