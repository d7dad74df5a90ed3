//! Canonical forms by colour refinement and individualisation.
//!
//! Colours start uniform and are refined by the multiset of (relation,
//! position pattern, colours of the tuple) over every tuple an element
//! occurs in. When refinement stalls, the first non-singleton colour class is
//! split by individualising each of its members in turn. Every discrete
//! colouring is a labeling; the canonical code is the least relabeled code
//! over all leaves. Automorphisms discovered between equal leaves prune
//! branches in the same orbit of the pointwise stabiliser of the current
//! path, which keeps the search exact.

use std::fmt;

use super::Structure;

/// The isomorphism type of a structure, as an order-independent byte code.
///
/// Codes of structures over the same signature are equal iff the structures
/// are isomorphic. The code embeds the signature, so types over different
/// signatures never collide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoType {
    size: usize,
    code: Vec<u8>,
}

impl IsoType {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn to_hex(&self) -> String {
        self.code.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsoType(size {}, {})", self.size, self.to_hex())
    }
}

pub fn canonical_form(s: &Structure) -> IsoType {
    canonical_labeling(s).0
}

/// The canonical form together with a canonical labeling `perm`, where
/// `s.relabel(&perm)` is the canonical representative.
pub fn canonical_labeling(s: &Structure) -> (IsoType, Vec<usize>) {
    let mut search = Search::new(s);
    let colors = vec![0; s.size()];
    let mut path = Vec::new();
    search.descend(colors, &mut path);
    let (code, perm) = search.best.expect("the search always reaches a leaf");
    let mut bytes = s.signature().to_string().into_bytes();
    bytes.push(0);
    for w in code {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    (
        IsoType {
            size: s.size(),
            code: bytes,
        },
        perm,
    )
}

/// The canonical representative of the isomorphism class of `s`.
pub fn canonical_structure(s: &Structure) -> Structure {
    let (_, perm) = canonical_labeling(s);
    s.relabel(&perm)
}

struct Search<'a> {
    s: &'a Structure,
    // (relation, tuple) for every true tuple
    tuples: Vec<(usize, &'a [usize])>,
    // indices into `tuples`, per element
    incidence: Vec<Vec<usize>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(s: &'a Structure) -> Self {
        let mut tuples = Vec::new();
        for rel in 0..s.signature().len() {
            for t in s.table(rel) {
                tuples.push((rel, t.as_slice()));
            }
        }
        let mut incidence = vec![Vec::new(); s.size()];
        for (i, (_, t)) in tuples.iter().enumerate() {
            for (p, &x) in t.iter().enumerate() {
                if !t[..p].contains(&x) {
                    incidence[x].push(i);
                }
            }
        }
        Self {
            s,
            tuples,
            incidence,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn descend(&mut self, mut colors: Vec<usize>, path: &mut Vec<usize>) {
        let n = self.s.size();
        let classes = self.refine(&mut colors);
        if classes == n {
            self.leaf(colors);
            return;
        }
        let mut counts = vec![0usize; classes];
        for &c in &colors {
            counts[c] += 1;
        }
        let target = counts
            .iter()
            .position(|&c| c > 1)
            .expect("a non-discrete colouring has a class of size > 1");
        let cell: Vec<usize> = (0..n).filter(|&x| colors[x] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(v, &explored, path) {
                continue;
            }
            let child = individualize(&colors, v);
            path.push(v);
            self.descend(child, path);
            path.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let code = self.code_under(&perm);
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best_code, best_perm)) => match code.cmp(best_code) {
                std::cmp::Ordering::Less => self.best = Some((code, perm)),
                std::cmp::Ordering::Equal => {
                    let mut inverse = vec![0; perm.len()];
                    for (x, &p) in best_perm.iter().enumerate() {
                        inverse[p] = x;
                    }
                    let gamma: Vec<usize> = perm.iter().map(|&p| inverse[p]).collect();
                    if gamma.iter().enumerate().any(|(x, &y)| x != y) {
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` shares an orbit with some explored element under the
    /// known automorphisms that fix `path` pointwise.
    fn same_orbit(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.s.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    /// Refines `colors` to a stable colouring with classes `0..k` and
    /// returns `k`.
    fn refine(&self, colors: &mut Vec<usize>) -> usize {
        let n = colors.len();
        let mut classes = rank(colors);
        loop {
            let keys: Vec<(usize, Vec<(usize, u32, Vec<usize>)>)> = (0..n)
                .map(|x| {
                    let mut sig: Vec<(usize, u32, Vec<usize>)> = self.incidence[x]
                        .iter()
                        .map(|&ti| {
                            let (rel, t) = self.tuples[ti];
                            let mask = t
                                .iter()
                                .enumerate()
                                .filter(|&(_, &y)| y == x)
                                .fold(0u32, |m, (p, _)| m | 1 << p);
                            (rel, mask, t.iter().map(|&y| colors[y]).collect())
                        })
                        .collect();
                    sig.sort_unstable();
                    (colors[x], sig)
                })
                .collect();
            let next = rank_keys(&keys);
            let count = next.iter().copied().max().map_or(0, |m| m + 1);
            *colors = next;
            if count == classes {
                return count;
            }
            classes = count;
        }
    }

    fn code_under(&self, perm: &[usize]) -> Vec<u32> {
        let s = self.s;
        let mut code = vec![s.size() as u32];
        for rel in 0..s.signature().len() {
            let mut rows: Vec<Vec<u32>> = s
                .table(rel)
                .iter()
                .map(|t| t.iter().map(|&x| perm[x] as u32).collect())
                .collect();
            rows.sort_unstable();
            code.push(rows.len() as u32);
            for r in rows {
                code.extend(r);
            }
        }
        code
    }
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let keys: Vec<(usize, bool)> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| (c, u != v))
        .collect();
    rank_keys(&keys)
}

fn rank(colors: &mut [usize]) -> usize {
    let next = rank_keys(colors);
    let count = next.iter().copied().max().map_or(0, |m| m + 1);
    colors.copy_from_slice(&next);
    count
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key is present"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Signature;

    fn digraph(n: usize, edges: &[(usize, usize)]) -> Structure {
        Structure::from_tuples(
            Signature::binary(1),
            n,
            edges.iter().map(|&(a, b)| (0, vec![a, b])),
        )
        .unwrap()
    }

    #[test]
    fn swapped_edge_has_same_code() {
        assert_eq!(
            canonical_form(&digraph(2, &[(0, 1)])),
            canonical_form(&digraph(2, &[(1, 0)]))
        );
    }

    #[test]
    fn edge_and_loop_differ() {
        assert_ne!(
            canonical_form(&digraph(2, &[(0, 1)])),
            canonical_form(&digraph(2, &[(0, 0)]))
        );
    }

    #[test]
    fn invariant_under_all_permutations_of_a_small_structure() {
        let s = digraph(4, &[(0, 1), (1, 2), (2, 0), (3, 3), (3, 0)]);
        let code = canonical_form(&s);
        let mut perm: Vec<usize> = (0..4).collect();
        loop {
            assert_eq!(canonical_form(&s.relabel(&perm)), code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    #[test]
    fn canonical_representative_is_a_relabeling() {
        let s = digraph(3, &[(2, 0), (0, 0)]);
        let c = canonical_structure(&s);
        assert_eq!(canonical_form(&c), canonical_form(&s));
        assert_eq!(canonical_structure(&c), c);
    }

    #[test]
    fn large_symmetric_structures_stay_fast() {
        // 12! leaves without orbit pruning.
        let s = digraph(12, &[]);
        let k = digraph(12, &(0..12).flat_map(|a| (0..12).map(move |b| (a, b))).collect::<Vec<_>>());
        assert_ne!(canonical_form(&s), canonical_form(&k));
    }

    #[test]
    fn cycles_of_different_orientation_patterns() {
        // Directed 4-cycle vs two directed 2-cycles: same degree sequence.
        let c4 = digraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let two = digraph(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert_ne!(canonical_form(&c4), canonical_form(&two));
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
}
