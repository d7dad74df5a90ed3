//! Joint extensions and amalgams by gluing.
//!
//! A guest structure is glued onto a host: some guest elements are
//! identified with host elements, the rest are appended after the host. The
//! tuples that mix host-only and new elements are free; they are chosen one
//! block at a time, where a block collects the free tuples introduced by a
//! new element `e` whose largest host-only entry is `h`. Candidate blocks
//! come from the oracle's 2-element members and are tried sparsest first;
//! after each block the structure induced on the decided elements must be a
//! member, which is sound because members form an initial segment.

use std::collections::BTreeSet;

use crate::combinatorics::{all_tuples, k_subsets, permutations};
use crate::error::{Error, Result};
use crate::ideals::IdealOracle;
use crate::structures::{
    find_embedding, is_embedding, ElementMap, Structure, StructureBuilder, Tuple,
};

/// Node budget shared by one extension or amalgamation search.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

/// `structure` restricted to `0..host.size()` is the host; `guest_map` embeds
/// the guest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub structure: Structure,
    pub guest_map: ElementMap,
}

/// A member-aged structure of size at most `search_bound` into which both
/// `s` and `b` embed, or `None` if there is none within the bound.
///
/// Errors when `s` or `b` is not member-aged; the message names the
/// offending restriction.
pub fn is_extendable(
    s: &Structure,
    b: &Structure,
    o: &dyn IdealOracle,
    search_bound: usize,
) -> Result<Option<Structure>> {
    Ok(extend(s, b, o, search_bound)?.map(|e| e.structure))
}

/// Like [`is_extendable`], keeping `s` on the leading elements and
/// reporting where `b` lands.
pub fn extend(
    s: &Structure,
    b: &Structure,
    o: &dyn IdealOracle,
    search_bound: usize,
) -> Result<Option<Extension>> {
    require_member_aged(s, o)?;
    require_member_aged(b, o)?;
    if let Some(f) = find_embedding(b, s)? {
        return Ok((s.size() <= search_bound).then(|| Extension {
            structure: s.clone(),
            guest_map: f,
        }));
    }
    if let Some(f) = find_embedding(s, b)? {
        if b.size() > search_bound {
            return Ok(None);
        }
        // relabel b so that the copy of s comes first, in order
        let mut perm = vec![usize::MAX; b.size()];
        for (x, &y) in f.images().iter().enumerate() {
            perm[y] = x;
        }
        let mut next = s.size();
        for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
            *p = next;
            next += 1;
        }
        return Ok(Some(Extension {
            structure: b.relabel(&perm),
            guest_map: ElementMap::new(perm),
        }));
    }
    let mut budget = DEFAULT_SEARCH_BUDGET;
    glue_with_identifications(s, b, &vec![None; b.size()], o, search_bound, &mut budget)
}

fn require_member_aged(s: &Structure, o: &dyn IdealOracle) -> Result<()> {
    if s.signature() != o.signature() {
        return Err(Error::Input(format!(
            "structure signature `{}` differs from the oracle's `{}`",
            s.signature(),
            o.signature()
        )));
    }
    if o.contains(s) {
        return Ok(());
    }
    let n = s.size();
    if n <= 12 {
        for k in 0..=n {
            for x in k_subsets(n, k) {
                let r = s.restrict(&x)?;
                if !o.contains(&r) {
                    return Err(Error::Input(format!(
                        "the restriction to {x:?} is not a member of `{}`",
                        o.name()
                    )));
                }
            }
        }
    }
    Err(Error::Input(format!(
        "the structure is not a member of `{}`",
        o.name()
    )))
}

/// Two embeddings `left_map: base → left` and `right_map: base → right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamInstance {
    base: Structure,
    left: Structure,
    right: Structure,
    left_map: ElementMap,
    right_map: ElementMap,
}

impl AmalgamInstance {
    pub fn new(
        base: Structure,
        left: Structure,
        right: Structure,
        left_map: ElementMap,
        right_map: ElementMap,
    ) -> Result<Self> {
        if !is_embedding(&left_map, &base, &left)? {
            return Err(Error::Input("left map is not an embedding of the base".into()));
        }
        if !is_embedding(&right_map, &base, &right)? {
            return Err(Error::Input("right map is not an embedding of the base".into()));
        }
        Ok(Self {
            base,
            left,
            right,
            left_map,
            right_map,
        })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn left(&self) -> &Structure {
        &self.left
    }

    pub fn right(&self) -> &Structure {
        &self.right
    }

    pub fn left_map(&self) -> &ElementMap {
        &self.left_map
    }

    pub fn right_map(&self) -> &ElementMap {
        &self.right_map
    }
}

/// A solution `(structure, g1, g2)` with `g1 ∘ f1 = g2 ∘ f2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub structure: Structure,
    pub left_embedding: ElementMap,
    pub right_embedding: ElementMap,
}

/// Amalgamates the instance inside the oracle, within `search_bound`
/// elements.
///
/// Returns `None` when no member amalgam of that size exists. In particular
/// that is the answer when `left` or `right` is not a member, since a member
/// amalgam would contain them.
pub fn amalgamate(
    inst: &AmalgamInstance,
    o: &dyn IdealOracle,
    search_bound: usize,
) -> Result<Option<Amalgam>> {
    if inst.base.signature() != o.signature() {
        return Err(Error::Input("instance and oracle signatures differ".into()));
    }
    if !o.contains(&inst.left) || !o.contains(&inst.right) {
        return Ok(None);
    }
    let mut fixed = vec![None; inst.right.size()];
    for a in 0..inst.base.size() {
        fixed[inst.right_map.get(a)] = Some(inst.left_map.get(a));
    }
    let mut budget = DEFAULT_SEARCH_BUDGET;
    let found =
        glue_with_identifications(&inst.left, &inst.right, &fixed, o, search_bound, &mut budget)?;
    Ok(found.map(|ext| Amalgam {
        left_embedding: ElementMap::identity(inst.left.size()),
        right_embedding: ext.guest_map,
        structure: ext.structure,
    }))
}

/// Tries the given identifications first, then every way of additionally
/// identifying free guest elements with free host elements, fewest
/// identifications first.
pub(crate) fn glue_with_identifications(
    host: &Structure,
    guest: &Structure,
    fixed: &[Option<usize>],
    o: &dyn IdealOracle,
    bound: usize,
    budget: &mut usize,
) -> Result<Option<Extension>> {
    let used: BTreeSet<usize> = fixed.iter().flatten().copied().collect();
    let free_guest: Vec<usize> = (0..guest.size()).filter(|&g| fixed[g].is_none()).collect();
    let free_host: Vec<usize> = (0..host.size()).filter(|h| !used.contains(h)).collect();
    let max_k = free_guest.len().min(free_host.len());
    for k in 0..=max_k {
        if host.size() + free_guest.len() - k > bound {
            continue;
        }
        for gs in k_subsets(free_guest.len(), k) {
            for hs in k_subsets(free_host.len(), k) {
                for perm in permutations(k) {
                    let mut f = fixed.to_vec();
                    for (i, &gi) in gs.iter().enumerate() {
                        f[free_guest[gi]] = Some(free_host[hs[perm[i]]]);
                    }
                    if let Some(ext) = glue(host, guest, &f, o, bound, budget)? {
                        return Ok(Some(ext));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// One gluing attempt with a fixed identification. Returns `None` when the
/// identification is inconsistent or no completion is a member.
pub(crate) fn glue(
    host: &Structure,
    guest: &Structure,
    fixed: &[Option<usize>],
    o: &dyn IdealOracle,
    bound: usize,
    budget: &mut usize,
) -> Result<Option<Extension>> {
    let sig = host.signature();
    if guest.signature() != sig {
        return Err(Error::Input("host and guest signatures differ".into()));
    }
    let h_size = host.size();
    let mut map = vec![0; guest.size()];
    let mut next = h_size;
    let mut new_ids = Vec::new();
    for g in 0..guest.size() {
        match fixed[g] {
            Some(h) => map[g] = h,
            None => {
                map[g] = next;
                new_ids.push(next);
                next += 1;
            }
        }
    }
    let total = next;
    if total > bound {
        return Ok(None);
    }
    let fixed_guest: Vec<usize> = (0..guest.size()).filter(|&g| fixed[g].is_some()).collect();
    // the identified parts must induce the same structure
    let f = ElementMap::new(fixed_guest.iter().map(|&g| map[g]).collect());
    let guest_part = guest.restrict(&fixed_guest)?;
    if !f.is_injective() || !is_embedding(&f, &guest_part, host)? {
        return Ok(None);
    }

    let mut builder = host.to_builder(total - h_size);
    for rel in 0..sig.len() {
        for t in guest.table(rel) {
            builder.add(rel, t.iter().map(|&x| map[x]).collect())?;
        }
    }
    let mut in_image = vec![false; total];
    for &y in &map {
        in_image[y] = true;
    }
    let host_only: Vec<usize> = (0..h_size).filter(|&h| !in_image[h]).collect();
    let image_host: Vec<usize> = (0..h_size).filter(|&h| in_image[h]).collect();

    let mut blocks = Vec::new();
    for &e in &new_ids {
        for (hi, &h) in host_only.iter().enumerate() {
            let mut allowed: Vec<usize> = image_host.clone();
            allowed.extend_from_slice(&host_only[..=hi]);
            allowed.extend(h_size..=e);
            allowed.sort_unstable();
            let mut tuples = Vec::new();
            for rel in 0..sig.len() {
                for idx in all_tuples(allowed.len(), sig.arity(rel)) {
                    let t: Tuple = idx.iter().map(|&i| allowed[i]).collect();
                    if t.contains(&e) && t.contains(&h) {
                        tuples.push((rel, t));
                    }
                }
            }
            let mut decided = allowed;
            decided.extend(h_size..e);
            decided.sort_unstable();
            decided.dedup();
            blocks.push(Block {
                e,
                h,
                tuples,
                decided,
            });
        }
    }

    let two_members = match o.complete_up_to() {
        Some(limit) if limit < 2 => None,
        _ => Some(o.members_of_size(2)?),
    };
    let mut search = GlueSearch {
        o,
        blocks: &blocks,
        two_members: two_members.as_deref(),
        budget,
    };
    if search.run(&mut builder, 0)? {
        let structure = builder.build();
        Ok(Some(Extension {
            structure,
            guest_map: ElementMap::new(map),
        }))
    } else {
        Ok(None)
    }
}

struct Block {
    e: usize,
    h: usize,
    tuples: Vec<(usize, Tuple)>,
    // elements whose mutual relations are all fixed once this block is set
    decided: Vec<usize>,
}

struct GlueSearch<'a> {
    o: &'a dyn IdealOracle,
    blocks: &'a [Block],
    two_members: Option<&'a [Structure]>,
    budget: &'a mut usize,
}

const BLOCK_BIT_LIMIT: usize = 20;

impl GlueSearch<'_> {
    fn run(&mut self, builder: &mut StructureBuilder, i: usize) -> Result<bool> {
        if i == self.blocks.len() {
            return Ok(self.o.contains(&builder.clone().build()));
        }
        let block = &self.blocks[i];
        for choice in self.candidates(builder, block)? {
            if *self.budget == 0 {
                return Err(Error::Resource("extension search budget exhausted".into()));
            }
            *self.budget -= 1;
            for &ti in &choice {
                let (rel, t) = &block.tuples[ti];
                builder.add(*rel, t.clone())?;
            }
            let partial = builder.clone().build().restrict(&block.decided)?;
            if self.o.contains(&partial) && self.run(builder, i + 1)? {
                return Ok(true);
            }
            for &ti in &choice {
                let (rel, t) = &block.tuples[ti];
                builder.remove(*rel, t);
            }
        }
        Ok(false)
    }

    /// Subsets of the block's tuples to make true, sparsest first.
    fn candidates(&self, builder: &StructureBuilder, block: &Block) -> Result<Vec<Vec<usize>>> {
        let pair: Vec<usize> = (0..block.tuples.len())
            .filter(|&i| block.tuples[i].1.iter().all(|&x| x == block.e || x == block.h))
            .collect();
        let rest: Vec<usize> = (0..block.tuples.len()).filter(|i| !pair.contains(i)).collect();
        if rest.len() > BLOCK_BIT_LIMIT {
            return Err(Error::Resource(format!(
                "{} free tuples in one gluing block",
                rest.len()
            )));
        }
        let current = builder.clone().build();
        let pair_choices: Vec<Vec<usize>> = match self.two_members {
            Some(members) => {
                let mut set = BTreeSet::new();
                for m in members {
                    for (a, b) in [(0, 1), (1, 0)] {
                        if let Some(c) = self.read_pair(&current, block, &pair, m, a, b) {
                            set.insert(c);
                        }
                    }
                }
                set.into_iter().collect()
            }
            None => {
                if pair.len() > BLOCK_BIT_LIMIT {
                    return Err(Error::Resource(format!(
                        "{} free tuples between two elements",
                        pair.len()
                    )));
                }
                (0u64..1 << pair.len())
                    .map(|mask| {
                        (0..pair.len())
                            .filter(|&k| mask >> k & 1 == 1)
                            .map(|k| pair[k])
                            .collect()
                    })
                    .collect()
            }
        };
        let mut out = Vec::with_capacity(pair_choices.len() << rest.len());
        for p in &pair_choices {
            for mask in 0u64..1 << rest.len() {
                let mut c = p.clone();
                c.extend((0..rest.len()).filter(|&k| mask >> k & 1 == 1).map(|k| rest[k]));
                out.push(c);
            }
        }
        out.sort_by_key(|c| c.len());
        Ok(out)
    }

    /// The pair tuples that `m` makes true when `h ↦ m_a`, `e ↦ m_b`; `None`
    /// if `m` disagrees with the tuples already fixed on `h` or on `e`.
    fn read_pair(
        &self,
        current: &Structure,
        block: &Block,
        pair: &[usize],
        m: &Structure,
        a: usize,
        b: usize,
    ) -> Option<Vec<usize>> {
        let to_m = |x: usize| if x == block.h { a } else { b };
        let sig = current.signature();
        for rel in 0..sig.len() {
            for x in [block.h, block.e] {
                let t = vec![x; sig.arity(rel)];
                let mt = vec![to_m(x); sig.arity(rel)];
                if current.holds(rel, &t) != m.holds(rel, &mt) {
                    return None;
                }
            }
        }
        Some(
            pair.iter()
                .copied()
                .filter(|&ti| {
                    let (rel, t) = &block.tuples[ti];
                    let mt: Vec<usize> = t.iter().map(|&x| to_m(x)).collect();
                    m.holds(*rel, &mt)
                })
                .collect(),
        )
    }
}
