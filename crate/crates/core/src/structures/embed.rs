use std::ops::ControlFlow;

use super::Structure;
use crate::error::{input, Result};

/// A map from the elements `0..domain_size` of one structure to the elements
/// of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementMap {
    images: Vec<usize>,
}

impl ElementMap {
    pub fn new(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn get(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &ElementMap) -> ElementMap {
        ElementMap {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }
}

impl From<Vec<usize>> for ElementMap {
    fn from(images: Vec<usize>) -> Self {
        Self { images }
    }
}

fn same_signature(a: &Structure, b: &Structure) -> Result<()> {
    if a.signature() != b.signature() {
        return input(format!(
            "signature mismatch: `{}` vs `{}`",
            a.signature(),
            b.signature()
        ));
    }
    Ok(())
}

/// Whether `f` is an embedding of `a` into `b`: injective, and every relation
/// holds in `a` exactly where it holds of the image in `b`.
pub fn is_embedding(f: &ElementMap, a: &Structure, b: &Structure) -> Result<bool> {
    same_signature(a, b)?;
    if f.domain_size() != a.size() {
        return input(format!(
            "map has domain size {} but the structure has {} elements",
            f.domain_size(),
            a.size()
        ));
    }
    if f.images().iter().any(|&y| y >= b.size()) {
        return input("map image outside the target structure");
    }
    if !f.is_injective() {
        return Ok(false);
    }
    Ok((0..a.size()).all(|i| consistent_at(a, b, f.images(), i)))
}

/// The embedding of `a` into `b` with the lexicographically least image
/// sequence, if any.
pub fn find_embedding(a: &Structure, b: &Structure) -> Result<Option<ElementMap>> {
    let mut found = None;
    for_each_embedding(a, b, |m| {
        found = Some(ElementMap::new(m.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn embeds(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(find_embedding(a, b)?.is_some())
}

/// Visits every embedding of `a` into `b` in lexicographic order of the
/// image sequence until `visit` breaks.
pub fn for_each_embedding<F>(a: &Structure, b: &Structure, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    same_signature(a, b)?;
    if a.size() > b.size() {
        return Ok(());
    }
    let mut images = Vec::with_capacity(a.size());
    let mut used = vec![false; b.size()];
    let _ = extend(a, b, &mut images, &mut used, &mut visit);
    Ok(())
}

pub fn count_embeddings(a: &Structure, b: &Structure) -> Result<usize> {
    let mut n = 0;
    for_each_embedding(a, b, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// All isomorphisms from `a` onto `b`, in lexicographic order.
pub fn isomorphisms(a: &Structure, b: &Structure) -> Result<Vec<ElementMap>> {
    same_signature(a, b)?;
    let mut out = Vec::new();
    if a.size() != b.size() {
        return Ok(out);
    }
    for_each_embedding(a, b, |m| {
        out.push(ElementMap::new(m.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn are_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(a.size() == b.size() && embeds(a, b)?)
}

fn extend<F>(
    a: &Structure,
    b: &Structure,
    images: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let i = images.len();
    if i == a.size() {
        return visit(images);
    }
    for y in 0..b.size() {
        if used[y] {
            continue;
        }
        images.push(y);
        if consistent_at(a, b, images, i) {
            used[y] = true;
            let flow = extend(a, b, images, used, visit);
            used[y] = false;
            if flow.is_break() {
                images.pop();
                return flow;
            }
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

/// Checks every tuple over `0..=i` that mentions `i`.
pub(crate) fn consistent_at(a: &Structure, b: &Structure, images: &[usize], i: usize) -> bool {
    let sig = a.signature();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for rel in 0..sig.len() {
        let k = sig.arity(rel);
        src.clear();
        src.resize(k, 0);
        dst.clear();
        dst.resize(k, 0);
        loop {
            if src.contains(&i) {
                for (d, &s) in dst.iter_mut().zip(src.iter()) {
                    *d = images[s];
                }
                if a.holds(rel, &src) != b.holds(rel, &dst) {
                    return false;
                }
            }
            // odometer over {0..=i}^k
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                src[pos] += 1;
                if src[pos] <= i {
                    break;
                }
                src[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    true
}
