use std::collections::BTreeSet;

use super::Signature;
use crate::error::{input, Result};

/// A tuple of elements.
pub type Tuple = Vec<usize>;

// Relations whose full table has at most this many cells also keep a bitset.
const DENSE_LIMIT: usize = 1 << 16;

/// A finite relational structure on the elements `0..size`.
///
/// Every relation is total: a tuple is true exactly when it is stored in the
/// relation's table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    signature: Signature,
    size: usize,
    tables: Vec<BTreeSet<Tuple>>,
    // Derived from `tables`; kept for constant-time lookups on small tables.
    dense: Vec<Option<Vec<u64>>>,
}

impl Structure {
    pub fn new(signature: Signature, size: usize, tables: Vec<BTreeSet<Tuple>>) -> Result<Self> {
        if tables.len() != signature.len() {
            return input(format!(
                "expected {} relation tables, got {}",
                signature.len(),
                tables.len()
            ));
        }
        for (i, table) in tables.iter().enumerate() {
            for t in table {
                check_tuple(&signature, size, i, t)?;
            }
        }
        let dense = build_dense(&signature, size, &tables);
        Ok(Self {
            signature,
            size,
            tables,
            dense,
        })
    }

    /// The structure on `size` elements where no relation holds anywhere.
    pub fn empty(signature: Signature, size: usize) -> Self {
        let tables = vec![BTreeSet::new(); signature.len()];
        Self::new(signature, size, tables).expect("empty tables are valid")
    }

    pub fn from_tuples<I>(signature: Signature, size: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Tuple)>,
    {
        let mut b = StructureBuilder::new(signature, size);
        for (rel, t) in tuples {
            b.add(rel, t)?;
        }
        Ok(b.build())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn table(&self, rel: usize) -> &BTreeSet<Tuple> {
        &self.tables[rel]
    }

    pub fn tables(&self) -> &[BTreeSet<Tuple>] {
        &self.tables
    }

    pub fn tuple_count(&self) -> usize {
        self.tables.iter().map(BTreeSet::len).sum()
    }

    /// Whether relation `rel` holds at `tuple`. Entries must be in range.
    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        match &self.dense[rel] {
            Some(bits) => {
                let idx = dense_index(self.size, tuple);
                bits[idx / 64] >> (idx % 64) & 1 == 1
            }
            None => self.tables[rel].contains(tuple),
        }
    }

    /// The substructure induced on `subset`, renumbered by increasing
    /// original index.
    pub fn restrict(&self, subset: &[usize]) -> Result<Structure> {
        if let Some(&bad) = subset.iter().find(|&&x| x >= self.size) {
            return input(format!(
                "element {bad} out of range for a structure of size {}",
                self.size
            ));
        }
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut new_index = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            new_index[x] = i;
        }
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .filter(|t| t.iter().all(|&x| new_index[x] != usize::MAX))
                    .map(|t| t.iter().map(|&x| new_index[x]).collect())
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(self.signature.clone(), elems.len(), tables))
    }

    /// Forget every relation not listed in `indices`.
    pub fn reduct(&self, indices: &[usize]) -> Result<Structure> {
        let (sig, kept) = self.signature.restrict(indices)?;
        let tables = kept.iter().map(|&i| self.tables[i].clone()).collect();
        Ok(Self::new_unchecked(sig, self.size, tables))
    }

    /// Reduct by relation names.
    pub fn reduct_named(&self, names: &[&str]) -> Result<Structure> {
        let mut indices = Vec::with_capacity(names.len());
        for name in names {
            match self.signature.index_of(name) {
                Some(i) => indices.push(i),
                None => return input(format!("unknown relation `{name}`")),
            }
        }
        self.reduct(&indices)
    }

    /// The isomorphic copy in which element `x` becomes `perm[x]`.
    ///
    /// Panics if `perm` is not a permutation of `0..size`.
    pub fn relabel(&self, perm: &[usize]) -> Structure {
        assert_eq!(perm.len(), self.size, "relabeling must cover every element");
        let mut seen = vec![false; self.size];
        for &p in perm {
            assert!(p < self.size && !seen[p], "relabeling must be a bijection");
            seen[p] = true;
        }
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .map(|t| t.iter().map(|&x| perm[x]).collect())
                    .collect()
            })
            .collect();
        Self::new_unchecked(self.signature.clone(), self.size, tables)
    }

    /// `self` on `0..n` followed by a copy of `other` on `n..n+m`, with no
    /// tuple mixing the two parts.
    pub fn disjoint_union(&self, other: &Structure) -> Result<Structure> {
        if self.signature != other.signature {
            return input("disjoint union of structures with different signatures");
        }
        let shift = self.size;
        let tables = self
            .tables
            .iter()
            .zip(&other.tables)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|t| t.iter().map(|&x| x + shift).collect()))
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(
            self.signature.clone(),
            self.size + other.size,
            tables,
        ))
    }

    /// Returns a builder pre-loaded with this structure, optionally with
    /// `extra` fresh elements appended.
    pub fn to_builder(&self, extra: usize) -> StructureBuilder {
        StructureBuilder {
            signature: self.signature.clone(),
            size: self.size + extra,
            tables: self.tables.clone(),
        }
    }

    pub(crate) fn new_unchecked(
        signature: Signature,
        size: usize,
        tables: Vec<BTreeSet<Tuple>>,
    ) -> Self {
        let dense = build_dense(&signature, size, &tables);
        Self {
            signature,
            size,
            tables,
            dense,
        }
    }
}

/// Incremental construction of a [`Structure`].
#[derive(Clone, Debug)]
pub struct StructureBuilder {
    signature: Signature,
    size: usize,
    tables: Vec<BTreeSet<Tuple>>,
}

impl StructureBuilder {
    pub fn new(signature: Signature, size: usize) -> Self {
        let tables = vec![BTreeSet::new(); signature.len()];
        Self {
            signature,
            size,
            tables,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Adds a true tuple. Returns `false` if it was already present.
    pub fn add(&mut self, rel: usize, tuple: Tuple) -> Result<bool> {
        if rel >= self.signature.len() {
            return input(format!("relation index {rel} out of range"));
        }
        check_tuple(&self.signature, self.size, rel, &tuple)?;
        Ok(self.tables[rel].insert(tuple))
    }

    pub fn add_named(&mut self, name: &str, tuple: Tuple) -> Result<bool> {
        match self.signature.index_of(name) {
            Some(rel) => self.add(rel, tuple),
            None => input(format!("unknown relation `{name}`")),
        }
    }

    pub fn remove(&mut self, rel: usize, tuple: &[usize]) -> bool {
        self.tables[rel].remove(tuple)
    }

    pub fn build(self) -> Structure {
        Structure::new_unchecked(self.signature, self.size, self.tables)
    }
}

fn check_tuple(sig: &Signature, size: usize, rel: usize, t: &[usize]) -> Result<()> {
    if t.len() != sig.arity(rel) {
        return input(format!(
            "tuple {t:?} has length {} but `{}` has arity {}",
            t.len(),
            sig.name(rel),
            sig.arity(rel)
        ));
    }
    if let Some(&bad) = t.iter().find(|&&x| x >= size) {
        return input(format!(
            "element {bad} out of range for a structure of size {size}"
        ));
    }
    Ok(())
}

fn dense_index(size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * size + x)
}

fn build_dense(sig: &Signature, size: usize, tables: &[BTreeSet<Tuple>]) -> Vec<Option<Vec<u64>>> {
    tables
        .iter()
        .enumerate()
        .map(|(i, table)| {
            let cells = size.checked_pow(sig.arity(i) as u32)?;
            if cells > DENSE_LIMIT {
                return None;
            }
            let mut bits = vec![0u64; cells.div_ceil(64).max(1)];
            for t in table {
                let idx = dense_index(size, t);
                bits[idx / 64] |= 1 << (idx % 64);
            }
            Some(bits)
        })
        .collect()
}
