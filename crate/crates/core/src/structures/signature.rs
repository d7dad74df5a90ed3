use std::fmt;
use std::sync::Arc;

use crate::error::{input, Result};

/// One relation symbol: a name and a positive arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols.
///
/// Two signatures are equal only when their entry lists are equal in order,
/// so a structure never silently swaps the meaning of two indices. Cloning is
/// cheap: the entries are shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    entries: Arc<[Entry]>,
}

impl Signature {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let entries: Vec<Entry> = entries
            .into_iter()
            .map(|(name, arity)| Entry {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, e) in entries.iter().enumerate() {
            if e.arity == 0 {
                return input(format!("relation `{}` has arity 0", e.name));
            }
            if !valid_name(&e.name) {
                return input(format!("invalid relation name `{}`", e.name));
            }
            if entries[..i].iter().any(|f| f.name == e.name) {
                return input(format!("duplicate relation name `{}`", e.name));
            }
        }
        Ok(Self {
            entries: entries.into(),
        })
    }

    pub fn empty() -> Self {
        Self {
            entries: Vec::new().into(),
        }
    }

    /// `k` binary relations named `R0`, ..., `R{k-1}`.
    pub fn binary(k: usize) -> Self {
        Self::new((0..k).map(|i| (format!("R{i}"), 2))).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn arity(&self, index: usize) -> usize {
        self.entries[index].arity
    }

    pub fn name(&self, index: usize) -> &str {
        &self.entries[index].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// Indices whose arity lies in `arities`.
    pub fn indices_with_arity(&self, arities: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| arities.contains(&self.arity(i)))
            .collect()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|e| e.arity == 2)
    }

    pub fn max_arity(&self) -> usize {
        self.entries.iter().map(|e| e.arity).max().unwrap_or(0)
    }

    /// The sub-signature on `indices`, keeping the original relative order.
    ///
    /// Returns the kept indices in ascending order alongside it.
    pub fn restrict(&self, indices: &[usize]) -> Result<(Signature, Vec<usize>)> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return input(format!(
                "relation index {bad} out of range for a signature of {} relations",
                self.len()
            ));
        }
        let mut kept: Vec<usize> = indices.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let sig = Signature {
            entries: kept.iter().map(|&i| self.entries[i].clone()).collect(),
        };
        Ok((sig, kept))
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", e.name, e.arity)?;
        }
        Ok(())
    }
}
