//! Ideals of finite subsets of the integer line, seen through thresholds
//! `le1 … leD`.
//!
//! A pair with no true threshold is *far*: its distance exceeds `D`. A
//! structure is a member when it is the encoding of some finite set of
//! integers satisfying the condition. Far pairs in different clusters can
//! always be pushed apart, so only clusters connected by near pairs need a
//! consistent placement.

use super::encoding::threshold_signature;
use super::scalar::Rational;
use crate::error::{Error, Result};
use crate::ideals::{check_generator_bound, dedup_members, IdealOracle};
use crate::structures::{Signature, Structure, StructureBuilder};

/// Number of thresholds when a token does not say otherwise.
pub const DEFAULT_LEVELS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridCondition {
    /// Every distance is at least `t`.
    MinDistance(i64),
    /// No distance lies in the list.
    Omit(Vec<i64>),
}

pub struct LineGridOracle {
    name: String,
    levels: usize,
    condition: GridCondition,
    signature: Signature,
}

impl LineGridOracle {
    pub fn new(levels: usize, condition: GridCondition) -> Result<Self> {
        if levels == 0 {
            return Err(Error::Input("at least one threshold level is needed".into()));
        }
        let name = match &condition {
            GridCondition::MinDistance(t) => {
                if *t < 1 || *t as usize > levels {
                    return Err(Error::Input(format!("separation {t} must lie in 1..={levels}")));
                }
                format!("metric-line-t:{t}")
            }
            GridCondition::Omit(a) => {
                if a.iter().any(|&v| v < 1) {
                    return Err(Error::Input("omitted distances must be positive integers".into()));
                }
                let list: Vec<String> = a.iter().map(|v| v.to_string()).collect();
                format!("metric-omit:{}", list.join(","))
            }
        };
        let thresholds: Vec<Rational> = (1..=levels as i64).map(Rational::from_integer).collect();
        Ok(Self {
            name,
            levels,
            condition,
            signature: threshold_signature(&thresholds)?,
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    fn allowed(&self, d: i64) -> bool {
        match &self.condition {
            GridCondition::MinDistance(t) => d >= *t,
            GridCondition::Omit(a) => !a.contains(&d),
        }
    }

    /// Least true threshold of each pair, `None` when far; `None` overall
    /// when the tables are not a symmetric monotone threshold pattern.
    fn levels_of(&self, s: &Structure) -> Option<Vec<Vec<Option<i64>>>> {
        let n = s.size();
        let mut lv = vec![vec![None; n]; n];
        for x in 0..n {
            if (0..self.levels).any(|r| !s.holds(r, &[x, x])) {
                return None;
            }
            for y in x + 1..n {
                let mut least = None;
                for r in 0..self.levels {
                    let h = s.holds(r, &[x, y]);
                    if h != s.holds(r, &[y, x]) || (!h && least.is_some()) {
                        return None;
                    }
                    if h && least.is_none() {
                        least = Some(r as i64 + 1);
                    }
                }
                lv[x][y] = least;
                lv[y][x] = least;
            }
        }
        Some(lv)
    }

    fn place(&self, lv: &[Vec<Option<i64>>], order: &[usize], pos: &mut Vec<Option<i64>>, i: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let anchor = order[..i].iter().copied().find(|&u| lv[u][v].is_some());
        let candidates = match anchor {
            None => vec![0],
            Some(u) => {
                let p = pos[u].expect("placed");
                let d = lv[u][v].expect("near");
                // the first point after the root fixes the orientation
                if i == 1 {
                    vec![p + d]
                } else {
                    vec![p + d, p - d]
                }
            }
        };
        for c in candidates {
            let ok = order[..i].iter().all(|&w| {
                let d = (c - pos[w].expect("placed")).abs();
                let matches = match lv[v][w] {
                    Some(l) => d == l,
                    None => d > self.levels as i64,
                };
                matches && self.allowed(d)
            });
            if ok {
                pos[v] = Some(c);
                if self.place(lv, order, pos, i + 1) {
                    return true;
                }
                pos[v] = None;
            }
        }
        false
    }
}

impl IdealOracle for LineGridOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn contains(&self, s: &Structure) -> bool {
        if s.signature() != &self.signature {
            return false;
        }
        let Some(lv) = self.levels_of(s) else {
            return false;
        };
        let n = s.size();
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            // breadth-first order of the near cluster of `root`
            let mut order = vec![root];
            seen[root] = true;
            let mut k = 0;
            while k < order.len() {
                let u = order[k];
                for v in 0..n {
                    if !seen[v] && lv[u][v].is_some() {
                        seen[v] = true;
                        order.push(v);
                    }
                }
                k += 1;
            }
            let mut pos = vec![None; n];
            if !self.place(&lv, &order, &mut pos, 0) {
                return false;
            }
        }
        true
    }

    fn members_of_size(&self, n: usize) -> Result<Vec<Structure>> {
        check_generator_bound(self, n)?;
        let far = self.levels as i64 + 1;
        let gaps: Vec<i64> = (1..=far).filter(|&g| g == far || self.allowed(g)).collect();
        if n <= 1 {
            return Ok(dedup_members(self, [self.from_positions(&vec![0; n])]));
        }
        let count = (gaps.len() as u64).checked_pow(n as u32 - 1);
        if count.map_or(true, |c| c > 2_000_000) {
            return Err(Error::Resource(format!("too many gap sequences for {n} points")));
        }
        let mut candidates = Vec::new();
        let mut idx = vec![0usize; n - 1];
        loop {
            let mut pos = vec![0i64; n];
            for i in 1..n {
                pos[i] = pos[i - 1] + gaps[idx[i - 1]];
            }
            candidates.push(self.from_positions(&pos));
            let mut i = 0;
            while i < idx.len() && idx[i] + 1 == gaps.len() {
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
            idx[i] += 1;
        }
        Ok(dedup_members(self, candidates))
    }
}

impl LineGridOracle {
    /// The threshold encoding of a set of integers.
    pub fn from_positions(&self, pos: &[i64]) -> Structure {
        let mut b = StructureBuilder::new(self.signature.clone(), pos.len());
        for (x, &px) in pos.iter().enumerate() {
            for (y, &py) in pos.iter().enumerate() {
                let d = (px - py).abs();
                for r in (d.max(1) as usize)..=self.levels {
                    b.add(r - 1, vec![x, y]).expect("in range");
                }
            }
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{is_extendable, is_initial_segment, is_up_directed};

    #[test]
    fn membership_follows_the_line() {
        let o = LineGridOracle::new(6, GridCondition::MinDistance(2)).unwrap();
        assert!(o.contains(&o.from_positions(&[0, 2, 5])));
        assert!(!o.contains(&o.from_positions(&[0, 1])));
        assert!(o.contains(&o.from_positions(&[0, 3, 40, 42])));
        // an equilateral triple of side 2 is not on the line
        let mut b = StructureBuilder::new(o.signature().clone(), 3);
        for x in 0..3 {
            for y in 0..3 {
                for r in if x == y { 0 } else { 1 }..6 {
                    b.add(r, vec![x, y]).unwrap();
                }
            }
        }
        assert!(!o.contains(&b.build()));
    }

    #[test]
    fn far_pairs_inside_a_cluster_are_pinned() {
        // 0, 4, 8 with levels 6: the pair 0, 8 is far but its distance is 8
        let o = LineGridOracle::new(6, GridCondition::Omit(vec![8])).unwrap();
        assert!(!o.contains(&o.from_positions(&[0, 4, 8])));
        assert!(o.contains(&o.from_positions(&[0, 4, 9])));
    }

    #[test]
    fn truncations_are_ideals() {
        let o = LineGridOracle::new(4, GridCondition::MinDistance(2)).unwrap();
        assert_eq!(is_initial_segment(&o, 3).unwrap(), Ok(()));
        assert!(is_up_directed(&o, 2, 4).unwrap().holds());
        let o = LineGridOracle::new(4, GridCondition::Omit(vec![1, 2])).unwrap();
        assert_eq!(is_initial_segment(&o, 3).unwrap(), Ok(()));
    }

    #[test]
    fn far_apart_members_concatenate() {
        let o = LineGridOracle::new(6, GridCondition::MinDistance(2)).unwrap();
        let s = o.from_positions(&[0, 2]);
        let b = o.from_positions(&[0, 3, 6]);
        let c = is_extendable(&s, &b, &o, 5).unwrap().unwrap();
        assert!(o.contains(&c));
        assert_eq!(c.size(), 5);
    }

    #[test]
    fn member_counts() {
        // subsets of ℤ up to translation and reflection, gaps ≥ 3, levels 4:
        // pairs at 3, 4 or far
        let o = LineGridOracle::new(4, GridCondition::MinDistance(3)).unwrap();
        assert_eq!(o.members_of_size(2).unwrap().len(), 3);
    }

    #[test]
    fn bad_parameters() {
        assert!(LineGridOracle::new(3, GridCondition::MinDistance(4)).is_err());
        assert!(LineGridOracle::new(0, GridCondition::Omit(vec![])).is_err());
        assert!(LineGridOracle::new(3, GridCondition::Omit(vec![0])).is_err());
    }
}
