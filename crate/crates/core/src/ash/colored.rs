use super::family::{Ash, AshFlavor};
use crate::error::{Error, Result};
use crate::ideals::{dedup_members, IdealOracle};
use crate::structures::{Signature, Structure, StructureBuilder};

/// Colour sets larger than this are only checked on small subsets and the
/// whole set when the family is not downward closed.
pub const SUBSET_CHECK_LIMIT: usize = 12;

/// Outcome of [`as_membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    /// Index of the first violated condition, 1 to 5.
    Violated(usize),
    /// Conditions 1 to 4 hold and no violation of condition 5 was found,
    /// but some colour set was too large to check every subset.
    Unverified,
}

impl Verdict {
    pub fn is_member(self) -> bool {
        self == Verdict::Member
    }
}

/// The colour of every pair, after conditions 1 to 4.
type Colouring = Vec<Vec<Option<usize>>>;

fn colouring(c: &Structure) -> std::result::Result<Colouring, usize> {
    let n = c.size();
    let sig = c.signature();
    for s in 0..sig.len() {
        if c.table(s).iter().any(|t| t[0] == t[1]) {
            return Err(1);
        }
    }
    for s in 0..sig.len() {
        if c.table(s).iter().any(|t| !c.holds(s, &[t[1], t[0]])) {
            return Err(2);
        }
    }
    let mut col = vec![vec![None; n]; n];
    for s in 0..sig.len() {
        for t in c.table(s) {
            if col[t[0]][t[1]].replace(s).is_some() {
                return Err(3);
            }
        }
    }
    for x in 0..n {
        let mut seen = vec![false; sig.len()];
        for s in col[x].iter().flatten() {
            if std::mem::replace(&mut seen[*s], true) {
                return Err(3);
            }
        }
    }
    if (0..n).any(|x| (0..n).any(|y| x != y && col[x][y].is_none())) {
        return Err(4);
    }
    Ok(col)
}

/// Checks irreflexivity, symmetry, uniqueness of colours per pair and per
/// neighbour, totality, and that every non-empty subset of each vertex's
/// colour set is in the family, in that order.
pub fn as_membership(c: &Structure, a: &Ash) -> Result<Verdict> {
    if c.signature() != a.signature() {
        return Err(Error::Input("the coloured graph is not over the ash's colours".into()));
    }
    let col = match colouring(c) {
        Ok(col) => col,
        Err(i) => return Ok(Verdict::Violated(i)),
    };
    let mut unverified = false;
    for row in &col {
        let set: Vec<usize> = row.iter().flatten().copied().collect();
        match colour_set_ok(a, &set) {
            Some(false) => return Ok(Verdict::Violated(5)),
            None => unverified = true,
            Some(true) => {}
        }
    }
    Ok(if unverified { Verdict::Unverified } else { Verdict::Member })
}

/// Whether every non-empty subset of `set` is a member; `None` when the set
/// is too large to tell.
fn colour_set_ok(a: &Ash, set: &[usize]) -> Option<bool> {
    if set.is_empty() {
        return Some(true);
    }
    if a.downward_closed() {
        return Some(a.member(set));
    }
    if set.len() <= SUBSET_CHECK_LIMIT {
        return Some((1u32..1 << set.len()).all(|mask| {
            let sub: Vec<usize> = (0..set.len()).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            a.member(&sub)
        }));
    }
    let small = crate::combinatorics::subsets_up_to(set.len(), 3)
        .into_iter()
        .skip(1)
        .all(|idx| a.member(&idx.iter().map(|&i| set[i]).collect::<Vec<_>>()));
    if small && a.member(set) {
        None
    } else {
        Some(false)
    }
}

/// Whether `s` can colour `{x, y}` given the colours chosen so far.
fn colour_fits(a: &Ash, col: &Colouring, x: usize, y: usize, s: usize) -> bool {
    [x, y].iter().all(|&v| {
        let mut set: Vec<usize> = col[v].iter().flatten().copied().collect();
        if set.contains(&s) {
            return false;
        }
        set.push(s);
        colour_set_ok(a, &set) != Some(false)
    })
}

fn to_structure(sig: &Signature, col: &Colouring) -> Structure {
    let n = col.len();
    let mut b = StructureBuilder::new(sig.clone(), n);
    for x in 0..n {
        for y in 0..n {
            if let Some(s) = col[x][y] {
                b.add(s, vec![x, y]).expect("in range");
            }
        }
    }
    b.build()
}

/// Colours `pairs[i..]` depth first, least colour first, so an unblocked
/// run is exactly the greedy choice.
struct Colourer<'a> {
    a: &'a Ash,
    pairs: Vec<(usize, usize)>,
    budget: usize,
    nodes: usize,
    backtracked: bool,
    /// Every complete colouring is passed here; returning `true` stops.
    on_complete: &'a mut dyn FnMut(&Colouring) -> bool,
}

impl Colourer<'_> {
    fn run(&mut self, col: &mut Colouring, i: usize) -> Result<bool> {
        if i == self.pairs.len() {
            return Ok((self.on_complete)(col));
        }
        let (x, y) = self.pairs[i];
        let mut tried = false;
        for s in 0..self.a.ground() {
            if !colour_fits(self.a, col, x, y, s) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Resource("colouring search budget exhausted".into()));
            }
            if tried {
                self.backtracked = true;
            }
            tried = true;
            col[x][y] = Some(s);
            col[y][x] = Some(s);
            if self.run(col, i + 1)? {
                return Ok(true);
            }
            col[x][y] = None;
            col[y][x] = None;
        }
        Ok(false)
    }
}

pub const COLOURING_BUDGET: usize = 5_000_000;

/// Outcome of [`directed_join`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    /// `c1` on the first vertices, then `c2`; cross pairs are uncoloured
    /// when `complete` is false.
    pub graph: Structure,
    pub complete: bool,
    /// The least-colour-first choice got stuck and a later colour was
    /// needed somewhere.
    pub backtracked: bool,
}

/// A member containing disjoint copies of `c1` and `c2`, colouring the cross
/// pairs in order with the least colour that keeps every colour set in the
/// family; backtracks only when that choice gets stuck.
pub fn directed_join(c1: &Structure, c2: &Structure, a: &Ash) -> Result<Join> {
    for (i, c) in [c1, c2].into_iter().enumerate() {
        if !as_membership(c, a)?.is_member() {
            return Err(Error::Input(format!("joined graph {} is not a member", i + 1)));
        }
    }
    let (n1, n) = (c1.size(), c1.size() + c2.size());
    let mut col: Colouring = vec![vec![None; n]; n];
    for (c, shift) in [(c1, 0), (c2, n1)] {
        let inner = colouring(c).expect("members pass conditions 1 to 4");
        for x in 0..c.size() {
            for y in 0..c.size() {
                col[x + shift][y + shift] = inner[x][y];
            }
        }
    }
    let pairs = (0..n1).flat_map(|x| (n1..n).map(move |y| (x, y))).collect();
    let mut found = None;
    let mut keep = |c: &Colouring| {
        found = Some(c.clone());
        true
    };
    let mut search = Colourer {
        a,
        pairs,
        budget: COLOURING_BUDGET,
        nodes: 0,
        backtracked: false,
        on_complete: &mut keep,
    };
    let complete = search.run(&mut col, 0)?;
    let backtracked = search.backtracked;
    let graph = to_structure(a.signature(), found.as_ref().unwrap_or(&col));
    Ok(Join {
        graph,
        complete,
        backtracked,
    })
}

/// Every member on `n` vertices, as raw colourings; `visit` returning `true`
/// stops the enumeration. Returns the number of search nodes.
fn for_each_member(a: &Ash, n: usize, visit: &mut dyn FnMut(&Colouring) -> bool) -> Result<usize> {
    let pairs = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let mut search = Colourer {
        a,
        pairs,
        budget: COLOURING_BUDGET,
        nodes: 0,
        backtracked: false,
        on_complete: visit,
    };
    search.run(&mut vec![vec![None; n]; n], 0)?;
    Ok(search.nodes)
}

/// Some member on `n` vertices, if any.
pub fn find_member(a: &Ash, n: usize) -> Result<Option<Structure>> {
    let mut found = None;
    for_each_member(a, n, &mut |c| {
        found = Some(to_structure(a.signature(), c));
        true
    })?;
    Ok(found)
}

/// Exhaustive proof that no member on `vertices` vertices exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCertificate {
    pub vertices: usize,
    pub nodes_explored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeBound {
    /// `parts · cap + 1`: a vertex has distinct colours towards all others
    /// and its colour set meets every part at most `cap` times.
    pub bound: usize,
    /// `None` when `bound + 1` exceeds the exhaustive limit.
    pub certificate: Option<SizeCertificate>,
}

pub fn representation_size_bound(a: &Ash, exhaustive_limit: usize) -> Result<SizeBound> {
    let AshFlavor::Standard { parts, cap, .. } = *a.flavor() else {
        return Err(Error::Input("the size bound needs the standard flavor".into()));
    };
    let bound = parts * cap + 1;
    let vertices = bound + 1;
    if vertices > exhaustive_limit {
        return Ok(SizeBound {
            bound,
            certificate: None,
        });
    }
    let mut any = false;
    let nodes_explored = for_each_member(a, vertices, &mut |_| {
        any = true;
        true
    })?;
    if any {
        return Err(Error::Data(format!("a member on {vertices} vertices exists")));
    }
    Ok(SizeBound {
        bound,
        certificate: Some(SizeCertificate {
            vertices,
            nodes_explored,
        }),
    })
}

/// The coloured graphs of an ash as an ideal oracle.
pub struct AshOracle {
    name: String,
    ash: Ash,
}

impl AshOracle {
    pub fn new(name: impl Into<String>, ash: Ash) -> Self {
        Self {
            name: name.into(),
            ash,
        }
    }

    pub fn ash(&self) -> &Ash {
        &self.ash
    }
}

impl IdealOracle for AshOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn signature(&self) -> &Signature {
        self.ash.signature()
    }

    fn contains(&self, s: &Structure) -> bool {
        matches!(as_membership(s, &self.ash), Ok(Verdict::Member))
    }

    fn members_of_size(&self, n: usize) -> Result<Vec<Structure>> {
        let mut all = Vec::new();
        for_each_member(&self.ash, n, &mut |c| {
            all.push(to_structure(self.ash.signature(), c));
            false
        })?;
        Ok(dedup_members(self, all))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ash::standard_ash;
    use crate::ideals::is_initial_segment;

    fn coloured(a: &Ash, n: usize, edges: &[(usize, usize, usize)]) -> Structure {
        let mut b = StructureBuilder::new(a.signature().clone(), n);
        for &(x, y, s) in edges {
            b.add(s, vec![x, y]).unwrap();
            b.add(s, vec![y, x]).unwrap();
        }
        b.build()
    }

    #[test]
    fn membership_conditions() {
        let a = standard_ash(3, 4, 1).unwrap();
        assert_eq!(as_membership(&coloured(&a, 2, &[(0, 1, 5)]), &a).unwrap(), Verdict::Member);
        // colours 0 and 1 share part 0
        let c = coloured(&a, 3, &[(0, 1, 0), (0, 2, 1), (1, 2, 4)]);
        assert_eq!(as_membership(&c, &a).unwrap(), Verdict::Violated(5));
        assert_eq!(as_membership(&coloured(&a, 3, &[(0, 1, 0)]), &a).unwrap(), Verdict::Violated(4));
        let c = coloured(&a, 3, &[(0, 1, 0), (0, 2, 0), (1, 2, 4)]);
        assert_eq!(as_membership(&c, &a).unwrap(), Verdict::Violated(3));
        let lp = Structure::from_tuples(a.signature().clone(), 1, [(0, vec![0, 0])]).unwrap();
        assert_eq!(as_membership(&lp, &a).unwrap(), Verdict::Violated(1));
        let dir = Structure::from_tuples(a.signature().clone(), 2, [(0, vec![0, 1])]).unwrap();
        assert_eq!(as_membership(&dir, &a).unwrap(), Verdict::Violated(2));
        assert!(as_membership(&Structure::empty(Signature::binary(1), 1), &a).is_err());
    }

    #[test]
    fn joins() {
        let a = standard_ash(3, 4, 1).unwrap();
        let p = coloured(&a, 1, &[]);
        let j = directed_join(&p, &p, &a).unwrap();
        assert!(j.complete && !j.backtracked);
        assert_eq!(as_membership(&j.graph, &a).unwrap(), Verdict::Member);
        let c1 = coloured(&a, 2, &[(0, 1, 0)]);
        let e = coloured(&a, 0, &[]);
        assert_eq!(directed_join(&c1, &e, &a).unwrap().graph, c1);
        // two edges of the same part meet in a 1-factorization of K4
        let c2 = coloured(&a, 2, &[(0, 1, 1)]);
        let j = directed_join(&c1, &c2, &a).unwrap();
        assert!(j.complete);
        assert!(as_membership(&j.graph, &a).unwrap().is_member());
        // edges from different parts cannot be completed with three parts
        let c3 = coloured(&a, 2, &[(0, 1, 4)]);
        assert!(!directed_join(&c1, &c3, &a).unwrap().complete);
        let wide = standard_ash(9, 4, 1).unwrap();
        let d1 = coloured(&wide, 2, &[(0, 1, 0)]);
        let d3 = coloured(&wide, 2, &[(0, 1, 4)]);
        let j = directed_join(&d1, &d3, &wide).unwrap();
        assert!(j.complete && !j.backtracked);
        let g = &j.graph;
        for x in 0..4 {
            let set: Vec<usize> = (0..wide.ground()).filter(|&s| (0..4).any(|y| g.holds(s, &[x, y]))).collect();
            assert!(wide.member(&set));
        }
    }

    #[test]
    fn size_bounds() {
        let a = standard_ash(2, 2, 1).unwrap();
        let b = representation_size_bound(&a, 6).unwrap();
        assert_eq!(b.bound, 3);
        assert_eq!(b.certificate.as_ref().unwrap().vertices, 4);
        // three colours from two parts cannot meet pairwise, so the bound is
        // not attained here; with three parts a 1-factorization of K4 is
        assert!(find_member(&a, 3).unwrap().is_none());
        let three = standard_ash(3, 4, 1).unwrap();
        assert!(as_membership(&find_member(&three, 4).unwrap().unwrap(), &three).unwrap().is_member());
        let one = standard_ash(1, 1, 1).unwrap();
        assert_eq!(representation_size_bound(&one, 6).unwrap().bound, 2);
        assert_eq!(representation_size_bound(&a, 3).unwrap().certificate, None);
    }

    #[test]
    fn oracle_is_hereditary() {
        let o = AshOracle::new("ash:2,2,1", standard_ash(2, 2, 1).unwrap());
        assert_eq!(is_initial_segment(&o, 3).unwrap(), Ok(()));
        assert_eq!(o.members_of_size(4).unwrap().len(), 0);
        // one colour class per pair up to renaming inside a part
        assert_eq!(o.members_of_size(2).unwrap().len(), 4);
    }
}
