//! Binary structures as a single ternary relation over an arithmetic spine.
//!
//! The spine `0 … K-1` carries the addition triples `x + y = z` with
//! `(1, 0, 1)` removed and `(1, 0, 0)` added, which makes `0`, `1` and the
//! successor definable. A core pair `(x, y)` in relation `z` becomes the
//! triple `(x, y, z)`.

use std::collections::BTreeSet;

use crate::combinatorics::permutations;
use crate::error::{Error, Result};
use crate::structures::{isomorphisms, Signature, Structure, StructureBuilder};

pub type Triple = [usize; 3];

/// Spine elements are `0..spine_size`, core elements follow in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryStructure {
    spine_size: usize,
    core_size: usize,
    triples: BTreeSet<Triple>,
}

impl TernaryStructure {
    pub fn spine_size(&self) -> usize {
        self.spine_size
    }

    pub fn core_size(&self) -> usize {
        self.core_size
    }

    pub fn size(&self) -> usize {
        self.spine_size + self.core_size
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    /// The same triples as a structure over `T/3`.
    pub fn to_structure(&self) -> Structure {
        let mut b = StructureBuilder::new(ternary_signature(), self.size());
        for t in &self.triples {
            b.add(0, t.to_vec()).expect("in range");
        }
        b.build()
    }
}

pub fn ternary_signature() -> Signature {
    Signature::new([("T", 3)]).expect("valid")
}

/// The spine triples on `0..k`.
pub fn spine_triples(k: usize) -> BTreeSet<Triple> {
    let mut out: BTreeSet<Triple> = (0..k)
        .flat_map(|x| (0..k - x).map(move |y| [x, y, x + y]))
        .filter(|t| *t != [1, 0, 1])
        .collect();
    if k >= 2 {
        out.insert([1, 0, 0]);
    }
    out
}

/// Relation `z` of `a` becomes spine element `z`. Needs `k ≥ 3` and
/// `k ≥ z + 2` for every non-empty relation `z`, so that every used index
/// has a successor on the spine.
pub fn encode(a: &Structure, k: usize) -> Result<TernaryStructure> {
    if k < 3 {
        return Err(Error::Input(format!("spine size {k} is below 3")));
    }
    let sig = a.signature();
    if !sig.is_binary() {
        return Err(Error::Input("only binary relations can be encoded".into()));
    }
    if sig.len() > k {
        return Err(Error::Input(format!("relation index {} is outside the spine 0..{k}", sig.len() - 1)));
    }
    if let Some(z) = (0..sig.len()).rev().find(|&z| !a.table(z).is_empty()) {
        if z + 2 > k {
            return Err(Error::Input(format!("relation {z} is used, so the spine needs at least {} elements", z + 2)));
        }
    }
    let mut triples = spine_triples(k);
    for z in 0..sig.len() {
        triples.extend(a.table(z).iter().map(|t| [t[0] + k, t[1] + k, z]));
    }
    Ok(TernaryStructure {
        spine_size: k,
        core_size: a.size(),
        triples,
    })
}

/// Spine elements of a ternary structure in numeric order, found through
/// `0`, `1` and successor.
pub fn recover_spine(t: &Structure) -> Result<Vec<usize>> {
    let sig = t.signature();
    if sig.len() != 1 || sig.arity(0) != 3 {
        return Err(Error::Input("expected one ternary relation".into()));
    }
    let unique = |what: &str, found: Vec<usize>| match found[..] {
        [x] => Ok(x),
        [] => Err(Error::Decode(format!("no element can be {what}"))),
        _ => Err(Error::Decode(format!("{what} is ambiguous: {found:?}"))),
    };
    let n = t.size();
    let zero = unique("0", (0..n).filter(|&x| t.holds(0, &[x, x, x])).collect())?;
    let one = unique("1", (0..n).filter(|&x| x != zero && t.holds(0, &[x, zero, zero])).collect())?;
    let mut spine = vec![zero];
    let mut cur = zero;
    loop {
        let next: Vec<usize> = (0..n).filter(|&x| t.holds(0, &[cur, one, x])).collect();
        if next.is_empty() {
            break;
        }
        let x = unique(&format!("the successor of {}", spine.len() - 1), next)?;
        if spine.contains(&x) {
            return Err(Error::Decode(format!("the successor chain returns to element {x}")));
        }
        spine.push(x);
        cur = x;
    }
    if spine.len() < 3 {
        return Err(Error::Decode(format!("the spine has only {} elements", spine.len())));
    }
    Ok(spine)
}

/// Inverse of [`encode`] for any numbering of its output. Core elements keep
/// their relative order.
pub fn decode(t: &Structure, target: &Signature) -> Result<Structure> {
    if !target.is_binary() {
        return Err(Error::Input("the target signature must be binary".into()));
    }
    let spine = recover_spine(t)?;
    let k = spine.len();
    let mut number = vec![None; t.size()];
    for (i, &x) in spine.iter().enumerate() {
        number[x] = Some(i);
    }
    let core: Vec<usize> = (0..t.size()).filter(|&x| number[x].is_none()).collect();
    let mut core_index = vec![None; t.size()];
    for (i, &x) in core.iter().enumerate() {
        core_index[x] = Some(i);
    }
    let mut seen_spine = BTreeSet::new();
    let mut b = StructureBuilder::new(target.clone(), core.len());
    for tr in t.table(0) {
        match (number[tr[0]], number[tr[1]], number[tr[2]]) {
            (Some(x), Some(y), Some(z)) => {
                seen_spine.insert([x, y, z]);
            }
            (None, None, Some(z)) => {
                if z >= target.len() {
                    return Err(Error::Decode(format!("relation {z} is not in the target signature")));
                }
                let (x, y) = (core_index[tr[0]].expect("core"), core_index[tr[1]].expect("core"));
                b.add(z, vec![x, y])?;
            }
            _ => return Err(Error::Decode(format!("triple {tr:?} mixes spine and core"))),
        }
    }
    if seen_spine != spine_triples(k) {
        return Err(Error::Decode("the spine triples are not addition on the spine".into()));
    }
    Ok(b.build())
}

pub const RIGIDITY_CORE_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub core_isomorphisms: usize,
    pub encoding_isomorphisms: usize,
    /// Every encoding isomorphism is the identity on the spine.
    pub spine_fixed: bool,
    /// The core parts of the encoding isomorphisms are exactly the core
    /// isomorphisms.
    pub restrictions_match: bool,
    /// Every core isomorphism extended by the identity is an encoding
    /// isomorphism.
    pub lifts_hold: bool,
}

impl RigidityReport {
    pub fn holds(&self) -> bool {
        self.core_isomorphisms == self.encoding_isomorphisms
            && self.spine_fixed
            && self.restrictions_match
            && self.lifts_hold
    }
}

/// Compares the isomorphisms `a → a2`, found over all bijections, with the
/// isomorphisms between their encodings.
pub fn rigidity_check(a: &Structure, a2: &Structure, k: usize) -> Result<RigidityReport> {
    if a.signature() != a2.signature() {
        return Err(Error::Input("the cores have different signatures".into()));
    }
    if a.size().max(a2.size()) > RIGIDITY_CORE_LIMIT {
        return Err(Error::Resource(format!("cores above {RIGIDITY_CORE_LIMIT} elements")));
    }
    let core_isos: BTreeSet<Vec<usize>> = if a.size() == a2.size() {
        permutations(a.size()).into_iter().filter(|p| a.relabel(p) == *a2).collect()
    } else {
        BTreeSet::new()
    };
    let (ea, eb) = (encode(a, k)?, encode(a2, k)?);
    let (sa, sb) = (ea.to_structure(), eb.to_structure());
    let maps = isomorphisms(&sa, &sb)?;
    let spine_fixed = maps.iter().all(|m| (0..k).all(|x| m.get(x) == x));
    let restrictions: BTreeSet<Vec<usize>> = maps
        .iter()
        .filter(|m| (0..k).all(|x| m.get(x) == x))
        .map(|m| (k..m.domain_size()).map(|x| m.get(x) - k).collect())
        .collect();
    let lifts_hold = core_isos.iter().all(|p| {
        let full: Vec<usize> = (0..k).chain(p.iter().map(|&x| x + k)).collect();
        sa.relabel(&full) == sb
    });
    Ok(RigidityReport {
        core_isomorphisms: core_isos.len(),
        encoding_isomorphisms: maps.len(),
        spine_fixed,
        restrictions_match: restrictions == core_isos,
        lifts_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loop_vertex(sig: &Signature, rel: usize) -> Structure {
        Structure::from_tuples(sig.clone(), 1, [(rel, vec![0, 0])]).unwrap()
    }

    #[test]
    fn spine_of_three() {
        let t = encode(&Structure::empty(Signature::binary(1), 0), 3).unwrap();
        let want: BTreeSet<Triple> = [[0, 0, 0], [0, 1, 1], [1, 1, 2], [0, 2, 2], [2, 0, 2], [1, 0, 0]].into();
        assert_eq!(t.triples(), &want);
        assert_eq!(t.core_size(), 0);
    }

    #[test]
    fn one_loop() {
        let sig = Signature::binary(1);
        let t = encode(&loop_vertex(&sig, 0), 4).unwrap();
        let mut want = spine_triples(4);
        want.insert([4, 4, 0]);
        assert_eq!(t.triples(), &want);
    }

    #[test]
    fn encode_errors() {
        let sig = Signature::binary(3);
        assert!(encode(&Structure::empty(sig.clone(), 1), 2).is_err());
        assert!(encode(&loop_vertex(&sig, 2), 3).is_err());
        assert!(encode(&loop_vertex(&sig, 2), 4).is_ok());
        assert!(encode(&Structure::empty(Signature::binary(4), 1), 3).is_err());
        let tern = Structure::empty(ternary_signature(), 1);
        assert!(encode(&tern, 4).is_err());
    }

    #[test]
    fn decode_errors() {
        let sig = Signature::binary(1);
        let t = encode(&Structure::empty(sig.clone(), 2), 4).unwrap().to_structure();
        let mut b = t.to_builder(0);
        b.add(0, vec![4, 4, 4]).unwrap();
        assert!(matches!(decode(&b.build(), &sig), Err(Error::Decode(_))));
        let mut b = t.to_builder(0);
        b.add(0, vec![4, 1, 5]).unwrap();
        assert!(matches!(decode(&b.build(), &sig), Err(Error::Decode(_))));
        let mut b = t.to_builder(0);
        b.remove(0, &[1, 0, 0]);
        assert!(matches!(decode(&b.build(), &sig), Err(Error::Decode(_))));
        let mut b = t.to_builder(0);
        b.add(0, vec![4, 5, 1]).unwrap();
        assert!(matches!(decode(&b.build(), &sig), Err(Error::Decode(_))));
    }

    #[test]
    fn permuted_encoding_decodes_to_a_relabeling() {
        let sig = Signature::binary(2);
        let a = Structure::from_tuples(sig.clone(), 3, [(0, vec![0, 1]), (1, vec![2, 2]), (0, vec![1, 2])]).unwrap();
        let t = encode(&a, 4).unwrap().to_structure();
        // spine 2 trades places with the first core element, the other two
        // core elements swap
        let perm = [0, 1, 4, 3, 2, 6, 5];
        let d = decode(&t.relabel(&perm), &sig).unwrap();
        assert_eq!(d, a.relabel(&[0, 2, 1]));
    }

    #[test]
    fn rigidity_examples() {
        let sig = Signature::binary(1);
        let l = loop_vertex(&sig, 0);
        let r = rigidity_check(&l, &l, 4).unwrap();
        assert!(r.holds());
        assert_eq!((r.core_isomorphisms, r.encoding_isomorphisms), (1, 1));
        let p = Structure::empty(sig.clone(), 1);
        let r = rigidity_check(&l, &p, 4).unwrap();
        assert!(r.holds() && r.encoding_isomorphisms == 0);
        let many = Structure::empty(sig, 5);
        assert!(matches!(rigidity_check(&many, &many, 4), Err(Error::Resource(_))));
    }

    #[test]
    fn identity_lift_is_an_automorphism() {
        let sig = Signature::binary(2);
        let a = Structure::from_tuples(sig, 2, [(0, vec![0, 1]), (1, vec![1, 0])]).unwrap();
        let t = encode(&a, 5).unwrap().to_structure();
        assert_eq!(t.relabel(&(0..t.size()).collect::<Vec<_>>()), t);
    }

    /// Isomorphisms counted over every bijection of the ternary structures.
    fn brute_force_iso_count(a: &Structure, b: &Structure) -> usize {
        permutations(a.size()).into_iter().filter(|p| a.relabel(p) == *b).count()
    }

    #[test]
    fn encoding_isomorphisms_match_bijection_scan() {
        let sig = Signature::binary(2);
        let a = Structure::from_tuples(sig.clone(), 2, [(0, vec![0, 1]), (0, vec![1, 0])]).unwrap();
        let b = Structure::from_tuples(sig, 2, [(1, vec![0, 1])]).unwrap();
        for (x, y) in [(&a, &a), (&a, &b), (&b, &b)] {
            let r = rigidity_check(x, y, 4).unwrap();
            let (ex, ey) = (encode(x, 4).unwrap().to_structure(), encode(y, 4).unwrap().to_structure());
            assert_eq!(r.encoding_isomorphisms, brute_force_iso_count(&ex, &ey));
            assert!(r.holds());
        }
    }

    fn small_core() -> impl Strategy<Value = Structure> {
        (0usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 2 * n * n).prop_map(move |bits| {
                let sig = Signature::binary(2);
                let tuples = (0..2).flat_map(|r| (0..n).flat_map(move |x| (0..n).map(move |y| (r, x, y))));
                let chosen: Vec<_> = tuples.zip(bits.clone()).filter(|(_, b)| *b).map(|((r, x, y), _)| (r, vec![x, y])).collect();
                Structure::from_tuples(sig, n, chosen).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(a in small_core(), k in 3usize..7) {
            let t = encode(&a, k).unwrap();
            prop_assert_eq!(decode(&t.to_structure(), a.signature()).unwrap(), a);
        }

        #[test]
        fn verdict_is_stable_in_the_spine(a in small_core(), b in small_core()) {
            let r4 = rigidity_check(&a, &b, 4).unwrap();
            let r5 = rigidity_check(&a, &b, 5).unwrap();
            prop_assert!(r4.holds() && r5.holds());
            prop_assert_eq!(r4.core_isomorphisms, r5.core_isomorphisms);
        }
    }
}
