use super::scalar::{name_fragment, parse_name_fragment, Scalar};
use super::space::MetricSpace;
use crate::error::{Error, Result};
use crate::structures::{Signature, Structure, StructureBuilder};

/// A space seen as binary relations `le<r>(x, y) ⟺ d(x, y) ≤ r`, one per
/// threshold. Loops are included.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEncoding<S> {
    thresholds: Vec<S>,
    structure: Structure,
}

impl<S: Scalar> ThresholdEncoding<S> {
    pub fn thresholds(&self) -> &[S] {
        &self.thresholds
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Reads thresholds back from relation names `le<value>`, with `_` in
    /// place of `/`.
    pub fn from_structure(structure: Structure) -> Result<Self> {
        let sig = structure.signature();
        let mut thresholds = Vec::with_capacity(sig.len());
        for i in 0..sig.len() {
            let name = sig.name(i);
            let value = name
                .strip_prefix("le")
                .and_then(parse_name_fragment::<S>)
                .ok_or_else(|| Error::Input(format!("relation `{name}` is not named le<threshold>")))?;
            if sig.arity(i) != 2 {
                return Err(Error::Input(format!("relation `{name}` is not binary")));
            }
            thresholds.push(value);
        }
        check_thresholds(&thresholds)?;
        Ok(Self {
            thresholds,
            structure,
        })
    }
}

fn check_thresholds<S: Scalar>(thresholds: &[S]) -> Result<()> {
    if thresholds.is_empty() {
        return Err(Error::Input("no thresholds".into()));
    }
    if thresholds.iter().any(|r| *r <= S::zero()) {
        return Err(Error::Input("thresholds must be positive".into()));
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("thresholds must be strictly increasing".into()));
    }
    Ok(())
}

pub fn threshold_signature<S: Scalar>(thresholds: &[S]) -> Result<Signature> {
    Signature::new(thresholds.iter().map(|r| (format!("le{}", name_fragment(r)), 2)))
}

pub fn encode_rel<S: Scalar>(m: &MetricSpace<S>, thresholds: &[S]) -> Result<ThresholdEncoding<S>> {
    check_thresholds(thresholds)?;
    let sig = threshold_signature(thresholds)?;
    let mut b = StructureBuilder::new(sig, m.size());
    let tol = m.tolerance();
    for (i, r) in thresholds.iter().enumerate() {
        for x in 0..m.size() {
            for y in 0..m.size() {
                if m.dist(x, y).le_tol(r, tol) {
                    b.add(i, vec![x, y])?;
                }
            }
        }
    }
    Ok(ThresholdEncoding {
        thresholds: thresholds.to_vec(),
        structure: b.build(),
    })
}

/// Thresholds at the realized positive distances, which makes the encoding
/// decodable. A space without positive distances gets the single
/// threshold `1`.
pub fn auto_thresholds<S: Scalar>(m: &MetricSpace<S>) -> Vec<S> {
    let t: Vec<S> = m
        .spectrum(None)
        .expect("no base")
        .into_iter()
        .filter(|r| *r > S::zero())
        .collect();
    if t.is_empty() {
        vec![S::from_i64(1)]
    } else {
        t
    }
}

pub fn encode_auto<S: Scalar>(m: &MetricSpace<S>) -> ThresholdEncoding<S> {
    encode_rel(m, &auto_thresholds(m)).expect("spectrum thresholds are valid")
}

/// The distance of each pair is the least threshold holding on it.
pub fn decode_rel<S: Scalar>(e: &ThresholdEncoding<S>) -> Result<MetricSpace<S>> {
    let s = &e.structure;
    let n = s.size();
    let mut matrix = vec![vec![S::zero(); n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let mut least = None;
            for (i, r) in e.thresholds.iter().enumerate() {
                let fwd = s.holds(i, &[x, y]);
                if fwd != s.holds(i, &[y, x]) {
                    return Err(Error::Decode(format!("le{} is not symmetric on {x} {y}", name_fragment(r))));
                }
                match (fwd, least.is_some()) {
                    (true, false) => least = Some(r.clone()),
                    (false, true) => {
                        return Err(Error::Decode(format!(
                            "thresholds are not monotone on {x} {y}"
                        )))
                    }
                    _ => {}
                }
            }
            let d = least.ok_or_else(|| Error::Decode(format!("no threshold holds on {x} {y}")))?;
            matrix[x][y] = d.clone();
            matrix[y][x] = d;
        }
    }
    MetricSpace::new(matrix)
}
