use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embed::embed_line;
use super::packing::age_minus_a_member;
use super::scalar::Scalar;
use super::space::MetricSpace;
use crate::error::{Error, Result};

/// Number of grid steps across the window.
pub const PLACEMENT_GRID: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Placement<S> {
    pub target: usize,
    /// Translation applied to the target's line coordinates, whose least
    /// coordinate is `0`.
    pub offset: S,
    /// Indices of the placed copy in [`OmitGrowth::points`].
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmitGrowth<S> {
    pub points: Vec<S>,
    pub placements: Vec<Placement<S>>,
    /// Targets for which no translation inside the window worked.
    pub unplaced: Vec<usize>,
}

impl<S> OmitGrowth<S> {
    pub fn incomplete(&self) -> bool {
        !self.unplaced.is_empty()
    }
}

/// Places a translated copy of each target inside `[0, window]` so that no
/// distance in the union is forbidden.
///
/// Translations are scanned first-fit on a grid of [`PLACEMENT_GRID`] steps
/// whose origin is shifted by a seed-derived fraction of a step.
pub fn omit_distance_grow<S: Scalar>(
    forbidden: &[S],
    targets: &[MetricSpace<S>],
    window: S,
    seed: u64,
) -> Result<OmitGrowth<S>> {
    if window <= S::zero() {
        return Err(Error::Input("window must be positive".into()));
    }
    let mut coords = Vec::with_capacity(targets.len());
    for (i, t) in targets.iter().enumerate() {
        if !age_minus_a_member(t, forbidden) {
            return Err(Error::Input(format!("target {i} realizes a forbidden distance")));
        }
        let Some(mut c) = embed_line(t) else {
            return Err(Error::Input(format!("target {i} does not embed in the line")));
        };
        if let Some(min) = c.iter().cloned().reduce(|a, b| if b < a { b } else { a }) {
            for x in &mut c {
                *x = x.clone() - min.clone();
            }
        }
        coords.push(c);
    }
    let tol = targets.first().map_or(super::scalar::DEFAULT_TOLERANCE, |t| t.tolerance());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = window.clone() / S::from_i64(PLACEMENT_GRID);
    let shift = step.clone() * S::from_ratio(rng.gen_range(1..65537), 65537);
    let mut out = OmitGrowth {
        points: Vec::new(),
        placements: Vec::new(),
        unplaced: Vec::new(),
    };
    for (ti, c) in coords.iter().enumerate() {
        let span = c.iter().cloned().fold(S::zero(), |a, b| if b > a { b } else { a });
        let mut placed = false;
        for k in 0..=PLACEMENT_GRID {
            let offset = shift.clone() + step.clone() * S::from_i64(k);
            if offset.clone() + span.clone() > window {
                break;
            }
            let fits = c.iter().all(|x| {
                let p = offset.clone() + x.clone();
                out.points.iter().all(|q: &S| {
                    let d = (p.clone() - q.clone()).abs_value();
                    d > S::zero() && !forbidden.iter().any(|a| a.close(&d, tol))
                })
            });
            if fits {
                let start = out.points.len();
                out.points.extend(c.iter().map(|x| offset.clone() + x.clone()));
                out.placements.push(Placement {
                    target: ti,
                    offset,
                    points: (start..out.points.len()).collect(),
                });
                let union = MetricSpace::from_line(&out.points)?;
                if !age_minus_a_member(&union, forbidden) {
                    return Err(Error::Data("placed union realizes a forbidden distance".into()));
                }
                placed = true;
                break;
            }
        }
        if !placed {
            out.unplaced.push(ti);
        }
    }
    Ok(out)
}
