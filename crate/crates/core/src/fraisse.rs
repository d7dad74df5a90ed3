//! Growing one structure whose age is a given ideal, stage by stage.
//!
//! The members of size at most `check_size` are listed by size, each size
//! class in an order shuffled by the seed. Stage `i` takes the `i`-th member;
//! if it does not embed yet it is glued onto the current structure, which is
//! always kept as the leading part of the next one. Limit stages of the
//! transfinite construction have no finite counterpart and do not appear.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideals::{extend, member_codes, IdealOracle};
use crate::structures::{age, canonical_form, embeds, ElementMap, IsoType, Structure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageOutcome {
    /// The member already embedded; nothing changed.
    Present,
    /// The member was glued on; `guest_map` is where it landed.
    Injected { guest_map: ElementMap },
    /// No member extension within the target size.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub index: usize,
    pub member: IsoType,
    pub outcome: StageOutcome,
    pub size_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthLog {
    pub stages: Vec<Stage>,
    /// Some member could not be injected within the target size.
    pub incomplete: bool,
}

impl GrowthLog {
    /// Stages that changed the structure.
    pub fn injections(&self) -> impl Iterator<Item = &Stage> {
        self.stages
            .iter()
            .filter(|s| matches!(s.outcome, StageOutcome::Injected { .. }))
    }

    /// One line per stage: index, member code in hex, outcome, size.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            let what = match &s.outcome {
                StageOutcome::Present => "present".to_string(),
                StageOutcome::Injected { guest_map } => format!("injected {:?}", guest_map.images()),
                StageOutcome::Failed => "failed".to_string(),
            };
            out.push_str(&format!("{} {} {} {}\n", s.index, s.member.to_hex(), what, s.size_after));
        }
        if self.incomplete {
            out.push_str("incomplete\n");
        }
        out
    }
}

/// Members of size at most `check_size` in growth order for `seed`.
pub fn growth_order(o: &dyn IdealOracle, check_size: usize, seed: u64) -> Result<Vec<Structure>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 0..=check_size {
        let mut class = o.members_of_size(n)?;
        class.shuffle(&mut rng);
        out.extend(class);
    }
    Ok(out)
}

/// Grows a member of size at most `target_size` into which every member of
/// size at most `check_size` embeds, as far as the target size allows.
pub fn grow(
    o: &dyn IdealOracle,
    target_size: usize,
    check_size: usize,
    seed: u64,
) -> Result<(Structure, GrowthLog)> {
    let mut g = Structure::empty(o.signature().clone(), 0);
    let mut log = GrowthLog::default();
    if target_size == 0 {
        return Ok((g, log));
    }
    for (index, b) in growth_order(o, check_size, seed)?.into_iter().enumerate() {
        let member = canonical_form(&b);
        let outcome = if embeds(&b, &g)? {
            StageOutcome::Present
        } else if b.size() > target_size {
            StageOutcome::Failed
        } else {
            match extend(&g, &b, o, target_size) {
                Ok(Some(ext)) => {
                    debug_assert_eq!(ext.structure.restrict(&(0..g.size()).collect::<Vec<_>>())?, g);
                    g = ext.structure;
                    StageOutcome::Injected {
                        guest_map: ext.guest_map,
                    }
                }
                Ok(None) | Err(Error::Resource(_)) => StageOutcome::Failed,
                Err(e) => return Err(e),
            }
        };
        log.incomplete |= outcome == StageOutcome::Failed;
        log.stages.push(Stage {
            index,
            member,
            outcome,
            size_after: g.size(),
        });
    }
    Ok((g, log))
}

/// Discrepancy between an age truncation and the member codes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealizationReport {
    /// Members that do not embed.
    pub missing: BTreeSet<IsoType>,
    /// Embedded types that are not members.
    pub extra: BTreeSet<IsoType>,
}

impl RealizationReport {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn verify_realization(g: &Structure, o: &dyn IdealOracle, check_size: usize) -> Result<RealizationReport> {
    let members = member_codes(o, check_size)?;
    let seen = age(g, check_size);
    Ok(RealizationReport {
        missing: members.difference(&seen).cloned().collect(),
        extra: seen.difference(&members).cloned().collect(),
    })
}
