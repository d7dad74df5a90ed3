use super::family::{Ash, AshFlavor};
use crate::combinatorics::{k_subsets, subsets_up_to};

/// Outcome of [`check_ash_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// First colour whose singleton is not a member.
    pub axiom1_failure: Option<usize>,
    /// Colour sets `U` checked for the second axiom.
    pub unions_checked: usize,
    /// First `U` with no fresh colour extending every member inside it,
    /// together with that family of members.
    pub axiom2_failure: Option<(Vec<usize>, Vec<Vec<usize>>)>,
    pub truncation: usize,
    /// A finite non-member; the third axiom itself is about subsets as
    /// large as the whole colour set and has no finite test.
    pub axiom3_witness: Option<Vec<usize>>,
}

impl AxiomReport {
    /// The first two axioms hold up to the truncation.
    pub fn holds(&self) -> bool {
        self.axiom1_failure.is_none() && self.axiom2_failure.is_none()
    }
}

/// Checks singletons exhaustively and the extension axiom on every union of
/// at most `truncation` colours.
///
/// For a union `U` the hardest family is the set of all members inside
/// `U`: a colour extending each of them extends every family with union
/// `U`.
pub fn check_ash_axioms(a: &Ash, truncation: usize) -> AxiomReport {
    let g = a.ground();
    let axiom1_failure = (0..g).find(|&c| !a.member(&[c]));
    let mut unions_checked = 0;
    let mut axiom2_failure = None;
    'unions: for size in 0..=truncation.min(g) {
        for u in k_subsets(g, size) {
            unions_checked += 1;
            let family: Vec<Vec<usize>> = subsets_up_to(u.len(), u.len())
                .into_iter()
                .map(|idx| idx.iter().map(|&i| u[i]).collect::<Vec<usize>>())
                .filter(|f| !f.is_empty() && a.member(f))
                .collect();
            let fresh = (0..g).filter(|c| !u.contains(c)).any(|s| {
                family.iter().all(|f| {
                    let mut with = f.clone();
                    with.push(s);
                    a.member(&with)
                })
            });
            if !fresh {
                axiom2_failure = Some((u, family));
                break 'unions;
            }
        }
    }
    AxiomReport {
        axiom1_failure,
        unions_checked,
        axiom2_failure,
        truncation,
        axiom3_witness: axiom3_witness(a),
    }
}

fn axiom3_witness(a: &Ash) -> Option<Vec<usize>> {
    match a.flavor() {
        AshFlavor::Standard { part_size, cap, .. } => {
            (cap < part_size).then(|| (0..=*cap).collect())
        }
        _ => (2..=a.ground().min(4))
            .flat_map(|k| k_subsets(a.ground(), k))
            .find(|f| !a.member(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ash::{graph_ash, standard_ash};
    use crate::structures::{Signature, Structure};

    #[test]
    fn standard_passes_below_the_number_of_parts() {
        let r = check_ash_axioms(&standard_ash(3, 4, 1).unwrap(), 2);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.unions_checked, 1 + 12 + 66);
        assert_eq!(r.axiom3_witness, Some(vec![0, 1]));
        assert!(check_ash_axioms(&standard_ash(4, 4, 1).unwrap(), 3).holds());
    }

    #[test]
    fn standard_exhausts_once_every_part_is_hit() {
        // a transversal of the three parts leaves no fresh part
        let r = check_ash_axioms(&standard_ash(3, 4, 1).unwrap(), 3);
        let (u, family) = r.axiom2_failure.unwrap();
        assert_eq!(u.len(), 3);
        assert!(family.contains(&u));
    }

    #[test]
    fn finite_path_is_no_ash_graph() {
        let sig = Signature::new([("E", 2)]).unwrap();
        let p = Structure::from_tuples(sig, 6, (1..6).flat_map(|i| [(0, vec![i - 1, i]), (0, vec![i, i - 1])])).unwrap();
        let r = check_ash_axioms(&graph_ash(&p).unwrap(), 2);
        assert_eq!(r.axiom1_failure, None);
        assert!(r.axiom2_failure.is_some());
        assert!(r.axiom3_witness.is_some());
    }
}
