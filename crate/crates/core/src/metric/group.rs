use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::scalar::Rational;
use crate::error::{Error, Result};

/// The positive generator of the subgroup of `ℚ` generated by `gens`, or `0`
/// for the trivial group.
pub fn subgroup_generator(gens: &[Rational]) -> Rational {
    let lcm = gens.iter().fold(1i64, |l, g| l.lcm(g.denom()));
    let g = gens
        .iter()
        .fold(0i64, |acc, r| acc.gcd(&(r.numer() * (lcm / r.denom()))));
    Rational::new(g, lcm)
}

pub fn in_subgroup(x: &Rational, generator: &Rational) -> bool {
    if generator.is_zero() {
        x.is_zero()
    } else {
        (x / generator).is_integer()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    /// `y ↦ x' + y − x`
    Translation,
    /// `y ↦ x' − y + x`
    Reflection,
}

/// An isometry of the group, anchored at `x ↦ x_prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupIsometry {
    pub kind: IsometryKind,
    pub x: Rational,
    pub x_prime: Rational,
}

impl GroupIsometry {
    pub fn apply(&self, y: Rational) -> Rational {
        match self.kind {
            IsometryKind::Translation => self.x_prime + y - self.x,
            IsometryKind::Reflection => self.x_prime - y + self.x,
        }
    }
}

/// Extends a partial isometry between points of the group generated by
/// `generators` (within `[-window, window]`) to the translation or the
/// reflection through its first pair.
pub fn group_homogeneity_extend(
    generators: &[Rational],
    window: Rational,
    partial: &[(Rational, Rational)],
) -> Result<Option<GroupIsometry>> {
    let g = subgroup_generator(generators);
    for (s, t) in partial {
        for v in [s, t] {
            if !in_subgroup(v, &g) || v.abs() > window {
                return Err(Error::Input(format!("{v} is not a group element inside the window")));
            }
        }
    }
    for (i, (s1, t1)) in partial.iter().enumerate() {
        for (s2, t2) in &partial[..i] {
            if (s1 - s2).abs() != (t1 - t2).abs() {
                return Err(Error::Input(format!(
                    "not an isometry: |{s1} - {s2}| differs from |{t1} - {t2}|"
                )));
            }
        }
    }
    let (x, x_prime) = partial.first().copied().unwrap_or((Rational::zero(), Rational::zero()));
    for kind in [IsometryKind::Translation, IsometryKind::Reflection] {
        let f = GroupIsometry { kind, x, x_prime };
        if partial.iter().all(|&(s, t)| f.apply(s) == t) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Pairs `x ≤ y` of a finite sample of distances for which `y − x` is
/// missing, or `x + y` is missing while not exceeding the largest sample
/// value.
pub fn subgroup_closure_defects(values: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut v: Vec<Rational> = values.to_vec();
    v.sort();
    v.dedup();
    let Some(&top) = v.last() else {
        return Vec::new();
    };
    let has = |r: &Rational| v.binary_search(r).is_ok();
    let mut out = Vec::new();
    for (i, x) in v.iter().enumerate() {
        for y in &v[i..] {
            let sum = x + y;
            if !has(&(y - x)) || (sum <= top && !has(&sum)) {
                out.push((*x, *y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p)
    }

    #[test]
    fn translation_and_reflection() {
        let f = group_homogeneity_extend(&[q(1)], q(10), &[(q(0), q(2)), (q(1), q(3))]).unwrap().unwrap();
        assert_eq!((f.kind, f.x, f.x_prime), (IsometryKind::Translation, q(0), q(2)));
        let f = group_homogeneity_extend(&[q(1)], q(10), &[(q(0), q(2)), (q(1), q(1))]).unwrap().unwrap();
        assert_eq!(f.kind, IsometryKind::Reflection);
        assert_eq!(f.apply(q(5)), q(-3));
    }

    #[test]
    fn invalid_partial_maps() {
        assert!(group_homogeneity_extend(&[q(1)], q(10), &[(q(0), q(0)), (q(1), q(3))]).is_err());
        let half = Rational::new(1, 2);
        assert!(group_homogeneity_extend(&[q(1)], q(10), &[(half, q(0))]).is_err());
        assert!(group_homogeneity_extend(&[q(1)], q(2), &[(q(0), q(3))]).is_err());
    }

    #[test]
    fn generator_of_rational_subgroups() {
        assert_eq!(subgroup_generator(&[Rational::new(1, 2), Rational::new(1, 3)]), Rational::new(1, 6));
        assert_eq!(subgroup_generator(&[q(4), q(6)]), q(2));
        assert_eq!(subgroup_generator(&[]), q(0));
        assert!(in_subgroup(&Rational::new(5, 6), &Rational::new(1, 6)));
    }

    #[test]
    fn closure_defects() {
        let v: Vec<Rational> = (0..6).map(q).collect();
        assert!(subgroup_closure_defects(&v).is_empty());
        let d = subgroup_closure_defects(&[q(0), q(1), q(3)]);
        assert!(d.contains(&(q(1), q(3))));
    }
}
