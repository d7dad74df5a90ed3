use nalgebra::{DMatrix, SymmetricEigen};

use super::scalar::{Rational, Scalar};
use super::space::{euclidean, MetricSpace};
use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};

/// Coordinates on the line with `x_0 = 0` and `x_1 = d(0, 1)`, or `None`
/// when the space does not embed.
pub fn embed_line<S: Scalar>(m: &MetricSpace<S>) -> Option<Vec<S>> {
    let n = m.size();
    let tol = m.tolerance();
    let mut x = vec![S::zero(); n];
    if n >= 2 {
        x[1] = m.dist(0, 1);
    }
    for i in 2..n {
        let d0 = m.dist(0, i);
        // of ±d(0, i) only one can also sit at distance d(1, i) from x_1
        let plus = (d0.clone() - x[1].clone()).abs_value();
        x[i] = if plus.close(&m.dist(1, i), tol) { d0 } else { -d0 };
    }
    let ok = (0..n).all(|i| {
        (i + 1..n).all(|j| (x[i].clone() - x[j].clone()).abs_value().close(&m.dist(i, j), tol))
    });
    ok.then_some(x)
}

/// Tolerances of the Gram test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramTolerance {
    /// Eigenvalues down to `-eigen · trace` count as zero.
    pub eigen: f64,
    /// Eigenvalues above `eigen · λ_max` count towards the rank.
    pub rank: f64,
    /// Relative error allowed on re-computed distances.
    pub distance: f64,
}

impl Default for GramTolerance {
    fn default() -> Self {
        Self {
            eigen: 1e-9,
            rank: 1e-9,
            distance: 1e-6,
        }
    }
}

/// Coordinates in `ℝ^dim` realizing every distance, or `None`.
pub fn embed_euclid<S: Scalar>(m: &MetricSpace<S>, dim: usize) -> Option<Vec<Vec<f64>>> {
    embed_euclid_with(m, dim, &GramTolerance::default())
}

/// [`embed_euclid`] with explicit tolerances.
///
/// Point `0` goes to the origin; the Gram matrix
/// `G(x, y) = (d(0,x)² + d(0,y)² − d(x,y)²) / 2` over the other points must
/// be positive semidefinite of rank at most `dim`, and the coordinates come
/// from its eigendecomposition.
pub fn embed_euclid_with<S: Scalar>(
    m: &MetricSpace<S>,
    dim: usize,
    tol: &GramTolerance,
) -> Option<Vec<Vec<f64>>> {
    let n = m.size();
    if n == 0 {
        return Some(Vec::new());
    }
    let d = |i: usize, j: usize| m.dist(i, j).to_f64();
    let k = n - 1;
    let mut coords = vec![vec![0.0; dim]; n];
    if k > 0 {
        let g = DMatrix::from_fn(k, k, |a, b| {
            let (x, y) = (a + 1, b + 1);
            (d(0, x).powi(2) + d(0, y).powi(2) - d(x, y).powi(2)) / 2.0
        });
        let trace = g.trace().max(f64::MIN_POSITIVE);
        let eig = SymmetricEigen::new(g);
        let lmax = eig.eigenvalues.max();
        if eig.eigenvalues.iter().any(|&l| l < -tol.eigen * trace) {
            return None;
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let rank = order.iter().take_while(|&&i| eig.eigenvalues[i] > tol.rank * lmax).count();
        if rank > dim {
            return None;
        }
        for (axis, &i) in order.iter().take(rank).enumerate() {
            let s = eig.eigenvalues[i].sqrt();
            for p in 0..k {
                coords[p + 1][axis] = s * eig.eigenvectors[(p, i)];
            }
        }
    }
    let ok = (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let want = d(i, j);
            (euclidean(&coords[i], &coords[j]) - want).abs() <= tol.distance * want
        })
    });
    ok.then_some(coords)
}

/// The two sides of the finite `n + 3` criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPlus3Report {
    /// Every subspace with at most `dim + 3` points embeds.
    pub subsets_embed: bool,
    /// First subspace that does not.
    pub failing_subset: Option<Vec<usize>>,
    pub whole_embeds: bool,
}

impl NPlus3Report {
    pub fn consistent(&self) -> bool {
        self.subsets_embed == self.whole_embeds
    }
}

pub fn check_n_plus_3<S: Scalar>(m: &MetricSpace<S>, dim: usize) -> Result<NPlus3Report> {
    if dim == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    let n = m.size();
    let mut failing_subset = None;
    'sizes: for size in 3..=n.min(dim + 3) {
        for x in k_subsets(n, size) {
            if embed_euclid(&m.restrict(&x)?, dim).is_none() {
                failing_subset = Some(x);
                break 'sizes;
            }
        }
    }
    Ok(NPlus3Report {
        subsets_embed: failing_subset.is_none(),
        failing_subset,
        whole_embeds: embed_euclid(m, dim).is_some(),
    })
}

/// Four points `0, 1, 2, 3` around a rectangle with sides `a`, `b` and both
/// diagonals `a + b`.
pub fn rectangle(a: Rational, b: Rational) -> Result<MetricSpace<Rational>> {
    let c = a + b;
    MetricSpace::from_fn(4, |i, j| match (i, j) {
        (0, 1) | (2, 3) => a,
        (1, 2) | (0, 3) => b,
        _ => c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(p: i64) -> Rational {
        Rational::from_integer(p)
    }

    #[test]
    fn sum_triple_lands_on_the_line() {
        let m = MetricSpace::from_fn(3, |i, j| match (i, j) {
            (0, 1) => q(1),
            (1, 2) => q(2),
            _ => q(3),
        })
        .unwrap();
        assert_eq!(embed_line(&m), Some(vec![q(0), q(1), q(3)]));
        let eq = MetricSpace::from_fn(3, |_, _| q(1)).unwrap();
        assert_eq!(embed_line(&eq), None);
    }

    #[test]
    fn rectangle_triples_embed_but_not_all_four() {
        let r = rectangle(q(1), q(2)).unwrap();
        for x in k_subsets(4, 3) {
            assert!(embed_line(&r.restrict(&x).unwrap()).is_some(), "{x:?}");
        }
        assert!(embed_line(&r).is_none());
        let rep = check_n_plus_3(&r, 1).unwrap();
        assert!(!rep.whole_embeds && !rep.subsets_embed && rep.consistent());
    }

    #[test]
    fn simplex_dimensions() {
        let tri = MetricSpace::from_fn(3, |_, _| 1.0).unwrap();
        assert!(embed_euclid(&tri, 2).is_some());
        assert!(embed_euclid(&tri, 1).is_none());
        let tet = MetricSpace::from_fn(4, |_, _| 1.0).unwrap();
        assert!(embed_euclid(&tet, 3).is_some());
        assert!(embed_euclid(&tet, 2).is_none());
    }

    #[test]
    fn euclid_agrees_with_line_up_to_reflection() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(2..7);
            let mut pts: Vec<i64> = Vec::new();
            while pts.len() < n {
                let p = rng.gen_range(-20..20);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            let m = MetricSpace::from_line(&pts.iter().map(|&p| q(p)).collect::<Vec<_>>()).unwrap();
            let line = embed_line(&m).unwrap();
            let e = embed_euclid(&m, 1).unwrap();
            let sign = if e[1][0] * line[1].to_f64() >= 0.0 { 1.0 } else { -1.0 };
            for (x, c) in line.iter().zip(&e) {
                assert!((x.to_f64() - sign * c[0]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn coordinates_reproduce_distances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for dim in 1..=3 {
            for _ in 0..30 {
                let n = rng.gen_range(1..9);
                let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
                let m = MetricSpace::from_coordinates(&pts).unwrap();
                let c = embed_euclid(&m, dim).expect("genuine points embed");
                for i in 0..n {
                    for j in i + 1..n {
                        let got = euclidean(&c[i], &c[j]);
                        assert!((got - m.dist(i, j)).abs() <= 1e-6 * m.dist(i, j));
                    }
                }
            }
        }
    }
}
