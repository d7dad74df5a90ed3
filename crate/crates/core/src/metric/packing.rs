use super::scalar::Scalar;
use super::space::MetricSpace;

/// Spaces up to this size get an exact `ω_t`.
pub const OMEGA_EXACT_LIMIT: usize = 24;

/// A largest `t`-separated subset, or bounds on its size past
/// [`OMEGA_EXACT_LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Size of `witness`; equals `upper_bound` when `exact`.
    pub size: usize,
    pub witness: Vec<usize>,
    pub exact: bool,
    pub upper_bound: usize,
}

/// Most points with all pairwise distances at least `t`.
///
/// A singleton counts as separated for every `t`.
pub fn omega_t<S: Scalar>(m: &MetricSpace<S>, t: &S) -> Separation {
    let n = m.size();
    let tol = m.tolerance();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && t.le_tol(&m.dist(i, j), tol)).collect())
        .collect();
    if n <= OMEGA_EXACT_LIMIT {
        let masks: Vec<u32> = adj
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &a)| a).fold(0, |acc, (j, _)| acc | 1 << j))
            .collect();
        let mut best = 0u32;
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        max_clique(&masks, 0, full, &mut best);
        let witness: Vec<usize> = (0..n).filter(|&i| best >> i & 1 == 1).collect();
        return Separation {
            size: witness.len(),
            upper_bound: witness.len(),
            witness,
            exact: true,
        };
    }
    // greedy lower bound, colouring upper bound
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(adj[i].iter().filter(|&&a| a).count()));
    let mut witness: Vec<usize> = Vec::new();
    for &i in &order {
        if witness.iter().all(|&w| adj[i][w]) {
            witness.push(i);
        }
    }
    witness.sort_unstable();
    // colour classes are independent in the separation graph, so a clique
    // meets each at most once
    let mut colour = vec![usize::MAX; n];
    let mut colours = 0;
    for &i in &order {
        let used: Vec<bool> = {
            let mut u = vec![false; colours + 1];
            for j in 0..n {
                if adj[i][j] && colour[j] != usize::MAX {
                    u[colour[j]] = true;
                }
            }
            u
        };
        let c = used.iter().position(|&u| !u).expect("one colour is free");
        colour[i] = c;
        colours = colours.max(c + 1);
    }
    Separation {
        size: witness.len(),
        exact: witness.len() == colours,
        upper_bound: colours,
        witness,
    }
}

fn max_clique(adj: &[u32], current: u32, candidates: u32, best: &mut u32) {
    if candidates == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    if current.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    max_clique(adj, current | 1 << v, candidates & adj[v], best);
    max_clique(adj, current, candidates & !(1 << v), best);
}

/// All pairwise distances are at least `t`.
pub fn age_t_member<S: Scalar>(m: &MetricSpace<S>, t: &S) -> bool {
    let tol = m.tolerance();
    (0..m.size()).all(|x| (x + 1..m.size()).all(|y| t.le_tol(&m.dist(x, y), tol)))
}

/// No pairwise distance lies in `forbidden`.
pub fn age_minus_a_member<S: Scalar>(m: &MetricSpace<S>, forbidden: &[S]) -> bool {
    let tol = m.tolerance();
    (0..m.size()).all(|x| {
        (x + 1..m.size()).all(|y| {
            let d = m.dist(x, y);
            !forbidden.iter().any(|a| a.close(&d, tol))
        })
    })
}

/// `(1 + 2δ/t)^dim`: balls of radius `t/2` around a `t`-separated subset of
/// a set of diameter `δ` in `ℝ^dim` are disjoint and lie in one ball of
/// radius `δ + t/2`.
pub fn packing_bound(diameter: f64, t: f64, dim: u32) -> f64 {
    (1.0 + 2.0 * diameter / t).powi(dim as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::subsets_up_to;
    use crate::metric::Rational;
    use rand::{Rng, SeedableRng};

    fn line(points: &[i64]) -> MetricSpace<Rational> {
        MetricSpace::from_line(&points.iter().map(|&p| Rational::from_integer(p)).collect::<Vec<_>>()).unwrap()
    }

    fn brute_omega(m: &MetricSpace<f64>, t: f64) -> usize {
        subsets_up_to(m.size(), m.size())
            .into_iter()
            .filter(|x| x.iter().all(|&a| x.iter().all(|&b| a == b || m.dist(a, b) >= t)))
            .map(|x| x.len())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        let m = line(&[0, 1, 2, 3, 4, 5]);
        let s = omega_t(&m, &Rational::from_integer(2));
        assert_eq!(s.size, 3);
        assert!(s.exact);
        assert_eq!(omega_t(&m, &Rational::from_integer(10)).size, 1);
        assert_eq!(omega_t(&line(&[]), &Rational::from_integer(1)).size, 0);
        let sub = m.restrict(&[0, 1, 2]).unwrap();
        assert!(omega_t(&sub, &Rational::from_integer(2)).size <= 3);
    }

    #[test]
    fn exact_search_matches_subsets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(1..10);
            let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)]).collect();
            let m = MetricSpace::from_coordinates(&pts).unwrap();
            let s = omega_t(&m, &1.0);
            assert_eq!(s.size, brute_omega(&m, 1.0));
            assert!(age_t_member(&m.restrict(&s.witness).unwrap(), &1.0));
        }
    }

    #[test]
    fn large_spaces_get_bounds() {
        let pts: Vec<i64> = (0..30).collect();
        let s = omega_t(&line(&pts), &Rational::from_integer(3));
        assert!(s.size <= 10 && 10 <= s.upper_bound);
        assert!(age_t_member(&line(&pts).restrict(&s.witness).unwrap(), &Rational::from_integer(3)));
    }

    #[test]
    fn membership_examples() {
        let one = line(&[0]);
        assert!(age_t_member(&one, &Rational::from_integer(5)));
        let t = Rational::from_integer(2);
        assert!(age_t_member(&line(&[0, 2]), &t));
        assert!(!age_t_member(&line(&[0, 1]), &t));
        let m = MetricSpace::from_line(&[Rational::from_integer(0), Rational::from_integer(1), Rational::new(5, 2)]).unwrap();
        assert!(age_t_member(&m, &Rational::from_integer(1)));
        let r2 = MetricSpace::from_line(&[0.0, 2f64.sqrt()]).unwrap();
        assert!(age_minus_a_member(&r2, &[1.0, 2.0, 1.5]));
        assert!(!age_minus_a_member(&line(&[0, 1]), &[Rational::from_integer(1)]));
        assert!(age_minus_a_member(&line(&[0, 1, 2]), &[]));
    }
}
