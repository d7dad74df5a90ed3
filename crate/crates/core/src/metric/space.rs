use std::fmt::Write as _;

use super::scalar::{Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::structures::text::{strip_comment, words};

/// A finite metric space with a validated distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSpace<S> {
    size: usize,
    dist: Vec<S>,
    tolerance: f64,
}

impl<S: Scalar> MetricSpace<S> {
    /// Builds the space from a full matrix and checks the metric axioms.
    pub fn new(matrix: Vec<Vec<S>>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(matrix: Vec<Vec<S>>, tolerance: f64) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Input("distance matrix is not square".into()));
        }
        let dist = matrix.into_iter().flatten().collect();
        let m = Self {
            size: n,
            dist,
            tolerance,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds the space from `d(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut d: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut matrix = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = d(i, j);
                matrix[i][j] = v.clone();
                matrix[j][i] = v;
            }
        }
        Self::new(matrix)
    }

    /// Points of the real line with the absolute-difference distance.
    pub fn from_line(points: &[S]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| (points[i].clone() - points[j].clone()).abs_value())
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        let tol = self.tolerance;
        for x in 0..n {
            if self.dist(x, x) != S::zero() {
                return Err(Error::Data(format!("d({x},{x}) is not zero")));
            }
            for y in 0..n {
                if self.dist(x, y) != self.dist(y, x) {
                    return Err(Error::Data(format!("d({x},{y}) differs from d({y},{x})")));
                }
                if x != y && self.dist(x, y) <= S::zero() {
                    return Err(Error::Data(format!("d({x},{y}) is not positive")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = self.dist(x, y) + self.dist(y, z);
                    if !self.dist(x, z).le_tol(&via, tol) {
                        return Err(Error::Data(format!(
                            "triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn dist(&self, x: usize, y: usize) -> S {
        self.dist[x * self.size + y].clone()
    }

    /// The subspace on `subset`, renumbered in the given order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        if let Some(&x) = subset.iter().find(|&&x| x >= self.size) {
            return Err(Error::Input(format!("point {x} out of range 0..{}", self.size)));
        }
        let k = subset.len();
        let mut dist = Vec::with_capacity(k * k);
        for &x in subset {
            for &y in subset {
                dist.push(self.dist(x, y));
            }
        }
        let m = Self {
            size: k,
            dist,
            tolerance: self.tolerance,
        };
        if (0..k).any(|i| (0..i).any(|j| m.dist(i, j) == S::zero())) {
            return Err(Error::Input("repeated point in subset".into()));
        }
        Ok(m)
    }

    /// Sorted distinct distances from `base`, or from every point; `0` is
    /// included for non-empty spaces.
    pub fn spectrum(&self, base: Option<usize>) -> Result<Vec<S>> {
        let bases: Vec<usize> = match base {
            Some(a) if a >= self.size => {
                return Err(Error::Input(format!("point {a} out of range 0..{}", self.size)))
            }
            Some(a) => vec![a],
            None => (0..self.size).collect(),
        };
        let mut values: Vec<S> = bases
            .iter()
            .flat_map(|&a| (0..self.size).map(move |x| (a, x)))
            .map(|(a, x)| self.dist(a, x))
            .collect();
        values.sort_by(|a, b| a.partial_cmp(b).expect("distances are ordered"));
        values.dedup_by(|b, a| a.close(b, self.tolerance));
        Ok(values)
    }

    /// The diameter; zero for spaces with at most one point.
    pub fn diameter(&self) -> S {
        self.dist
            .iter()
            .cloned()
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    /// The least positive distance; `None` stands for `+∞` on spaces with at
    /// most one point.
    pub fn min_distance(&self) -> Option<S> {
        let mut best: Option<S> = None;
        for x in 0..self.size {
            for y in x + 1..self.size {
                let d = self.dist(x, y);
                if best.as_ref().map_or(true, |b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best
    }

    /// Whether `f` (given by images) preserves every distance into `other`.
    pub fn is_isometry(&self, f: &[usize], other: &Self) -> bool {
        f.len() == self.size
            && (0..self.size).all(|x| {
                (0..self.size).all(|y| self.dist(x, y).close(&other.dist(f[x], f[y]), self.tolerance))
            })
    }
}

impl MetricSpace<f64> {
    /// Points of `ℝ^k` with the Euclidean distance.
    pub fn from_coordinates(points: &[Vec<f64>]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| euclidean(&points[i], &points[j]))
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Reads the distance-matrix format: `points <n>`, then `d <i> <j> <value>`
/// once for every unordered pair.
pub fn parse_metric<S: Scalar>(text: &str) -> Result<MetricSpace<S>> {
    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let mut n: Option<usize> = None;
    let mut matrix: Vec<Vec<Option<S>>> = Vec::new();
    let mut last_line = 1;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        last_line = ln;
        let ws = words(strip_comment(raw));
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        match head {
            "points" => {
                if n.is_some() {
                    return Err(perr(ln, col, "duplicate `points` line".into()));
                }
                let Some(&(c, w)) = ws.get(1).filter(|_| ws.len() == 2) else {
                    return Err(perr(ln, col, "expected `points <n>`".into()));
                };
                let k: usize = w
                    .parse()
                    .map_err(|_| perr(ln, c, format!("invalid point count `{w}`")))?;
                n = Some(k);
                matrix = vec![vec![None; k]; k];
            }
            "d" => {
                let Some(k) = n else {
                    return Err(perr(ln, col, "`d` before `points`".into()));
                };
                if ws.len() != 4 {
                    return Err(perr(ln, col, "expected `d <i> <j> <value>`".into()));
                }
                let mut idx = [0usize; 2];
                for (slot, &(c, w)) in idx.iter_mut().zip(&ws[1..3]) {
                    *slot = match w.parse::<usize>() {
                        Ok(x) if x < k => x,
                        _ => return Err(perr(ln, c, format!("invalid point `{w}`"))),
                    };
                }
                let (c, w) = ws[3];
                let v = S::parse_scalar(w).ok_or_else(|| perr(ln, c, format!("invalid distance `{w}`")))?;
                let [i, j] = idx;
                if i == j {
                    return Err(perr(ln, ws[2].0, "a point has no distance line to itself".into()));
                }
                if matrix[i][j].is_some() {
                    return Err(perr(ln, col, format!("duplicate distance for {i} {j}")));
                }
                matrix[i][j] = Some(v.clone());
                matrix[j][i] = Some(v);
            }
            other => return Err(perr(ln, col, format!("unknown directive `{other}`"))),
        }
    }
    let Some(k) = n else {
        return Err(perr(1, 1, "missing `points` line".into()));
    };
    let mut full = vec![vec![S::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                full[i][j] = matrix[i][j]
                    .clone()
                    .ok_or_else(|| perr(last_line, 1, format!("missing distance for {i} {j}")))?;
            }
        }
    }
    MetricSpace::new(full)
}

pub fn write_metric<S: Scalar>(m: &MetricSpace<S>) -> String {
    let mut out = format!("points {}\n", m.size());
    for i in 0..m.size() {
        for j in i + 1..m.size() {
            let _ = writeln!(out, "d {i} {j} {}", m.dist(i, j));
        }
    }
    out
}
