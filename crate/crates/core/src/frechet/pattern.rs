//! Tie patterns: which coordinates of `x − p_j` attain the maximum and the
//! minimum. On the closed region where a pattern holds, the squared
//! distance to `p_j` is one fixed quadratic piece, so the objective
//! restricted to a joint pattern of all samples is a single quadratic.

use crate::certify::QuadraticForm;
use crate::linalg::AffineSet;
use crate::lp::{LinearProgram, Relation};
use crate::point::{canonicalize, Point, Samples};
use crate::polytrope::TropMatrix;
use crate::scalar::Scalar;
use crate::tropical::Trop;

use super::piece::QuadraticPiece;

/// Tie pattern of one sample. `top` and `bottom` are disjoint and nonempty,
/// except for the pattern of a zero distance where both hold every
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TiePattern {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl TiePattern {
    pub fn zero(n: usize) -> Self {
        Self {
            top: (0..n).collect(),
            bottom: (0..n).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.top.iter().any(|u| self.bottom.contains(u))
    }

    /// Every pattern in dimension `n`: all disjoint nonempty pairs, then
    /// the zero pattern.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        // each coordinate goes to top (1), bottom (2) or neither (0)
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let (mut top, mut bottom) = (Vec::new(), Vec::new());
            for u in 0..n {
                match c % 3 {
                    1 => top.push(u),
                    2 => bottom.push(u),
                    _ => {}
                }
                c /= 3;
            }
            if !top.is_empty() && !bottom.is_empty() {
                out.push(Self { top, bottom });
            }
        }
        out.push(Self::zero(n));
        out
    }

    /// Coordinates within `tol` of the max and min of `x − p`; the zero
    /// pattern when the two sets meet.
    pub fn detect<S: Scalar>(x: &[S], p: &[S], tol: &S) -> Self {
        let diffs: Vec<S> = x.iter().zip(p).map(|(a, b)| a.clone() - b.clone()).collect();
        let mut hi = diffs[0].clone();
        let mut lo = diffs[0].clone();
        for d in &diffs {
            if *d > hi {
                hi = d.clone();
            }
            if *d < lo {
                lo = d.clone();
            }
        }
        let top: Vec<usize> = (0..x.len()).filter(|&u| hi.clone() - diffs[u].clone() <= *tol).collect();
        let bottom: Vec<usize> = (0..x.len()).filter(|&u| diffs[u].clone() - lo.clone() <= *tol).collect();
        let pattern = Self { top, bottom };
        if pattern.is_zero() {
            Self::zero(x.len())
        } else {
            pattern
        }
    }

    /// The piece `(top[0], bottom[0])`, or `None` for the zero pattern.
    pub fn representative<S: Scalar>(&self, samples: &Samples<S>, j: usize) -> Option<QuadraticPiece<S>> {
        if self.is_zero() {
            return None;
        }
        QuadraticPiece::from_sample(samples, j, self.top[0], self.bottom[0]).ok()
    }

    /// Pairs `(a, b)` such that the closed region of this pattern is
    /// `{ x : (x − p)_a ≥ (x − p)_b for every pair }`.
    pub(crate) fn edges(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        out.push((a, b));
                    }
                }
            }
            return out;
        }
        for &t in &self.top {
            for b in 0..n {
                if b != t {
                    out.push((t, b));
                }
            }
        }
        for &t in &self.bottom {
            for a in 0..n {
                if a != t && !self.top.contains(&a) {
                    out.push((a, t));
                }
            }
        }
        out
    }

    /// Adds the region of this pattern to a system of difference
    /// constraints `x_a − x_b ≥ c_ab`.
    pub(crate) fn add_constraints<S: Scalar>(&self, p: &[S], sys: &mut DiffSystem<S>) {
        for (a, b) in self.edges(p.len()) {
            sys.raise(a, b, p[a].clone() - p[b].clone());
        }
    }

    /// Equalities `x_a − x_b = p_a − p_b` tying each class together.
    pub(crate) fn equalities<S: Scalar>(&self, p: &[S], rows: &mut Vec<Vec<S>>, rhs: &mut Vec<S>) {
        let n = p.len();
        for class in [&self.top, &self.bottom] {
            for w in class.windows(2) {
                let mut row = vec![S::zero(); n];
                row[w[0]] = S::one();
                row[w[1]] = -S::one();
                rows.push(row);
                rhs.push(p[w[0]].clone() - p[w[1]].clone());
            }
        }
    }
}

/// Accumulated difference constraints; feasibility is decided by a Kleene
/// star.
#[derive(Debug, Clone)]
pub(crate) struct DiffSystem<S> {
    n: usize,
    c: Vec<Trop<S>>,
}

impl<S: Scalar> DiffSystem<S> {
    pub fn new(n: usize) -> Self {
        let c = (0..n * n)
            .map(|idx| if idx / n == idx % n { Trop::zero() } else { Trop::NegInf })
            .collect();
        Self { n, c }
    }

    pub fn raise(&mut self, a: usize, b: usize, v: S) {
        let slot = &mut self.c[a * self.n + b];
        let v = Trop::Finite(v);
        if v > *slot {
            *slot = v;
        }
    }

    pub fn matrix(&self) -> TropMatrix<S> {
        TropMatrix::from_parts(self.n, self.c.clone(), false)
    }

    pub fn is_feasible(&self) -> bool {
        self.matrix().kleene_star().is_ok()
    }
}

/// Exact minimum of the objective over the closed region of a joint
/// pattern, if the quadratic's minimizers meet that region. Values above
/// `cutoff` are dropped before the (costlier) region test.
pub(crate) fn solve_pattern<S: Scalar>(
    samples: &Samples<S>,
    patterns: &[TiePattern],
    region: &DiffSystem<S>,
    cutoff: Option<&S>,
) -> Option<(S, Point<S>)> {
    let n = samples.dim();
    let mut q = QuadraticForm::new(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (j, (pat, p)) in patterns.iter().zip(samples.iter()).enumerate() {
        pat.equalities(p.coords(), &mut rows, &mut rhs);
        if let Some(piece) = pat.representative(samples, j) {
            q.push_piece(&piece, S::one());
        }
    }
    let lin = AffineSet::pinned(n, 0).restrict(&rows, &rhs)?;
    let best = q.minimize_on(&lin);
    if cutoff.is_some_and(|c| best.value > *c) {
        return None;
    }
    let x = point_in_region(&best.minimizers, region)?;
    Some((best.value, canonicalize(x).ok()?))
}

/// Some point of `set` satisfying all difference constraints of `region`.
pub(crate) fn point_in_region<S: Scalar>(set: &AffineSet<S>, region: &DiffSystem<S>) -> Option<Vec<S>> {
    let n = region.n;
    let satisfied = |x: &[S]| {
        (0..n).all(|a| {
            (0..n).all(|b| match &region.c[a * n + b] {
                Trop::Finite(c) if a != b => x[a].clone() - x[b].clone() >= *c,
                _ => true,
            })
        })
    };
    if satisfied(&set.base) {
        return Some(set.base.clone());
    }
    if set.is_point() {
        return None;
    }
    let p = set.dim();
    let mut lp = LinearProgram::new(p);
    for v in 0..p {
        lp.set_free(v);
    }
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            if let Trop::Finite(c) = &region.c[a * n + b] {
                let row: Vec<S> = set
                    .directions
                    .iter()
                    .map(|d| d[a].clone() - d[b].clone())
                    .collect();
                let bound = c.clone() - (set.base[a].clone() - set.base[b].clone());
                if row.iter().all(|v| v.is_zero()) {
                    if bound.is_positive() {
                        return None;
                    }
                    continue;
                }
                lp.add_row(row, Relation::Ge, bound);
            }
        }
    }
    let t = lp.find_feasible()?;
    Some(set.point_at(&t))
}

/// Builds the region of a joint pattern and solves it; `None` when the
/// region is empty or misses the quadratic's minimizers.
pub(crate) fn solve_patterns<S: Scalar>(samples: &Samples<S>, patterns: &[TiePattern]) -> Option<(S, Point<S>)> {
    let mut region = DiffSystem::new(samples.dim());
    for (pat, p) in patterns.iter().zip(samples.iter()) {
        pat.add_constraints(p.coords(), &mut region);
    }
    if !region.is_feasible() {
        return None;
    }
    solve_pattern(samples, patterns, &region, None)
}
