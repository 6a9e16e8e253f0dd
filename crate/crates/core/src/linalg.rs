//! Dense exact linear algebra: reduced row echelon form and affine
//! solution sets.

use crate::scalar::Scalar;

/// The affine set `{ base + Σ t_k · directions[k] }`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSet<S> {
    pub base: Vec<S>,
    pub directions: Vec<Vec<S>>,
}

impl<S: Scalar> AffineSet<S> {
    /// The whole space R^n.
    pub fn full(n: usize) -> Self {
        Self {
            base: vec![S::zero(); n],
            directions: (0..n).map(|k| unit(n, k)).collect(),
        }
    }

    /// R^n with coordinate `pinned` fixed at zero.
    pub fn pinned(n: usize, pinned: usize) -> Self {
        Self {
            base: vec![S::zero(); n],
            directions: (0..n).filter(|&k| k != pinned).map(|k| unit(n, k)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Dimension of the set (number of free parameters).
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn is_point(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn point_at(&self, params: &[S]) -> Vec<S> {
        let mut x = self.base.clone();
        for (t, d) in params.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi = xi.clone() + t.clone() * di.clone();
            }
        }
        x
    }

    /// Intersects with `{ x : a_r · x = b_r }`; `None` when empty.
    pub fn restrict(&self, rows: &[Vec<S>], rhs: &[S]) -> Option<Self> {
        // substitute x = base + D t and solve for t
        let reduced: Vec<Vec<S>> = rows
            .iter()
            .map(|a| self.directions.iter().map(|d| dot(a, d)).collect())
            .collect();
        let reduced_rhs: Vec<S> = rows
            .iter()
            .zip(rhs)
            .map(|(a, b)| b.clone() - dot(a, &self.base))
            .collect();
        let sol = solve_linear(&reduced, &reduced_rhs, self.dim())?;
        Some(self.compose(&sol))
    }

    /// Maps an affine set of parameters through this parametrization.
    pub fn compose(&self, params: &AffineSet<S>) -> Self {
        let base = self.point_at(&params.base);
        let n = self.ambient_dim();
        let directions = params
            .directions
            .iter()
            .map(|coef| {
                let mut v = vec![S::zero(); n];
                for (c, d) in coef.iter().zip(&self.directions) {
                    for (vi, di) in v.iter_mut().zip(d) {
                        *vi = vi.clone() + c.clone() * di.clone();
                    }
                }
                v
            })
            .collect();
        Self { base, directions }
    }
}

pub(crate) fn unit<S: Scalar>(n: usize, k: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[k] = S::one();
    v
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduces `m` (rows of equal length) to reduced row echelon form in place,
/// looking for pivots only in the first `ncols` columns. Returns the pivot
/// column of each nonzero row.
pub fn rref<S: Scalar>(m: &mut [Vec<S>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let candidate = if S::EXACT {
            (row..m.len()).find(|&r| !m[r][col].is_zero())
        } else {
            (row..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
        };
        let Some(p) = candidate else { continue };
        m.swap(row, p);
        let inv = S::one() / m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * pv.clone();
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// All solutions of `A x = b` with `x ∈ R^ncols`, or `None` if inconsistent.
pub fn solve_linear<S: Scalar>(a: &[Vec<S>], b: &[S], ncols: usize) -> Option<AffineSet<S>> {
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    // a zero row with nonzero right-hand side
    if m[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut base = vec![S::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        base[c] = m[r][ncols].clone();
    }
    let directions = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut d = vec![S::zero(); ncols];
            d[free] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                d[c] = -m[r][free].clone();
            }
            d
        })
        .collect();
    Some(AffineSet { base, directions })
}
