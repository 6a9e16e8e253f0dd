//! Small dense two-phase simplex method with Bland's rule.
//!
//! Meant for exact scalars: pivot choices compare against zero exactly, so
//! with [`Rational`](crate::Rational) every answer (feasible, infeasible,
//! unbounded) is exact. Bland's rule rules out cycling.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

/// `minimize c·x` subject to linear rows; variables are nonnegative unless
/// marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram<S> {
    nvars: usize,
    free: Vec<bool>,
    rows: Vec<(Vec<S>, Relation, S)>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            free: vec![false; nvars],
            rows: Vec::new(),
        }
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn add_row(&mut self, coeffs: Vec<S>, rel: Relation, rhs: S) {
        assert_eq!(coeffs.len(), self.nvars, "row length must match variable count");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Some feasible point (the first basic feasible solution found).
    pub fn find_feasible(&self) -> Option<Vec<S>> {
        match self.minimize(&vec![S::zero(); self.nvars]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn minimize(&self, objective: &[S]) -> LpOutcome<S> {
        assert_eq!(objective.len(), self.nvars);
        // column layout: for each user variable one column (two if free),
        // then one slack per inequality, then one artificial per row
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.nvars);
        let mut ncols = 0;
        for &is_free in &self.free {
            if is_free {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;
        let slack_count = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let art_start = structural + slack_count;
        let m = self.rows.len();
        let total = art_start + m;

        let mut tab: Vec<Vec<S>> = Vec::with_capacity(m);
        let mut slack = structural;
        for (r, (coeffs, rel, rhs)) in self.rows.iter().enumerate() {
            let mut row = vec![S::zero(); total + 1];
            for (v, c) in coeffs.iter().enumerate() {
                let (pos, neg) = col_of[v];
                row[pos] = c.clone();
                if let Some(neg) = neg {
                    row[neg] = -c.clone();
                }
            }
            match rel {
                Relation::Le => {
                    row[slack] = S::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -S::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[total] = rhs.clone();
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[art_start + r] = S::one();
            tab.push(row);
        }
        let mut basis: Vec<usize> = (art_start..total).collect();

        // phase one: minimize the sum of artificials
        let mut cost = vec![S::zero(); total + 1];
        for c in cost.iter_mut().take(total).skip(art_start) {
            *c = S::one();
        }
        let mut reduced = reduced_costs(&tab, &basis, &cost);
        if run_simplex(&mut tab, &mut basis, &mut reduced, total, |_| true).is_err() {
            unreachable!("phase one is bounded below by zero");
        }
        // the phase one optimum is -reduced[total]
        let infeasible = if S::EXACT {
            !reduced[total].is_zero()
        } else {
            reduced[total].abs().to_f64().unwrap_or(f64::INFINITY) > 1e-9
        };
        if infeasible {
            return LpOutcome::Infeasible;
        }

        // drive artificials out of the basis where possible
        let mut r = 0;
        while r < tab.len() {
            if basis[r] >= art_start {
                if let Some(col) = (0..art_start).find(|&c| !tab[r][c].is_zero()) {
                    pivot(&mut tab, &mut basis, &mut reduced, r, col);
                } else {
                    tab.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }

        // phase two on the original objective, artificials barred
        let mut cost = vec![S::zero(); total + 1];
        for (v, c) in objective.iter().enumerate() {
            let (pos, neg) = col_of[v];
            cost[pos] = c.clone();
            if let Some(neg) = neg {
                cost[neg] = -c.clone();
            }
        }
        let mut reduced = reduced_costs(&tab, &basis, &cost);
        if run_simplex(&mut tab, &mut basis, &mut reduced, total, |c| c < art_start).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut cols = vec![S::zero(); total];
        for (r, &b) in basis.iter().enumerate() {
            cols[b] = tab[r][total].clone();
        }
        let x: Vec<S> = col_of
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => cols[pos].clone() - cols[neg].clone(),
                None => cols[pos].clone(),
            })
            .collect();
        let value = objective
            .iter()
            .zip(&x)
            .fold(S::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
        LpOutcome::Optimal { x, value }
    }
}

/// Reduced cost row `c_j − c_B B^{-1} A_j`; the last entry holds `−c_B x_B`.
fn reduced_costs<S: Scalar>(tab: &[Vec<S>], basis: &[usize], cost: &[S]) -> Vec<S> {
    let mut red = cost.to_vec();
    for (r, &b) in basis.iter().enumerate() {
        let cb = cost[b].clone();
        if cb.is_zero() {
            continue;
        }
        for (j, v) in red.iter_mut().enumerate() {
            *v = v.clone() - cb.clone() * tab[r][j].clone();
        }
    }
    red
}

struct Unbounded;

fn run_simplex<S: Scalar>(
    tab: &mut [Vec<S>],
    basis: &mut [usize],
    reduced: &mut [S],
    total: usize,
    allowed: impl Fn(usize) -> bool,
) -> Result<(), Unbounded> {
    loop {
        // Bland: smallest eligible index with negative reduced cost
        let Some(enter) = (0..total).find(|&j| allowed(j) && reduced[j].is_negative()) else {
            return Ok(());
        };
        let mut leave: Option<(usize, S)> = None;
        for r in 0..tab.len() {
            let a = &tab[r][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = tab[r][total].clone() / a.clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Unbounded);
        };
        pivot(tab, basis, reduced, row, enter);
    }
}

fn pivot<S: Scalar>(tab: &mut [Vec<S>], basis: &mut [usize], reduced: &mut [S], row: usize, col: usize) {
    let inv = S::one() / tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v = v.clone() * inv.clone();
    }
    let pivot_row = tab[row].clone();
    for (r, other) in tab.iter_mut().enumerate() {
        if r == row || other[col].is_zero() {
            continue;
        }
        let f = other[col].clone();
        for (v, p) in other.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * p.clone();
        }
    }
    if !reduced[col].is_zero() {
        let f = reduced[col].clone();
        for (v, p) in reduced.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * p.clone();
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_minimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.add_row(v(&[1, 2]), Relation::Le, int(4));
        lp.add_row(v(&[3, 1]), Relation::Le, int(6));
        match lp.minimize(&v(&[-1, -1])) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
                assert_eq!(value, rat(-14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.add_row(v(&[1]), Relation::Ge, int(2));
        lp.add_row(v(&[1]), Relation::Le, int(1));
        assert_eq!(lp.minimize(&v(&[0])), LpOutcome::Infeasible);

        let mut lp = LinearProgram::<Rational>::new(1);
        lp.add_row(v(&[1]), Relation::Ge, int(2));
        assert_eq!(lp.minimize(&v(&[-1])), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // x free, y >= 0: x + y = -3, y >= 1  -> x <= -4
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.add_row(v(&[1, 1]), Relation::Eq, int(-3));
        lp.add_row(v(&[0, 1]), Relation::Ge, int(1));
        match lp.minimize(&v(&[-1, 0])) {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, v(&[-4, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_redundant_equalities() {
        let mut lp = LinearProgram::new(3);
        lp.add_row(v(&[1, 1, 1]), Relation::Eq, int(1));
        lp.add_row(v(&[2, 2, 2]), Relation::Eq, int(2));
        lp.add_row(v(&[1, -1, 0]), Relation::Eq, int(0));
        let x = lp.find_feasible().unwrap();
        assert_eq!(x[0], x[1]);
        assert_eq!(x.iter().cloned().sum::<Rational>(), int(1));
    }
}
