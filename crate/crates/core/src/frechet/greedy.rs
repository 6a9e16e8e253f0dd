use crate::certify::extremal_sets;
use crate::error::Result;
use crate::point::{canonicalize, dist_raw, Point, Samples};
use crate::scalar::{pow10_inv, Rational, Scalar};

use super::piece::objective_raw;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyOptions {
    pub max_iter: usize,
    /// Stop once no direction `e_i − e_l` has a one-sided derivative below
    /// `−tol`.
    pub tol: Rational,
    /// Record the objective after every accepted step.
    pub trace: bool,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            tol: pow10_inv(12),
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyResult<S> {
    pub point: Point<S>,
    pub value: S,
    pub iterations: usize,
    /// `false` when `max_iter` ran out first.
    pub converged: bool,
    /// Objective at the start and after each accepted step (empty unless
    /// requested).
    pub trace: Vec<S>,
}

/// Coordinate-direction descent with step `2/(k+2)`.
///
/// Starts at the average of the canonical representatives. Each round
/// computes the one-sided derivative of the objective along every
/// `e_i − e_l`, takes the steepest one (ties broken by smallest `(i, l)`)
/// and moves by `2/(k+2)` if that strictly lowers the objective; `k` grows
/// either way. Never returns an iterate worse than the start.
pub fn greedy_frechet<S: Scalar>(samples: &Samples<S>, opts: &GreedyOptions) -> Result<GreedyResult<S>> {
    let n = samples.dim();
    let m = S::from_usize(samples.len()).expect("sample count fits in scalar");
    let mut x = vec![S::zero(); n];
    for p in samples {
        for (xi, pi) in x.iter_mut().zip(p.coords()) {
            *xi = xi.clone() + pi.clone();
        }
    }
    for xi in x.iter_mut() {
        *xi = xi.clone() / m.clone();
    }
    let tol = S::from_rational(&opts.tol);
    let mut value = objective_raw(samples, &x);
    let mut trace = Vec::new();
    if opts.trace {
        trace.push(value.clone());
    }
    let two = S::from_int(2);
    let mut iterations = 0;
    let mut converged = false;
    let mut k: usize = 0;
    while iterations < opts.max_iter {
        let Some((i, l, slope)) = steepest_direction(samples, &x) else {
            converged = true;
            break;
        };
        if slope >= -tol.clone() {
            converged = true;
            break;
        }
        iterations += 1;
        let step = two.clone() / S::from_usize(k + 2).expect("iteration count fits");
        k += 1;
        let mut cand = x.clone();
        cand[i] = cand[i].clone() + step.clone();
        cand[l] = cand[l].clone() - step;
        let cand_value = objective_raw(samples, &cand);
        if cand_value < value {
            x = cand;
            value = cand_value;
            if opts.trace {
                trace.push(value.clone());
            }
        }
    }
    Ok(GreedyResult {
        point: canonicalize(x)?,
        value,
        iterations,
        converged,
        trace,
    })
}

/// The direction `e_i − e_l` with the smallest one-sided derivative of the
/// objective at `x`, and that derivative. `None` when `n < 2`.
///
/// Along `v`, `d(x, p)` changes at rate `max_{argmax} v − min_{argmin} v`
/// where the arg-sets refer to `x − p`; the square changes at `2d` times
/// that. Summing over samples, the derivative along `e_i − e_l` is
/// `a_i − s_l + b_l − t_i` with
/// `a_i = Σ_{i ∈ argmax} 2d`, `s_l = Σ_{argmax = {l}} 2d`,
/// `b_l = Σ_{l ∈ argmin} 2d` and `t_i = Σ_{argmin = {i}} 2d`.
pub(crate) fn steepest_direction<S: Scalar>(samples: &Samples<S>, x: &[S]) -> Option<(usize, usize, S)> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let mut a = vec![S::zero(); n];
    let mut s = vec![S::zero(); n];
    let mut b = vec![S::zero(); n];
    let mut t = vec![S::zero(); n];
    for p in samples {
        let d = dist_raw(x, p.coords());
        if d.is_zero() {
            continue;
        }
        let twice_d = d.clone() + d;
        let (argmax, argmin) = extremal_sets(x, p.coords());
        for u in 0..n {
            if argmax[u] {
                a[u] = a[u].clone() + twice_d.clone();
            }
            if argmin[u] {
                b[u] = b[u].clone() + twice_d.clone();
            }
        }
        if let Some(l) = single(&argmax) {
            s[l] = s[l].clone() + twice_d.clone();
        }
        if let Some(i) = single(&argmin) {
            t[i] = t[i].clone() + twice_d;
        }
    }
    let mut best: Option<(usize, usize, S)> = None;
    for i in 0..n {
        let from_i = a[i].clone() - t[i].clone();
        for l in 0..n {
            if i == l {
                continue;
            }
            let slope = from_i.clone() + b[l].clone() - s[l].clone();
            if best.as_ref().is_none_or(|(_, _, v)| slope < *v) {
                best = Some((i, l, slope));
            }
        }
    }
    best
}

fn single(mask: &[bool]) -> Option<usize> {
    let mut it = mask.iter().enumerate().filter(|(_, b)| **b);
    let first = it.next().map(|(u, _)| u);
    if it.next().is_some() {
        None
    } else {
        first
    }
}
