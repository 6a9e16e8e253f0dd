//! Brute-force ground truth for small instances.
//!
//! The objective is piecewise quadratic: on the closed region where the
//! tie pattern of every sample is fixed it equals one quadratic. The
//! oracle walks every realizable joint pattern (pruning partial patterns
//! whose regions are already empty), minimizes the quadratic exactly on
//! the affine hull of the pattern and keeps the minimum only if some
//! minimizer lies in the pattern's region. The pattern of an optimal
//! point always passes this test, so the least surviving value is the
//! global minimum.
//!
//! Choosing one piece per sample without tracking ties is not enough: a
//! minimum that sits on a kink of several samples is generally not the
//! minimum of any single choice of pieces.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frechet::pattern::{solve_pattern, DiffSystem};
use crate::point::{Point, Samples};
use crate::scalar::{Rational, Scalar};

pub use crate::frechet::pattern::TiePattern;

/// Default limit on `(n(n−1))^m`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// One ordered pair `(i, k)` per sample.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PieceAssignment {
    pub pairs: Vec<(usize, usize)>,
}

impl PieceAssignment {
    /// Number of assignments for dimension `n` and `m` samples, saturating.
    pub fn count(n: usize, m: usize) -> u64 {
        let per = (n as u64).saturating_mul(n.saturating_sub(1) as u64);
        (0..m).fold(1u64, |acc, _| acc.saturating_mul(per))
    }

    fn from_patterns(patterns: &[TiePattern]) -> Self {
        Self {
            pairs: patterns
                .iter()
                .map(|p| if p.is_zero() { (0, 1) } else { (p.top[0], p.bottom[0]) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<S> {
    pub value: S,
    /// A global minimizer.
    pub point: Point<S>,
    /// Every joint tie pattern whose region contains a global minimizer.
    pub patterns: Vec<Vec<TiePattern>>,
    /// The representative pieces of those patterns.
    pub assignments: Vec<PieceAssignment>,
    /// Number of joint patterns solved.
    pub leaves: usize,
}

/// Exact global minimum of the Fréchet objective by exhaustive search.
///
/// Fails with [`Error::BudgetExceeded`] when `(n(n−1))^m > budget`.
pub fn brute_force_frechet<S: Scalar>(samples: &Samples<S>, budget: u64) -> Result<OracleResult<S>> {
    let n = samples.dim();
    let m = samples.len();
    let count = PieceAssignment::count(n, m);
    if count > budget {
        return Err(Error::BudgetExceeded(format!(
            "{count} piece assignments exceed the budget of {budget}"
        )));
    }
    // region tests only need the differences p_a − p_b; with a common
    // denominator they are integers, which is much faster to close
    match integer_differences(samples) {
        Some(w) => run(samples, w),
        None => {
            let mut w = Vec::with_capacity(m);
            for p in samples {
                let c: Vec<Rational> = p
                    .coords()
                    .iter()
                    .map(|v| v.to_rational().ok_or_else(|| Error::Format(format!("non-finite coordinate {v}"))))
                    .collect::<Result<_>>()?;
                w.push((0..n * n).map(|idx| Exact(&c[idx / n] - &c[idx % n])).collect());
            }
            run(samples, w)
        }
    }
}

fn run<S: Scalar, W: Weight>(samples: &Samples<S>, weights: Vec<Vec<W>>) -> Result<OracleResult<S>> {
    let n = samples.dim();
    let all: Vec<(TiePattern, Vec<(usize, usize)>)> = TiePattern::all(n)
        .into_iter()
        .map(|p| {
            let e = p.edges(n);
            (p, e)
        })
        .collect();
    // any sample point bounds the minimum from above
    let start = samples
        .iter()
        .map(|p| crate::frechet::objective(samples, p))
        .collect::<Result<Vec<S>>>()?
        .into_iter()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty sample");
    let ctx = Ctx {
        samples,
        all: &all,
        weights: &weights,
        incumbent: Mutex::new(start),
    };
    let root = Closure::<W>::new(n);
    let branches: Vec<Best<S>> = all
        .par_iter()
        .map(|(first, edges)| {
            let mut best = Best::default();
            if let Some(region) = root.with_edges(edges, &weights[0]) {
                let mut chosen = vec![first.clone()];
                ctx.search(&region, &mut chosen, &mut best);
            }
            best
        })
        .collect();

    let mut total = Best::default();
    for b in branches {
        total.leaves += b.leaves;
        if let Some((v, x)) = b.best {
            total.offer(v, x, b.patterns);
        }
    }
    let (value, point) = total.best.expect("some pattern contains the minimizer");
    Ok(OracleResult {
        value,
        point,
        assignments: total.patterns.iter().map(|p| PieceAssignment::from_patterns(p)).collect(),
        patterns: total.patterns,
        leaves: total.leaves,
    })
}

/// Scaled integer differences `L·(p_a − p_b)`, if they stay small.
fn integer_differences<S: Scalar>(samples: &Samples<S>) -> Option<Vec<Vec<i128>>> {
    let n = samples.dim();
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|p| p.coords().iter().map(|v| v.to_rational()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let lcm = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let limit = BigInt::one() << 60;
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let scaled: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        if scaled.iter().any(|v| v.abs() >= limit) {
            return None;
        }
        let ints: Vec<i128> = scaled.iter().map(|v| v.to_i128()).collect::<Option<_>>()?;
        out.push((0..n * n).map(|idx| ints[idx / n] - ints[idx % n]).collect());
    }
    Some(out)
}

/// Edge weight type of the pruning closure.
trait Weight: Clone + Ord + Send + Sync {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
}

impl Weight for i128 {
    fn zero() -> Self {
        0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Exact(Rational);

impl Weight for Exact {
    fn zero() -> Self {
        Exact(Rational::zero())
    }

    fn add(&self, other: &Self) -> Self {
        Exact(&self.0 + &other.0)
    }
}

/// Closed system of difference constraints (longest paths); `None`
/// entries are unconstrained.
#[derive(Clone)]
struct Closure<W> {
    n: usize,
    d: Vec<Option<W>>,
}

impl<W: Weight> Closure<W> {
    fn new(n: usize) -> Self {
        let d = (0..n * n).map(|idx| (idx / n == idx % n).then(W::zero)).collect();
        Self { n, d }
    }

    /// Adds `x_a − x_b ≥ w[a·n + b]` for every edge and re-closes; `None`
    /// when a positive cycle (empty region) appears.
    fn with_edges(&self, edges: &[(usize, usize)], w: &[W]) -> Option<Self> {
        let n = self.n;
        let mut d = self.d.clone();
        for &(a, b) in edges {
            let v = &w[a * n + b];
            let slot = &mut d[a * n + b];
            if slot.as_ref().is_none_or(|s| v > s) {
                *slot = Some(v.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = d[i * n + k].clone() else { continue };
                for j in 0..n {
                    if let Some(kj) = &d[k * n + j] {
                        let cand = ik.add(kj);
                        let slot = &mut d[i * n + j];
                        if slot.as_ref().is_none_or(|s| cand > *s) {
                            *slot = Some(cand);
                        }
                    }
                }
            }
            if (0..n).any(|i| d[i * n + i].as_ref().is_some_and(|v| *v > W::zero())) {
                return None;
            }
        }
        Some(Self { n, d })
    }
}

struct Ctx<'a, S, W> {
    samples: &'a Samples<S>,
    all: &'a [(TiePattern, Vec<(usize, usize)>)],
    weights: &'a [Vec<W>],
    incumbent: Mutex<S>,
}

impl<S: Scalar, W: Weight> Ctx<'_, S, W> {
    fn search(&self, region: &Closure<W>, chosen: &mut Vec<TiePattern>, best: &mut Best<S>) {
        let j = chosen.len();
        if j == self.samples.len() {
            best.leaves += 1;
            self.leaf(chosen, best);
            return;
        }
        for (pat, edges) in self.all {
            if let Some(next) = region.with_edges(edges, &self.weights[j]) {
                chosen.push(pat.clone());
                self.search(&next, chosen, best);
                chosen.pop();
            }
        }
    }

    fn leaf(&self, chosen: &[TiePattern], best: &mut Best<S>) {
        let mut region = DiffSystem::new(self.samples.dim());
        for (pat, p) in chosen.iter().zip(self.samples.iter()) {
            pat.add_constraints(p.coords(), &mut region);
        }
        let cutoff = self.incumbent.lock().expect("incumbent lock").clone();
        if let Some((v, x)) = solve_pattern(self.samples, chosen, &region, Some(&cutoff)) {
            {
                let mut inc = self.incumbent.lock().expect("incumbent lock");
                if v < *inc {
                    *inc = v.clone();
                }
            }
            best.offer(v, x, vec![chosen.to_vec()]);
        }
    }
}

struct Best<S> {
    best: Option<(S, Point<S>)>,
    patterns: Vec<Vec<TiePattern>>,
    leaves: usize,
}

impl<S> Default for Best<S> {
    fn default() -> Self {
        Self {
            best: None,
            patterns: Vec::new(),
            leaves: 0,
        }
    }
}

impl<S: Scalar> Best<S> {
    fn offer(&mut self, value: S, x: Point<S>, patterns: Vec<Vec<TiePattern>>) {
        match &self.best {
            Some((v, _)) if *v < value => {}
            Some((v, _)) if *v == value => self.patterns.extend(patterns),
            _ => {
                self.best = Some((value, x));
                self.patterns = patterns;
            }
        }
    }
}
