//! Optimality certificates for the Fréchet objective.
//!
//! A certificate puts convex weights on the quadratic pieces of each
//! sample. Because every piece lower-bounds the squared distance of its
//! sample, the weighted sum `g` is a single convex quadratic with
//! `g ≤ objective` everywhere. If the exact minimum of `g` is at least
//! `c*`, then `c*` is a global lower bound for the objective.

use crate::error::{check_dims, Error, Result};
use crate::frechet::{objective, QuadraticPiece};
use crate::linalg::{dot, solve_linear, AffineSet};
use crate::lp::{LinearProgram, Relation};
use crate::point::{Point, Samples};
use crate::scalar::Scalar;

/// One weighted square `w · (a·x + b)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareTerm<S> {
    pub weight: S,
    pub coeffs: Vec<S>,
    pub constant: S,
}

/// A nonnegatively weighted sum of squares of affine forms on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<S> {
    n: usize,
    terms: Vec<SquareTerm<S>>,
}

/// Minimum value of a quadratic form together with the affine set of all
/// minimizers.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadMin<S> {
    pub value: S,
    pub minimizers: AffineSet<S>,
}

impl<S: Scalar> QuadraticForm<S> {
    pub fn new(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[SquareTerm<S>] {
        &self.terms
    }

    /// Adds `weight · (coeffs·x + constant)²`. Weights must be nonnegative.
    pub fn push(&mut self, weight: S, coeffs: Vec<S>, constant: S) {
        assert_eq!(coeffs.len(), self.n, "coefficient vector has wrong length");
        assert!(!weight.is_negative(), "negative weight in sum of squares");
        if !weight.is_zero() {
            self.terms.push(SquareTerm {
                weight,
                coeffs,
                constant,
            });
        }
    }

    pub fn push_piece(&mut self, piece: &QuadraticPiece<S>, weight: S) {
        let (a, b) = piece.affine(self.n);
        self.push(weight, a, b);
    }

    pub fn eval(&self, x: &[S]) -> S {
        self.terms.iter().fold(S::zero(), |acc, t| {
            let r = dot(&t.coeffs, x) + t.constant.clone();
            acc + t.weight.clone() * r.clone() * r
        })
    }

    /// Exact minimum over an affine subset of `R^n`, via the normal
    /// equations in the subset's parameters.
    pub fn minimize_on(&self, domain: &AffineSet<S>) -> QuadMin<S> {
        let p = domain.dim();
        let mut normal = vec![vec![S::zero(); p]; p];
        let mut rhs = vec![S::zero(); p];
        for t in &self.terms {
            let g: Vec<S> = domain.directions.iter().map(|d| dot(&t.coeffs, d)).collect();
            let h = dot(&t.coeffs, &domain.base) + t.constant.clone();
            for r in 0..p {
                if g[r].is_zero() {
                    continue;
                }
                let wg = t.weight.clone() * g[r].clone();
                for c in 0..p {
                    if !g[c].is_zero() {
                        normal[r][c] = normal[r][c].clone() + wg.clone() * g[c].clone();
                    }
                }
                rhs[r] = rhs[r].clone() - wg * h.clone();
            }
        }
        let params = solve_linear(&normal, &rhs, p)
            .expect("normal equations of a sum of squares are consistent");
        let minimizers = domain.compose(&params);
        let value = self.eval(&minimizers.base);
        QuadMin { value, minimizers }
    }

    /// Minimum with coordinate `coord` pinned to zero. The form is assumed
    /// invariant under adding constants to all coordinates, so the value
    /// does not depend on the choice of `coord`.
    pub fn minimize_pinned(&self, coord: usize) -> QuadMin<S> {
        self.minimize_on(&AffineSet::pinned(self.n, coord))
    }
}

/// Exact minimum of `q` in the gauge `x_1 = 0`.
pub fn min_quadratic<S: Scalar>(q: &QuadraticForm<S>) -> QuadMin<S> {
    q.minimize_pinned(0)
}

/// Weight on one piece.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPiece<S> {
    pub piece: QuadraticPiece<S>,
    pub weight: S,
}

/// Convex weights for the pieces of one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleWeights<S> {
    pub sample: usize,
    pub pieces: Vec<WeightedPiece<S>>,
}

/// Per-sample convex weights on quadratic pieces plus the bound `c*` they
/// prove.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<S> {
    pub c_star: S,
    pub weights: Vec<SampleWeights<S>>,
}

impl<S: Scalar> Certificate<S> {
    /// `Σ_j Σ λ_{j,piece} · piece(x)`.
    pub fn combined_form(&self, n: usize) -> QuadraticForm<S> {
        let mut q = QuadraticForm::new(n);
        for sw in &self.weights {
            for wp in &sw.pieces {
                q.push_piece(&wp.piece, wp.weight.clone());
            }
        }
        q
    }

    /// Weight of sample `j` on the piece `(i, k)`, in either orientation.
    pub fn weight_of(&self, sample: usize, i: usize, k: usize) -> Option<&S> {
        let (a, b) = if i < k { (i, k) } else { (k, i) };
        self.weights
            .iter()
            .find(|sw| sw.sample == sample)?
            .pieces
            .iter()
            .find(|wp| {
                let c = wp.piece.canonical();
                c.i == a && c.k == b
            })
            .map(|wp| &wp.weight)
    }
}

/// Pieces of each sample attaining the squared distance at `x`, i.e. all
/// ordered `(i, k)` with `(x_i − x_k) − c = ±d(x, p_j)`.
pub fn active_pieces<S: Scalar>(samples: &Samples<S>, x: &Point<S>) -> Result<Vec<Vec<QuadraticPiece<S>>>> {
    check_dims(samples.dim(), x.dim())?;
    let n = x.dim();
    let mut out = Vec::with_capacity(samples.len());
    for j in 0..samples.len() {
        let (argmax, argmin) = extremal_sets(x.coords(), samples.points()[j].coords());
        let mut pieces = Vec::new();
        for i in 0..n {
            for k in 0..n {
                if i == k {
                    continue;
                }
                let hit = (argmax[i] && argmin[k]) || (argmin[i] && argmax[k]);
                if hit {
                    pieces.push(QuadraticPiece::from_sample(samples, j, i, k)?);
                }
            }
        }
        out.push(pieces);
    }
    Ok(out)
}

/// Membership masks of the argmax and argmin of `x − p`.
pub(crate) fn extremal_sets<S: Scalar>(x: &[S], p: &[S]) -> (Vec<bool>, Vec<bool>) {
    let diffs: Vec<S> = x.iter().zip(p).map(|(a, b)| a.clone() - b.clone()).collect();
    let mut hi = diffs[0].clone();
    let mut lo = diffs[0].clone();
    for d in &diffs[1..] {
        if *d > hi {
            hi = d.clone();
        }
        if *d < lo {
            lo = d.clone();
        }
    }
    (
        diffs.iter().map(|d| *d == hi).collect(),
        diffs.iter().map(|d| *d == lo).collect(),
    )
}

/// Searches for convex weights on the active pieces at `x` whose combined
/// quadratic is stationary at `x`. Such weights exist exactly when `x` is a
/// global minimizer; otherwise the result is [`Error::NotOptimal`].
///
/// Pieces are reported with `i < k`. Among several valid weightings, the
/// first basic feasible solution of the simplex method is returned.
pub fn find_certificate<S: Scalar>(samples: &Samples<S>, x: &Point<S>) -> Result<Certificate<S>> {
    check_dims(samples.dim(), x.dim())?;
    let n = x.dim();
    let c_star = objective(samples, x)?;

    // one variable per unordered active pair of each sample with d_j > 0
    let mut vars: Vec<(usize, QuadraticPiece<S>, S)> = Vec::new();
    let mut weights: Vec<SampleWeights<S>> = Vec::with_capacity(samples.len());
    let mut lp_samples = Vec::new();
    for (j, p) in samples.iter().enumerate() {
        let (argmax, argmin) = extremal_sets(x.coords(), p.coords());
        if argmax.iter().all(|&b| b) {
            // x = p_j: every piece vanishes, any single one will do
            weights.push(SampleWeights {
                sample: j,
                pieces: vec![WeightedPiece {
                    piece: QuadraticPiece::from_sample(samples, j, 0, 1)?,
                    weight: S::one(),
                }],
            });
            continue;
        }
        lp_samples.push(j);
        for i in 0..n {
            for k in i + 1..n {
                if (argmax[i] && argmin[k]) || (argmin[i] && argmax[k]) {
                    let piece = QuadraticPiece::from_sample(samples, j, i, k)?;
                    let r = piece.residual(x.coords());
                    vars.push((j, piece, r));
                }
            }
        }
    }

    if !lp_samples.is_empty() {
        let mut lp = LinearProgram::new(vars.len());
        for &j in &lp_samples {
            let row = vars
                .iter()
                .map(|(s, _, _)| if *s == j { S::one() } else { S::zero() })
                .collect();
            lp.add_row(row, Relation::Eq, S::one());
        }
        // gradient of the combined form vanishes in every coordinate but
        // the first (their total is zero anyway)
        for u in 1..n {
            let row: Vec<S> = vars
                .iter()
                .map(|(_, piece, r)| {
                    if piece.i == u {
                        r.clone()
                    } else if piece.k == u {
                        -r.clone()
                    } else {
                        S::zero()
                    }
                })
                .collect();
            if row.iter().any(|v| !v.is_zero()) {
                lp.add_row(row, Relation::Eq, S::zero());
            }
        }
        let lambda = lp.find_feasible().ok_or(Error::NotOptimal)?;
        for &j in &lp_samples {
            let pieces = vars
                .iter()
                .zip(&lambda)
                .filter(|((s, _, _), w)| *s == j && !w.is_zero())
                .map(|((_, piece, _), w)| WeightedPiece {
                    piece: piece.clone(),
                    weight: w.clone(),
                })
                .collect();
            weights.push(SampleWeights { sample: j, pieces });
        }
        weights.sort_by_key(|sw| sw.sample);
    }
    Ok(Certificate { c_star, weights })
}

/// Checks a certificate independently of how it was produced.
///
/// Structural problems (negative weights, sums different from one, pieces
/// that do not belong to the sample) are reported as
/// [`Error::MalformedCertificate`]. Otherwise returns whether the exact
/// minimum of the combined quadratic reaches `c*`.
pub fn verify_certificate<S: Scalar>(samples: &Samples<S>, cert: &Certificate<S>) -> Result<bool> {
    let n = samples.dim();
    let mut seen = vec![false; samples.len()];
    for sw in &cert.weights {
        if sw.sample >= samples.len() {
            return Err(Error::MalformedCertificate(format!("sample index {} out of range", sw.sample)));
        }
        if std::mem::replace(&mut seen[sw.sample], true) {
            return Err(Error::MalformedCertificate(format!("sample {} listed twice", sw.sample)));
        }
        let mut total = S::zero();
        for wp in &sw.pieces {
            let pc = &wp.piece;
            if pc.sample != sw.sample {
                return Err(Error::MalformedCertificate(format!(
                    "piece of sample {} filed under sample {}",
                    pc.sample, sw.sample
                )));
            }
            if pc.i >= n || pc.k >= n || pc.i == pc.k {
                return Err(Error::MalformedCertificate(format!("bad piece indices ({}, {})", pc.i, pc.k)));
            }
            let expected = QuadraticPiece::from_sample(samples, sw.sample, pc.i, pc.k)?;
            if expected.c != pc.c {
                return Err(Error::MalformedCertificate(format!(
                    "piece ({}, {}) of sample {} has constant {} but the data give {}",
                    pc.i, pc.k, sw.sample, pc.c, expected.c
                )));
            }
            if wp.weight.is_negative() {
                return Err(Error::MalformedCertificate(format!("negative weight {}", wp.weight)));
            }
            total = total + wp.weight.clone();
        }
        if total != S::one() {
            return Err(Error::MalformedCertificate(format!(
                "weights of sample {} sum to {total}",
                sw.sample
            )));
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::MalformedCertificate(format!("sample {j} has no weights")));
    }
    let q = cert.combined_form(n);
    Ok(min_quadratic(&q).value >= cert.c_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn pts(rows: &[&[i64]]) -> Samples<Rational> {
        Samples::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn example() -> Samples<Rational> {
        pts(&[&[-3, 0, 0], &[0, -6, 0], &[0, 0, -12]])
    }

    #[test]
    fn single_square_in_gauge() {
        let mut q = QuadraticForm::new(3);
        q.push(int(1), vec![int(0), int(1), int(0)], int(-3));
        let m = min_quadratic(&q);
        assert_eq!(m.value, int(0));
        assert_eq!(m.minimizers.dim(), 1);
        let x = m.minimizers.point_at(&[int(17)]);
        assert_eq!(x[0], int(0));
        assert_eq!(x[1], int(3));
    }

    #[test]
    fn gauge_choice_does_not_change_value() {
        let mut q = QuadraticForm::new(3);
        q.push(int(2), vec![int(1), int(-1), int(0)], int(4));
        q.push(int(1), vec![int(0), int(1), int(-1)], int(-1));
        q.push(rat(1, 3), vec![int(1), int(0), int(-1)], int(0));
        let v0 = q.minimize_pinned(0).value;
        assert_eq!(q.minimize_pinned(1).value, v0);
        assert_eq!(q.minimize_pinned(2).value, v0);
    }

    #[test]
    fn active_pieces_of_worked_example() {
        let act = active_pieces(&example(), &p(&[0, 0, -1])).unwrap();
        assert!(act[0].iter().any(|pc| pc.i == 0 && pc.k == 2));
        for (j, pieces) in act.iter().enumerate() {
            assert!(!pieces.is_empty());
            let d = p(&[0, 0, -1]).distance(&example().points()[j]).unwrap();
            for pc in pieces {
                assert_eq!(pc.eval(&[int(0), int(0), int(-1)]), d.clone() * d.clone());
            }
        }
        let s = pts(&[&[0, 1, 2]]);
        assert_eq!(active_pieces(&s, &p(&[0, 1, 2])).unwrap()[0].len(), 6);
    }

    #[test]
    fn certificate_of_worked_example() {
        let s = example();
        let cert = find_certificate(&s, &p(&[0, 0, -1])).unwrap();
        assert_eq!(cert.c_star, int(186));
        assert_eq!(cert.weight_of(0, 0, 2), Some(&int(1)));
        assert_eq!(cert.weight_of(1, 1, 2), Some(&int(1)));
        assert_eq!(cert.weight_of(2, 0, 2), Some(&rat(4, 11)));
        assert_eq!(cert.weight_of(2, 1, 2), Some(&rat(7, 11)));
        assert!(verify_certificate(&s, &cert).unwrap());
        let q = cert.combined_form(3);
        assert_eq!(min_quadratic(&q).value, int(186));
        assert_eq!(q.eval(&[int(0), int(0), int(-1)]), int(186));
    }

    #[test]
    fn swapped_weights_fail_and_weaker_bound_holds() {
        let s = example();
        let mut cert = find_certificate(&s, &p(&[0, 0, -1])).unwrap();
        let mut weaker = cert.clone();
        weaker.c_star = int(185);
        assert!(verify_certificate(&s, &weaker).unwrap());
        for wp in &mut cert.weights[2].pieces {
            wp.weight = int(1) - wp.weight.clone();
        }
        assert!(!verify_certificate(&s, &cert).unwrap());
        assert!(min_quadratic(&cert.combined_form(3)).value < int(186));
    }

    #[test]
    fn malformed_certificates_are_rejected() {
        let s = example();
        let cert = find_certificate(&s, &p(&[0, 0, -1])).unwrap();
        let mut bad = cert.clone();
        bad.weights[2].pieces[0].weight = rat(-1, 11);
        assert!(matches!(verify_certificate(&s, &bad), Err(Error::MalformedCertificate(_))));
        let mut bad = cert.clone();
        bad.weights.pop();
        assert!(matches!(verify_certificate(&s, &bad), Err(Error::MalformedCertificate(_))));
        let mut bad = cert.clone();
        bad.weights[0].pieces[0].piece.c = int(99);
        assert!(matches!(verify_certificate(&s, &bad), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn non_optimal_point_has_no_certificate() {
        assert_eq!(find_certificate(&example(), &p(&[0, 0, 0])), Err(Error::NotOptimal));
    }

    #[test]
    fn singleton_certificate() {
        let s = pts(&[&[0, 4, -2]]);
        let cert = find_certificate(&s, &p(&[0, 4, -2])).unwrap();
        assert_eq!(cert.c_star, int(0));
        assert_eq!(cert.weights[0].pieces.len(), 1);
        assert!(verify_certificate(&s, &cert).unwrap());
    }
}
