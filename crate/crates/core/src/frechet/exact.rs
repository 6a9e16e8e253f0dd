use crate::certify::{find_certificate, Certificate};
use crate::error::{Error, Result};
use crate::oracle::{brute_force_frechet, PieceAssignment, DEFAULT_BUDGET};
use crate::point::{canonicalize, Point, Samples};
use crate::polytrope::TropMatrix;
use crate::scalar::{pow10_inv, rat, Rational, Scalar};

use super::fm_polytrope;
use super::greedy::{greedy_frechet, GreedyOptions};
use super::pattern::{solve_patterns, TiePattern};
use super::piece::objective;

/// A Fréchet mean together with everything derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct FrechetResult<S> {
    pub mean: Point<S>,
    /// `d(mean, p_j)` for every sample.
    pub distances: Vec<S>,
    pub min_sum: S,
    /// Matrix of the polytrope of all means (not starred).
    pub fm_polytrope: TropMatrix<S>,
    /// Whether `min_sum` is certified to be the exact minimum.
    pub exact: bool,
    pub certificate: Option<Certificate<S>>,
}

impl<S: Scalar> FrechetResult<S> {
    /// Uncertified result built around a trusted mean.
    pub fn from_mean(samples: &Samples<S>, mean: Point<S>) -> Result<Self> {
        let distances = samples.distances_from(&mean)?;
        let min_sum = distances
            .iter()
            .fold(S::zero(), |acc, d| acc + d.clone() * d.clone());
        let fm_polytrope = fm_polytrope(samples, &mean)?;
        Ok(Self {
            mean,
            distances,
            min_sum,
            fm_polytrope,
            exact: false,
            certificate: None,
        })
    }

    pub fn tropical_vertices(&self) -> Result<Vec<Point<S>>> {
        self.fm_polytrope.tropical_vertices()
    }

    pub fn pseudovertices(&self) -> Result<Vec<Point<S>>> {
        self.fm_polytrope.pseudovertices()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactOptions {
    /// Options of the floating point warm start.
    pub greedy: GreedyOptions,
    /// Tie tolerances tried, in order, when reading the active pattern off
    /// the warm start.
    pub thresholds: Vec<Rational>,
    /// Limit on `(n(n−1))^m` for the exhaustive fallback.
    pub budget: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            greedy: GreedyOptions::default(),
            thresholds: vec![
                pow10_inv(6),
                pow10_inv(5),
                pow10_inv(4),
                pow10_inv(3),
                pow10_inv(2),
                pow10_inv(1),
                rat(1, 2),
            ],
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Input(#[from] Error),
    /// Neither the refinement nor the exhaustive search (which was over
    /// budget) produced a certificate. Carries the best point found.
    #[error("no certified optimum within the search budget")]
    BudgetExceeded(Box<FrechetResult<Rational>>),
}

/// Exact global minimizer of the Fréchet objective with a certificate.
///
/// A floating point greedy run locates the minimum approximately; the tie
/// pattern at that point is read off at increasing tolerances and each
/// guess is solved exactly and then certified. If no guess certifies, the
/// exhaustive search of [`brute_force_frechet`] runs when the instance is
/// within budget.
pub fn exact_frechet(samples: &Samples<Rational>, opts: &ExactOptions) -> Result<FrechetResult<Rational>, SolveError> {
    let approx = samples.map_scalar(f64::from_rational);
    let warm = greedy_frechet(&approx, &opts.greedy)?;
    let x = warm.point.coords();

    let mut best = exact_point(x)?;
    let mut best_value = objective(samples, &best)?;
    let mut tried: Vec<Vec<TiePattern>> = Vec::new();
    for tol in &opts.thresholds {
        let tol = f64::from_rational(tol);
        let patterns: Vec<TiePattern> = approx.iter().map(|p| TiePattern::detect(x, p.coords(), &tol)).collect();
        if tried.contains(&patterns) {
            continue;
        }
        let Some((value, cand)) = solve_patterns(samples, &patterns) else {
            tried.push(patterns);
            continue;
        };
        tried.push(patterns);
        if let Ok(cert) = find_certificate(samples, &cand) {
            return Ok(certified(samples, cand, cert)?);
        }
        if value < best_value {
            best_value = value;
            best = cand;
        }
    }

    if PieceAssignment::count(samples.dim(), samples.len()) <= opts.budget {
        let r = brute_force_frechet(samples, opts.budget)?;
        if let Ok(cert) = find_certificate(samples, &r.point) {
            return Ok(certified(samples, r.point, cert)?);
        }
        if r.value < best_value {
            best = r.point;
        }
    }
    Err(SolveError::BudgetExceeded(Box::new(FrechetResult::from_mean(samples, best)?)))
}

fn certified(samples: &Samples<Rational>, mean: Point<Rational>, cert: Certificate<Rational>) -> Result<FrechetResult<Rational>> {
    let mut out = FrechetResult::from_mean(samples, mean)?;
    out.exact = true;
    out.certificate = Some(cert);
    Ok(out)
}

fn exact_point(x: &[f64]) -> Result<Point<Rational>> {
    let coords = x
        .iter()
        .map(|v| v.to_rational().ok_or_else(|| Error::Format(format!("non-finite coordinate {v}"))))
        .collect::<Result<Vec<_>>>()?;
    canonicalize(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify_certificate;
    use crate::scalar::int;

    fn pts(rows: &[&[i64]]) -> Samples<Rational> {
        Samples::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = pts(&[&[-3, 0, 0], &[0, -6, 0], &[0, 0, -12]]);
        let r = exact_frechet(&s, &ExactOptions::default()).unwrap();
        assert!(r.exact);
        assert_eq!(r.min_sum, int(186));
        assert_eq!(r.mean, p(&[0, 0, -1]));
        assert_eq!(r.distances, vec![int(4), int(7), int(11)]);
        assert!(verify_certificate(&s, r.certificate.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn two_points_and_singleton() {
        let s = pts(&[&[0, 0, 0], &[0, 1, 2]]);
        let r = exact_frechet(&s, &ExactOptions::default()).unwrap();
        assert_eq!(r.min_sum, int(2));
        let pv = r.pseudovertices().unwrap();
        assert_eq!(pv.len(), 2);
        assert!(pv.contains(&p(&[0, 0, 1])) && pv.contains(&p(&[0, 1, 1])));

        let s = pts(&[&[5, 1, 2]]);
        let r = exact_frechet(&s, &ExactOptions::default()).unwrap();
        assert_eq!(r.min_sum, int(0));
        assert_eq!(r.mean, s.points()[0]);
    }

    #[test]
    fn budget_exceeded_returns_best_effort() {
        let s = pts(&[&[0, 0, 8], &[0, 2, 4], &[0, 5, 3], &[0, 10, 2]]);
        let opts = ExactOptions {
            thresholds: vec![],
            budget: 0,
            ..Default::default()
        };
        match exact_frechet(&s, &opts) {
            Err(SolveError::BudgetExceeded(best)) => {
                assert!(!best.exact);
                assert!(best.min_sum >= int(136));
            }
            other => panic!("{other:?}"),
        }
    }
}
