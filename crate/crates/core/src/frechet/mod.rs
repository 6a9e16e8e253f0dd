//! Tropical Fréchet means: the objective, a greedy solver, an exact solver
//! with certificates, and the polytrope of all means.

mod exact;
mod greedy;
pub(crate) mod pattern;
mod piece;

pub use exact::{exact_frechet, ExactOptions, FrechetResult, SolveError};
pub use greedy::{greedy_frechet, GreedyOptions, GreedyResult};
pub use piece::{objective, QuadraticPiece};

use crate::error::{check_dims, Result};
use crate::point::{dist_raw, trop_dist, Point, Samples};
use crate::polytrope::TropMatrix;
use crate::scalar::Scalar;
use crate::segment::segment_breakpoints;
use crate::tropical::Trop;

/// The polytrope of all Fréchet means, given one mean.
///
/// With `d_k = d(mean, p_k)` the set of means is the intersection of the
/// balls `B(p_k, d_k)`, whose matrix is
/// `c_ij = max_k (−d_k + p_{k,i} − p_{k,j})` with zero diagonal. The
/// returned matrix is not starred.
pub fn fm_polytrope<S: Scalar>(samples: &Samples<S>, mean: &Point<S>) -> Result<TropMatrix<S>> {
    check_dims(samples.dim(), mean.dim())?;
    let n = samples.dim();
    let radii: Vec<S> = samples.iter().map(|p| dist_raw(mean.coords(), p.coords())).collect();
    let mut entries = vec![Trop::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut best: Option<S> = None;
            for (p, d) in samples.iter().zip(&radii) {
                let v = p[i].clone() - p[j].clone() - d.clone();
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
            entries[i * n + j] = Trop::Finite(best.expect("nonempty sample"));
        }
    }
    Ok(TropMatrix::from_parts(n, entries, false))
}

/// A Fréchet mean of two points: the point halfway along the tropical
/// segment between them, at distance `d(p1, p2)/2` from both.
pub fn two_point_mean<S: Scalar>(p1: &Point<S>, p2: &Point<S>) -> Result<Point<S>> {
    let total = trop_dist(p1, p2)?;
    let half = total / S::from_int(2);
    let seg = segment_breakpoints(p1, p2)?;
    let mut walked = S::zero();
    for w in seg.points().windows(2) {
        let len = trop_dist(&w[0], &w[1])?;
        if walked.clone() + len.clone() >= half {
            let t = (half - walked) / len;
            let coords = w[0]
                .coords()
                .iter()
                .zip(w[1].coords())
                .map(|(a, b)| a.clone() + t.clone() * (b.clone() - a.clone()))
                .collect();
            return Point::new(coords);
        }
        walked = walked + len;
    }
    Ok(p1.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn pts(rows: &[&[i64]]) -> Samples<Rational> {
        Samples::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn polytrope_of_worked_example() {
        let s = pts(&[&[-3, 0, 0], &[0, -6, 0], &[0, 0, -12]]);
        let c = fm_polytrope(&s, &p(&[0, 0, -1])).unwrap();
        let want = [(0, 1, -1), (1, 0, -1), (0, 2, 1), (2, 0, -1), (1, 2, 1), (2, 1, -1)];
        for (i, j, v) in want {
            assert_eq!(c.get(i, j), &Trop::Finite(int(v)), "entry ({i},{j})");
        }
        assert_eq!(c.pseudovertices().unwrap(), vec![p(&[0, 0, -1])]);
    }

    #[test]
    fn polytrope_of_a_singleton_is_the_point() {
        let s = pts(&[&[0, 3, -4]]);
        let c = fm_polytrope(&s, &p(&[0, 3, -4])).unwrap();
        assert_eq!(c.pseudovertices().unwrap(), vec![p(&[0, 3, -4])]);
    }

    #[test]
    fn polytrope_of_a_segment_of_means() {
        let s = pts(&[&[0, 0, 8], &[0, 2, 4], &[0, 5, 3], &[0, 10, 2]]);
        let c = fm_polytrope(&s, &p(&[0, 3, 3])).unwrap();
        let pv = c.pseudovertices().unwrap();
        assert_eq!(pv.len(), 2);
        assert!(pv.contains(&p(&[0, 3, 3])) && pv.contains(&p(&[0, 4, 4])));
        assert_eq!(objective(&s, &p(&[0, 3, 3])).unwrap(), int(136));
    }

    #[test]
    fn two_point_means() {
        let a = p(&[0, 0, 0]);
        let b = p(&[0, 1, 2]);
        let m = two_point_mean(&a, &b).unwrap();
        assert_eq!(m.distance(&a).unwrap(), int(1));
        assert_eq!(m.distance(&b).unwrap(), int(1));
        assert_eq!(two_point_mean(&a, &a).unwrap(), a);
        let s = Samples::new(vec![a, b]).unwrap();
        assert_eq!(objective(&s, &m).unwrap(), int(2));
    }
}
