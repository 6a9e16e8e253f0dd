//! Tropical line segments and their ordinary pieces.

use crate::error::{check_dims, Result};
use crate::point::{canonicalize, Point};
use crate::scalar::Scalar;

/// Breakpoints of the tropical segment between two points, both endpoints
/// included. Consecutive entries bound one ordinary line segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentDecomposition<S> {
    points: Vec<Point<S>>,
}

impl<S: Scalar> SegmentDecomposition<S> {
    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point<S>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of ordinary pieces.
    pub fn pieces(&self) -> usize {
        self.points.len().saturating_sub(1)
    }
}

/// Breakpoints of `{ (λ ⊙ x) ⊕ y }` ordered from `y` to `x`.
///
/// The sweep parameter only changes slope where `λ` equals one of the
/// coordinates of `y − x`, so at most `n` points are produced.
pub fn segment_breakpoints<S: Scalar>(x: &Point<S>, y: &Point<S>) -> Result<SegmentDecomposition<S>> {
    check_dims(x.dim(), y.dim())?;
    let mut thresholds: Vec<S> = y
        .coords()
        .iter()
        .zip(x.coords())
        .map(|(b, a)| b.clone() - a.clone())
        .collect();
    thresholds.sort_by(|a, b| a.partial_cmp(b).expect("comparable coordinates"));
    thresholds.dedup();

    let mut points: Vec<Point<S>> = Vec::with_capacity(thresholds.len());
    for lambda in thresholds {
        let raw = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| {
                let shifted = lambda.clone() + a.clone();
                if shifted > *b {
                    shifted
                } else {
                    b.clone()
                }
            })
            .collect();
        let pt = canonicalize(raw)?;
        if points.last() != Some(&pt) {
            points.push(pt);
        }
    }
    Ok(SegmentDecomposition { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::trop_dist;
    use crate::scalar::{int, Rational};

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn three_dimensional_segment() {
        let seg = segment_breakpoints(&p(&[0, 0, 0]), &p(&[0, 1, 2])).unwrap();
        assert_eq!(seg.points(), &[p(&[0, 1, 2]), p(&[0, 0, 1]), p(&[0, 0, 0])]);
        assert_eq!(seg.pieces(), 2);
    }

    #[test]
    fn degenerate_segment() {
        let x = p(&[0, 3, -1]);
        let seg = segment_breakpoints(&x, &x).unwrap();
        assert_eq!(seg.points(), &[x]);
    }

    #[test]
    fn planar_segment_has_no_interior_breakpoint() {
        let seg = segment_breakpoints(&p(&[0, 0]), &p(&[0, 3])).unwrap();
        assert_eq!(seg.points(), &[p(&[0, 3]), p(&[0, 0])]);
    }

    #[test]
    fn breakpoints_lie_on_a_geodesic() {
        let x = p(&[0, 5, -2, 7]);
        let y = p(&[0, -1, 4, 3]);
        let seg = segment_breakpoints(&x, &y).unwrap();
        let total = trop_dist(&x, &y).unwrap();
        let mut walked = int(0);
        for w in seg.points().windows(2) {
            walked += trop_dist(&w[0], &w[1]).unwrap();
        }
        assert_eq!(walked, total);
    }
}
