//! Points of the tropical projective torus R^n / R·1 and the tropical metric.

use std::ops::Index;

use crate::error::{check_dims, Error, Result};
use crate::scalar::Scalar;

/// A point of the tropical projective torus.
///
/// Stored through its canonical representative, the one whose first
/// coordinate is zero. Two coordinate vectors that differ by a constant
/// shift therefore produce equal points.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    /// Canonicalizes a raw coordinate vector.
    pub fn new(raw: Vec<S>) -> Result<Self> {
        canonicalize(raw)
    }

    pub fn from_slice(raw: &[S]) -> Result<Self> {
        canonicalize(raw.to_vec())
    }

    /// The origin `(0, ..., 0)`.
    pub fn zero(dim: usize) -> Result<Self> {
        canonicalize(vec![S::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    /// Adds a (not necessarily constant) vector and re-canonicalizes.
    pub fn translate(&self, shift: &[S]) -> Result<Self> {
        check_dims(self.dim(), shift.len())?;
        canonicalize(
            self.coords
                .iter()
                .zip(shift)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    /// Converts the coordinates to another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Point<T> {
        Point {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    pub fn distance(&self, other: &Self) -> Result<S> {
        trop_dist(self, other)
    }
}

impl<S> Index<usize> for Point<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

/// Returns the representative of `raw` with first coordinate zero.
pub fn canonicalize<S: Scalar>(mut raw: Vec<S>) -> Result<Point<S>> {
    if raw.len() < 2 {
        return Err(Error::DimensionTooSmall(raw.len()));
    }
    let shift = raw[0].clone();
    if !shift.is_zero() {
        for v in raw.iter_mut() {
            *v = v.clone() - shift.clone();
        }
    }
    Ok(Point { coords: raw })
}

/// Tropical sum `x ⊕ y`: the coordinatewise maximum.
pub fn trop_add<S: Scalar>(x: &[S], y: &[S]) -> Result<Vec<S>> {
    check_dims(x.len(), y.len())?;
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| if b > a { b.clone() } else { a.clone() })
        .collect())
}

/// Tropical scalar multiplication `λ ⊙ x`: adds `λ` to every coordinate.
pub fn trop_scale<S: Scalar>(lambda: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|a| a.clone() + lambda.clone()).collect()
}

/// Tropical distance `max_i (x_i - y_i) - min_i (x_i - y_i)`.
pub fn trop_dist<S: Scalar>(x: &Point<S>, y: &Point<S>) -> Result<S> {
    check_dims(x.dim(), y.dim())?;
    Ok(dist_raw(x.coords(), y.coords()))
}

/// Tropical distance between raw representatives of equal length.
pub(crate) fn dist_raw<S: Scalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    let mut diffs = x.iter().zip(y).map(|(a, b)| a.clone() - b.clone());
    let first = diffs.next().expect("nonempty vectors");
    let (mut hi, mut lo) = (first.clone(), first);
    for d in diffs {
        if d > hi {
            hi = d;
        } else if d < lo {
            lo = d;
        }
    }
    hi - lo
}

/// An ordered, nonempty list of points of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples<S> {
    points: Vec<Point<S>>,
}

impl<S: Scalar> Samples<S> {
    pub fn new(points: Vec<Point<S>>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptySample)?.dim();
        for p in &points {
            check_dims(dim, p.dim())?;
        }
        Ok(Self { points })
    }

    /// Builds a sample from raw coordinate rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::new(rows.into_iter().map(canonicalize).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn get(&self, j: usize) -> Result<&Point<S>> {
        self.points.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.points.len(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<S>> {
        self.points.iter()
    }

    /// Translates every point by the same vector.
    pub fn translate(&self, shift: &[S]) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| p.translate(shift))
                .collect::<Result<_>>()?,
        )
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Samples<T> {
        Samples {
            points: self.points.iter().map(|p| p.map_scalar(&f)).collect(),
        }
    }

    /// Distances from `x` to every sample point.
    pub fn distances_from(&self, x: &Point<S>) -> Result<Vec<S>> {
        self.points.iter().map(|p| trop_dist(x, p)).collect()
    }
}

impl<'a, S> IntoIterator for &'a Samples<S> {
    type Item = &'a Point<S>;
    type IntoIter = std::slice::Iter<'a, Point<S>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn raw(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonicalize_subtracts_first_coordinate() {
        assert_eq!(p(&[1, 1, 2]).coords(), raw(&[0, 0, 1]).as_slice());
        assert_eq!(p(&[0, 0, 0]).coords(), raw(&[0, 0, 0]).as_slice());
        assert_eq!(p(&[4, 0, 9]), p(&[5, 1, 10]));
        assert_eq!(p(&[4, 0, 9]).coords(), raw(&[0, -4, 5]).as_slice());
    }

    #[test]
    fn canonicalize_rejects_short_vectors() {
        assert_eq!(
            Point::<Rational>::new(vec![int(1)]),
            Err(Error::DimensionTooSmall(1))
        );
        assert!(Point::<Rational>::new(vec![]).is_err());
    }

    #[test]
    fn tropical_operations() {
        assert_eq!(trop_add(&raw(&[0, 1]), &raw(&[1, 0])).unwrap(), raw(&[1, 1]));
        assert_eq!(trop_scale(&int(2), &raw(&[0, 1, 2])), raw(&[2, 3, 4]));
        assert_eq!(
            trop_add(&raw(&[-3, 0, 0]), &raw(&[0, -6, 0])).unwrap(),
            raw(&[0, 0, 0])
        );
        assert!(trop_add(&raw(&[0, 1]), &raw(&[0, 1, 2])).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(trop_dist(&p(&[4, 0, 9]), &p(&[0, -1, 5])).unwrap(), int(3));
        assert_eq!(trop_dist(&p(&[7, 3, 1]), &p(&[7, 3, 1])).unwrap(), int(0));
        assert_eq!(trop_dist(&p(&[0, 0, 0]), &p(&[0, 1, 2])).unwrap(), int(2));
        assert!(trop_dist(&p(&[0, 0]), &p(&[0, 0, 0])).is_err());
    }

    #[test]
    fn distance_works_for_floats() {
        let x = Point::new(vec![4.0f64, 0.0, 9.0]).unwrap();
        let y = Point::new(vec![0.0f64, -1.0, 5.0]).unwrap();
        assert_eq!(trop_dist(&x, &y).unwrap(), 3.0);
    }

    #[test]
    fn samples_validate_dimensions() {
        assert_eq!(Samples::<Rational>::new(vec![]), Err(Error::EmptySample));
        assert!(Samples::new(vec![p(&[0, 0]), p(&[0, 0, 0])]).is_err());
        let s = Samples::new(vec![p(&[0, 1, 2]), p(&[3, 3, 3])]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.distances_from(&p(&[0, 0, 0])).unwrap(), raw(&[2, 0]));
    }

    #[test]
    fn translate_shifts_coordinates() {
        let x = p(&[0, 1, 2]).translate(&[rat(1, 2), int(0), int(1)]).unwrap();
        assert_eq!(x.coords(), &[int(0), rat(1, 2), rat(5, 2)]);
    }
}
