//! Polytropes `Q(C) = { x : x_i − x_j ≥ c_ij }` and their vertex descriptions.
//!
//! A [`TropMatrix`] is the h-description. Its Kleene star has the tropical
//! vertices as columns; the classical vertices (pseudovertices) are found
//! among the breakpoints of tropical segments between points of the
//! polytrope.

use crate::error::{check_dims, Error, Result};
use crate::point::{canonicalize, Point};
use crate::scalar::Scalar;
use crate::segment::segment_breakpoints;
use crate::tropical::Trop;

/// Square max-plus matrix describing the polytrope `Q(C)`.
#[derive(Debug, Clone)]
pub struct TropMatrix<S> {
    n: usize,
    entries: Vec<Trop<S>>,
    /// Set when the entries are known to be a Kleene star.
    starred: bool,
}

impl<S: PartialEq> PartialEq for TropMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<S: Scalar> TropMatrix<S> {
    pub fn new(rows: Vec<Vec<Trop<S>>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            check_dims(n, row.len())?;
            entries.extend(row);
        }
        Ok(Self {
            n,
            entries,
            starred: false,
        })
    }

    pub fn from_finite(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(Trop::Finite).collect())
                .collect(),
        )
    }

    /// The max-plus identity: zeros on the diagonal, −∞ elsewhere.
    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n)
            .map(|idx| if idx / n == idx % n { Trop::zero() } else { Trop::NegInf })
            .collect();
        Self {
            n,
            entries,
            starred: true,
        }
    }

    pub(crate) fn from_parts(n: usize, entries: Vec<Trop<S>>, starred: bool) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries, starred }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Trop<S> {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Trop<S>] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Trop<S>]> {
        self.entries.chunks(self.n)
    }

    /// Whether the matrix is known to equal its own Kleene star.
    pub fn is_starred(&self) -> bool {
        self.starred
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TropMatrix<T> {
        TropMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.map(&f)).collect(),
            starred: self.starred,
        }
    }

    /// Max-plus product `self ⊙ other`.
    pub fn tropical_product(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let mut out = vec![Trop::NegInf; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let cand = a.otimes(other.get(k, j));
                    let slot = &mut out[i * n + j];
                    if cand > *slot {
                        *slot = cand;
                    }
                }
            }
        }
        Ok(Self::from_parts(n, out, false))
    }

    /// Entrywise tropical sum (maximum).
    pub fn tropical_sum(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(b))
            .collect();
        Ok(Self::from_parts(self.n, entries, false))
    }

    /// Kleene star `I ⊕ C ⊕ … ⊕ C^{n−1}` by a max-plus Floyd–Warshall sweep.
    ///
    /// Fails with [`Error::EmptyPolytrope`] when a cycle of positive weight
    /// exists, which is exactly when `Q(C)` is empty.
    pub fn kleene_star(&self) -> Result<Self> {
        if self.starred {
            return Ok(self.clone());
        }
        let n = self.n;
        let mut d = self.entries.clone();
        for i in 0..n {
            let diag = &mut d[i * n + i];
            if *diag < Trop::zero() {
                *diag = Trop::zero();
            }
        }
        for k in 0..n {
            for i in 0..n {
                let ik = d[i * n + k].clone();
                if !ik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let cand = ik.otimes(&d[k * n + j]);
                    if cand > d[i * n + j] {
                        d[i * n + j] = cand;
                    }
                }
            }
        }
        if (0..n).any(|i| d[i * n + i] > Trop::zero()) {
            return Err(Error::EmptyPolytrope);
        }
        Ok(Self::from_parts(n, d, true))
    }

    /// `true` when the star has no −∞ entry. Only meaningful for starred
    /// matrices; call [`kleene_star`](Self::kleene_star) first otherwise.
    pub fn is_bounded(&self) -> bool {
        self.entries.iter().all(Trop::is_finite)
    }

    /// Whether `x` satisfies every inequality `x_i − x_j ≥ c_ij`.
    pub fn contains(&self, x: &Point<S>) -> Result<bool> {
        check_dims(self.n, x.dim())?;
        let c = x.coords();
        for i in 0..self.n {
            for j in 0..self.n {
                if let Trop::Finite(bound) = self.get(i, j) {
                    if c[i].clone() - c[j].clone() < *bound {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn bounded_star(&self) -> Result<Self> {
        let star = self.kleene_star()?;
        if !star.is_bounded() {
            return Err(Error::Unbounded);
        }
        Ok(star)
    }

    /// Canonicalized, deduplicated columns of the Kleene star.
    pub fn tropical_vertices(&self) -> Result<Vec<Point<S>>> {
        let star = self.bounded_star()?;
        let n = self.n;
        let mut out: Vec<Point<S>> = Vec::with_capacity(n);
        for j in 0..n {
            let column = (0..n)
                .map(|i| star.get(i, j).finite().cloned().expect("bounded star"))
                .collect();
            push_unique(&mut out, canonicalize(column)?);
        }
        Ok(out)
    }

    /// Literal union of the segment breakpoints between every pair of
    /// tropical vertices, in first-occurrence order, without any filtering.
    pub fn breakpoint_union(&self) -> Result<Vec<Point<S>>> {
        let verts = self.tropical_vertices()?;
        let mut out = verts.clone();
        for a in 0..verts.len() {
            for b in 0..verts.len() {
                if a == b {
                    continue;
                }
                for q in segment_breakpoints(&verts[a], &verts[b])?.into_points() {
                    push_unique(&mut out, q);
                }
            }
        }
        Ok(out)
    }

    /// Classical vertices of the (bounded) polytrope.
    ///
    /// Walks the vertex-edge graph starting from the tropical vertices. At a
    /// vertex `x` every edge direction is an indicator vector `1_U`, where
    /// `U` contains every `i` with `x_i − x_j = c*_ij` tight for some
    /// `j ∈ U`, and both `U` and its complement are connected in the graph
    /// of tight pairs. Moving along `1_U` until the next inequality becomes
    /// tight reaches the neighbouring vertex.
    pub fn pseudovertices(&self) -> Result<Vec<Point<S>>> {
        let star = self.bounded_star()?;
        let mut out = star.tropical_vertices()?;
        let mut next = 0;
        while next < out.len() {
            let x = out[next].clone();
            next += 1;
            for up in star.edge_directions(x.coords()) {
                let y = star.walk(x.coords(), &up)?;
                debug_assert!(star.is_vertex_of_star(&y));
                push_unique(&mut out, y);
            }
        }
        Ok(out)
    }

    /// Tight pairs `(i, j)` at `x`: `x_i − x_j = c_ij`.
    fn tight(&self, x: &[S]) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if let Trop::Finite(bound) = self.get(i, j) {
                        if x[i].clone() - x[j].clone() == *bound {
                            out.push((i, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Edge directions at the vertex `x` of a starred matrix, as membership
    /// masks of `U`.
    fn edge_directions(&self, x: &[S]) -> Vec<Vec<bool>> {
        let n = self.n;
        let tight = self.tight(x);

        // classes of coordinates that must move together
        let mut reach = vec![false; n * n];
        for i in 0..n {
            reach[i * n + i] = true;
        }
        for &(i, j) in &tight {
            reach[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut classes = 0;
        for i in 0..n {
            if class[i] == usize::MAX {
                for j in i..n {
                    if reach[i * n + j] && reach[j * n + i] {
                        class[j] = classes;
                    }
                }
                classes += 1;
            }
        }
        // preds[b] holds classes a with a tight arc a → b
        let mut preds = vec![Vec::new(); classes];
        let mut adj = vec![Vec::new(); classes];
        for &(i, j) in &tight {
            let (a, b) = (class[i], class[j]);
            if a != b {
                push_unique(&mut preds[b], a);
                push_unique(&mut adj[a], b);
                push_unique(&mut adj[b], a);
            }
        }
        // classes in an order where predecessors come first
        let mut order = Vec::with_capacity(classes);
        let mut placed = vec![false; classes];
        while order.len() < classes {
            for c in 0..classes {
                if !placed[c] && preds[c].iter().all(|&p| placed[p]) {
                    placed[c] = true;
                    order.push(c);
                }
            }
        }

        let mut out = Vec::new();
        let mut chosen = vec![false; classes];
        upsets(&order, &preds, 0, &mut chosen, &mut |u: &[bool]| {
            let size = u.iter().filter(|&&b| b).count();
            if size == 0 || size == classes || !connected(&adj, u, true) || !connected(&adj, u, false) {
                return;
            }
            out.push((0..n).map(|i| u[class[i]]).collect());
        });
        out
    }

    /// The last point of `Q` on the ray `x + t·1_U`, canonicalized.
    fn walk(&self, x: &[S], up: &[bool]) -> Result<Point<S>> {
        let n = self.n;
        let mut step: Option<S> = None;
        for i in (0..n).filter(|&i| !up[i]) {
            for j in (0..n).filter(|&j| up[j]) {
                if let Trop::Finite(bound) = self.get(i, j) {
                    let slack = x[i].clone() - x[j].clone() - bound.clone();
                    if step.as_ref().is_none_or(|s| slack < *s) {
                        step = Some(slack);
                    }
                }
            }
        }
        let step = step.ok_or(Error::Unbounded)?;
        let moved = (0..n)
            .map(|i| if up[i] { x[i].clone() + step.clone() } else { x[i].clone() })
            .collect();
        canonicalize(moved)
    }

    /// Whether `x` is a classical vertex of `Q(C)`.
    pub fn is_vertex(&self, x: &Point<S>) -> Result<bool> {
        let star = self.kleene_star()?;
        Ok(star.contains(x)? && star.is_vertex_of_star(x))
    }

    /// A point of a polytrope in R^{n−1} is a vertex iff its tight
    /// inequalities have rank n−1, i.e. the graph of tight pairs `{i, j}`
    /// connects all coordinates.
    fn is_vertex_of_star(&self, x: &Point<S>) -> bool {
        let n = self.n;
        let c = x.coords();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        let mut components = n;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let Trop::Finite(bound) = self.get(i, j) {
                    if c[i].clone() - c[j].clone() == *bound {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri] = rj;
                            components -= 1;
                        }
                    }
                }
            }
        }
        components == 1
    }

    /// The matrix of `Q(C) + t`.
    pub fn translate(&self, shift: &[S]) -> Result<Self> {
        check_dims(self.n, shift.len())?;
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                self.entries[idx].map(|c| c.clone() + shift[i].clone() - shift[j].clone())
            })
            .collect();
        Ok(Self::from_parts(n, entries, self.starred))
    }
}

/// Calls `visit` on every set of classes closed under predecessors.
fn upsets(order: &[usize], preds: &[Vec<usize>], pos: usize, chosen: &mut Vec<bool>, visit: &mut impl FnMut(&[bool])) {
    if pos == order.len() {
        visit(chosen);
        return;
    }
    let c = order[pos];
    upsets(order, preds, pos + 1, chosen, visit);
    if preds[c].iter().all(|&p| chosen[p]) {
        chosen[c] = true;
        upsets(order, preds, pos + 1, chosen, visit);
        chosen[c] = false;
    }
}

/// Whether the nodes with `mask[v] == side` induce a connected subgraph.
fn connected(adj: &[Vec<usize>], mask: &[bool], side: bool) -> bool {
    let Some(start) = mask.iter().position(|&b| b == side) else {
        return false;
    };
    let mut seen = vec![false; mask.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if mask[w] == side && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..mask.len()).all(|v| mask[v] != side || seen[v])
}

pub(crate) fn push_unique<S: PartialEq>(out: &mut Vec<S>, item: S) {
    if !out.contains(&item) {
        out.push(item);
    }
}

/// The tropical ball `B(center, r)` as a polytrope:
/// `c_ij = −r + y_i − y_j` off the diagonal, zero on it.
pub fn ball_to_polytrope<S: Scalar>(center: &Point<S>, radius: &S) -> Result<TropMatrix<S>> {
    if radius.is_negative() {
        return Err(Error::NegativeRadius);
    }
    let y = center.coords();
    let n = y.len();
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                Trop::zero()
            } else {
                Trop::Finite(y[i].clone() - y[j].clone() - radius.clone())
            }
        })
        .collect();
    Ok(TropMatrix::from_parts(n, entries, true))
}

/// Intersection of polytropes: the entrywise maximum of their matrices.
pub fn intersect<S: Scalar>(list: &[TropMatrix<S>]) -> Result<TropMatrix<S>> {
    let (first, rest) = list.split_first().ok_or(Error::EmptySample)?;
    let mut acc = first.clone();
    for m in rest {
        acc = acc.tropical_sum(m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::trop_dist;
    use crate::scalar::{int, rat, Rational};

    fn fin(v: i64) -> Trop<Rational> {
        Trop::Finite(int(v))
    }

    fn p(v: &[i64]) -> Point<Rational> {
        Point::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    pub(crate) fn example_matrix() -> TropMatrix<Rational> {
        TropMatrix::new(vec![
            vec![fin(-1), fin(1), fin(-5)],
            vec![fin(-4), fin(0), Trop::NegInf],
            vec![fin(0), fin(3), Trop::NegInf],
        ])
        .unwrap()
    }

    #[test]
    fn kleene_star_of_worked_example() {
        let star = example_matrix().kleene_star().unwrap();
        let expected = TropMatrix::from_finite(vec![
            vec![int(0), int(1), int(-5)],
            vec![int(-4), int(0), int(-9)],
            vec![int(0), int(3), int(0)],
        ])
        .unwrap();
        assert_eq!(star.entries, expected.entries);
        assert!(star.is_starred());
    }

    #[test]
    fn identity_is_its_own_star() {
        let id = TropMatrix::<Rational>::identity(4);
        let star = TropMatrix::from_parts(4, id.entries.clone(), false)
            .kleene_star()
            .unwrap();
        assert_eq!(star.entries, id.entries);
        assert_eq!(id.tropical_vertices(), Err(Error::Unbounded));
    }

    #[test]
    fn positive_cycle_means_empty() {
        let m = TropMatrix::from_finite(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(m.kleene_star(), Err(Error::EmptyPolytrope));
    }

    #[test]
    fn membership_in_worked_example() {
        let c = example_matrix();
        assert!(c.contains(&p(&[0, -4, 3])).unwrap());
        assert!(!c.contains(&p(&[0, 0, 0])).unwrap());
        for v in c.tropical_vertices().unwrap() {
            assert!(c.contains(&v).unwrap());
        }
        assert!(c.contains(&p(&[0, 0])).is_err());
    }

    #[test]
    fn vertices_of_worked_example() {
        let c = example_matrix();
        assert_eq!(
            c.tropical_vertices().unwrap(),
            vec![p(&[0, -4, 0]), p(&[0, -1, 2]), p(&[0, -4, 5])]
        );
        let pv = c.pseudovertices().unwrap();
        assert_eq!(pv.len(), 5);
        for extra in [p(&[0, -3, 0]), p(&[0, -1, 5])] {
            assert!(pv.contains(&extra));
        }
    }

    #[test]
    fn ball_entries() {
        let b = ball_to_polytrope(&p(&[0, 0, 0]), &int(2)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { fin(0) } else { fin(-2) };
                assert_eq!(b.get(i, j), &want);
            }
        }
        let b = ball_to_polytrope(&p(&[0, 1, 2]), &int(1)).unwrap();
        let want = [[0, -2, -3], [0, 0, -2], [1, 0, 0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(b.get(i, j), &fin(v));
            }
        }
        assert_eq!(
            ball_to_polytrope(&p(&[0, 0]), &int(-1)),
            Err(Error::NegativeRadius)
        );
    }

    #[test]
    fn degenerate_ball_is_a_point() {
        let y = p(&[0, 3, -2, 5]);
        let b = ball_to_polytrope(&y, &int(0)).unwrap();
        assert_eq!(b.pseudovertices().unwrap(), vec![y]);
    }

    #[test]
    fn unit_ball_in_four_dimensions_has_fourteen_vertices() {
        let b = ball_to_polytrope(&p(&[0, 0, 0, 0]), &int(1)).unwrap();
        assert_eq!(b.tropical_vertices().unwrap().len(), 4);
        assert_eq!(b.breakpoint_union().unwrap().len(), 10);
        let pv = b.pseudovertices().unwrap();
        assert_eq!(pv.len(), 14);
        for v in &pv {
            assert_eq!(trop_dist(v, &p(&[0, 0, 0, 0])).unwrap(), int(1));
        }
    }

    #[test]
    fn intersection_of_two_balls_is_a_segment() {
        let b1 = ball_to_polytrope(&p(&[0, 0, 0]), &int(1)).unwrap();
        let b2 = ball_to_polytrope(&p(&[0, 1, 2]), &int(1)).unwrap();
        let c = intersect(&[b1.clone(), b2]).unwrap();
        let pv = c.pseudovertices().unwrap();
        assert_eq!(pv.len(), 2);
        assert!(pv.contains(&p(&[0, 0, 1])));
        assert!(pv.contains(&p(&[0, 1, 1])));
        assert_eq!(intersect(std::slice::from_ref(&b1)).unwrap(), b1);
        // grid check: membership matches the segment x3 = 1, 0 <= x2 <= 1
        for a in -8..=8 {
            for b in -8..=8 {
                let x = Point::new(vec![int(0), rat(a, 4), rat(b, 4)]).unwrap();
                let on_segment = b == 4 && (0..=4).contains(&a);
                assert_eq!(c.contains(&x).unwrap(), on_segment, "{a} {b}");
            }
        }
    }

    #[test]
    fn disjoint_balls_have_empty_intersection() {
        let b1 = ball_to_polytrope(&p(&[0, 0, 0]), &int(1)).unwrap();
        let b2 = ball_to_polytrope(&p(&[0, 5, 0]), &int(1)).unwrap();
        let c = intersect(&[b1, b2]).unwrap();
        assert_eq!(c.kleene_star(), Err(Error::EmptyPolytrope));
    }

    #[test]
    fn translate_moves_polytrope() {
        let c = example_matrix();
        let t = [int(2), int(-1), int(7)];
        let moved = c.translate(&t).unwrap();
        let x = p(&[0, -4, 3]);
        assert!(moved.contains(&x.translate(&t).unwrap()).unwrap());
    }
}
