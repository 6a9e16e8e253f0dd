#![allow(dead_code)]

use proptest::prelude::*;
use tropfm::scalar::int;
use tropfm::{Rational, SampleSet, TorusPoint};

pub fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

pub fn point(n: usize, max_num: i64, max_den: i64) -> impl Strategy<Value = TorusPoint> {
    proptest::collection::vec(rational(max_num, max_den), n).prop_map(|v| TorusPoint::new(v).unwrap())
}

pub fn int_point(n: usize, bound: i64) -> impl Strategy<Value = TorusPoint> {
    proptest::collection::vec(-bound..=bound, n)
        .prop_map(|v| TorusPoint::new(v.into_iter().map(int).collect()).unwrap())
}

/// Small integer samples of `m` points in dimension `n`.
pub fn int_samples(n: usize, m: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = SampleSet> {
    proptest::collection::vec(proptest::collection::vec(-bound..=bound, n), m).prop_map(|rows| {
        SampleSet::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap()
    })
}

pub fn samples_any_dim(bound: i64) -> impl Strategy<Value = SampleSet> {
    prop_oneof![int_samples(3, 1..=4, bound), int_samples(4, 1..=3, bound)]
}

/// Exact solution of a square system, `None` when singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != int(0))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r][col] != int(0) {
                let f = a[r][col].clone() / a[col][col].clone();
                let pivot = a[col].clone();
                for (v, pv) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                    *v -= pv * &f;
                }
                let v = b[col].clone() * f;
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}
