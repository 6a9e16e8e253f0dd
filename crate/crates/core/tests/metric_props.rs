mod common;

use common::{point, rational};
use proptest::prelude::*;
use tropfm::scalar::int;
use tropfm::{canonicalize, segment_breakpoints, trop_add, trop_dist, trop_scale, Rational, TorusPoint};

fn pair(n: usize) -> impl Strategy<Value = (TorusPoint, TorusPoint)> {
    (point(n, 30, 5), point(n, 30, 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_axioms((x, y) in (2usize..7).prop_flat_map(pair), z in point(6, 30, 5)) {
        let n = x.dim();
        let z = TorusPoint::from_slice(&z.coords()[..n]).unwrap();
        let dxy = trop_dist(&x, &y).unwrap();
        prop_assert_eq!(&dxy, &trop_dist(&y, &x).unwrap());
        prop_assert!(dxy >= int(0));
        prop_assert_eq!(dxy == int(0), x == y);
        prop_assert!(dxy <= trop_dist(&x, &z).unwrap() + trop_dist(&z, &y).unwrap());
    }

    #[test]
    fn distance_ignores_constant_shifts((x, y) in (2usize..7).prop_flat_map(pair), c in rational(50, 7)) {
        let shifted: Vec<Rational> = x.coords().iter().map(|v| v + &c).collect();
        prop_assert_eq!(
            trop_dist(&canonicalize(shifted.clone()).unwrap(), &y).unwrap(),
            trop_dist(&x, &y).unwrap()
        );
        let again = canonicalize(shifted).unwrap();
        prop_assert_eq!(canonicalize(again.coords().to_vec()).unwrap(), x);
    }

    /// Breakpoints lie on the tropical segment: each is `a⊙x ⊕ b⊙y` with
    /// `a = min(p − x)`, `b = min(p − y)`.
    #[test]
    fn breakpoints_lie_on_the_segment((x, y) in (2usize..7).prop_flat_map(pair)) {
        let seg = segment_breakpoints(&x, &y).unwrap();
        prop_assert!(seg.len() <= x.dim());
        prop_assert_eq!(seg.points().first(), Some(&y));
        prop_assert_eq!(seg.points().last(), Some(&x));
        let total = trop_dist(&x, &y).unwrap();
        let mut walked = int(0);
        for w in seg.points().windows(2) {
            walked += trop_dist(&w[0], &w[1]).unwrap();
        }
        // consecutive breakpoints partition a geodesic
        prop_assert_eq!(walked, total);
        for p in seg.points() {
            let diff = |q: &TorusPoint| {
                p.coords().iter().zip(q.coords()).map(|(a, b)| a - b).min().unwrap()
            };
            let (a, b) = (diff(&x), diff(&y));
            let combo = trop_add(&trop_scale(&a, x.coords()), &trop_scale(&b, y.coords())).unwrap();
            prop_assert_eq!(&canonicalize(combo).unwrap(), p);
        }
    }
}
