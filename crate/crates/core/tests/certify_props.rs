mod common;

use common::{rational, samples_any_dim};
use proptest::prelude::*;
use tropfm::scalar::{int, rat};
use tropfm::{
    exact_frechet, find_certificate, objective, verify_certificate, Error, ExactOptions, QuadraticForm, Rational,
    TorusPoint,
};

/// Sum of squares of affine forms whose coefficients add up to zero, so
/// the form ignores constant shifts.
fn shift_invariant_form(n: usize) -> impl Strategy<Value = QuadraticForm<Rational>> {
    proptest::collection::vec((1i64..5, proptest::collection::vec(-3i64..=3, n - 1), rational(12, 3)), 1..6).prop_map(
        move |terms| {
            let mut q = QuadraticForm::new(n);
            for (w, head, c) in terms {
                let last = -head.iter().sum::<i64>();
                let coeffs = head.into_iter().chain([last]).map(int).collect();
                q.push(int(w), coeffs, c);
            }
            q
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn certificates_at_the_optimum_verify(samples in samples_any_dim(6)) {
        let res = exact_frechet(&samples, &ExactOptions::default()).unwrap();
        let cert = find_certificate(&samples, &res.mean).unwrap();
        prop_assert!(verify_certificate(&samples, &cert).unwrap());
        prop_assert_eq!(&cert.c_star, &res.min_sum);
        let g = cert.combined_form(samples.dim());
        prop_assert_eq!(g.eval(res.mean.coords()), cert.c_star.clone());
        for sw in &cert.weights {
            let total = sw.pieces.iter().fold(int(0), |acc, p| acc + &p.weight);
            prop_assert_eq!(total, int(1));
            prop_assert!(sw.pieces.iter().all(|p| p.weight >= int(0)));
        }
        // every optimal point carries a certificate
        for v in res.pseudovertices().unwrap() {
            let cert = find_certificate(&samples, &v).unwrap();
            prop_assert!(verify_certificate(&samples, &cert).unwrap());
        }
    }

    #[test]
    fn non_optimal_points_are_rejected(samples in samples_any_dim(6), step in proptest::collection::vec(-8i64..=8, 4)) {
        let res = exact_frechet(&samples, &ExactOptions::default()).unwrap();
        let n = samples.dim();
        let x: Vec<Rational> = res.mean.coords().iter().zip(&step).map(|(a, &s)| a + rat(s, 4)).collect();
        let x = TorusPoint::new(x[..n].to_vec()).unwrap();
        prop_assume!(objective(&samples, &x).unwrap() > res.min_sum);
        prop_assert_eq!(find_certificate(&samples, &x).unwrap_err(), Error::NotOptimal);
    }

    #[test]
    fn tampered_certificates_fail(samples in samples_any_dim(6)) {
        let res = exact_frechet(&samples, &ExactOptions::default()).unwrap();
        let mut cert = find_certificate(&samples, &res.mean).unwrap();
        cert.c_star += rat(1, 100);
        prop_assert!(!verify_certificate(&samples, &cert).unwrap_or(false));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimum_does_not_depend_on_the_pinned_coordinate(q in (2usize..6).prop_flat_map(shift_invariant_form)) {
        let base = q.minimize_pinned(0);
        prop_assert!(base.value >= int(0));
        prop_assert_eq!(q.eval(&base.minimizers.base), base.value.clone());
        for coord in 1..q.dim() {
            prop_assert_eq!(&q.minimize_pinned(coord).value, &base.value);
        }
    }
}
