use aswtower::iwasawa::{fit_stability, slope_statistics};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fit_recovers_linear_laws(p in prop::sample::select(vec![2u32, 3, 5]), mu in 0i64..5, lambda in -3i64..6, nu in -5i64..5) {
        let pts: Vec<(u32, BigInt)> = (1..=5u32).map(|n| (n, BigInt::from(mu * (p as i64).pow(n) + lambda * n as i64 + nu))).collect();
        let fit = fit_stability(&pts, p, 1, 1).unwrap();
        prop_assert_eq!(fit.onset, 1);
        prop_assert!(fit.verified);
        let want = [(1u32, 0u32, mu), (0, 1, lambda), (0, 0, nu)];
        for (a, b, c) in want {
            let got = fit.coefficients().into_iter().find(|t| (t.0, t.1) == (a, b)).map_or(BigRational::zero(), |t| t.2);
            prop_assert_eq!(got, BigRational::from_integer(c.into()));
        }
        // feeding the fit back reproduces it
        let again: Vec<(u32, BigInt)> = (1..=5).map(|n| (n, fit.eval(n).to_integer())).collect();
        prop_assert_eq!(fit_stability(&again, p, 1, 1).unwrap(), fit);
    }

    #[test]
    fn residuals_vanish_from_the_onset(vals in prop::collection::vec(-50i64..50, 2..6), p in prop::sample::select(vec![2u32, 3])) {
        let pts: Vec<(u32, BigInt)> = vals.iter().enumerate().map(|(i, v)| (i as u32 + 1, BigInt::from(*v))).collect();
        let fit = fit_stability(&pts, p, 2, 1).unwrap();
        for (n, r) in &fit.residuals {
            if *n >= fit.onset {
                prop_assert_eq!(r.as_str(), "0");
            }
        }
    }

    #[test]
    fn slope_statistics_are_bounded(raw in prop::collection::vec((0i64..=12, 1usize..4), 1..12), bins in 1usize..12) {
        let slopes: Vec<(Rational64, usize)> = raw.iter().map(|&(a, m)| (Rational64::new(a, 12), m)).collect();
        let s = slope_statistics(&slopes, bins).unwrap();
        prop_assert_eq!(s.histogram.iter().sum::<usize>(), s.count);
        prop_assert_eq!(s.count, raw.iter().map(|r| r.1).sum::<usize>());
        prop_assert!(s.ks_f64 > 0.0 && s.ks_f64 <= 1.0);
        prop_assert!((0.0..=1.0).contains(&s.symmetry_defect_f64));
        let reflected: Vec<(Rational64, usize)> = slopes.iter().map(|&(a, m)| (Rational64::from_integer(1) - a, m)).collect();
        prop_assert_eq!(slope_statistics(&reflected, bins).unwrap().symmetry_defect, s.symmetry_defect.clone());
    }
}

#[test]
fn uniform_grid_is_within_one_over_n() {
    for n in 1..40i64 {
        let grid: Vec<(Rational64, usize)> = (1..=n).map(|i| (Rational64::new(i, n), 1)).collect();
        assert!(slope_statistics(&grid, 10).unwrap().ks_f64 <= 1.0 / n as f64 + 1e-12);
    }
}
