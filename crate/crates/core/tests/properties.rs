use proptest::prelude::*;
use stabgeo::bodies::{minkowski_midpoint, symmetric_difference_volume};
use stabgeo::families::{self, rng};
use stabgeo::fmp::fmp_bound_check;
use stabgeo::pl1d::{exp_substitution, omega, pl_deficit, sup_convolution_midpoint, Mean};
use stabgeo::polarity::bs_deficit;
use stabgeo::BodyRef;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pl_deficit_is_nonnegative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = families::log_concave_1d(&mut r, 513).unwrap();
        let g = families::log_concave_1d(&mut r, 401).unwrap();
        let m = sup_convolution_midpoint(&f, &g, Mean::Arithmetic).unwrap();
        prop_assert!(pl_deficit(&f, &g, &m).unwrap() >= -1e-8);
    }

    #[test]
    fn self_midpoint_has_zero_deficit(seed in any::<u64>()) {
        let f = families::log_concave_1d(&mut rng(seed), 301).unwrap();
        let m = sup_convolution_midpoint(&f, &f, Mean::Arithmetic).unwrap();
        prop_assert!(pl_deficit(&f, &f, &m).unwrap().abs() < 1e-12);
    }

    #[test]
    fn substitution_preserves_the_deficit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = families::decreasing_log_concave_half_line(&mut r, 301).unwrap();
        let g = families::decreasing_log_concave_half_line(&mut r, 257).unwrap();
        let geo = sup_convolution_midpoint(&f, &g, Mean::Geometric).unwrap();
        let (hf, hg) = (exp_substitution(&f).unwrap(), exp_substitution(&g).unwrap());
        let ari = sup_convolution_midpoint(&hf, &hg, Mean::Arithmetic).unwrap();
        let d_geo = pl_deficit(&f, &g, &geo).unwrap();
        let d_ari = pl_deficit(&hf, &hg, &ari).unwrap();
        prop_assert!((d_geo - d_ari).abs() < 1e-6, "{} {}", d_geo, d_ari);
    }

    #[test]
    fn bs_deficit_is_nonnegative(seed in any::<u64>(), dim in 2usize..=5) {
        let mut r = rng(seed);
        let k: BodyRef = families::revolution_body(&mut r, dim, 2049).unwrap().into();
        prop_assert!(bs_deficit(&k).unwrap().bs_deficit >= -1e-6);
        let p: BodyRef = families::symmetric_polygon(&mut r, 9).unwrap().into();
        prop_assert!(bs_deficit(&p).unwrap().bs_deficit >= -1e-6);
    }

    #[test]
    fn fmp_bounds_hold_for_polygons(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k: BodyRef = families::polygon(&mut r, 8).unwrap().into();
        let c: BodyRef = families::polygon(&mut r, 8).unwrap().into();
        let rep = fmp_bound_check(&k, &c).unwrap();
        prop_assert!(rep.violations(1e-9).is_empty(), "{:?}", rep);
    }

    #[test]
    fn fmp_bounds_hold_for_revolution_bodies(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let k: BodyRef = families::revolution_body(&mut r, dim, 1025).unwrap().into();
        let c: BodyRef = families::revolution_body(&mut r, dim, 1025).unwrap().into();
        let rep = fmp_bound_check(&k, &c).unwrap();
        prop_assert!(rep.violations(1e-9).is_empty(), "{:?}", rep);
    }

    #[test]
    fn midpoint_is_symmetric_and_homogeneous(seed in any::<u64>(), lam in 0.2f64..5.0) {
        let mut r = rng(seed);
        let k: BodyRef = families::polygon(&mut r, 7).unwrap().into();
        let c: BodyRef = families::polygon(&mut r, 7).unwrap().into();
        let a = minkowski_midpoint(&k, &c).unwrap();
        let b = minkowski_midpoint(&c, &k).unwrap();
        prop_assert!(symmetric_difference_volume(&a, &b).unwrap() < 1e-9 * a.volume());
        let n = k.dim() as i32;
        prop_assert!((k.scaled(lam).volume() / (lam.powi(n) * k.volume()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn omega_is_monotone_below_e_minus_4(a in 1e-12f64..1.8e-2, b in 1e-12f64..1.8e-2) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(omega(lo).unwrap() <= omega(hi).unwrap());
    }
}
