mod common;

use theta_sum::{
    direct_sum, eval, eval_even, eval_generic, upsilon, Complex64, Error, MethodChoice, NTerms,
    SumSpec, TruncationPolicy,
};

const OPT: TruncationPolicy = TruncationPolicy::OptimalFirstMin;

fn oracle(spec: &SumSpec) -> theta_sum::OracleResult {
    direct_sum(spec, 1e-16).unwrap()
}

#[test]
fn generic_matches_oracle_on_grid() {
    for w in [0.5, 1.0, 1.5, 2.5, 3.0, 5.25] {
        for a in [0.01, 0.05, 0.1] {
            let spec = SumSpec::real(a, w).unwrap();
            let ev = eval_generic(&spec, OPT).unwrap();
            let err = (ev.value - oracle(&spec).value).norm();
            assert!(err <= 1e-11, "w = {w}, a = {a}: {err:e}");
        }
    }
}

#[test]
fn generic_examples() {
    let spec = SumSpec::real(0.01, 1.5).unwrap();
    let err = (eval_generic(&spec, OPT).unwrap().value - oracle(&spec).value).norm();
    assert!(err <= 1e-13, "{err:e}");
    let spec = SumSpec::real(0.05, 3.0).unwrap();
    let err = (eval_generic(&spec, OPT).unwrap().value - oracle(&spec).value).norm();
    assert!(err <= 1e-12, "{err:e}");
    let spec = SumSpec::real(0.05, 4.0).unwrap();
    assert!(matches!(
        eval_generic(&spec, OPT),
        Err(Error::EvenExponent { .. })
    ));
}

#[test]
fn even_matches_oracle_within_estimate() {
    for m in 1..=3u32 {
        for a in [0.5, 1.0, 2.0] {
            let spec = SumSpec::real(a, 2.0 * m as f64).unwrap();
            let ev = eval_even(&spec, m, OPT, NTerms::Auto).unwrap();
            let o = oracle(&spec);
            let err = (ev.value - o.value).norm();
            // Below the oracle's resolution the estimate cannot be checked.
            let floor = o.error_bound() + 64.0 * f64::EPSILON * o.value.norm();
            assert!(
                err <= 10.0 * ev.err_estimate + floor,
                "m = {m}, a = {a}: {err:e}"
            );
            if a <= 1.0 {
                assert!(
                    ev.err_estimate <= 1e-3 * ev.value.norm(),
                    "m = {m}, a = {a}"
                );
            }
        }
    }
}

#[test]
fn sector_validity() {
    for theta in [-1.2, -0.6, 0.0, 0.6, 1.2f64] {
        let spec = SumSpec::new(Complex64::from_polar(0.5, theta), 4.0).unwrap();
        let ev = eval_even(&spec, 2, OPT, NTerms::Auto).unwrap();
        let err = (ev.value - oracle(&spec).value).norm();
        assert!(err <= 1e-9, "theta = {theta}: {err:e}");
    }
}

#[test]
fn specialisations_match_literal_forms() {
    for a in [0.5, 1.0] {
        let ac = Complex64::new(a, 0.0);
        for big_m in [1usize, 3, 5] {
            for n in [1usize, 2] {
                let policy = TruncationPolicy::Fixed(big_m);
                let s2 = SumSpec::real(a, 2.0).unwrap();
                let got = eval_even(&s2, 1, policy, NTerms::Fixed(n)).unwrap().value;
                let want = common::literal_m1(ac, big_m, n);
                assert!(
                    (got - want).norm() <= 1e-13 * want.norm(),
                    "m=1 a={a} M={big_m}"
                );

                let s4 = SumSpec::real(a, 4.0).unwrap();
                let got = eval_even(&s4, 2, policy, NTerms::Fixed(n)).unwrap().value;
                let want = common::literal_m2(ac, big_m, n);
                assert!(
                    (got - want).norm() <= 1e-13 * want.norm(),
                    "m=2 a={a} M={big_m}"
                );
            }
        }
    }
}

#[test]
fn m1_example_matches_literal_and_oracle() {
    let spec = SumSpec::real(0.5, 2.0).unwrap();
    let ev = eval_even(&spec, 1, OPT, NTerms::Fixed(1)).unwrap();
    let lit = common::literal_m1(Complex64::new(0.5, 0.0), ev.upsilon[0].terms, 1);
    assert!((ev.value - lit).norm() <= 1e-12);
    assert!((ev.value - oracle(&spec).value).norm() <= 1e-12);
}

#[test]
fn least_term_is_a_local_min_in_the_log() {
    for a in [0.1, 0.25, 0.5, 1.0, 1.5, 2.0] {
        for m in 1..=3 {
            let up = upsilon(Complex64::new(a, 0.0), m, 1, OPT).unwrap();
            assert!(up.term_log.is_local_min("j", up.j0), "a = {a}, m = {m}");
        }
        let spec = SumSpec::real(a, 4.0).unwrap();
        let ev = eval_even(&spec, 2, OPT, NTerms::Fixed(1)).unwrap();
        assert!(
            ev.term_log.is_local_min("upsilon[1]", ev.upsilon[0].j0),
            "a = {a}"
        );
    }
}

#[test]
fn degradation_is_monotone_in_a() {
    let errs: Vec<f64> = [0.75, 1.0, 1.5, 2.0]
        .iter()
        .map(|&a| {
            let spec = SumSpec::real(a, 4.0).unwrap();
            let ev = eval_even(&spec, 2, OPT, NTerms::Fixed(1)).unwrap();
            (ev.value - oracle(&spec).value).norm()
        })
        .collect();
    assert!(errs.windows(2).all(|p| p[0] <= p[1]), "{errs:?}");
}

#[test]
fn dispatch() {
    let spec = SumSpec::real(1.0, 4.0).unwrap();
    let a = eval(&spec, MethodChoice::EvenTransform, OPT).unwrap();
    let b = eval_even(&spec, 2, OPT, NTerms::Auto).unwrap();
    assert_eq!(a.value, b.value);
    let spec = SumSpec::real(1.0, 1.5).unwrap();
    let a = eval(&spec, MethodChoice::Generic, OPT).unwrap();
    assert_eq!(a.value, eval_generic(&spec, OPT).unwrap().value);
    let spec = SumSpec::real(1.0, 4.0).unwrap();
    assert!(matches!(
        eval(&spec, MethodChoice::Generic, OPT),
        Err(Error::EvenExponent { .. })
    ));
    let spec = SumSpec::real(1.0, 3.0).unwrap();
    assert!(matches!(
        eval(&spec, MethodChoice::EvenTransform, OPT),
        Err(Error::Mismatch { .. })
    ));
}

#[test]
fn upsilon_leading_term() {
    for (a, m, n) in [(0.3, 1, 1), (1.7, 4, 3)] {
        let up = upsilon(Complex64::new(a, 0.2), m, n, TruncationPolicy::Fixed(1)).unwrap();
        assert_eq!(up.value, Complex64::new(1.0, 0.0));
    }
}
