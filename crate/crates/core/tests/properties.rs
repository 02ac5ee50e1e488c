use proptest::prelude::*;
use schlicht::explore::{sample_m0beta, sample_malpha, HerglotzSampler};
use schlicht::{
    delta_region_contains, f_from_q, fekete_szego, g_operator, mocanu_f, mocanu_g, omega_transform,
    ClassParams, NormalizedFunction, TaylorSeries, C64,
};

const N: usize = 24;

fn c64() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn series() -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec(c64(), N + 1).prop_map(|c| TaylorSeries::new(c).unwrap())
}

/// Series with `c₀ = 1` and geometrically decaying coefficients.
fn unit_series() -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec(c64(), N).prop_map(|c| {
        TaylorSeries::from_fn(N, |k| {
            if k == 0 {
                C64::new(1.0, 0.0)
            } else {
                c[k - 1] * 0.3f64.powi(k as i32)
            }
        })
    })
}

fn normalized() -> impl Strategy<Value = NormalizedFunction> {
    unit_series().prop_map(|p| NormalizedFunction::from_quotient(&p).unwrap())
}

fn close(a: &TaylorSeries, b: &TaylorSeries, tol: f64) -> bool {
    a.max_abs_diff(b) < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert!(close(&(&a * &b), &(&b * &a), 1e-12));
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-10));
        prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), 1e-11));
        prop_assert!(close(&(&a + &(-&a)), &TaylorSeries::zero(N), 0.0 + 1e-300));
        prop_assert!(close(&(&a * &TaylorSeries::one(N)), &a, 1e-15));
    }

    #[test]
    fn division_round_trip(a in series(), b in unit_series()) {
        let q = (&a * &b).div(&b).unwrap();
        prop_assert!(close(&q, &a, 1e-10));
    }

    #[test]
    fn pow_is_additive(s in unit_series(), x in -2.0..2.0f64, y in -2.0..2.0f64) {
        let lhs = &s.pow_real(x).unwrap() * &s.pow_real(y).unwrap();
        prop_assert!(close(&lhs, &s.pow_real(x + y).unwrap(), 1e-10));
    }

    #[test]
    fn log_exp_inverse(s in unit_series()) {
        prop_assert!(close(&s.log1().unwrap().exp0().unwrap(), &s, 1e-12));
    }

    #[test]
    fn evaluate_is_linear(a in series(), b in series(), c in c64(), r in 0.0..0.9f64, t in 0.0..6.3f64) {
        let z = C64::from_polar(r, t);
        let lhs = (&a.scale(c) + &b).evaluate(z).unwrap();
        let rhs = c * a.evaluate(z).unwrap() + b.evaluate(z).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn g_is_affine_in_parameters(f in normalized(), a1 in -1.0..0.9f64, b1 in -1.0..0.9f64,
                                 a2 in -1.0..0.9f64, b2 in -1.0..0.9f64, t in 0.0..1.0f64) {
        let p1 = ClassParams::new(a1, b1).unwrap();
        let p2 = ClassParams::new(a2, b2).unwrap();
        let pt = ClassParams::new(t * a1 + (1.0 - t) * a2, t * b1 + (1.0 - t) * b2).unwrap();
        let mix = &g_operator(&f, &p1).unwrap().scale_real(t) + &g_operator(&f, &p2).unwrap().scale_real(1.0 - t);
        prop_assert!(close(&g_operator(&f, &pt).unwrap(), &mix, 1e-9));
    }

    #[test]
    fn fekete_szego_is_affine_in_lambda(f in normalized(), l1 in c64(), l2 in c64(), t in 0.0..1.0f64) {
        let lt = l1 * t + l2 * (1.0 - t);
        let mix = fekete_szego(&f, l1) * t + fekete_szego(&f, l2) * (1.0 - t);
        prop_assert!((fekete_szego(&f, lt) - mix).norm() < 1e-12);
    }

    #[test]
    fn delta_region_is_conjugation_symmetric(a in -2.0..1.9f64, b in -2.0..1.9f64, w in c64()) {
        prop_assume!(a + b < 2.0);
        let p = ClassParams::new(a, b).unwrap();
        let w = w * 4.0;
        prop_assert_eq!(delta_region_contains(&p, w), delta_region_contains(&p, w.conj()));
    }

    #[test]
    fn mocanu_round_trip(f in normalized(), beta in -1.0..0.95f64) {
        let back = mocanu_f(&mocanu_g(&f, beta).unwrap(), beta).unwrap();
        prop_assert!(close(back.series(), f.series(), 1e-10));
    }

    #[test]
    fn starlike_ratio_round_trip(f in normalized()) {
        let back = f_from_q(&f.starlike_ratio()).unwrap();
        prop_assert!(close(back.series(), f.series(), 1e-11));
    }

    #[test]
    fn omega_is_schwarz_on_members(seed in any::<u64>(), trial in 0u64..1000, beta in -1.0..1.0f64,
                                   r in 0.05..0.8f64, t in 0.0..6.3f64) {
        let f = sample_m0beta(beta, &HerglotzSampler::for_trial(seed, trial), 96).unwrap();
        let p = ClassParams::mocanu(beta).unwrap();
        let g = g_operator(&f, &p).unwrap();
        let w = omega_transform(&g, p.threshold()).unwrap();
        let z = C64::from_polar(r, t);
        prop_assert!(w.evaluate(z).unwrap().norm() < 1.0);
        prop_assert!(g.evaluate(z).unwrap().re > p.threshold());
    }

    #[test]
    fn samplers_are_reproducible(seed in any::<u64>(), trial in 0u64..1000, alpha in 0.05..1.0f64) {
        let s = HerglotzSampler::for_trial(seed, trial);
        prop_assert_eq!(&s, &HerglotzSampler::for_trial(seed, trial));
        let a = sample_malpha(alpha, &s, 48).unwrap();
        let b = sample_malpha(alpha, &s, 48).unwrap();
        prop_assert_eq!(a.series().coeffs(), b.series().coeffs());
    }
}
