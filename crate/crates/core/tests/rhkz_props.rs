use num_complex::Complex64;
use proptest::prelude::*;

use mzv_kz::ncseries::ComplexSeries;
use mzv_kz::numerics::EvalContext;
use mzv_kz::rhkz::{
    build_associator, build_l0, build_l1, connection_residual, kz_rhs, rh_solve_additive,
    rk4_transport, FundamentalSolution, Which,
};
use mzv_kz::words::Word;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn connection_matrix_is_constant(x in 0.05f64..0.95) {
        let ctx = EvalContext::default();
        prop_assert!(connection_residual(c(x), 4, &ctx).unwrap() < 1e-8);
    }

    #[test]
    fn kz_rhs_is_linear_and_shifts_weight(a in -2.0f64..2.0, x in 0.05f64..0.95) {
        let ctx = EvalContext::default();
        let g = build_l0(c(0.3), 3, &ctx).unwrap();
        let h = build_l1(c(0.6), 3, &ctx).unwrap();
        let lhs = kz_rhs(c(x), &g.try_add(&h.scale(&c(a))).unwrap()).unwrap();
        let rhs = kz_rhs(c(x), &g).unwrap().try_add(&kz_rhs(c(x), &h).unwrap().scale(&c(a))).unwrap();
        prop_assert!(lhs.max_diff(&rhs).unwrap() < 1e-12);
        let r = kz_rhs(c(x), &g).unwrap();
        for w in Word::all_up_to(3).filter(|w| !w.is_empty()) {
            let factor = if w.first() == Some(mzv_kz::words::Letter::L0) { 1.0 / x } else { 1.0 / (1.0 - x) };
            prop_assert!((r.coeff(&w) - g.coeff(&w.tail()) * factor).norm() < 1e-12);
        }
    }

    #[test]
    fn transport_follows_l0(x0 in 0.1f64..0.5, x1 in 0.5f64..0.9) {
        let ctx = EvalContext::default();
        let g = rk4_transport(&build_l0(c(x0), 3, &ctx).unwrap(), c(x0), c(x1), 400).unwrap();
        prop_assert!(g.max_diff(&build_l0(c(x1), 3, &ctx).unwrap()).unwrap() < 1e-8);
    }
}

#[test]
fn l0_has_z_power_asymptotics() {
    // L0(z) z^{−X0} → 1 as z → 0.
    let ctx = EvalContext::default();
    let sol = FundamentalSolution {
        which: Which::At0,
        order: 3,
    };
    let z = 1e-6;
    let l0 = sol.eval(c(z), &ctx).unwrap();
    let corrected = l0
        .nc_mul(&ComplexSeries::exp_letter(
            3,
            mzv_kz::words::Letter::L0,
            -c(z).ln(),
        ))
        .unwrap();
    assert!(corrected.max_diff(&ComplexSeries::one(3)).unwrap() < 1e-4);
}

#[test]
fn associator_is_grouplike_to_weight_six() {
    let ctx = EvalContext::default();
    let phi = build_associator(6, &ctx).unwrap();
    assert!(phi.series.is_grouplike(1e-9).0);
    let back = ComplexSeries::from_json(&phi.series.to_json()).unwrap();
    assert_eq!(back, phi.series);
}

#[test]
fn perturbation_discrepancy_is_linear_in_the_perturbation() {
    let ctx = EvalContext::default();
    let table = ctx.zeta_table(3).unwrap();
    let w: Word = "011".parse().unwrap();
    for delta in [1e-5, 1e-3, -2e-3] {
        let sol = rh_solve_additive(3, &table.perturbed(&w, delta).unwrap()).unwrap();
        let d = sol.first_violation(1e-9).unwrap();
        assert!(
            (d.discrepancy - delta.abs()).abs() < 1e-3 * delta.abs() + 1e-12,
            "{delta}: {d:?}"
        );
    }
}
