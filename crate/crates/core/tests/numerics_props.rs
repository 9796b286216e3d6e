use num_complex::Complex64;
use proptest::prelude::*;

use mzv_kz::numerics::{
    chart, gif_residual, li, li_ext, li_taylor_partial, taylor_tail_bound, zeta, zeta_reg, Chart,
    EvalContext, ZetaTable,
};
use mzv_kz::words::{Word, WordPoly};

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_len).prop_flat_map(|len| {
        (Just(len), 0..(1u64 << len)).prop_map(|(len, bits)| Word::from_bits(len, bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_relation_holds_off_axis(w in word(4), re in 0.2f64..0.8, im in -0.1f64..0.1) {
        let ctx = EvalContext::default();
        let z = Complex64::new(re, im);
        prop_assume!(chart(z, &ctx).is_ok() && chart(Complex64::new(1.0, 0.0) - z, &ctx).is_ok());
        prop_assert!(gif_residual(&w, z, &ctx).unwrap() < 1e-9);
    }

    #[test]
    fn li_is_a_shuffle_homomorphism(u in word(3), v in word(3), x in 0.05f64..0.95) {
        let ctx = EvalContext::default();
        let z = Complex64::new(x, 0.0);
        let lhs = WordPoly::from(u).shuffle(&WordPoly::from(v)).iter().fold(Complex64::new(0.0, 0.0), |acc, (w, c)| {
            acc + li(w, z, &ctx).unwrap() * num_traits::ToPrimitive::to_f64(c).unwrap()
        });
        let rhs = li(&u, z, &ctx).unwrap() * li(&v, z, &ctx).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn zeta_is_a_shuffle_homomorphism_after_regularization(u in word(3), v in word(3)) {
        let ctx = EvalContext::default();
        let uv = zeta_reg(&WordPoly::from(u).shuffle(&WordPoly::from(v)), &ctx).unwrap();
        let a = zeta_reg(&WordPoly::from(u), &ctx).unwrap();
        let b = zeta_reg(&WordPoly::from(v), &ctx).unwrap();
        prop_assert!((uv - a * b).abs() < 1e-9);
    }

    #[test]
    fn tail_bound_dominates_truncation(w in word(4), x in 0.05f64..0.5, m in 5usize..60) {
        prop_assume!(w.is_s0());
        let z = Complex64::new(x, 0.0);
        let (partial, tail) = li_taylor_partial(&w, z, m).unwrap();
        let (full, _) = li_taylor_partial(&w, z, 4000).unwrap();
        prop_assert!((full - partial).norm() <= tail + 1e-15);
        prop_assert!(taylor_tail_bound(x, m + 1) <= taylor_tail_bound(x, m));
    }
}

#[test]
fn charts_cover_sample_points_and_agree_where_both_apply() {
    let ctx = EvalContext::default();
    assert_eq!(chart(Complex64::new(0.5, 0.0), &ctx).unwrap(), Chart::Zero);
    for w in Word::all_up_to(4) {
        let a = li_ext(&w, Complex64::new(0.5, 0.0), &ctx).unwrap();
        let b = li(&w, Complex64::new(0.5, 0.0), &ctx).unwrap();
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn zeta_table_is_consistent_with_zeta() {
    let ctx = EvalContext::default();
    let t: ZetaTable = ctx.zeta_table(5).unwrap();
    for (w, e) in t.iter() {
        let (v, err) = zeta(w, &ctx).unwrap();
        assert_eq!((v, err), (e.value, e.err));
        assert!(err < 1e-12, "{w}: {err}");
    }
}
