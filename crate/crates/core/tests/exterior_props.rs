use hodgejump::coeff::GaussianRational;
use hodgejump::exterior::{ScalarForm, ScalarSpec};
use proptest::prelude::*;

const N: usize = 3;

fn form_of_degree(k: u32) -> impl Strategy<Value = ScalarForm> {
    let masks: Vec<u32> = (0u32..1 << (2 * N)).filter(|m| m.count_ones() == k).collect();
    prop::collection::vec((prop::sample::select(masks), -4i64..=4, -2i64..=2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(ScalarForm::zero(N), |acc, (m, re, im)| {
            acc.add(&ScalarForm::monomial(N, m, GaussianRational::from_parts((re, 1), (im, 1))))
        })
    })
}

fn any_form() -> impl Strategy<Value = (u32, ScalarForm)> {
    (0u32..=4).prop_flat_map(|k| form_of_degree(k).prop_map(move |f| (k, f)))
}

fn sign(k: u32) -> GaussianRational {
    GaussianRational::from_integer(if k % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #[test]
    fn wedge_is_associative((_, a) in any_form(), (_, b) in any_form(), (_, c) in any_form()) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative((ka, a) in any_form(), (kb, b) in any_form()) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(ka * kb)));
    }

    #[test]
    fn odd_forms_square_to_zero(a in form_of_degree(1)) {
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn leibniz_rule((ka, a) in any_form(), (_, b) in any_form()) {
        for spec in [ScalarSpec::iwasawa(), ScalarSpec::torus(N)] {
            let lhs = spec.d(&a.wedge(&b));
            let rhs = spec.d(&a).wedge(&b).add(&a.wedge(&spec.d(&b)).scale(&sign(ka)));
            prop_assert_eq!(&lhs, &rhs);
            let lhs = spec.delbar(&a.wedge(&b));
            let rhs = spec.delbar(&a).wedge(&b).add(&a.wedge(&spec.delbar(&b)).scale(&sign(ka)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squares_to_zero((_, a) in any_form()) {
        let spec = ScalarSpec::iwasawa();
        prop_assert!(spec.d(&spec.d(&a)).is_zero());
        prop_assert!(spec.delbar(&spec.delbar(&a)).is_zero());
        prop_assert!(spec.del(&spec.del(&a)).is_zero());
    }

    #[test]
    fn d_splits_into_del_and_delbar((_, a) in any_form()) {
        let spec = ScalarSpec::iwasawa();
        prop_assert_eq!(spec.d(&a), spec.del(&a).add(&spec.delbar(&a)));
    }

    #[test]
    fn conjugation_is_an_involution((_, a) in any_form()) {
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }
}
