use coning_core::*;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;

#[test]
fn simplex_duals_are_symmetric_with_all_ones_h() {
    for len in 2..=300 {
        let f = simplex_dual_f(len).unwrap();
        let c = f.components();
        assert_eq!(f.len(), len - 1);
        assert!(c.iter().eq(c.iter().rev()), "L = {len}");
        assert!(is_symmetrical(&f));
        assert_eq!(*f.first(), BigUint::from(len));
        assert_eq!(*f.last(), BigUint::from(len));
        assert!(f_to_h(&f).components().iter().all(BigInt::is_one), "L = {len}");
    }
}

fn fvectors() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 1..=64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn h_to_f_inverts_f_to_h(xs in fvectors()) {
        let f = FVector::from_u64s(&xs).unwrap();
        let h = f_to_h(&f);
        prop_assert_eq!(h.len(), f.len() + 1);
        prop_assert!(h.components()[0].is_one());
        prop_assert_eq!(h_to_f(&h).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cone_keeps_top_component(xs in fvectors(), j in 0usize..20) {
        let f = FVector::from_u64s(&xs).unwrap();
        let c = iterate_cone(&f, j);
        prop_assert_eq!(c.len(), f.len() + j);
        prop_assert_eq!(c.last(), f.last());
    }

    #[test]
    fn palindromic_h_gives_positive_f(len in 2usize..80, value in 1u64..200) {
        let h = palindromic_h(len, value).unwrap();
        prop_assert!(check_dehn_sommerville(&h));
        let f = h_to_f(&h).unwrap();
        prop_assert!(f.components().iter().all(|x| *x > BigUint::ZERO));
        prop_assert_eq!(f_to_h(&f), h);
    }
}
