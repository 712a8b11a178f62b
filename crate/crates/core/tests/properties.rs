use pbent::construct::{
    mm_trace_condition, mm_bent, mm_swapped, random_vpfunc, mm_family, Combiner,
    LinearPermutation,
};
use pbent::gf::default_field;
use pbent::pfunc::{PFunc, Space};
use pbent::pu::{check_pu_definition, duals_satisfy_pu, search_u_sets};
use pbent::spectral::{gwht_fast, inverse_gwht, vectorial_classify};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_transform_round_trips(table in proptest::collection::vec(0u32..3, 81)) {
        let s = Space::default_field(3, 4).unwrap();
        let f = PFunc::new(&s, table).unwrap();
        prop_assert_eq!(inverse_gwht(&gwht_fast(&f)).unwrap(), f);
    }

    #[test]
    fn pu_is_order_invariant(seed in 0u64..1000) {
        let field = default_field(3, 2).unwrap();
        let pi = LinearPermutation::random(3, 2, seed);
        let dual = vectorial_classify(&mm_swapped(&field, &pi).unwrap())
            .unwrap()
            .components[0]
            .regularity
            .dual
            .clone()
            .unwrap();
        let a = check_pu_definition(&dual, &[1, 3]).unwrap();
        let b = check_pu_definition(&dual, &[3, 1]).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(&a.witnesses[0], &b.witnesses[1]);
            prop_assert_eq!(&a.witnesses[1], &b.witnesses[0]);
        }
    }

    #[test]
    fn mm_family_outputs_are_bent(seed in 0u64..1000) {
        let field = default_field(3, 2).unwrap();
        let s = Space::field(&field);
        let pi = LinearPermutation::random(3, 2, seed);
        let h = random_vpfunc(&s, &s, seed);
        let c = mm_family(&field, &pi, &[1, 4], h, Combiner::Field, true).unwrap();
        prop_assert!(c.report.unwrap().vectorial_weakly_regular);
    }
}

#[test]
fn mm_alpha_zero_singletons_are_found() {
    let field = default_field(3, 2).unwrap();
    let pi = LinearPermutation::identity(3, 2);
    let g = mm_swapped(&field, &pi).unwrap();
    let found = search_u_sets(&g, 1, 100).unwrap();
    // every (α, 0), α ≠ 0, is admissible
    for a in 1..9 {
        assert!(found.contains(&vec![a]), "missing {a}");
    }
    let pairs = search_u_sets(&g, 2, 3).unwrap();
    assert_eq!(pairs.len(), 3);
    for u in pairs {
        assert!(duals_satisfy_pu(&g, &u).unwrap().holds);
    }
    let sq = pbent::construct::monomial(pbent::construct::MonomialKind::Square { p: 3, n: 2 }).unwrap();
    assert!(search_u_sets(&sq, 1, 10).unwrap().is_empty());
}

#[test]
fn trace_condition_with_beta() {
    let field = default_field(3, 1).unwrap();
    let pi = LinearPermutation::identity(3, 1);
    let g = mm_bent(&field, &pi, None).unwrap();
    for u in 1..9 {
        assert_eq!(
            mm_trace_condition(&field, &pi, &[u]).unwrap(),
            duals_satisfy_pu(&g, &[u]).unwrap().holds
        );
    }
}
