mod support;

use descent::{descend, descend_cyclic, descend_generic, DescentInput};
use proptest::prelude::*;
use proptest::test_runner::TestRng;
use support::{case, check_descent_orders, factors, factors_between, random_case};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hochschild_serre_orders(case in case(false)) {
        prop_assert_eq!(check_descent_orders(&case), Ok(()));
    }

    #[test]
    fn both_routes_agree(case in case(false)) {
        let input = DescentInput::cyclic(case.complex.clone(), case.phi.clone(), case.order).unwrap();
        let a = descend_cyclic(&input).unwrap();
        let b = descend_generic(&input).unwrap();
        let (lo, hi) = (a.lowest().min(b.lowest()), a.end().max(b.end()));
        prop_assert_eq!(factors_between(&a, lo, hi), factors_between(&b, lo, hi));
    }

    #[test]
    fn acyclic_stays_acyclic(case in case(true)) {
        prop_assert!(case.complex.is_acyclic());
        let input = DescentInput::cyclic(case.complex.clone(), case.phi.clone(), case.order).unwrap();
        prop_assert!(descend(&input).unwrap().is_acyclic());
        prop_assert!(descend_generic(&input).unwrap().is_acyclic());
    }
}

#[test]
fn trivial_group_changes_nothing() {
    let mut rng = TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha);
    for _ in 0..20 {
        let case = random_case(&mut rng, false);
        let gal = std::sync::Arc::new(fingroup::FiniteGroup::trivial());
        let input = DescentInput::new(case.complex.clone(), gal, vec![]).unwrap();
        let d = descend(&input).unwrap();
        let c = &case.complex;
        assert_eq!(factors_between(&d, c.lowest(), c.end()), factors(c));
        assert!(factors_between(&d, c.end(), d.end().max(c.end())).iter().all(|f| f.is_empty()));
    }
}
