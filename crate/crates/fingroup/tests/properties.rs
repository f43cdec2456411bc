use std::sync::Arc;

use fingroup::{closure, n_torsor_quotient, quotient, subgroup_generated, FiniteGroup, GroupHom};
use proptest::prelude::*;

fn perm_strategy(deg: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..deg).collect::<Vec<usize>>()).prop_shuffle()
}

fn group_strategy() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (2usize..=5)
        .prop_flat_map(|deg| prop::collection::vec(perm_strategy(deg), 1..=3))
        .prop_map(|perms| {
            let names: Vec<String> = (0..perms.len()).map(|i| format!("g{i}")).collect();
            Arc::new(closure(&perms, &names, 1000).unwrap().0)
        })
}

/// All homomorphisms to the cyclic group of order `n`, by trying every
/// assignment of generator images.
fn homs_to_cyclic(g: &Arc<FiniteGroup>, n: usize) -> Vec<GroupHom> {
    let c = Arc::new(FiniteGroup::cyclic(n, "t"));
    let k = g.gens().len();
    let mut out = Vec::new();
    let mut imgs = vec![0usize; k];
    loop {
        if let Ok(h) = GroupHom::from_generator_images(g, &c, &imgs) {
            out.push(h);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            imgs[i] += 1;
            if imgs[i] < n {
                break;
            }
            imgs[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_group(g in group_strategy()) {
        prop_assert!(g.verify_axioms().is_ok());
        prop_assert_eq!(subgroup_generated(&g, g.gens()).unwrap().order(), g.order());
    }

    #[test]
    fn quotient_orders_multiply(g in group_strategy(), pick in 0usize..1000) {
        // normal closure of a single element: conjugate until stable
        let x = pick % g.order();
        let mut gens = vec![x];
        let normal = loop {
            let h = subgroup_generated(&g, &gens).unwrap();
            let extra: Vec<usize> = g.elements().flat_map(|a| h.members().iter().map(move |&y| (a, y)))
                .map(|(a, y)| g.conj(a, y)).filter(|&y| !h.contains(y)).collect();
            if extra.is_empty() { break h; }
            gens.extend(extra);
        };
        prop_assert!(normal.is_normal());
        let (q, proj) = quotient(&g, &normal).unwrap();
        prop_assert_eq!(q.order() * normal.order(), g.order());
        prop_assert!(q.verify_axioms().is_ok());
        for &y in normal.members() {
            prop_assert_eq!(proj.image_of(y), 0);
        }
    }

    #[test]
    fn homs_to_cyclic_factor_through_torsor_quotient(g in group_strategy(), n in 2usize..=6) {
        let (q, proj) = n_torsor_quotient(&g, n as u64).unwrap();
        prop_assert!(q.is_abelian());
        for x in q.elements() {
            prop_assert_eq!(q.pow(x, n as u64), 0);
        }
        let homs = homs_to_cyclic(&g, n);
        for h in &homs {
            for a in g.elements() {
                for b in g.elements() {
                    if proj.image_of(a) == proj.image_of(b) {
                        prop_assert_eq!(h.image_of(a), h.image_of(b));
                    }
                }
            }
        }
        // an abelian group of exponent dividing n has exactly |Q| characters into Z/n
        prop_assert_eq!(homs.len(), q.order());
    }
}
