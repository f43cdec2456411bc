use complexes::{induced_on_cohomology, CochainComplex};
use descent::{descend, descend_generic, DescentInput};
use rgamma::rgamma_equivariant;
use sheafdata::parse;
use zlinalg::ModuleMap;

const GM_COVER: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/gm_cover.json"));

/// `|H^s|` for every degree, by enumerating cochains.
fn brute_force_orders(c: &CochainComplex) -> Vec<u64> {
    let mut out = Vec::new();
    let mut prev_image = 1u64;
    for s in c.degrees() {
        let d = c.diff(s);
        let elems = c.term(s).elements();
        let ker = elems.iter().filter(|x| d.target().is_zero_elem(&d.apply(x))).count() as u64;
        out.push(ker / prev_image);
        prev_image = elems.len() as u64 / ker;
    }
    out
}

#[test]
fn multiplicative_group_cover_over_f7() {
    // over F_7, -1 is not a square, so Frobenius inverts the fourth roots of
    // unity: it acts on the cover group by g -> g^3
    let (d, gs) = parse(GM_COVER).unwrap();
    let r = rgamma_equivariant(&d, &gs.unwrap()).unwrap();
    let phi = r.action[0].clone();
    for s in [0, 2] {
        let h = induced_on_cohomology(&phi, s);
        assert!(h.sub(&ModuleMap::identity(h.source())).is_zero(), "degree {s}");
    }
    let input = DescentInput::cyclic(r.complex.clone(), phi, 2).unwrap();
    let down = descend(&input).unwrap();
    let orders: Vec<u64> = down.degrees().map(|s| down.cohomology_at(s).module().factors().iter().product()).collect();
    assert_eq!(orders, brute_force_orders(&down));
    // H^0 = Λ, H^1 = 0, H^2 = Λ upstairs with trivial Frobenius
    assert_eq!(orders, vec![2, 2, 2, 2, 1]);
    let generic = descend_generic(&input).unwrap();
    let g: Vec<Vec<u64>> = generic.degrees().map(|s| generic.cohomology_at(s).invariant_factors()).collect();
    let c: Vec<Vec<u64>> = down.degrees().map(|s| down.cohomology_at(s).invariant_factors()).collect();
    assert_eq!(g[..c.len()], c[..]);
}
