mod support;

use fingroup::GroupHom;
use rgamma::{pullback, rgamma, Comparison, Part, RGammaError, Summand};
use sheafdata::parse;
use support::GM_COVER;
use zlinalg::{ModMat, ModuleMap};

fn swap_cover(inertia: &str, fiber: &str, gluing: &str) -> String {
    format!(
        r#"{{"modulus": 2,
  "group": {{"permutation_gens": [{{"name": "g", "perm": [1, 2, 3, 0]}}]}},
  "module": {{"rank": 2, "action": {{"g": [[0, 1], [1, 0]]}}}},
  "boundary": [{{"label": "0", "fiber": {{"rank": {fiber}}}, "gluing": {gluing}, "inertia_words": ["{inertia}"]}}]}}"#
    )
}

const C2_TRIVIAL: &str = r#"{"modulus": 2,
  "group": {"permutation_gens": [{"name": "h", "perm": [1, 0]}]},
  "module": {"rank": 2, "action": {"h": [[1, 0], [0, 1]]}},
  "boundary": [{"label": "0", "fiber": {"rank": 1}, "gluing": [[1], [1]], "inertia_words": ["h"]}]}"#;

fn map(src: &zlinalg::FpModule, tgt: &zlinalg::FpModule, rows: &[Vec<u64>]) -> ModuleMap {
    ModuleMap::from_std(src, tgt, ModMat::from_rows(src.modulus(), src.dim(), rows)).unwrap()
}

#[test]
fn identity_comparison_gives_the_identity() {
    let (d, _) = parse(GM_COVER).unwrap();
    let cmp = Comparison {
        hom: GroupHom::identity(&d.group),
        module_maps: vec![ModuleMap::identity(d.generic.module())],
        branch_targets: vec![0, 1],
        fiber_maps: d.boundary.iter().map(|b| vec![ModuleMap::identity(&b.fiber)]).collect(),
    };
    let f = pullback(&d, &d, &cmp).unwrap();
    assert!(f.is_identity());
}

#[test]
fn restriction_to_the_subgroup_of_order_two() {
    let (tgt, _) = parse(&swap_cover("g", "1", "[[1], [1]]")).unwrap();
    let (src, _) = parse(C2_TRIVIAL).unwrap();
    let g = tgt.group.gens()[0];
    let hom = GroupHom::from_images(&src.group, &tgt.group, vec![0, tgt.group.mul(g, g)]).unwrap();
    let m = tgt.generic.module();
    let cmp = Comparison {
        hom,
        module_maps: vec![ModuleMap::identity(m)],
        branch_targets: vec![0],
        fiber_maps: vec![vec![ModuleMap::identity(&tgt.boundary[0].fiber)]],
    };
    let f = pullback(&src, &tgt, &cmp).unwrap();
    let (a, b) = (rgamma(&tgt).unwrap(), rgamma(&src).unwrap());
    let h1 = Summand::InertiaH1 { branch: "0".into(), degree: 0 };
    let ra = a.slot_range(2, Part::Top, &h1).unwrap();
    let rb = b.slot_range(2, Part::Top, &h1).unwrap();
    assert_eq!((ra.len(), rb.len()), (1, 2));
    let block = f.matrix(2).block(rb.start, rb.end, ra.start, ra.end);

    // By enumeration: a cocycle of C4 is fixed by v = f(g); restricting to
    // <g^2> gives f(g^2) = v + swap(v). H^1(C4) = Λ²/<(1,1)>, H^1(C2) = Λ²
    // (trivial action, no coboundaries). The class of v = (1,0) goes to
    // (1,1), so the restriction is injective.
    let restrict = |v: [u64; 2]| [(v[0] + v[1]) % 2, (v[1] + v[0]) % 2];
    let image_classes: std::collections::BTreeSet<[u64; 2]> =
        [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|&v| restrict(v)).collect();
    assert_eq!(image_classes.len(), 2);
    let rank = if block.is_zero() { 0 } else { 1 };
    assert_eq!(rank, image_classes.len() - 1);
}

#[test]
fn comparison_with_the_trivial_group() {
    // a trivial group admits no branch points, so the source is the open
    // curve with constant coefficients
    let (tgt, _) = parse(GM_COVER).unwrap();
    let text = r#"{"modulus": 2, "group": {"permutation_gens": []}, "module": {"rank": 2, "action": {}}}"#;
    let (src, _) = parse(text).unwrap();
    let hom = GroupHom::from_images(&src.group, &tgt.group, vec![0]).unwrap();
    let cmp = Comparison {
        hom,
        module_maps: vec![ModuleMap::identity(tgt.generic.module())],
        branch_targets: vec![],
        fiber_maps: vec![],
    };
    let f = pullback(&src, &tgt, &cmp).unwrap();
    let a = rgamma(&tgt).unwrap();
    let g = Summand::Generic { degree: 0 };
    let ra = a.slot_range(0, Part::Top, &g).unwrap();
    let block = f.matrix(0).block(0, 2, ra.start, ra.end);
    assert_eq!(block.row_vecs(), vec![vec![1, 0], vec![0, 1]]);
    for deg in 1..f.target().end() {
        assert!(f.map(deg).is_zero(), "degree {deg}");
    }
}

#[test]
fn inertia_must_map_into_inertia() {
    let (tgt, _) = parse(&swap_cover("g^2", "2", "[[1, 0], [0, 1]]")).unwrap();
    let (src, _) = parse(&swap_cover("g", "1", "[[1], [1]]")).unwrap();
    let fm = map(&tgt.boundary[0].fiber, &src.boundary[0].fiber, &[vec![1, 1]]);
    let cmp = Comparison {
        hom: GroupHom::identity(&tgt.group),
        module_maps: vec![ModuleMap::identity(tgt.generic.module())],
        branch_targets: vec![0],
        fiber_maps: vec![vec![fm]],
    };
    assert!(matches!(pullback(&src, &tgt, &cmp), Err(RGammaError::InertiaMismatch(_))));
}

#[test]
fn gluing_must_be_compatible() {
    let (d, _) = parse(GM_COVER).unwrap();
    let zero = ModuleMap::zero(&d.boundary[0].fiber, &d.boundary[0].fiber);
    let cmp = Comparison {
        hom: GroupHom::identity(&d.group),
        module_maps: vec![ModuleMap::identity(d.generic.module())],
        branch_targets: vec![0, 1],
        fiber_maps: vec![vec![zero.clone()], vec![zero]],
    };
    assert!(matches!(pullback(&d, &d, &cmp), Err(RGammaError::Comparison(_))));
}
