//! Brute-force oracles for degree 0 and 1 cohomology of small groups, shared
//! by the property tests and the acceptance runner.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use fingroup::{closure, subgroup_generated, FiniteGroup, GroupHom, Subgroup};
use gcohom::{
    coinvariants, crossed_homs, crossed_homs_all_pairs, h1, inflation, invariants, tame_section, CrossedHom, GModule,
    TameData,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::TestRng;
use zlinalg::{FpModule, ModMat, Modulus};

pub const MODULI: [u64; 4] = [2, 3, 4, 6];

/// All groups of order at most 8, up to isomorphism, as permutation groups.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let mut out = vec![Arc::new(FiniteGroup::trivial())];
    for m in 2..=8 {
        out.push(Arc::new(FiniteGroup::cyclic(m, "c")));
    }
    let perm_groups: Vec<(Vec<Vec<usize>>, Vec<&str>)> = vec![
        (vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]], vec!["a", "b"]),
        (vec![vec![1, 0, 2], vec![1, 2, 0]], vec!["t", "r"]),
        (vec![vec![1, 2, 3, 0], vec![2, 1, 0, 3]], vec!["r", "s"]),
        (vec![vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]], vec!["i", "j"]),
        (vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]], vec!["a", "b"]),
        (vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]], vec!["a", "b", "c"]),
    ];
    for (perms, names) in perm_groups {
        out.push(Arc::new(closure(&perms, &names, 1000).unwrap().0));
    }
    out
}

fn pick<T: Copy>(rng: &mut TestRng, xs: &[T]) -> T {
    xs[rng.random_range(0..xs.len())]
}

/// Homomorphisms `G -> C2` by trying every assignment of generator images.
fn sign_characters(g: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    let c2 = Arc::new(FiniteGroup::cyclic(2, "t"));
    let r = g.gens().len();
    (0..1usize << r)
        .filter_map(|mask| {
            let imgs: Vec<usize> = (0..r).map(|i| mask >> i & 1).collect();
            GroupHom::from_generator_images(g, &c2, &imgs).ok()
        })
        .collect()
}

/// Left coset action of `g` on `G/H`.
fn coset_action(g: &FiniteGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let (cid, reps) = h.cosets();
    g.elements().map(|x| reps.iter().map(|&r| cid[g.mul(x, r)]).collect()).collect()
}

/// A random module of order at most 16 over a random small group: direct
/// sums of (possibly sign-twisted) permutation modules on coset spaces,
/// then a random change of basis on equal-factor summands.
pub fn random_gmodule(rng: &mut TestRng) -> Arc<GModule> {
    let groups = small_groups();
    let g = groups[rng.random_range(0..groups.len())].clone();
    let n = pick(rng, &MODULI);
    let m = Modulus::new(n).unwrap();
    let divs: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let chars = sign_characters(&g);
    let mut factors: Vec<u64> = Vec::new();
    // per element: blocks (perm, sign, d)
    let mut blocks: Vec<(Vec<Vec<usize>>, Option<GroupHom>, u64)> = Vec::new();
    let mut size: u64 = 1;
    for _ in 0..rng.random_range(1..=2) {
        let d = pick(rng, &divs);
        if size * d > 16 {
            break;
        }
        let x = rng.random_range(0..g.order());
        let mut ids = vec![x];
        if rng.random_bool(0.3) {
            ids.push(rng.random_range(0..g.order()));
        }
        let h = subgroup_generated(&g, &ids).unwrap();
        let c = g.order() / h.order();
        let perm = if (d as u128).pow(c as u32) * size as u128 <= 16 && rng.random_bool(0.7) {
            coset_action(&g, &h)
        } else {
            vec![vec![0usize]; g.order()]
        };
        let width = perm[0].len() as u32;
        let sign = if d > 2 && rng.random_bool(0.5) { Some(chars[rng.random_range(0..chars.len())].clone()) } else { None };
        size *= d.pow(width);
        factors.extend(std::iter::repeat_n(d, width as usize));
        blocks.push((perm, sign, d));
    }
    if factors.is_empty() {
        let d = pick(rng, &divs);
        factors.push(d);
        blocks.push((vec![vec![0usize]; g.order()], None, d));
    }
    let k = factors.len();
    let elem_matrix = |x: usize| {
        let mut a = ModMat::zeros(m, k, k);
        let mut off = 0;
        for (perm, sign, _) in &blocks {
            let s = match sign {
                Some(ch) if ch.image_of(x) == 1 => n - 1,
                _ => 1,
            };
            for (c, &t) in perm[x].iter().enumerate() {
                a.set(off + t, off + c, s);
            }
            off += perm[x].len();
        }
        a
    };
    let mut gen_mats: Vec<ModMat> = g.gens().iter().map(|&s| elem_matrix(s)).collect();
    if factors.iter().all(|&d| d == factors[0]) && k > 1 {
        // conjugate by a product of elementary matrices
        let mut t = ModMat::identity(m, k);
        let mut ti = ModMat::identity(m, k);
        for _ in 0..rng.random_range(1..=4) {
            let i = rng.random_range(0..k);
            let j = (i + rng.random_range(1..k)) % k;
            let c = rng.random_range(1..n);
            let mut e = ModMat::identity(m, k);
            e.set(i, j, c);
            let mut ei = ModMat::identity(m, k);
            ei.set(i, j, n - c);
            t = e.mul(&t);
            ti = ti.mul(&ei);
        }
        gen_mats = gen_mats.iter().map(|a| t.mul(a).mul(&ti)).collect();
    }
    let module = FpModule::standard(m, factors);
    Arc::new(GModule::from_gen_matrices(g, module, &gen_mats).expect("constructed action"))
}

pub fn gmodule_strategy() -> impl Strategy<Value = Arc<GModule>> {
    Just(()).prop_perturb(|_, mut rng| random_gmodule(&mut rng))
}

fn order_of(xs: usize) -> BigUint {
    BigUint::from(xs)
}

/// Additive closure of a generating set inside `M`.
fn span(md: &FpModule, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let mut set: HashSet<Vec<u64>> = HashSet::new();
    let zero = md.zero_elem();
    set.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = md.add_elems(&v, g);
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

/// Compare invariants, coinvariants, crossed homomorphisms and H^1 with
/// exhaustive enumeration.
pub fn check_against_enumeration(gm: &Arc<GModule>) -> Result<(), String> {
    let g = gm.group();
    let md = gm.module();
    let elems = md.elements();
    let r = g.gens().len();

    // invariants
    let fixed: Vec<&Vec<u64>> = elems.iter().filter(|v| g.gens().iter().all(|&s| gm.act(s, v) == **v)).collect();
    let (inv, incl) = invariants(gm);
    if inv.order() != order_of(fixed.len()) {
        return Err(format!("|M^G| = {} but enumeration gives {}", inv.order(), fixed.len()));
    }
    let images: HashSet<Vec<u64>> = inv.elements().iter().map(|x| incl.apply(x)).collect();
    if images.len() != fixed.len() || images.iter().any(|v| g.gens().iter().any(|&s| gm.act(s, v) != *v)) {
        return Err("inclusion of invariants is not onto the fixed vectors".into());
    }

    // coinvariants
    let diffs: Vec<Vec<u64>> =
        g.elements().flat_map(|x| elems.iter().map(move |v| (x, v))).map(|(x, v)| md.sub_elems(&gm.act(x, v), v)).collect();
    let dspan = span(md, &diffs);
    let (co, proj) = coinvariants(gm);
    if co.order() * order_of(dspan.len()) != order_of(elems.len()) {
        return Err(format!("|M_G| = {} but enumeration gives {}/{}", co.order(), elems.len(), dspan.len()));
    }
    if dspan.iter().any(|v| !co.is_zero_elem(&proj.apply(v))) {
        return Err("projection to coinvariants does not kill g m - m".into());
    }
    let pim: HashSet<Vec<u64>> = elems.iter().map(|v| proj.apply(v)).collect();
    if order_of(pim.len()) != co.order() {
        return Err("projection to coinvariants is not onto".into());
    }

    // crossed homomorphisms: every assignment of generator values
    let mut cocycles: Vec<Vec<Vec<u64>>> = Vec::new();
    let total = elems.len().pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let gv: Vec<Vec<u64>> = (0..r)
            .map(|_| {
                let v = elems[c % elems.len()].clone();
                c /= elems.len();
                v
            })
            .collect();
        let table: Vec<Vec<u64>> = g
            .elements()
            .map(|x| {
                let mut acc = md.zero_elem();
                let mut prefix = 0usize;
                for i in g.word_indices(x) {
                    acc = md.add_elems(&acc, &gm.act(prefix, &gv[i]));
                    prefix = g.mul_gen(prefix, i);
                }
                acc
            })
            .collect();
        let ok = g.elements().all(|a| {
            g.elements().all(|b| table[g.mul(a, b)] == md.add_elems(&table[a], &gm.act(a, &table[b])))
        }) && (0..r).all(|i| table[g.gens()[i]] == gv[i]);
        if ok {
            cocycles.push(table);
        }
    }
    let z1 = crossed_homs(gm);
    if z1.module().order() != order_of(cocycles.len()) {
        return Err(format!("|Z1| = {} but enumeration gives {}", z1.module().order(), cocycles.len()));
    }
    if crossed_homs_all_pairs(gm).module().order() != order_of(cocycles.len()) {
        return Err("the all-pairs reference system disagrees with enumeration".into());
    }
    let mut decoded: HashSet<Vec<Vec<u64>>> = HashSet::new();
    for x in z1.module().elements() {
        decoded.insert(z1.decode(&x).values().to_vec());
    }
    let brute: HashSet<Vec<Vec<u64>>> = cocycles.iter().cloned().collect();
    if decoded != brute {
        return Err("decoded Z1 differs from the enumerated crossed homomorphisms".into());
    }

    // H^1
    let principal: HashSet<Vec<Vec<u64>>> =
        elems.iter().map(|m| CrossedHom::principal(gm, m).values().to_vec()).collect();
    let h = h1(gm);
    if h.module().order() * order_of(principal.len()) != order_of(cocycles.len()) {
        return Err(format!("|H1| = {} but enumeration gives {}/{}", h.module().order(), cocycles.len(), principal.len()));
    }
    let mut classes: HashSet<Vec<u64>> = HashSet::new();
    for t in &cocycles {
        let f = CrossedHom::new(gm, t.clone()).map_err(|e| e.to_string())?;
        let c = h.class_of(&f);
        let zero = h.module().is_zero_elem(&c);
        if zero != principal.contains(t) {
            return Err("class map kernel differs from the principal crossed homomorphisms".into());
        }
        if h.class_of(&h.representative(&c)) != c {
            return Err("representative has the wrong class".into());
        }
        classes.insert(c);
    }
    if order_of(classes.len()) != h.module().order() {
        return Err("class map is not onto H1".into());
    }
    // linearity on pairs
    for (a, b) in cocycles.iter().zip(cocycles.iter().rev()).take(64) {
        let fa = CrossedHom::new(gm, a.clone()).unwrap();
        let fb = CrossedHom::new(gm, b.clone()).unwrap();
        let lhs = h.class_of(&fa.add(&fb));
        let rhs = h.module().add_elems(&h.class_of(&fa), &h.class_of(&fb));
        if lhs != rhs {
            return Err("class map is not additive".into());
        }
    }
    Ok(())
}

/// Inertia-type pairs `(I, P)` with `|I| <= 12` and `P` normal.
pub fn inertia_pairs() -> Vec<(Arc<FiniteGroup>, Subgroup)> {
    let mut out = Vec::new();
    for m in 1..=12 {
        let g = Arc::new(FiniteGroup::cyclic(m, "c"));
        for d in 1..=m {
            if m % d == 0 {
                let p = subgroup_generated(&g, &[g.pow(g.gens()[0].min(g.order() - 1), (m / d) as u64)]).unwrap();
                out.push((g.clone(), p));
            }
        }
    }
    let s3 = Arc::new(closure(&[vec![1, 0, 2], vec![1, 2, 0]], &["t", "r"], 100).unwrap().0);
    let a3 = subgroup_generated(&s3, &[s3.gens()[1]]).unwrap();
    out.push((s3, a3));
    // dihedral of order 10 with its rotation subgroup
    let d5 = Arc::new(closure(&[vec![1, 2, 3, 4, 0], vec![0, 4, 3, 2, 1]], &["r", "s"], 100).unwrap().0);
    let c5 = subgroup_generated(&d5, &[d5.gens()[0]]).unwrap();
    out.push((d5, c5));
    // alternating group of order 12 with the Klein four subgroup
    let a4 = Arc::new(closure(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], &["x", "y"], 100).unwrap().0);
    let v4 = subgroup_generated(&a4, &[a4.gens()[1], a4.conj(a4.gens()[0], a4.gens()[1])]).unwrap();
    out.push((a4, v4));
    // dicyclic group of order 12: a^i b^j with b a b^-1 = a^-1, b^4 = 1
    let idx = |i: usize, j: usize| (i % 3) * 4 + j % 4;
    let table: Vec<Vec<usize>> = (0..12)
        .map(|x| {
            let (i1, j1) = (x / 4, x % 4);
            (0..12)
                .map(|y| {
                    let (i2, j2) = (y / 4, y % 4);
                    let twisted = if j1 % 2 == 0 { i2 } else { (3 - i2) % 3 };
                    idx(i1 + twisted, j1 + j2)
                })
                .collect()
        })
        .collect();
    let (dic, relabel) = FiniteGroup::from_table(&table, &[idx(1, 0), idx(0, 1)], &["a", "b"]).unwrap();
    let dic = Arc::new(dic);
    let _ = relabel;
    let c3 = subgroup_generated(&dic, &[dic.gens()[0]]).unwrap();
    out.push((dic, c3));
    out
}

/// Exhaustive check that `tame_section` after `inflation` is the identity on
/// `Z1(I/P, M^P)`, for permutation-type modules over every modulus with
/// `gcd(|P|, n) = 1`.
pub fn check_section_after_inflation() -> Result<usize, String> {
    let mut checked = 0usize;
    for (g, p) in inertia_pairs() {
        for &n in &MODULI {
            if fingroup_gcd(p.order() as u64, n) != 1 {
                continue;
            }
            let m = Modulus::new(n).unwrap();
            for gm in section_modules(&g, m) {
                let data = TameData::new(&gm, &p).map_err(|e| e.to_string())?;
                let z = crossed_homs(data.tame());
                for x in z.module().elements() {
                    let ubar = z.decode(&x);
                    let back = tame_section(&inflation(&ubar, &data), &data);
                    if back.values() != ubar.values() {
                        return Err(format!("section after inflation is not the identity (|I| = {}, n = {n})", g.order()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn fingroup_gcd(a: u64, b: u64) -> u64 {
    zlinalg::gcd(a, b)
}

/// Trivial module, regular-representation module (when small) and a
/// coset permutation module.
fn section_modules(g: &Arc<FiniteGroup>, m: Modulus) -> Vec<Arc<GModule>> {
    let mut out = vec![Arc::new(GModule::trivial(g.clone(), FpModule::free(m, 1)))];
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::new();
    if g.order() <= 6 {
        perms.push(g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect());
    }
    for x in g.elements().skip(1).take(2) {
        let h = subgroup_generated(g, &[x]).unwrap();
        if g.order() / h.order() <= 4 {
            perms.push(coset_action(g, &h));
        }
    }
    for perm in perms {
        let k = perm[0].len();
        let gen_mats: Vec<ModMat> = g
            .gens()
            .iter()
            .map(|&s| {
                let mut a = ModMat::zeros(m, k, k);
                for (c, &t) in perm[s].iter().enumerate() {
                    a.set(t, c, 1);
                }
                a
            })
            .collect();
        out.push(Arc::new(GModule::from_gen_matrices(g.clone(), FpModule::free(m, k), &gen_mats).unwrap()));
    }
    out
}
