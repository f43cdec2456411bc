use std::fmt::Debug;

use fingroup::parse_word;
use gcohom::{crossed_homs, h1, CrossedHom};
use pointeval::{inertia_group, load, parse_point_doc, realize_group, PointProblem, Realization};
use rgamma::{rgamma, rgamma_equivariant, rgamma_open};
use sheafdata::parse;
use zlinalg::{cokernel, kernel, FpModule, ModMat, ModuleMap};

use crate::corpus::*;
use crate::report::{CheckReport, SelftestReport};
use crate::{run_on_text, Command, Format, Options};

type Check = Result<String, String>;

fn same<T: PartialEq + Debug>(what: &str, got: T, expected: T) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {expected:?}"))
    }
}

fn ensure(what: &str, cond: bool) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn identity_rows(k: usize) -> Vec<Vec<u64>> {
    (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect()
}

/// Rows of the matrix sending coordinate `j` to coordinate `p[j]`.
fn permutation_rows(p: &[usize]) -> Vec<Vec<u64>> {
    let k = p.len();
    (0..k).map(|i| (0..k).map(|j| (p[j] == i) as u64).collect()).collect()
}

fn order16_open() -> Check {
    let (d, _) = parse(ORDER16_COVER).map_err(err)?;
    same("group order", d.group.order(), 16)?;
    let o = rgamma_open(&d).map_err(err)?;
    same("open cohomology", o.invariant_factors(), vec![vec![2], vec![2, 2, 2]])?;
    Ok("H^0 = Z/2, H^1 = (Z/2)^3".into())
}

fn gm_complex() -> Check {
    let (d, _) = parse(GM_COVER).map_err(err)?;
    let r = rgamma(&d).map_err(err)?;
    let c = &r.complex;
    let rows = |s: i64| c.diff(s).std().row_vecs();
    let dims: Vec<usize> = c.terms().iter().map(FpModule::dim).collect();
    same("term ranks", dims, vec![4, 6, 6, 2])?;
    let v = |x: [u64; 4]| x.to_vec();
    let w = |x: [u64; 6]| x.to_vec();
    same(
        "d0",
        rows(0),
        vec![v([0, 0, 1, 1]), v([0, 0, 1, 1]), v([1, 0, 1, 0]), v([1, 0, 0, 1]), v([0, 1, 1, 0]), v([0, 1, 0, 1])],
    )?;
    same(
        "d1",
        rows(1),
        vec![
            w([1, 1, 0, 0, 0, 0]),
            w([1, 1, 0, 0, 0, 0]),
            w([1, 0, 1, 1, 0, 0]),
            w([0, 1, 1, 1, 0, 0]),
            w([1, 0, 0, 0, 1, 1]),
            w([0, 1, 0, 0, 1, 1]),
        ],
    )?;
    same("d2", rows(2), vec![w([1, 0, 1, 1, 0, 0]), w([0, 1, 0, 0, 1, 1])])?;
    same("cohomology", r.invariant_factors(), vec![vec![2], vec![], vec![2], vec![]])?;
    same("H^0 generator", r.cohomology[0].representatives(), vec![vec![1, 1, 1, 1]])?;
    Ok("ranks 4, 6, 6, 2; H = Z/2, 0, Z/2, 0; H^0 spanned by (1,1,1,1)".into())
}

fn gm_action() -> Check {
    let (d, gs) = parse(GM_COVER).map_err(err)?;
    let gs = gs.ok_or("the fixture has no galois block")?;
    let r = rgamma_equivariant(&d, &gs).map_err(err)?;
    let a = &r.action[0];
    same("degree 0", a.matrix(0).row_vecs(), identity_rows(4))?;
    same("degree 1", a.matrix(1).row_vecs(), permutation_rows(&[1, 0, 2, 3, 4, 5]))?;
    same("degree 2", a.matrix(2).row_vecs(), permutation_rows(&[0, 1, 3, 2, 5, 4]))?;
    for deg in r.complex.degrees() {
        let h = r.action_on_cohomology(0, deg);
        same(&format!("action on H^{deg}"), h.std().row_vecs(), identity_rows(h.source().dim()))?;
    }
    Ok("swaps a, b in degree 1 and c, d and e, f in degree 2; trivial on cohomology".into())
}

fn realized(text: &str) -> Result<(PointProblem, Realization), String> {
    let p = load(&parse_point_doc(text).map_err(err)?).map_err(err)?;
    let real = realize_group(&p.model, &p.automorphisms, p.points.clone(), 1000).map_err(err)?;
    Ok((p, real))
}

fn genus_two_group() -> Check {
    let (_, real) = realized(GENUS_TWO_POINTS)?;
    let g = &real.group;
    same("group order", g.order(), 64)?;
    let w = |s: &str| parse_word(g, s).map_err(err);
    same("d^2", w("d^2")?, w("g3 g4 g5")?)?;
    same("d g1", w("d g1")?, w("g1 g3 d")?)?;
    same("d g2", w("d g2")?, w("g2 g4 d")?)?;
    Ok(format!("order 64 on {} points", real.points.len()))
}

fn genus_two_inertia() -> Check {
    let (p, real) = realized(GENUS_TWO_POINTS)?;
    let g = &real.group;
    let w = |s: &str| parse_word(g, s).map_err(err);
    let printed = p.model.parse_point(&["0", "4", "1", "a^30", "3a^3", "3a^30", "0"]);
    ensure("the reference preimage of P should be off the model", printed.is_err())?;
    let mut detail = Vec::new();
    for (name, y, gen) in [("P", "4", "g1 g2 g4 d"), ("Q", "7", "g1 g2 g3 d")] {
        let pt = p.model.parse_point(&["0", y, "a^30", "a^30", "3a^3", "3a^30", "0"]).map_err(err)?;
        let s = inertia_group(&real, &p.model, &pt).map_err(err)?;
        same(&format!("inertia order at {name}"), s.order(), 4)?;
        ensure(&format!("{gen} should fix the preimage of {name}"), s.contains(w(gen)?))?;
        same(&format!("order of {gen}"), g.element_order(w(gen)?), 4)?;
        detail.push(format!("I({name}) = <{gen}>"));
    }
    let zero = p.model.field().zero();
    let d = w("d")?;
    ensure("d should fix no point over x = 0", real.fibre(&[(0, zero)]).iter().all(|&i| real.act(d, i) != i))?;
    Ok(detail.join(", "))
}

fn genus_two_open() -> Check {
    let (d, _) = parse(GENUS_TWO_COVER).map_err(err)?;
    let expected = vec![vec![2, 2], vec![2; 8]];
    same("open cohomology", rgamma_open(&d).map_err(err)?.invariant_factors(), expected.clone())?;
    let full = rgamma(&d).map_err(err)?.invariant_factors();
    same("cohomology in degrees 0 and 1", full[..2].to_vec(), expected)?;
    Ok("H^0 = (Z/2)^2, H^1 = (Z/2)^8".into())
}

fn genus_two_cocycle_check() -> Check {
    let (d, gs) = parse(GENUS_TWO_COVER).map_err(err)?;
    let gs = gs.ok_or("the fixture has no galois block")?;
    let gm = &d.generic;
    let (cs, cp) = genus_two_cocycles(gm).map_err(err)?;
    same("c'", &cp, &CrossedHom::principal(gm, &[1, 0, 0]))?;
    let h = h1(gm);
    ensure("c' should have class zero", h.class_of(&cp).iter().all(|&x| x == 0))?;
    let m = d.modulus;
    let classes: Vec<Vec<u64>> = cs.iter().map(|c| h.class_of(c)).collect();
    let free = FpModule::free(m, cs.len());
    let f = ModuleMap::from_std(&free, h.module(), ModMat::from_columns(m, h.module().dim(), &classes)).map_err(err)?;
    ensure("the classes of c1..c8 should be independent", kernel(&f).0.module().is_zero())?;
    ensure("the classes of c1..c8 should span H^1", cokernel(&f).0.module().is_zero())?;

    let r = rgamma_equivariant(&d, &gs).map_err(err)?;
    let z1 = crossed_homs(gm);
    same("rank of the degree 1 term", r.complex.term(1).dim(), z1.module().dim())?;
    let a = r.action[0].map(1);
    for (i, c) in cs.iter().enumerate() {
        let image = z1.decode(&a.apply(&z1.encode(c)));
        let expected = if i == 6 { c.add(&cp) } else { c.clone() };
        same(&format!("Frobenius image of c{}", i + 1), image, expected)?;
    }
    let on_h1 = r.action_on_cohomology(0, 1);
    ensure("the Frobenius should act trivially on H^1", on_h1.sub(&ModuleMap::identity(on_h1.source())).is_zero())?;
    Ok("c1..c8 form a basis of H^1, c' is a coboundary, only c7 moves (by c')".into())
}

fn conjugate_preimages() -> Check {
    let (d, _) = parse(GENUS_TWO_RAMIFIED).map_err(err)?;
    let base = rgamma(&d).map_err(err)?.invariant_factors();
    let mut runs = 0;
    for word in ["d", "g1", "g2 d", "g1 g3 g5"] {
        let g = parse_word(&d.group, word).map_err(err)?;
        for b in 0..d.boundary.len() {
            let e = d.conjugate_branch(b, g);
            same(&format!("conjugating branch {b} by {word}"), rgamma(&e).map_err(err)?.invariant_factors(), base.clone())?;
            runs += 1;
        }
    }
    Ok(format!("{runs} conjugate choices, cohomology {base:?} each time"))
}

fn order16_inertia() -> Check {
    let (p, real) = realized(ORDER16_POINTS)?;
    let g = &real.group;
    same("group order", g.order(), 16)?;
    let pt = p.model.parse_point(&["0", "12", "1"]).map_err(err)?;
    let s = inertia_group(&real, &p.model, &pt).map_err(err)?;
    let gs2 = parse_word(g, "g s2").map_err(err)?;
    same("inertia order", s.order(), 4)?;
    ensure("g s2 should fix the point", s.contains(gs2))?;
    same("order of g s2", g.element_order(gs2), 4)?;
    Ok("I = <g s2> of order 4".into())
}

fn deterministic() -> Check {
    for (name, text) in [("multiplicative group cover", GM_COVER), ("ramified genus two cover", GENUS_TWO_RAMIFIED)] {
        let run = |jobs| {
            let opts = Options { jobs, emit_reps: true, degrees: None };
            run_on_text(Command::Equivariant, text, Format::Json, &opts)
        };
        let (a, b) = (run(1), run(4));
        same(&format!("{name}: exit status"), a.code, 0)?;
        ensure(&format!("{name}: output differs between 1 and 4 jobs"), a == b)?;
    }
    Ok("equivariant output identical with 1 and 4 jobs".into())
}

const NOTES: [&str; 2] = [
    "the reference first differential of the multiplicative group cover has its rows 3 and 4 exchanged \
     and then does not compose to zero with the second; the corpus checks (c+d, c+d, a+c, a+d, b+c, b+d)",
    "the reference preimage (0,4,1,a^30,3a^3,3a^30,0) of P is off the model (z1^2 = -1 at x = 0); \
     with z1 = a^30 its stabilizer has order 4, generated by g1 g2 g4 d, and d fixes no preimage of P",
];

/// Run every check of the regression corpus.
pub fn run_selftest() -> SelftestReport {
    let checks: [(&str, fn() -> Check); 10] = [
        ("order 16 cover: open cohomology", order16_open),
        ("order 16 cover: inertia", order16_inertia),
        ("multiplicative group cover: complex", gm_complex),
        ("multiplicative group cover: Galois action", gm_action),
        ("genus two cover: group", genus_two_group),
        ("genus two cover: inertia", genus_two_inertia),
        ("genus two cover: open cohomology", genus_two_open),
        ("genus two cover: cocycles and Frobenius", genus_two_cocycle_check),
        ("genus two cover: conjugate preimages", conjugate_preimages),
        ("determinism across jobs", deterministic),
    ];
    let checks: Vec<CheckReport> = checks
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckReport { name: name.to_string(), passed, detail }
        })
        .collect();
    SelftestReport {
        command: "selftest",
        passed: checks.iter().all(|c| c.passed),
        checks,
        notes: NOTES.iter().map(|s| s.to_string()).collect(),
    }
}
