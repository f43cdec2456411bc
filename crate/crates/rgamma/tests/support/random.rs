//! Random valid sheaf data: small permutation groups acting on permutation
//! modules, branches with cyclic inertia and gluing maps into the inertia
//! invariants.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestRng;
use sheafdata::{parse, validate, SheafData};

pub struct Case {
    pub text: String,
    pub data: SheafData,
}

const GROUPS: &[&[&[usize]]] = &[
    &[&[1, 0]],
    &[&[1, 2, 0]],
    &[&[1, 2, 3, 0]],
    &[&[1, 2, 3, 4, 5, 0]],
    &[&[1, 0, 2], &[1, 2, 0]],
    &[&[1, 2, 3, 0], &[2, 1, 0, 3]],
];

pub fn matrix(rows: &[Vec<u64>]) -> String {
    let r: Vec<String> = rows.iter().map(|r| format!("{r:?}")).collect();
    format!("[{}]", r.join(", "))
}

fn perm_matrix(p: &[usize], extra: usize) -> Vec<Vec<u64>> {
    let k = p.len() + extra;
    let mut rows = vec![vec![0u64; k]; k];
    for (x, &y) in p.iter().enumerate() {
        rows[y][x] = 1;
    }
    for i in p.len()..k {
        rows[i][i] = 1;
    }
    rows
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // p after q
    q.iter().map(|&x| p[x]).collect()
}

/// Every element of the group generated by `gens`, as permutations.
fn elements(gens: &[&[usize]]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = vec![id.clone()];
    let mut i = 0;
    while i < seen.len() {
        for g in gens {
            let y = compose(g, &seen[i]);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen
}

fn order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut x = p.to_vec();
    let mut k = 1;
    while x != id {
        x = compose(p, &x);
        k += 1;
    }
    k
}

fn power(p: &[usize], k: usize) -> Vec<usize> {
    let mut x: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k {
        x = compose(p, &x);
    }
    x
}

/// Orbit indicator vectors of `<x>` on the points, then the trivial summand.
fn invariant_basis(x: &[usize], extra: usize) -> Vec<Vec<u64>> {
    let k = x.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in 0..k {
        if seen.contains(&start) {
            continue;
        }
        let mut v = vec![0u64; k + extra];
        let mut y = start;
        while seen.insert(y) {
            v[y] = 1;
            y = x[y];
        }
        out.push(v);
    }
    for i in 0..extra {
        let mut v = vec![0u64; k + extra];
        v[k + i] = 1;
        out.push(v);
    }
    out
}

/// A word for the permutation `x` in the generators `s0, s1, ...`.
fn word_for(gens: &[&[usize]], x: &[usize]) -> String {
    let id: Vec<usize> = (0..x.len()).collect();
    let mut frontier = vec![(id.clone(), String::new())];
    let mut seen = vec![id];
    let mut i = 0;
    while i < frontier.len() {
        let (p, w) = frontier[i].clone();
        if p == x {
            return if w.is_empty() { "e".into() } else { w };
        }
        for (j, g) in gens.iter().enumerate() {
            let y = compose(g, &p);
            if !seen.contains(&y) {
                seen.push(y.clone());
                let w2 = if w.is_empty() { format!("s{j}") } else { format!("{w} s{j}") };
                frontier.push((y, w2));
            }
        }
        i += 1;
    }
    unreachable!("element not in the group")
}

pub fn random_case(rng: &mut TestRng) -> Option<Case> {
    let n = [2u64, 3][rng.random_range(0..2)];
    let gens = GROUPS[rng.random_range(0..GROUPS.len())];
    let extra = rng.random_range(0..=1);
    let all = elements(gens);
    let names: Vec<String> = (0..gens.len()).map(|i| format!("s{i}")).collect();
    let perm_gens: Vec<String> =
        gens.iter().zip(&names).map(|(p, s)| format!(r#"{{"name": "{s}", "perm": {p:?}}}"#)).collect();
    let action: Vec<String> =
        gens.iter().zip(&names).map(|(p, s)| format!(r#""{s}": {}"#, matrix(&perm_matrix(p, extra)))).collect();
    let rank = gens[0].len() + extra;
    let nb = rng.random_range(0..=2);
    let mut boundary = Vec::new();
    for b in 0..nb {
        let x = &all[rng.random_range(0..all.len())];
        let e = order(x);
        // prime-to-n part of <x> as wild inertia, if asked for
        let mut npart = 1;
        while e.is_multiple_of(npart * n as usize) {
            npart *= n as usize;
        }
        let wild = if rng.random_bool(0.5) && npart < e { Some(power(x, npart)) } else { None };
        let basis = invariant_basis(x, extra);
        let r = rng.random_range(0..=2.min(basis.len()));
        // gluing columns: random combinations of invariant vectors
        let mut cols = Vec::new();
        for _ in 0..r {
            let mut v = vec![0u64; rank];
            for bv in &basis {
                let c = rng.random_range(0..n);
                for (vi, bi) in v.iter_mut().zip(bv) {
                    *vi = (*vi + c * bi) % n;
                }
            }
            cols.push(v);
        }
        let rows: Vec<Vec<u64>> = (0..rank).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let wild_words = match &wild {
            Some(w) => format!(r#", "wild_words": ["{}"]"#, word_for(gens, w)),
            None => String::new(),
        };
        boundary.push(format!(
            r#"{{"label": "b{b}", "fiber": {{"rank": {r}}}, "gluing": {}, "inertia_words": ["{}"]{wild_words}}}"#,
            if r == 0 { format!("[{}]", vec!["[]"; rank].join(", ")) } else { matrix(&rows) },
            word_for(gens, x)
        ));
    }
    let text = format!(
        r#"{{"modulus": {n}, "group": {{"permutation_gens": [{}]}}, "module": {{"rank": {rank}, "action": {{{}}}}},
  "boundary": [{}], "attestations": {{"h1_triviality": true}}}}"#,
        perm_gens.join(", "),
        action.join(", "),
        boundary.join(", ")
    );
    let (data, _) = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    validate(&data).is_valid().then_some(Case { text, data })
}

pub fn case() -> impl Strategy<Value = Case> {
    Just(()).prop_perturb(|_, mut rng| loop {
        if let Some(c) = random_case(&mut rng) {
            return c;
        }
    })
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}
