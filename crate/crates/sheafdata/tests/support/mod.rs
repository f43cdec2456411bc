#![allow(dead_code)]

/// The squaring cover of the multiplicative group composed with `z -> z^2`:
/// `G = C4`, `M = Λ²` with the generator swapping coordinates, totally
/// ramified over `0` and `∞` with fibres `Λ` glued diagonally.
pub const GM_COVER: &str = r#"{
  "modulus": 2,
  "group": {"permutation_gens": [{"name": "g", "perm": [1, 2, 3, 0]}]},
  "module": {"rank": 2, "action": {"g": [[0, 1], [1, 0]]}},
  "boundary": [
    {"label": "0", "fiber": {"rank": 1}, "gluing": [[1], [1]], "inertia_words": ["g"]},
    {"label": "inf", "fiber": {"rank": 1}, "gluing": [[1], [1]], "inertia_words": ["g"]}
  ],
  "galois": {"order": 2, "generator": "s", "action_on_group": {"g": "g^3"}},
  "attestations": {"h1_triviality": true}
}"#;

/// Multiplication table of the order 64 group generated by involutions
/// `g1..g5` and `d`, with `d g1 d^-1 = g1 g3`, `d g2 d^-1 = g2 g4`, `d`
/// commuting with `g3, g4, g5`, and `d^2 = g3 g4 g5`. Element `x` is
/// `g^e d^k` with `e = x & 31` and `k = x >> 5`.
pub fn genus_two_cover_table() -> Vec<Vec<usize>> {
    let conj = |e: usize| {
        let mut f = e;
        if e & 1 != 0 {
            f ^= 4;
        }
        if e & 2 != 0 {
            f ^= 8;
        }
        f
    };
    let c = 4 | 8 | 16;
    let mut t = vec![vec![0; 64]; 64];
    for (x, row) in t.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let (e, k) = (x & 31, x >> 5);
            let (f, l) = (y & 31, y >> 5);
            let mut g = e ^ if k == 1 { conj(f) } else { f };
            if k == 1 && l == 1 {
                g ^= c;
            }
            *cell = g | (((k + l) % 2) << 5);
        }
    }
    t
}

/// JSON for the genus two example: `M = Λ³` with `d` swapping the outer
/// coordinates, one boundary branch with inertia `<g1 g2 g4 d>`, and the
/// Frobenius fixing every `gi` and sending `d` to `g5 d`.
pub fn genus_two_json(with_boundary: bool) -> String {
    let t = genus_two_cover_table();
    let id3 = "[[1,0,0],[0,1,0],[0,0,1]]";
    let boundary = if with_boundary {
        r#"[{"label": "P", "fiber": {"rank": 2}, "gluing": [[1,0],[0,1],[1,0]],
             "inertia_words": ["g1 g2 g4 d"]}]"#
    } else {
        "[]"
    };
    format!(
        r#"{{"modulus": 2,
  "group": {{"table": {{"multiplication": {t:?}, "generators": [
      {{"name": "g1", "element": 1}}, {{"name": "g2", "element": 2}}, {{"name": "g3", "element": 4}},
      {{"name": "g4", "element": 8}}, {{"name": "g5", "element": 16}}, {{"name": "d", "element": 32}}]}}}},
  "module": {{"rank": 3, "action": {{"g1": {id3}, "g2": {id3}, "g3": {id3}, "g4": {id3}, "g5": {id3},
      "d": [[0,0,1],[0,1,0],[1,0,0]]}}}},
  "boundary": {boundary},
  "galois": {{"order": 2, "generator": "phi", "action_on_group": {{"d": "g5 d"}}}},
  "attestations": {{"h1_triviality": true}}
}}"#
    )
}
