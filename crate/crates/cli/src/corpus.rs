//! The bundled regression inputs and the cocycle data that go with them.

use std::sync::Arc;

use gcohom::{CohomError, CrossedHom, GModule};

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $name))
    };
}

/// `C4` acting on `Λ²` by the swap, totally ramified over `0` and `∞`,
/// fibres `Λ` glued diagonally, with the Galois generator sending `g` to
/// `g^3`.
pub const GM_COVER: &str = fixture!("gm_cover.json");

/// A group of order 16 acting on `Λ²` through a swap, no boundary.
pub const ORDER16_COVER: &str = fixture!("order16_cover.json");

/// The order 64 cover of the genus two example on `Λ³`, no boundary.
pub const GENUS_TWO_COVER: &str = fixture!("genus_two_cover.json");

/// The same cover with branches over `P` and `Q`.
pub const GENUS_TWO_RAMIFIED: &str = fixture!("genus_two_cover_ramified.json");

/// Point model of the genus two cover over `F_121`.
pub const GENUS_TWO_POINTS: &str = fixture!("genus_two_points.json");

/// Point model of the order 16 cover over `F_29`.
pub const ORDER16_POINTS: &str = fixture!("order16_points.json");

/// Values on the generators `g1..g5, d` of the eight cocycles `c1..c8`
/// spanning `H^1` of the genus two cover on `Λ³`.
pub const GENUS_TWO_COCYCLES: [[[u64; 3]; 6]; 8] = [
    [[1, 0, 0], [0, 0, 0], [1, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 1]],
    [[0, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [1, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 1]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 0], [1, 0, 1], [0, 0, 0], [0, 0, 1]],
    [[0, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 0, 0], [1, 0, 1], [0, 0, 0], [0, 0, 1]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 1], [0, 0, 1]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 1, 0]],
];

/// The coboundary `c'`: zero on every `gi` and `(1, 0, 1)` on `d`.
pub const GENUS_TWO_COBOUNDARY: [[u64; 3]; 6] = [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 1]];

fn cocycle(gm: &Arc<GModule>, values: &[[u64; 3]; 6]) -> Result<CrossedHom, CohomError> {
    let v: Vec<Vec<u64>> = values.iter().map(|x| x.to_vec()).collect();
    CrossedHom::from_generator_values(gm, &v)
}

/// `c1..c8` and `c'` as crossed homomorphisms of the given module.
pub fn genus_two_cocycles(gm: &Arc<GModule>) -> Result<(Vec<CrossedHom>, CrossedHom), CohomError> {
    let cs = GENUS_TWO_COCYCLES.iter().map(|v| cocycle(gm, v)).collect::<Result<_, _>>()?;
    Ok((cs, cocycle(gm, &GENUS_TWO_COBOUNDARY)?))
}
