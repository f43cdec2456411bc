//! Summand bookkeeping: every term of the top and bottom complexes is a
//! direct sum of keyed slots, and maps are assembled from keyed blocks.

use std::fmt;

use zlinalg::{block_map, FpModule, ModuleMap, Modulus};

/// A summand of a term. Degrees refer to the input complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Key {
    /// `F_z^s`, by point index.
    Fiber(usize, usize),
    /// `M^s`
    Generic(usize),
    /// `Z^1(G, M^s)`
    Cocycles(usize),
    /// `H^1(I/P, (M^s)^P)` in the top complex, by branch.
    TopH1(usize, usize),
    /// `(M^s)^P`
    Fixed(usize, usize),
    /// `Z^1(I/P, (M^s)^P)`
    TameCocycles(usize, usize),
    /// `H^1(I/P, (M^s)^P)` in the bottom complex.
    BottomH1(usize, usize),
}

/// Which half of the cone a summand comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    /// `RΓ(X, j_* L) ⊕ RΓ(Z, i^* F)` and its gluing terms.
    Top,
    /// `RΓ(Z, i^* j_* L)`, shifted by one in the result.
    Bottom,
}

/// The kind of a summand in a term of the result.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Summand {
    /// The fibre `F_z^s` at a boundary point.
    Fiber { point: String, degree: usize },
    /// The generic fibre `M^s`.
    Generic { degree: usize },
    /// Crossed homomorphisms `G -> M^s`.
    Cocycles { degree: usize },
    /// `H^1(I/P, (M^s)^P)` at a branch.
    InertiaH1 { branch: String, degree: usize },
    /// Wild invariants `(M^s)^P` at a branch.
    WildInvariants { branch: String, degree: usize },
    /// Crossed homomorphisms `I/P -> (M^s)^P` at a branch.
    TameCocycles { branch: String, degree: usize },
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Fiber { point, degree } => write!(f, "F_{point}^{degree}"),
            Summand::Generic { degree } => write!(f, "M^{degree}"),
            Summand::Cocycles { degree } => write!(f, "Z1(G, M^{degree})"),
            Summand::InertiaH1 { branch, degree } => write!(f, "H1(I/P, (M^{degree})^P) at {branch}"),
            Summand::WildInvariants { branch, degree } => write!(f, "(M^{degree})^P at {branch}"),
            Summand::TameCocycles { branch, degree } => write!(f, "Z1(I/P, (M^{degree})^P) at {branch}"),
        }
    }
}

/// One summand of a term with its rank (number of cyclic factors).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub part: Part,
    pub summand: Summand,
    pub rank: usize,
}

pub(crate) type Slots = Vec<(Key, FpModule)>;

/// Sum of keyed blocks `(target key, source key, map)`; repeated keys add.
pub(crate) fn assemble(m: Modulus, src: &Slots, tgt: &Slots, entries: Vec<(Key, Key, ModuleMap)>) -> ModuleMap {
    let mut blocks: Vec<Vec<Option<ModuleMap>>> = vec![vec![None; src.len()]; tgt.len()];
    for (tk, sk, f) in entries {
        let (Some(i), Some(j)) = (tgt.iter().position(|x| x.0 == tk), src.iter().position(|x| x.0 == sk)) else {
            continue;
        };
        blocks[i][j] = Some(match blocks[i][j].take() {
            Some(g) => g.add(&f),
            None => f,
        });
    }
    let srcs: Vec<&FpModule> = src.iter().map(|x| &x.1).collect();
    let tgts: Vec<&FpModule> = tgt.iter().map(|x| &x.1).collect();
    let refs: Vec<Vec<Option<&ModuleMap>>> = blocks.iter().map(|r| r.iter().map(|b| b.as_ref()).collect()).collect();
    block_map(m, &srcs, &tgts, &refs)
}

pub(crate) fn sum_module(m: Modulus, slots: &Slots) -> FpModule {
    let parts: Vec<&FpModule> = slots.iter().map(|x| &x.1).collect();
    FpModule::direct_sum(m, &parts)
}
