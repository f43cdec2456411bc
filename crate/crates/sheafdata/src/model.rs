use std::sync::Arc;

use fingroup::{FiniteGroup, GroupHom, Subgroup};
use gcohom::GModule;
use zlinalg::{FpModule, ModuleMap, Modulus};

/// How the group was supplied, kept so that data can be printed back in
/// the form it was read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Permutations { names: Vec<String>, perms: Vec<Vec<usize>> },
    Table { names: Vec<String>, generators: Vec<usize>, table: Vec<Vec<usize>> },
}

/// One preimage `z̃` of a boundary point in the normalisation, with its
/// fibre, inertia data and gluing map into the generic fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub label: String,
    /// Label of the boundary point `z` of the curve this branch lies over.
    /// Branches sharing a point share its fibre.
    pub point: String,
    /// Galois orbit identifier.
    pub orbit: String,
    pub fiber: FpModule,
    pub inertia: Subgroup,
    pub wild: Subgroup,
    /// `φ: F_z -> M`, landing in `M^I`.
    pub gluing: ModuleMap,
}

/// A single constructible sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafData {
    pub modulus: Modulus,
    pub group: Arc<FiniteGroup>,
    pub group_source: GroupSource,
    pub generic: Arc<GModule>,
    pub boundary: Vec<BoundaryPoint>,
    /// The user attests that `H^1(U, L) -> H^1(V, L)` vanishes.
    pub h1_triviality: bool,
}

/// Fibres of a complex at one boundary point of the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkComplex {
    pub label: String,
    pub fibers: Vec<FpModule>,
    /// `fibers[s] -> fibers[s+1]`
    pub diffs: Vec<ModuleMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub label: String,
    /// Index into [`SheafComplexData::points`].
    pub point: usize,
    pub orbit: String,
    pub inertia: Subgroup,
    pub wild: Subgroup,
    /// `gluing[s]: fibers[s] -> M^s`
    pub gluing: Vec<ModuleMap>,
}

/// A complex `F^0 -> ... -> F^t` of constructible sheaves sharing one
/// trivialising cover. Degree `s` lives in index `s` of every list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafComplexData {
    pub modulus: Modulus,
    pub group: Arc<FiniteGroup>,
    pub generic: Vec<Arc<GModule>>,
    /// `generic[s] -> generic[s+1]`, equivariant.
    pub generic_diffs: Vec<ModuleMap>,
    pub points: Vec<StalkComplex>,
    pub branches: Vec<Branch>,
    pub h1_triviality: bool,
}

impl SheafComplexData {
    /// Number of degrees `t + 1`.
    pub fn len(&self) -> usize {
        self.generic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generic.is_empty()
    }

    pub fn branch_index(&self, label: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.label == label)
    }
}

impl SheafData {
    /// View as a one-term complex. Branches with the same `point` label
    /// share the fibre of the first of them.
    pub fn to_complex(&self) -> SheafComplexData {
        let mut points: Vec<StalkComplex> = Vec::new();
        let mut branches = Vec::new();
        for b in &self.boundary {
            let idx = match points.iter().position(|p| p.label == b.point) {
                Some(i) => i,
                None => {
                    points.push(StalkComplex { label: b.point.clone(), fibers: vec![b.fiber.clone()], diffs: vec![] });
                    points.len() - 1
                }
            };
            branches.push(Branch {
                label: b.label.clone(),
                point: idx,
                orbit: b.orbit.clone(),
                inertia: b.inertia.clone(),
                wild: b.wild.clone(),
                gluing: vec![b.gluing.clone()],
            });
        }
        SheafComplexData {
            modulus: self.modulus,
            group: self.group.clone(),
            generic: vec![self.generic.clone()],
            generic_diffs: vec![],
            points,
            branches,
            h1_triviality: self.h1_triviality,
        }
    }

    /// The same sheaf described through the branch `g z̃` instead of `z̃`:
    /// inertia and wild inertia are conjugated by `g` and the gluing map
    /// is followed by the action of `g`.
    pub fn conjugate_branch(&self, i: usize, g: usize) -> SheafData {
        let mut out = self.clone();
        let b = &mut out.boundary[i];
        b.inertia = b.inertia.conjugate(g);
        b.wild = b.wild.conjugate(g);
        b.gluing = self.generic.action(g).compose(&b.gluing);
        out
    }

    /// The constant sheaf `Λ` on a curve with trivial cover and no boundary.
    pub fn constant(modulus: Modulus) -> Self {
        let group = Arc::new(FiniteGroup::trivial());
        SheafData {
            modulus,
            group: group.clone(),
            group_source: GroupSource::Permutations { names: vec![], perms: vec![] },
            generic: Arc::new(GModule::trivial(group, FpModule::free(modulus, 1))),
            boundary: vec![],
            h1_triviality: true,
        }
    }
}

/// Where a Galois element sends one branch: `w · σ(z̃_i) = z̃_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchImage {
    pub target: usize,
    /// The correcting element `w` of `G`.
    pub witness: usize,
    /// Fibre isomorphisms `F_{z_i}^s -> F_{z_target}^s`, one per degree.
    pub fiber: Vec<ModuleMap>,
}

/// The action of one generator of the Galois group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisGenerator {
    /// The automorphism `g -> σ(g)` of `G`.
    pub on_group: GroupHom,
    /// Semilinear maps `σ: M^s -> M^s`, one per degree.
    pub on_module: Vec<ModuleMap>,
    /// One entry per branch.
    pub on_boundary: Vec<BranchImage>,
}

/// A finite Galois group acting on the gluing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisStructure {
    pub gal: Arc<FiniteGroup>,
    /// One entry per generator of `gal`.
    pub generators: Vec<GaloisGenerator>,
}

impl GaloisStructure {
    /// The trivial Galois group.
    pub fn trivial() -> Self {
        GaloisStructure { gal: Arc::new(FiniteGroup::trivial()), generators: vec![] }
    }
}
