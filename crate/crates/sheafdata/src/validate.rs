use std::fmt;

use fingroup::Subgroup;
use zlinalg::{gcd, ModMat, ModuleMap};

use crate::model::{GaloisStructure, SheafComplexData, SheafData};

/// The hypothesis a failed check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// Every module in the data uses the declared coefficients.
    Coefficients,
    /// Complex shapes agree across degrees.
    Shape,
    /// `d ∘ d = 0` for the generic and boundary complexes.
    DifferentialsSquareToZero,
    /// Generic differentials commute with the group action.
    EquivariantDifferentials,
    /// The gluing map lands in the inertia invariants `M^I`.
    GluingInvariant,
    /// Gluing maps commute with the differentials.
    GluingCommutes,
    /// `P ⊆ I` and `P` is normal in `I`.
    WildNormal,
    /// `|P|` is invertible modulo `n`.
    WildOrderInvertible,
    /// `I/P` is cyclic.
    TameCyclic,
    /// `n` divides the tame ramification index `|I/P|`.
    RamificationDivisible,
    /// Branches over one point carry the same fibre.
    SharedFiber,
    /// Labels are unique.
    UniqueLabels,
    /// The Galois action on `G` is by automorphisms.
    GaloisOnGroup,
    /// `σ(g m) = σ(g) σ(m)`.
    Semilinear,
    /// Galois maps commute with the differentials.
    GaloisCommutes,
    /// Boundary branches are permuted within their orbits, compatibly with
    /// inertia, fibres and gluing maps.
    OrbitCompatible,
    /// The generator actions satisfy the relations of the Galois group.
    GaloisRelations,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::Coefficients => "all modules are modules over the declared coefficient ring",
            Hypothesis::Shape => "degree lists have consistent lengths and shapes",
            Hypothesis::DifferentialsSquareToZero => "differentials square to zero",
            Hypothesis::EquivariantDifferentials => "generic differentials are G-equivariant",
            Hypothesis::GluingInvariant => "the gluing map lands in the inertia invariants M^I",
            Hypothesis::GluingCommutes => "gluing maps commute with the differentials",
            Hypothesis::WildNormal => "wild inertia P is a normal subgroup of the inertia group I",
            Hypothesis::WildOrderInvertible => "the order of the wild inertia is invertible modulo n",
            Hypothesis::TameCyclic => "the tame inertia quotient I/P is cyclic",
            Hypothesis::RamificationDivisible => "n divides the tame ramification index |I/P|",
            Hypothesis::SharedFiber => "branches over one boundary point share its fibre",
            Hypothesis::UniqueLabels => "boundary labels are unique",
            Hypothesis::GaloisOnGroup => "the Galois group acts on G by automorphisms",
            Hypothesis::Semilinear => "the Galois action on M is semilinear: s(g m) = s(g) s(m)",
            Hypothesis::GaloisCommutes => "the Galois action commutes with the differentials",
            Hypothesis::OrbitCompatible => {
                "boundary branches are permuted within their orbits compatibly with inertia, fibres and gluing"
            }
            Hypothesis::GaloisRelations => "the generator actions satisfy the relations of the Galois group",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub hypothesis: Hypothesis,
    /// Where in the input the problem sits, e.g. `boundary "P0"`.
    pub location: String,
    pub detail: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.location, self.hypothesis, self.detail)
    }
}

/// Outcome of validation. Warnings do not make the data invalid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, hypothesis: Hypothesis, location: impl Into<String>, detail: impl Into<String>) {
        self.issues.push(Issue { hypothesis, location: location.into(), detail: detail.into() });
    }

    pub fn violates(&self, h: Hypothesis) -> bool {
        self.issues.iter().any(|i| i.hypothesis == h)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")?;
        } else {
            writeln!(f, "invalid")?;
            for i in &self.issues {
                writeln!(f, "  {i}")?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

fn branch_loc(label: &str) -> String {
    format!("boundary {label:?}")
}

fn maps_equal(a: &ModuleMap, b: &ModuleMap) -> bool {
    a.sub(b).is_zero()
}

/// Check a single sheaf.
pub fn validate(data: &SheafData) -> ValidationReport {
    let mut r = ValidationReport::default();
    for b in &data.boundary {
        if b.fiber.modulus() != data.modulus {
            r.push(Hypothesis::Coefficients, branch_loc(&b.label), "fibre uses other coefficients");
        }
    }
    for (i, a) in data.boundary.iter().enumerate() {
        for b in &data.boundary[i + 1..] {
            if a.point == b.point && a.fiber != b.fiber {
                r.push(
                    Hypothesis::SharedFiber,
                    branch_loc(&b.label),
                    format!("fibre differs from that of {:?} over the same point {:?}", a.label, a.point),
                );
            }
        }
    }
    let c = data.to_complex();
    let rc = validate_complex(&c);
    r.issues.extend(rc.issues);
    r.warnings.extend(rc.warnings);
    r
}

/// Check a complex of sheaves.
pub fn validate_complex(data: &SheafComplexData) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = data.modulus.n();
    let t = data.generic.len();
    if t == 0 {
        r.push(Hypothesis::Shape, "generic", "at least one degree is required");
        return r;
    }
    if data.generic_diffs.len() + 1 != t {
        r.push(Hypothesis::Shape, "generic", format!("{} differentials for {} degrees", data.generic_diffs.len(), t));
        return r;
    }
    for (s, gm) in data.generic.iter().enumerate() {
        if gm.module().modulus() != data.modulus {
            r.push(Hypothesis::Coefficients, format!("generic degree {s}"), "module uses other coefficients");
        }
        if **gm.group() != *data.group {
            r.push(Hypothesis::Shape, format!("generic degree {s}"), "module is over another group");
            return r;
        }
    }
    for (s, d) in data.generic_diffs.iter().enumerate() {
        if d.source().factors() != data.generic[s].module().factors()
            || d.target().factors() != data.generic[s + 1].module().factors()
        {
            r.push(Hypothesis::Shape, format!("generic differential {s}"), "source or target mismatch");
            return r;
        }
        if !data.generic[s].is_equivariant(&data.generic[s + 1], d) {
            r.push(Hypothesis::EquivariantDifferentials, format!("generic differential {s}"), "not G-equivariant");
        }
        if s + 1 < data.generic_diffs.len() && !data.generic_diffs[s + 1].compose(d).is_zero() {
            r.push(Hypothesis::DifferentialsSquareToZero, format!("generic degree {s}"), "d∘d is not zero");
        }
    }
    for p in &data.points {
        let loc = format!("point {:?}", p.label);
        if p.fibers.len() != t || p.diffs.len() + 1 != t {
            r.push(Hypothesis::Shape, loc, "fibres do not cover every degree");
            return r;
        }
        for (s, d) in p.diffs.iter().enumerate() {
            if d.source().factors() != p.fibers[s].factors() || d.target().factors() != p.fibers[s + 1].factors() {
                r.push(Hypothesis::Shape, loc.clone(), format!("differential {s} has the wrong shape"));
                return r;
            }
            if s + 1 < p.diffs.len() && !p.diffs[s + 1].compose(d).is_zero() {
                r.push(Hypothesis::DifferentialsSquareToZero, loc.clone(), format!("d∘d is not zero in degree {s}"));
            }
        }
    }
    for (i, a) in data.branches.iter().enumerate() {
        if data.branches[i + 1..].iter().any(|b| b.label == a.label) {
            r.push(Hypothesis::UniqueLabels, branch_loc(&a.label), "label used twice");
        }
    }
    for b in &data.branches {
        let loc = branch_loc(&b.label);
        let Some(point) = data.points.get(b.point) else {
            r.push(Hypothesis::Shape, loc, "refers to a missing point");
            continue;
        };
        if b.gluing.len() != t {
            r.push(Hypothesis::Shape, loc, "one gluing map per degree is required");
            continue;
        }
        if **b.inertia.parent() != *data.group || **b.wild.parent() != *data.group {
            r.push(Hypothesis::Shape, loc, "inertia subgroups must live in the cover group");
            continue;
        }
        check_inertia(&mut r, &loc, &b.inertia, &b.wild, n);
        for s in 0..t {
            let phi = &b.gluing[s];
            let gm = &data.generic[s];
            if phi.source().factors() != point.fibers[s].factors() || phi.target().factors() != gm.module().factors() {
                r.push(Hypothesis::Shape, loc.clone(), format!("gluing map in degree {s} has the wrong shape"));
                continue;
            }
            for &g in &b.inertia.generators() {
                if !maps_equal(&gm.action(g).compose(phi), phi) {
                    r.push(
                        Hypothesis::GluingInvariant,
                        loc.clone(),
                        format!("degree {s}: the image is not fixed by {}", data.group.label(g)),
                    );
                    break;
                }
            }
            if s + 1 < t {
                let lhs = data.generic_diffs[s].compose(phi);
                let rhs = b.gluing[s + 1].compose(&point.diffs[s]);
                if !maps_equal(&lhs, &rhs) {
                    r.push(Hypothesis::GluingCommutes, loc.clone(), format!("square in degree {s} does not commute"));
                }
            }
        }
    }
    if !data.h1_triviality {
        r.warnings.push(
            "the vanishing of H^1(U, L) -> H^1(V, L) is not attested; results assume it".to_string(),
        );
    }
    r
}

fn check_inertia(r: &mut ValidationReport, loc: &str, inertia: &Subgroup, wild: &Subgroup, n: u64) {
    if !wild.is_subgroup_of(inertia) || !wild.is_normal_in(inertia) {
        r.push(Hypothesis::WildNormal, loc, "P is not a normal subgroup of I");
        return;
    }
    if gcd(wild.order() as u64, n) != 1 {
        r.push(Hypothesis::WildOrderInvertible, loc, format!("|P| = {} and n = {n}", wild.order()));
    }
    let e = inertia.order() / wild.order();
    // I/P is cyclic iff some x has order e modulo P
    let g = inertia.parent();
    let cyclic = inertia.members().iter().any(|&x| {
        let mut k = 1;
        let mut y = x;
        while !wild.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k == e
    });
    if !cyclic {
        r.push(Hypothesis::TameCyclic, loc, format!("I/P of order {e} has no generator"));
    }
    if !(e as u64).is_multiple_of(n) {
        r.push(Hypothesis::RamificationDivisible, loc, format!("|I/P| = {e} is not divisible by n = {n}"));
    }
}

/// Check a Galois structure against valid data.
pub fn validate_equivariant(data: &SheafData, gs: &GaloisStructure) -> ValidationReport {
    validate_equivariant_complex(&data.to_complex(), gs)
}

pub fn validate_equivariant_complex(data: &SheafComplexData, gs: &GaloisStructure) -> ValidationReport {
    let mut r = ValidationReport::default();
    let g = &data.group;
    let t = data.generic.len();
    if gs.generators.len() != gs.gal.gens().len() {
        r.push(Hypothesis::Shape, "galois", "one action per Galois generator is required");
        return r;
    }
    for (k, sg) in gs.generators.iter().enumerate() {
        let name = &gs.gal.gen_names()[k];
        let loc = format!("galois generator {name:?}");
        let auto = &sg.on_group;
        if **auto.source() != **g || **auto.target() != **g || !auto.is_bijective() {
            r.push(Hypothesis::GaloisOnGroup, loc, "not an automorphism of G");
            continue;
        }
        if sg.on_module.len() != t || sg.on_boundary.len() != data.branches.len() {
            r.push(Hypothesis::Shape, loc, "module or boundary action has the wrong length");
            continue;
        }
        for s in 0..t {
            let gm = &data.generic[s];
            let sm = &sg.on_module[s];
            if sm.source().factors() != gm.module().factors() || sm.target().factors() != gm.module().factors() {
                r.push(Hypothesis::Shape, loc.clone(), format!("module action in degree {s} has the wrong shape"));
                continue;
            }
            for &x in g.gens() {
                let lhs = sm.compose(&gm.action(x));
                let rhs = gm.action(auto.image_of(x)).compose(sm);
                if !maps_equal(&lhs, &rhs) {
                    r.push(
                        Hypothesis::Semilinear,
                        loc.clone(),
                        format!("degree {s}, group generator {}", g.label(x)),
                    );
                }
            }
            if s + 1 < t && !maps_equal(&data.generic_diffs[s].compose(sm), &sg.on_module[s + 1].compose(&data.generic_diffs[s])) {
                r.push(Hypothesis::GaloisCommutes, loc.clone(), format!("generic differential {s}"));
            }
        }
        let mut hit = vec![false; data.branches.len()];
        for (i, img) in sg.on_boundary.iter().enumerate() {
            let src = &data.branches[i];
            let bloc = format!("{loc}, boundary {:?}", src.label);
            let Some(dst) = data.branches.get(img.target) else {
                r.push(Hypothesis::OrbitCompatible, bloc, "target branch does not exist");
                continue;
            };
            if hit[img.target] {
                r.push(Hypothesis::OrbitCompatible, bloc.clone(), "two branches map to the same branch");
            }
            hit[img.target] = true;
            if dst.orbit != src.orbit {
                r.push(Hypothesis::OrbitCompatible, bloc.clone(), format!("target {:?} lies in another orbit", dst.label));
            }
            let w = img.witness;
            let moved = |h: &Subgroup| -> Vec<usize> {
                let mut v: Vec<usize> = h.members().iter().map(|&x| g.conj(w, auto.image_of(x))).collect();
                v.sort_unstable();
                v
            };
            if moved(&src.inertia) != dst.inertia.members() || moved(&src.wild) != dst.wild.members() {
                r.push(Hypothesis::OrbitCompatible, bloc.clone(), "inertia is not carried onto the target inertia");
            }
            if img.fiber.len() != t {
                r.push(Hypothesis::Shape, bloc, "one fibre map per degree is required");
                continue;
            }
            let (pf, pt) = (&data.points[src.point], &data.points[dst.point]);
            for s in 0..t {
                let fm = &img.fiber[s];
                if fm.source().factors() != pf.fibers[s].factors() || fm.target().factors() != pt.fibers[s].factors() {
                    r.push(Hypothesis::Shape, bloc.clone(), format!("fibre map in degree {s} has the wrong shape"));
                    continue;
                }
                let lhs = dst.gluing[s].compose(fm);
                let rhs = data.generic[s].action(w).compose(&sg.on_module[s]).compose(&src.gluing[s]);
                if !maps_equal(&lhs, &rhs) {
                    r.push(Hypothesis::OrbitCompatible, bloc.clone(), format!("gluing maps do not match in degree {s}"));
                }
                if s + 1 < t && !maps_equal(&pt.diffs[s].compose(fm), &img.fiber[s + 1].compose(&pf.diffs[s])) {
                    r.push(Hypothesis::GaloisCommutes, bloc.clone(), format!("fibre differential {s}"));
                }
            }
        }
        // branches over one point go to branches over one point, with one fibre map
        for (i, a) in data.branches.iter().enumerate() {
            for (j, b) in data.branches.iter().enumerate().skip(i + 1) {
                if a.point != b.point {
                    continue;
                }
                let (ia, ib) = (&sg.on_boundary[i], &sg.on_boundary[j]);
                let (Some(ta), Some(tb)) = (data.branches.get(ia.target), data.branches.get(ib.target)) else {
                    continue;
                };
                if ta.point != tb.point || ia.fiber != ib.fiber {
                    r.push(
                        Hypothesis::OrbitCompatible,
                        format!("{loc}, boundary {:?} and {:?}", a.label, b.label),
                        "branches over one point are sent to different points or with different fibre maps",
                    );
                }
            }
        }
    }
    if r.is_valid() {
        check_relations(&mut r, data, gs);
    }
    r
}

/// Extend the generator actions on `G` and on each `M^s` along the Galois
/// group and check every relation.
fn check_relations(r: &mut ValidationReport, data: &SheafComplexData, gs: &GaloisStructure) {
    let gal = &gs.gal;
    let g = &data.group;
    let t = data.generic.len();
    let id_perm: Vec<usize> = g.elements().collect();
    let id_mats: Vec<ModMat> = data.generic.iter().map(|gm| ModuleMap::identity(gm.module()).std().clone()).collect();
    let mut perms: Vec<Vec<usize>> = vec![id_perm];
    let mut mats: Vec<Vec<ModMat>> = vec![id_mats];
    let step = |p: &Vec<usize>, ms: &Vec<ModMat>, k: usize| -> (Vec<usize>, Vec<ModMat>) {
        let sg = &gs.generators[k];
        let np: Vec<usize> = (0..p.len()).map(|x| p[sg.on_group.image_of(x)]).collect();
        let nm: Vec<ModMat> = (0..t)
            .map(|s| ms[s].mul(sg.on_module[s].std()).reduce_rows(data.generic[s].module().factors()))
            .collect();
        (np, nm)
    };
    for x in 1..gal.order() {
        let (p, k) = gal.tree_parent(x).expect("non-identity");
        let (np, nm) = step(&perms[p], &mats[p], k);
        perms.push(np);
        mats.push(nm);
    }
    for x in gal.elements() {
        for k in 0..gal.gens().len() {
            let y = gal.mul_gen(x, k);
            if gal.tree_parent(y) == Some((x, k)) {
                continue;
            }
            let (np, nm) = step(&perms[x], &mats[x], k);
            if np != perms[y] || nm != mats[y] {
                r.push(
                    Hypothesis::GaloisRelations,
                    "galois",
                    format!("{} times {} acts differently from {}", gal.label(x), gal.gen_names()[k], gal.label(y)),
                );
                return;
            }
        }
    }
}
