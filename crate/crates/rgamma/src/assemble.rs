use std::borrow::Cow;
use std::ops::Range;

use complexes::{cohomology, cone, induced_on_cohomology, shift, total_two_rows, CochainComplex, Cohomology, ComplexMorphism};
use gcohom::{inertia_h1, TameData};
use sheafdata::{validate, validate_complex, SheafComplexData, SheafData};
use zlinalg::{FpModule, ModuleMap, Modulus};

use crate::error::RGammaError;
use crate::local::{all_branch_data, generic_data, BranchData, GenericData};
use crate::slots::{assemble, sum_module, Key, Part, Piece, Slots, Summand};

/// Anything that can be viewed as a complex of sheaves.
pub trait SheafInput {
    fn complex_data(&self) -> Cow<'_, SheafComplexData>;
    fn validation(&self) -> sheafdata::ValidationReport;
}

impl SheafInput for SheafData {
    fn complex_data(&self) -> Cow<'_, SheafComplexData> {
        Cow::Owned(self.to_complex())
    }

    fn validation(&self) -> sheafdata::ValidationReport {
        validate(self)
    }
}

impl SheafInput for SheafComplexData {
    fn complex_data(&self) -> Cow<'_, SheafComplexData> {
        Cow::Borrowed(self)
    }

    fn validation(&self) -> sheafdata::ValidationReport {
        validate_complex(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RGammaOptions {
    /// Worker threads for the per-branch computations.
    pub jobs: usize,
}

impl Default for RGammaOptions {
    fn default() -> Self {
        RGammaOptions { jobs: 1 }
    }
}

/// The complex computing `RΓ(X, F)` with its pieces.
#[derive(Debug, Clone)]
pub struct RGammaResult {
    /// `cone(Ψ)[-1]`, starting in degree 0.
    pub complex: CochainComplex,
    /// Summands of each term, in coordinate order; index `s` is degree `s`.
    pub provenance: Vec<Vec<Piece>>,
    pub cohomology: Vec<Cohomology>,
    /// Whether the input attested the vanishing hypothesis on `H^1`.
    pub h1_triviality_attested: bool,
    /// Source of `Ψ`.
    pub top: CochainComplex,
    /// Target of `Ψ`.
    pub bottom: CochainComplex,
    pub psi: ComplexMorphism,
    /// One automorphism of `complex` per Galois generator (empty unless
    /// computed equivariantly).
    pub action: Vec<ComplexMorphism>,
}

impl RGammaResult {
    pub fn invariant_factors(&self) -> Vec<Vec<u64>> {
        self.cohomology.iter().map(Cohomology::invariant_factors).collect()
    }

    /// Coordinates occupied by a summand in the term of degree `deg`.
    pub fn slot_range(&self, deg: usize, part: Part, summand: &Summand) -> Option<Range<usize>> {
        piece_range(self.provenance.get(deg)?, part, summand)
    }

    /// The action of Galois generator `gen` on `H^deg`.
    pub fn action_on_cohomology(&self, gen: usize, deg: i64) -> ModuleMap {
        induced_on_cohomology(&self.action[gen], deg)
    }
}

pub(crate) fn piece_range(pieces: &[Piece], part: Part, summand: &Summand) -> Option<Range<usize>> {
    let mut off = 0;
    for p in pieces {
        if p.part == part && &p.summand == summand {
            return Some(off..off + p.rank);
        }
        off += p.rank;
    }
    None
}

/// `RΓ(U, L)` for the open part, with its pieces.
#[derive(Debug, Clone)]
pub struct OpenResult {
    pub complex: CochainComplex,
    pub provenance: Vec<Vec<Piece>>,
    pub cohomology: Vec<Cohomology>,
    pub h1_triviality_attested: bool,
}

impl OpenResult {
    pub fn invariant_factors(&self) -> Vec<Vec<u64>> {
        self.cohomology.iter().map(Cohomology::invariant_factors).collect()
    }
}

/// All local data of an input, ready to produce terms and maps.
pub(crate) struct Assembly<'a> {
    pub data: Cow<'a, SheafComplexData>,
    pub generic: GenericData,
    pub branches: Vec<BranchData>,
}

impl<'a> Assembly<'a> {
    pub fn new<D: SheafInput + ?Sized>(input: &'a D, opts: &RGammaOptions) -> Result<Self, RGammaError> {
        let report = input.validation();
        if !report.is_valid() {
            return Err(RGammaError::Invalid(report));
        }
        let data = input.complex_data();
        let generic = generic_data(&data);
        let branches = all_branch_data(&data, &generic, opts.jobs)?;
        Ok(Assembly { data, generic, branches })
    }

    pub fn modulus(&self) -> Modulus {
        self.data.modulus
    }

    /// Number of degrees of the input complex.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// `s` as an input degree, if in range.
    fn deg(&self, s: i64) -> Option<usize> {
        (s >= 0 && (s as usize) < self.len()).then_some(s as usize)
    }

    pub fn top_slots(&self, s: i64) -> Slots {
        let mut v = Vec::new();
        if let Some(d) = self.deg(s) {
            for (p, pt) in self.data.points.iter().enumerate() {
                v.push((Key::Fiber(p, d), pt.fibers[d].clone()));
            }
            v.push((Key::Generic(d), self.data.generic[d].module().clone()));
        }
        if let Some(d) = self.deg(s - 1) {
            v.push((Key::Cocycles(d), self.generic.z1[d].module().clone()));
        }
        if let Some(d) = self.deg(s - 2) {
            for (b, bd) in self.branches.iter().enumerate() {
                v.push((Key::TopH1(b, d), bd.h1[d].module().clone()));
            }
        }
        v
    }

    pub fn bottom_slots(&self, s: i64) -> Slots {
        let mut v = Vec::new();
        if let Some(d) = self.deg(s) {
            for (b, bd) in self.branches.iter().enumerate() {
                v.push((Key::Fixed(b, d), bd.tame[d].fixed().module().clone()));
            }
        }
        if let Some(d) = self.deg(s - 1) {
            for (b, bd) in self.branches.iter().enumerate() {
                v.push((Key::TameCocycles(b, d), bd.z1(d).module().clone()));
            }
        }
        if let Some(d) = self.deg(s - 2) {
            for (b, bd) in self.branches.iter().enumerate() {
                v.push((Key::BottomH1(b, d), bd.h1[d].module().clone()));
            }
        }
        v
    }

    /// Slots of the result in degree `s`: `T^s` then `B^(s-1)`.
    pub fn result_slots(&self, s: i64) -> Slots {
        let mut v = self.top_slots(s);
        v.extend(self.bottom_slots(s - 1));
        v
    }

    fn top_diff(&self, s: i64) -> ModuleMap {
        let mut e = Vec::new();
        if let Some(d) = self.deg(s) {
            if d + 1 < self.len() {
                for (p, pt) in self.data.points.iter().enumerate() {
                    e.push((Key::Fiber(p, d + 1), Key::Fiber(p, d), pt.diffs[d].clone()));
                }
                e.push((Key::Generic(d + 1), Key::Generic(d), self.data.generic_diffs[d].clone()));
            }
            e.push((Key::Cocycles(d), Key::Generic(d), self.generic.delta[d].clone()));
        }
        if let Some(d) = self.deg(s - 1) {
            if d + 1 < self.len() {
                e.push((Key::Cocycles(d + 1), Key::Cocycles(d), self.generic.d_z1[d].neg()));
            }
            for (b, bd) in self.branches.iter().enumerate() {
                e.push((Key::TopH1(b, d), Key::Cocycles(d), bd.h1[d].class_map().compose(&bd.res[d])));
            }
        }
        if let Some(d) = self.deg(s - 2) {
            if d + 1 < self.len() {
                for (b, bd) in self.branches.iter().enumerate() {
                    e.push((Key::TopH1(b, d + 1), Key::TopH1(b, d), bd.d_h1[d].clone()));
                }
            }
        }
        assemble(self.modulus(), &self.top_slots(s), &self.top_slots(s + 1), e)
    }

    fn bottom_diff(&self, s: i64) -> ModuleMap {
        let mut e = Vec::new();
        for (b, bd) in self.branches.iter().enumerate() {
            if let Some(d) = self.deg(s) {
                if d + 1 < self.len() {
                    e.push((Key::Fixed(b, d + 1), Key::Fixed(b, d), bd.d_fixed[d].clone()));
                }
                e.push((Key::TameCocycles(b, d), Key::Fixed(b, d), bd.delta[d].clone()));
            }
            if let Some(d) = self.deg(s - 1) {
                if d + 1 < self.len() {
                    e.push((Key::TameCocycles(b, d + 1), Key::TameCocycles(b, d), bd.d_z1[d].neg()));
                }
                e.push((Key::BottomH1(b, d), Key::TameCocycles(b, d), bd.h1[d].class_map().clone()));
            }
            if let Some(d) = self.deg(s - 2) {
                if d + 1 < self.len() {
                    e.push((Key::BottomH1(b, d + 1), Key::BottomH1(b, d), bd.d_h1[d].clone()));
                }
            }
        }
        assemble(self.modulus(), &self.bottom_slots(s), &self.bottom_slots(s + 1), e)
    }

    fn psi(&self, s: i64) -> ModuleMap {
        let mut e = Vec::new();
        for (b, bd) in self.branches.iter().enumerate() {
            let p = self.data.branches[b].point;
            if let Some(d) = self.deg(s) {
                e.push((Key::Fixed(b, d), Key::Fiber(p, d), bd.glue[d].neg()));
                e.push((Key::Fixed(b, d), Key::Generic(d), bd.avg[d].clone()));
            }
            if let Some(d) = self.deg(s - 1) {
                e.push((Key::TameCocycles(b, d), Key::Cocycles(d), bd.res[d].clone()));
            }
            if let Some(d) = self.deg(s - 2) {
                e.push((Key::BottomH1(b, d), Key::TopH1(b, d), ModuleMap::identity(bd.h1[d].module())));
            }
        }
        assemble(self.modulus(), &self.top_slots(s), &self.bottom_slots(s), e)
    }

    /// Degrees `0 .. t + 2` of the top and bottom complexes.
    fn top_range(&self) -> Range<i64> {
        0..self.len() as i64 + 2
    }

    fn build(&self, slots: impl Fn(i64) -> Slots, diff: impl Fn(i64) -> ModuleMap) -> Result<CochainComplex, RGammaError> {
        let r = self.top_range();
        let terms: Vec<FpModule> = r.clone().map(|s| sum_module(self.modulus(), &slots(s))).collect();
        let diffs: Vec<ModuleMap> = (r.start..r.end - 1).map(diff).collect();
        Ok(CochainComplex::new(self.modulus(), r.start, terms, diffs)?)
    }

    pub fn top(&self) -> Result<CochainComplex, RGammaError> {
        self.build(|s| self.top_slots(s), |s| self.top_diff(s))
    }

    pub fn bottom(&self) -> Result<CochainComplex, RGammaError> {
        self.build(|s| self.bottom_slots(s), |s| self.bottom_diff(s))
    }

    pub fn pieces(&self, slots: &Slots, part_of: impl Fn(&Key) -> Part) -> Vec<Piece> {
        slots
            .iter()
            .map(|(k, md)| Piece { part: part_of(k), summand: self.summand(k), rank: md.dim() })
            .collect()
    }

    fn summand(&self, k: &Key) -> Summand {
        let bl = |b: usize| self.data.branches[b].label.clone();
        match *k {
            Key::Fiber(p, degree) => Summand::Fiber { point: self.data.points[p].label.clone(), degree },
            Key::Generic(degree) => Summand::Generic { degree },
            Key::Cocycles(degree) => Summand::Cocycles { degree },
            Key::TopH1(b, degree) | Key::BottomH1(b, degree) => Summand::InertiaH1 { branch: bl(b), degree },
            Key::Fixed(b, degree) => Summand::WildInvariants { branch: bl(b), degree },
            Key::TameCocycles(b, degree) => Summand::TameCocycles { branch: bl(b), degree },
        }
    }

    pub fn result(&self) -> Result<RGammaResult, RGammaError> {
        let top = self.top()?;
        let bottom = self.bottom()?;
        let maps: Vec<ModuleMap> = self.top_range().map(|s| self.psi(s)).collect();
        let psi = ComplexMorphism::new(&top, &bottom, 0, maps)?;
        let complex = shift(&cone(&psi), -1);
        debug_assert_eq!(complex.lowest(), 0);
        let provenance = complex
            .degrees()
            .map(|s| {
                let is_top = |k: &Key| matches!(k, Key::Fiber(..) | Key::Generic(_) | Key::Cocycles(_) | Key::TopH1(..));
                self.pieces(&self.result_slots(s), |k| if is_top(k) { Part::Top } else { Part::Bottom })
            })
            .collect();
        Ok(RGammaResult {
            cohomology: cohomology(&complex),
            complex,
            provenance,
            h1_triviality_attested: self.data.h1_triviality,
            top,
            bottom,
            psi,
            action: Vec::new(),
        })
    }
}

/// `RΓ(X, F)` as `cone(Ψ)[-1]` for the morphism `Ψ` from the top complex
/// (fibres, `RΓ(G, M)` truncated, and the inertia `H^1` terms) to the
/// bottom complex (the local terms at every branch).
pub fn rgamma<D: SheafInput + ?Sized>(data: &D) -> Result<RGammaResult, RGammaError> {
    rgamma_with(data, &RGammaOptions::default())
}

pub fn rgamma_with<D: SheafInput + ?Sized>(data: &D, opts: &RGammaOptions) -> Result<RGammaResult, RGammaError> {
    Assembly::new(data, opts)?.result()
}

/// `RΓ(U, L)`: the total complex of `M^• -> Z^1(G, M^•)`.
pub fn rgamma_open<D: SheafInput + ?Sized>(data: &D) -> Result<OpenResult, RGammaError> {
    let report = data.validation();
    if !report.is_valid() {
        return Err(RGammaError::Invalid(report));
    }
    let data = data.complex_data();
    let m = data.modulus;
    let generic = generic_data(&data);
    let row0 = CochainComplex::new(
        m,
        0,
        data.generic.iter().map(|g| g.module().clone()).collect(),
        data.generic_diffs.clone(),
    )?;
    let row1 = CochainComplex::new(m, 0, generic.z1.iter().map(|z| z.module().clone()).collect(), generic.d_z1.clone())?;
    let complex = total_two_rows(&row0, &row1, &generic.delta)?;
    let t = data.len();
    let provenance = complex
        .degrees()
        .map(|s| {
            let mut v = Vec::new();
            if s >= 0 && (s as usize) < t {
                let degree = s as usize;
                v.push(Piece { part: Part::Top, summand: Summand::Generic { degree }, rank: data.generic[degree].module().dim() });
            }
            if s >= 1 && (s as usize) <= t {
                let degree = s as usize - 1;
                v.push(Piece { part: Part::Top, summand: Summand::Cocycles { degree }, rank: generic.z1[degree].module().dim() });
            }
            v
        })
        .collect();
    Ok(OpenResult { cohomology: cohomology(&complex), complex, provenance, h1_triviality_attested: data.h1_triviality })
}

/// `RΓ_Z(X, j_* L)`: the inertia `H^1` terms, `⊕ H^1(I/P, (M^s)^P)` in
/// degree `s + 2`, computed through the cyclic tame quotient.
pub fn rgamma_support<D: SheafInput + ?Sized>(data: &D) -> Result<CochainComplex, RGammaError> {
    let report = data.validation();
    if !report.is_valid() {
        return Err(RGammaError::Invalid(report));
    }
    let data = data.complex_data();
    let m = data.modulus;
    if data.branches.is_empty() {
        return Ok(CochainComplex::zero(m));
    }
    let t = data.len();
    // per degree, per branch
    let mut local = Vec::with_capacity(t);
    for gm in &data.generic {
        let mut row = Vec::new();
        for b in &data.branches {
            let (r, embed) = gm.restrict_to(&b.inertia);
            let r = std::sync::Arc::new(r);
            let members: Vec<usize> = b.wild.members().iter().filter_map(|&x| embed.iter().position(|&y| y == x)).collect();
            let wild = fingroup::Subgroup::from_members(r.group(), &members).map_err(gcohom::CohomError::from)?;
            let td = TameData::new(&r, &wild)?;
            let ih = inertia_h1(td.tame())?;
            row.push((td, ih));
        }
        local.push(row);
    }
    let terms: Vec<FpModule> = local
        .iter()
        .map(|row| {
            let parts: Vec<&FpModule> = row.iter().map(|(_, ih)| ih.module()).collect();
            FpModule::direct_sum(m, &parts)
        })
        .collect();
    let mut diffs = Vec::new();
    for (s, d) in data.generic_diffs.iter().enumerate() {
        let mut blocks = Vec::new();
        for (b, _) in data.branches.iter().enumerate() {
            let (td0, ih0) = &local[s][b];
            let (td1, ih1) = &local[s + 1][b];
            let f = td1.fixed().factor(&d.compose(td0.fixed().inclusion()))?;
            // [m] -> [f m] on M^P / (σ - 1)
            let cols: Vec<Vec<u64>> = (0..ih0.module().dim())
                .map(|j| {
                    let mut e = vec![0u64; ih0.module().dim()];
                    e[j] = 1;
                    let rep = ih0.representative(&e);
                    let lift = rep.value(ih0.sigma());
                    ih1.projection().apply(&f.apply(lift))
                })
                .collect();
            blocks.push(ModuleMap::from_std(
                ih0.module(),
                ih1.module(),
                zlinalg::ModMat::from_columns(m, ih1.module().dim(), &cols),
            )?);
        }
        let srcs: Vec<&FpModule> = local[s].iter().map(|(_, ih)| ih.module()).collect();
        let tgts: Vec<&FpModule> = local[s + 1].iter().map(|(_, ih)| ih.module()).collect();
        let grid: Vec<Vec<Option<&ModuleMap>>> = (0..blocks.len())
            .map(|i| (0..blocks.len()).map(|j| (i == j).then(|| &blocks[i])).collect())
            .collect();
        diffs.push(zlinalg::block_map(m, &srcs, &tgts, &grid));
    }
    Ok(CochainComplex::new(m, 2, terms, diffs)?)
}
