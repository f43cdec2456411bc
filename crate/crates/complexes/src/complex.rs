use zlinalg::{kernel_rows, FpModule, ModMat, ModuleMap, Modulus, Subquotient};

use crate::error::ComplexError;

/// Terms `C^lowest .. C^(lowest + len - 1)`; everything outside is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    modulus: Modulus,
    lowest: i64,
    terms: Vec<FpModule>,
    /// `diffs[i]: terms[i] -> terms[i + 1]`; one fewer than the terms.
    diffs: Vec<ModuleMap>,
}

impl CochainComplex {
    pub fn new(modulus: Modulus, lowest: i64, terms: Vec<FpModule>, diffs: Vec<ModuleMap>) -> Result<Self, ComplexError> {
        if terms.is_empty() {
            if !diffs.is_empty() {
                return Err(ComplexError::Shape("differentials without terms".into()));
            }
            return Ok(CochainComplex { modulus, lowest, terms, diffs });
        }
        if diffs.len() + 1 != terms.len() {
            return Err(ComplexError::Shape(format!("{} terms need {} differentials", terms.len(), terms.len() - 1)));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source().factors() != terms[i].factors() || d.target().factors() != terms[i + 1].factors() {
                return Err(ComplexError::Shape(format!("differential at degree {} has the wrong shape", lowest + i as i64)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].compose(&diffs[i - 1]).is_zero() {
                return Err(ComplexError::NotComplex(lowest + i as i64 - 1));
            }
        }
        Ok(CochainComplex { modulus, lowest, terms, diffs })
    }

    pub fn zero(modulus: Modulus) -> Self {
        CochainComplex { modulus, lowest: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// A single module placed in degree `deg`.
    pub fn concentrated(module: FpModule, deg: i64) -> Self {
        CochainComplex { modulus: module.modulus(), lowest: deg, terms: vec![module], diffs: Vec::new() }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// One past the highest stored degree.
    pub fn end(&self) -> i64 {
        self.lowest + self.terms.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lowest..self.end()
    }

    pub fn terms(&self) -> &[FpModule] {
        &self.terms
    }

    pub fn term(&self, deg: i64) -> FpModule {
        if deg >= self.lowest && deg < self.end() {
            self.terms[(deg - self.lowest) as usize].clone()
        } else {
            FpModule::zero(self.modulus)
        }
    }

    /// `d^deg: C^deg -> C^(deg+1)`.
    pub fn diff(&self, deg: i64) -> ModuleMap {
        if deg >= self.lowest && deg + 1 < self.end() {
            self.diffs[(deg - self.lowest) as usize].clone()
        } else {
            ModuleMap::zero(&self.term(deg), &self.term(deg + 1))
        }
    }

    /// Differential matrices in standard coordinates, keyed by source degree.
    pub fn differentials(&self) -> &[ModuleMap] {
        &self.diffs
    }

    /// Same terms on a (possibly) wider degree range.
    pub fn padded(&self, lo: i64, hi: i64) -> CochainComplex {
        let lo = lo.min(self.lowest);
        let hi = hi.max(self.end());
        let terms: Vec<FpModule> = (lo..hi).map(|d| self.term(d)).collect();
        let diffs: Vec<ModuleMap> = (lo..hi - 1).map(|d| self.diff(d)).collect();
        CochainComplex { modulus: self.modulus, lowest: lo, terms, diffs }
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|d| self.cohomology_at(d).module().is_zero())
    }

    /// `H^deg` as a subquotient of the lifted term.
    pub fn cohomology_at(&self, deg: i64) -> Cohomology {
        let t = self.term(deg);
        let m = self.modulus;
        let rels = t.lift_relations();
        let d = self.diff(deg);
        let cons = d.std().scale_rows_to_n(d.target().factors());
        let ker = kernel_rows(&cons).vstack(&rels);
        let prev = self.diff(deg - 1);
        let img = prev.std().transpose().vstack(&rels);
        let sq = Subquotient::new(m, t.dim(), &ker, &img).expect("d o d = 0");
        Cohomology { degree: deg, sq }
    }
}

/// `H^i` of a complex, with representatives.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: i64,
    sq: Subquotient,
}

impl Cohomology {
    pub fn module(&self) -> &FpModule {
        self.sq.module()
    }

    /// Canonical invariant factors.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.sq.module().invariant_factors()
    }

    /// A cocycle representing each standard generator (rows).
    pub fn representatives(&self) -> Vec<Vec<u64>> {
        self.sq.reps().row_vecs()
    }

    pub fn representative(&self, x: &[u64]) -> Vec<u64> {
        self.sq.lift(x)
    }

    /// Class of a cocycle, or `None` if the vector is not a cocycle.
    pub fn class_of(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.sq.coords(v).ok()
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }
}

/// A family of maps `f^i: C^i -> D^i` commuting with the differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMorphism {
    source: CochainComplex,
    target: CochainComplex,
    lowest: i64,
    maps: Vec<ModuleMap>,
}

impl ComplexMorphism {
    /// `maps[j]` is the component in degree `lowest + j`; degrees not listed
    /// are zero.
    pub fn new(
        source: &CochainComplex,
        target: &CochainComplex,
        lowest: i64,
        maps: Vec<ModuleMap>,
    ) -> Result<Self, ComplexError> {
        for (j, f) in maps.iter().enumerate() {
            let d = lowest + j as i64;
            if f.source().factors() != source.term(d).factors() || f.target().factors() != target.term(d).factors() {
                return Err(ComplexError::Shape(format!("component at degree {d} has the wrong shape")));
            }
        }
        let f = ComplexMorphism { source: source.clone(), target: target.clone(), lowest, maps };
        let lo = source.lowest().min(target.lowest()) - 1;
        let hi = source.end().max(target.end());
        for d in lo..hi {
            let lhs = target.diff(d).compose(&f.map(d));
            let rhs = f.map(d + 1).compose(&source.diff(d));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(d));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let maps = c.terms().iter().map(ModuleMap::identity).collect();
        ComplexMorphism { source: c.clone(), target: c.clone(), lowest: c.lowest(), maps }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        ComplexMorphism { source: source.clone(), target: target.clone(), lowest: 0, maps: Vec::new() }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn map(&self, deg: i64) -> ModuleMap {
        let j = deg - self.lowest;
        if j >= 0 && (j as usize) < self.maps.len() {
            self.maps[j as usize].clone()
        } else {
            ModuleMap::zero(&self.source.term(deg), &self.target.term(deg))
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ComplexMorphism) -> ComplexMorphism {
        let lo = first.source.lowest().min(self.target.lowest());
        let hi = first.source.end().max(self.target.end());
        let maps = (lo..hi).map(|d| self.map(d).compose(&first.map(d))).collect();
        ComplexMorphism { source: first.source.clone(), target: self.target.clone(), lowest: lo, maps }
    }

    pub fn sub(&self, other: &ComplexMorphism) -> ComplexMorphism {
        let lo = self.source.lowest().min(self.target.lowest());
        let hi = self.source.end().max(self.target.end());
        let maps = (lo..hi).map(|d| self.map(d).sub(&other.map(d))).collect();
        ComplexMorphism { source: self.source.clone(), target: self.target.clone(), lowest: lo, maps }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.source.degrees().all(|d| self.map(d) == ModuleMap::identity(&self.source.term(d)))
    }

    /// Standard-coordinate matrix of the component in degree `deg`.
    pub fn matrix(&self, deg: i64) -> ModMat {
        self.map(deg).std().clone()
    }
}
