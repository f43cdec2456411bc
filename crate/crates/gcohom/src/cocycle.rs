use std::sync::Arc;

use zlinalg::{cokernel, howell_form, kernel, kernel_rows, FpModule, ModMat, ModuleMap, Subquotient};

use crate::error::CohomError;
use crate::gmodule::GModule;

/// A crossed homomorphism `f(gh) = f(g) + g f(h)`, stored as its full
/// value table indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedHom {
    gm: Arc<GModule>,
    values: Vec<Vec<u64>>,
}

impl CrossedHom {
    /// Validate a value table.
    pub fn new(gm: &Arc<GModule>, values: Vec<Vec<u64>>) -> Result<Self, CohomError> {
        let g = gm.group();
        let md = gm.module();
        if values.len() != g.order() || values.iter().any(|v| v.len() != md.dim()) {
            return Err(CohomError::Mismatch("value table has the wrong shape".into()));
        }
        let values: Vec<Vec<u64>> = values.iter().map(|v| md.reduce(v)).collect();
        if !md.is_zero_elem(&values[0]) {
            return Err(CohomError::NotCocycle("f(e) is not zero".into()));
        }
        for x in g.elements() {
            for (i, &s) in g.gens().iter().enumerate() {
                let lhs = &values[g.mul_gen(x, i)];
                let rhs = md.add_elems(&values[x], &gm.act(x, &values[s]));
                if *lhs != rhs {
                    return Err(CohomError::NotCocycle(format!(
                        "f({} {}) != f({}) + {} f({})",
                        g.label(x),
                        g.gen_names()[i],
                        g.label(x),
                        g.label(x),
                        g.gen_names()[i]
                    )));
                }
            }
        }
        Ok(CrossedHom { gm: gm.clone(), values })
    }

    /// The unique crossed homomorphism with the given generator values, if
    /// one exists.
    pub fn from_generator_values(gm: &Arc<GModule>, gen_values: &[Vec<u64>]) -> Result<Self, CohomError> {
        let g = gm.group();
        if gen_values.len() != g.gens().len() {
            return Err(CohomError::Mismatch("one value per generator is required".into()));
        }
        let values = extend_along_tree(gm, gen_values);
        for (i, &s) in g.gens().iter().enumerate() {
            if values[s] != gm.module().reduce(&gen_values[i]) {
                return Err(CohomError::NotCocycle(format!("generator {} gets two values", g.gen_names()[i])));
            }
        }
        Self::new(gm, values)
    }

    /// `g -> g m - m`.
    pub fn principal(gm: &Arc<GModule>, m: &[u64]) -> Self {
        let md = gm.module();
        let values = gm.group().elements().map(|x| md.sub_elems(&gm.act(x, m), m)).collect();
        CrossedHom { gm: gm.clone(), values }
    }

    pub fn zero(gm: &Arc<GModule>) -> Self {
        let z = gm.module().zero_elem();
        CrossedHom { gm: gm.clone(), values: vec![z; gm.group().order()] }
    }

    pub fn gmodule(&self) -> &Arc<GModule> {
        &self.gm
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &[u64] {
        &self.values[x]
    }

    /// Values on the generators of the group.
    pub fn generator_values(&self) -> Vec<Vec<u64>> {
        self.gm.group().gens().iter().map(|&s| self.values[s].clone()).collect()
    }

    pub fn add(&self, other: &CrossedHom) -> CrossedHom {
        let md = self.gm.module();
        let values = self.values.iter().zip(&other.values).map(|(a, b)| md.add_elems(a, b)).collect();
        CrossedHom { gm: self.gm.clone(), values }
    }

    pub fn sub(&self, other: &CrossedHom) -> CrossedHom {
        let md = self.gm.module();
        let values = self.values.iter().zip(&other.values).map(|(a, b)| md.sub_elems(a, b)).collect();
        CrossedHom { gm: self.gm.clone(), values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.gm.module().is_zero_elem(v))
    }

    /// Build without validation; callers guarantee the cocycle identity.
    pub(crate) fn from_parts(gm: Arc<GModule>, values: Vec<Vec<u64>>) -> Self {
        CrossedHom { gm, values }
    }
}

/// `f(e) = 0`, `f(p s) = f(p) + p v_s` along the spanning tree.
fn extend_along_tree(gm: &GModule, gen_values: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let g = gm.group();
    let md = gm.module();
    let mut values = Vec::with_capacity(g.order());
    values.push(md.zero_elem());
    for x in 1..g.order() {
        let (p, i) = g.tree_parent(x).expect("non-identity");
        let v = md.add_elems(&values[p], &gm.act(p, &gen_values[i]));
        values.push(v);
    }
    values
}

/// The module of crossed homomorphisms, realised inside the space of
/// generator values `M^S`.
#[derive(Debug, Clone)]
pub struct Z1 {
    gm: Arc<GModule>,
    sq: Subquotient,
}

/// Relations `d_j e_j` of each generator slot of `M^S`.
fn slot_relations(md: &FpModule, slots: usize) -> ModMat {
    let k = md.dim();
    let mut r = ModMat::zeros(md.modulus(), k * slots, k * slots);
    for s in 0..slots {
        for (j, &d) in md.factors().iter().enumerate() {
            r.set(s * k + j, s * k + j, d);
        }
    }
    r
}

/// Crossed homomorphisms `G -> M`.
///
/// Unknowns are the values on the generators. The value at every element is
/// a linear function of them along the BFS tree; every non-tree edge
/// `x -> x s` contributes the constraint `L(x s) = L(x) + A_x E_s`.
pub fn crossed_homs(gm: &Arc<GModule>) -> Z1 {
    let g = gm.group();
    let md = gm.module();
    let m = md.modulus();
    let n = m.n();
    let k = md.dim();
    let r = g.gens().len();
    let big = k * r;
    let f = md.factors();
    // L_x as k x big matrices
    let mut lin: Vec<ModMat> = Vec::with_capacity(g.order());
    lin.push(ModMat::zeros(m, k, big));
    for x in 1..g.order() {
        let (p, i) = g.tree_parent(x).expect("non-identity");
        let mut l = lin[p].clone();
        let a = gm.matrix(p);
        for row in 0..k {
            for col in 0..k {
                let v = m.add(l.get(row, i * k + col), a.get(row, col));
                l.set(row, i * k + col, v);
            }
        }
        lin.push(l);
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut acc = ModMat::zeros(m, 0, big);
    for x in g.elements() {
        let a = gm.matrix(x);
        for (i, _) in g.gens().iter().enumerate() {
            let y = g.mul_gen(x, i);
            if g.tree_parent(y) == Some((x, i)) {
                continue;
            }
            for row in 0..k {
                let scale = n / f[row];
                let mut v = vec![0u64; big];
                for c in 0..big {
                    v[c] = m.sub(lin[y].get(row, c), lin[x].get(row, c));
                }
                for col in 0..k {
                    v[i * k + col] = m.sub(v[i * k + col], a.get(row, col));
                }
                if scale != 1 {
                    for e in v.iter_mut() {
                        *e = m.mul(*e, scale);
                    }
                }
                if v.iter().any(|&e| e != 0) {
                    rows.push(v);
                }
            }
        }
        // keep the constraint system small
        if rows.len() > 4 * big + 16 {
            acc = howell_form(&acc.vstack(&ModMat::from_rows(m, big, &rows)));
            rows.clear();
        }
    }
    let cons = acc.vstack(&ModMat::from_rows(m, big, &rows));
    let ker = kernel_rows(&howell_form(&cons));
    let rel = slot_relations(md, r);
    let sq = Subquotient::new(m, big, &ker.vstack(&rel), &rel).expect("slot relations solve the system");
    Z1 { gm: gm.clone(), sq }
}

impl Z1 {
    pub fn gmodule(&self) -> &Arc<GModule> {
        &self.gm
    }

    pub fn module(&self) -> &FpModule {
        self.sq.module()
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }

    /// Generator values of the crossed homomorphism with standard
    /// coordinates `x`.
    pub fn generator_values(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let v = self.sq.lift(x);
        let md = self.gm.module();
        let k = md.dim();
        (0..self.gm.group().gens().len()).map(|i| md.reduce(&v[i * k..(i + 1) * k])).collect()
    }

    pub fn decode(&self, x: &[u64]) -> CrossedHom {
        let gv = self.generator_values(x);
        let values = extend_along_tree(&self.gm, &gv);
        CrossedHom::from_parts(self.gm.clone(), values)
    }

    pub fn encode(&self, f: &CrossedHom) -> Vec<u64> {
        let flat: Vec<u64> = f.generator_values().concat();
        self.sq.coords(&flat).expect("a crossed homomorphism lies in Z1")
    }

    /// `m -> (g -> g m - m)` as a module map `M -> Z1`.
    pub fn principal_map(&self) -> ModuleMap {
        let md = self.gm.module();
        let g = self.gm.group();
        let k = md.dim();
        let cols: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                let mut e = vec![0u64; k];
                e[j] = 1;
                let flat: Vec<u64> = g.gens().iter().flat_map(|&s| md.sub_elems(&self.gm.act(s, &e), &e)).collect();
                self.sq.coords(&flat).expect("principal crossed homomorphism")
            })
            .collect();
        ModuleMap::from_std(md, self.module(), ModMat::from_columns(md.modulus(), self.module().dim(), &cols))
            .expect("principal map is well defined")
    }

    /// The module map `source -> self` induced by a linear operation on
    /// crossed homomorphisms, evaluated on a basis.
    pub fn map_from(&self, source: &Z1, op: impl Fn(&CrossedHom) -> CrossedHom) -> ModuleMap {
        let d = source.module().dim();
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|j| {
                let mut e = vec![0u64; d];
                e[j] = 1;
                self.encode(&op(&source.decode(&e)))
            })
            .collect();
        ModuleMap::from_std(source.module(), self.module(), ModMat::from_columns(self.module().modulus(), self.module().dim(), &cols))
            .expect("induced map is well defined")
    }

    /// The module map `Z1(G, M) -> Z1(G, N)` induced by an equivariant
    /// `f: M -> N`; `self` is the target.
    pub fn induced_by(&self, source: &Z1, f: &ModuleMap) -> ModuleMap {
        let gm = self.gm.clone();
        self.map_from(source, |c| {
            let values = c.values().iter().map(|v| f.apply(v)).collect();
            CrossedHom::from_parts(gm.clone(), values)
        })
    }
}

/// Reference computation from the full system `f(gh) = f(g) + g f(h)` over
/// all pairs, inside `M^G` (one slot per element). Returns the subquotient of
/// all crossed homomorphisms.
pub fn crossed_homs_all_pairs(gm: &GModule) -> Subquotient {
    let g = gm.group();
    let md = gm.module();
    let m = md.modulus();
    let n = m.n();
    let k = md.dim();
    let big = k * g.order();
    let f = md.factors();
    let mut rows = Vec::new();
    for row in 0..k {
        let mut v = vec![0u64; big];
        v[row] = n / f[row] % n;
        rows.push(v);
    }
    for a in g.elements() {
        let act = gm.matrix(a);
        for b in g.elements() {
            let ab = g.mul(a, b);
            for row in 0..k {
                let scale = n / f[row];
                let mut v = vec![0u64; big];
                v[ab * k + row] = m.add(v[ab * k + row], 1);
                v[a * k + row] = m.sub(v[a * k + row], 1);
                for col in 0..k {
                    v[b * k + col] = m.sub(v[b * k + col], act.get(row, col));
                }
                for e in v.iter_mut() {
                    *e = m.mul(*e, scale);
                }
                rows.push(v);
            }
        }
    }
    let ker = kernel_rows(&howell_form(&ModMat::from_rows(m, big, &rows)));
    let rel = slot_relations(md, g.order());
    Subquotient::new(m, big, &ker.vstack(&rel), &rel).expect("slot relations solve the system")
}

/// `H^1(G, M) = Z1 / B1` with explicit representatives.
#[derive(Debug, Clone)]
pub struct H1 {
    z1: Z1,
    sq: Subquotient,
    class: ModuleMap,
}

pub fn h1(gm: &Arc<GModule>) -> H1 {
    h1_from_z1(crossed_homs(gm))
}

pub fn h1_from_z1(z1: Z1) -> H1 {
    let gm = z1.gm.clone();
    let md = gm.module();
    let g = gm.group();
    let m = md.modulus();
    let k = md.dim();
    let r = g.gens().len();
    let mut img: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut e = vec![0u64; k];
            e[j] = 1;
            g.gens().iter().flat_map(|&s| md.sub_elems(&gm.act(s, &e), &e)).collect()
        })
        .collect();
    img.extend(slot_relations(md, r).row_vecs());
    let img = ModMat::from_rows(m, k * r, &img);
    let sq = Subquotient::new(m, k * r, z1.sq.kernel_howell(), &img).expect("coboundaries are cocycles");
    let d = z1.module().dim();
    let cols: Vec<Vec<u64>> = (0..d)
        .map(|j| {
            let mut e = vec![0u64; d];
            e[j] = 1;
            sq.coords(&z1.sq.lift(&e)).expect("cocycle")
        })
        .collect();
    let class = ModuleMap::from_std(z1.module(), sq.module(), ModMat::from_columns(m, sq.module().dim(), &cols))
        .expect("class map is well defined");
    H1 { z1, sq, class }
}

impl H1 {
    pub fn module(&self) -> &FpModule {
        self.sq.module()
    }

    pub fn z1(&self) -> &Z1 {
        &self.z1
    }

    /// The projection `Z1 -> H1`.
    pub fn class_map(&self) -> &ModuleMap {
        &self.class
    }

    pub fn class_of(&self, f: &CrossedHom) -> Vec<u64> {
        let flat: Vec<u64> = f.generator_values().concat();
        self.sq.coords(&flat).expect("a crossed homomorphism lies in Z1")
    }

    /// A crossed homomorphism representing the class with coordinates `x`.
    pub fn representative(&self, x: &[u64]) -> CrossedHom {
        let flat = self.sq.lift(x);
        let z = self.z1.sq.coords(&flat).expect("representative lies in Z1");
        self.z1.decode(&z)
    }
}

/// `M^G` with its inclusion, presented in standard form.
pub fn invariants(gm: &GModule) -> (FpModule, ModuleMap) {
    let (sq, incl) = invariants_subquotient(gm);
    (sq.module().clone(), incl)
}

/// `M^G` as the kernel of `m -> (g m - m)_g` over generators.
pub fn invariants_subquotient(gm: &GModule) -> (Subquotient, ModuleMap) {
    kernel(&difference_map(gm))
}

/// `M_G = M / <g m - m>` with its projection.
pub fn coinvariants(gm: &GModule) -> (FpModule, ModuleMap) {
    let d = difference_map(gm);
    let md = gm.module();
    let r = gm.group().gens().len();
    // transpose the stacked map: M^r -> M, (m_s) -> sum (s - 1) m_s
    let m = md.modulus();
    let k = md.dim();
    let mut mat = ModMat::zeros(m, k, k * r);
    for s in 0..r {
        mat.set_block(0, s * k, &d.std().block(s * k, (s + 1) * k, 0, k));
    }
    let src = FpModule::direct_sum(m, &vec![md; r]);
    let f = ModuleMap::from_std(&src, md, mat).expect("well defined");
    let (sq, proj) = cokernel(&f);
    (sq.module().clone(), proj)
}

/// `m -> ((s - 1) m)_s` into `M^r`.
fn difference_map(gm: &GModule) -> ModuleMap {
    let md = gm.module();
    let m = md.modulus();
    let k = md.dim();
    let gens = gm.group().gens();
    let id = ModMat::identity(m, k);
    let mut mat = ModMat::zeros(m, k * gens.len(), k);
    for (i, &s) in gens.iter().enumerate() {
        mat.set_block(i * k, 0, &gm.matrix(s).sub(&id));
    }
    let tgt = FpModule::direct_sum(m, &vec![md; gens.len()]);
    ModuleMap::from_std(md, &tgt, mat).expect("well defined")
}
