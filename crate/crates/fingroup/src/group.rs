use std::collections::HashMap;
use std::fmt;

use crate::error::GroupError;

pub const DEFAULT_ORDER_BOUND: usize = 100_000;
/// Above this order the full multiplication table is not stored and
/// products are computed by walking generator words.
const TABLE_LIMIT: usize = 4096;
/// Up to this order group axioms are verified exhaustively.
const FULL_CHECK_LIMIT: usize = 512;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    gens: Vec<usize>,
    gen_names: Vec<String>,
    /// `right[x * ngens + i] = x * gens[i]`
    right: Vec<u32>,
    /// BFS tree: for `x != 0`, `x = parent * gens[gen]`.
    tree: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={}, gens={:?})", self.order, self.gen_names)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.gens == other.gens && self.right == other.right
    }
}
impl Eq for FiniteGroup {}

/// A group realised by permutations, with the permutation of every element.
#[derive(Debug, Clone)]
pub struct PermRealization {
    pub perms: Vec<Vec<u32>>,
}

impl PermRealization {
    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, |p| p.len())
    }

    /// Element whose permutation is `p`, if any.
    pub fn find(&self, p: &[u32]) -> Option<usize> {
        self.perms.iter().position(|q| q.as_slice() == p)
    }
}

fn default_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("g{}", i + 1)).collect()
}

/// Close a set of permutations of `{0..d-1}` under composition.
pub fn closure<S: AsRef<str>>(
    perms: &[Vec<usize>],
    names: &[S],
    bound: usize,
) -> Result<(FiniteGroup, PermRealization), GroupError> {
    let d = perms.first().map_or(0, |p| p.len());
    for (k, p) in perms.iter().enumerate() {
        if p.len() != d {
            return Err(GroupError::NotPermutation(format!("generator {k} has degree {} instead of {d}", p.len())));
        }
        let mut seen = vec![false; d];
        for &x in p {
            if x >= d || seen[x] {
                return Err(GroupError::NotPermutation(format!("generator {k} is not a bijection")));
            }
            seen[x] = true;
        }
    }
    let names: Vec<String> =
        if names.is_empty() { default_names(perms.len()) } else { names.iter().map(|s| s.as_ref().to_string()).collect() };
    if names.len() != perms.len() {
        return Err(GroupError::NotPermutation("one name per generator is required".into()));
    }
    let gp: Vec<Vec<u32>> = perms.iter().map(|p| p.iter().map(|&x| x as u32).collect()).collect();
    let ident: Vec<u32> = (0..d as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elems = vec![ident.clone()];
    index.insert(ident, 0);
    let mut tree = vec![(0u32, 0u32)];
    let k = gp.len();
    let mut right: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elems.len() {
        for (gi, s) in gp.iter().enumerate() {
            let x = &elems[head];
            let y: Vec<u32> = s.iter().map(|&i| x[i as usize]).collect();
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elems.len();
                    if id >= bound {
                        return Err(GroupError::OrderBoundExceeded(bound));
                    }
                    index.insert(y.clone(), id);
                    elems.push(y);
                    tree.push((head as u32, gi as u32));
                    id
                }
            };
            right.push(id as u32);
        }
        head += 1;
    }
    let order = elems.len();
    let gens: Vec<usize> = (0..k).map(|i| right[i] as usize).collect();
    let table = if order <= TABLE_LIMIT {
        let mut t = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let p: Vec<u32> = elems[y].iter().map(|&i| elems[x][i as usize]).collect();
                t[x * order + y] = index[&p] as u32;
            }
        }
        Some(t)
    } else {
        None
    };
    let mut inv = vec![0u32; order];
    for (x, p) in elems.iter().enumerate() {
        let mut q = vec![0u32; d];
        for (i, &v) in p.iter().enumerate() {
            q[v as usize] = i as u32;
        }
        inv[x] = index[&q] as u32;
    }
    let g = FiniteGroup { order, gens, gen_names: names, right, tree, table, inv };
    Ok((g, PermRealization { perms: elems }))
}

impl FiniteGroup {
    /// The trivial group with no generators.
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            gens: vec![],
            gen_names: vec![],
            right: vec![],
            tree: vec![(0, 0)],
            table: Some(vec![0]),
            inv: vec![0],
        }
    }

    /// Cyclic group of order `m` generated by `name`.
    pub fn cyclic(m: usize, name: &str) -> Self {
        let p: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        closure(&[p], &[name], DEFAULT_ORDER_BOUND).expect("cyclic group").0
    }

    /// Build from a multiplication table over arbitrary labels
    /// `0..N-1` and generator labels. Returns the group and the map from
    /// input labels to canonical ids.
    pub fn from_table<S: AsRef<str>>(
        table: &[Vec<usize>],
        gens: &[usize],
        names: &[S],
    ) -> Result<(Self, Vec<usize>), GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::NotAGroup(format!("row {i} is not a permutation of the elements")));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in table {
                if seen[row[j]] {
                    return Err(GroupError::NotAGroup(format!("column {j} repeats an element")));
                }
                seen[row[j]] = true;
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let check = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= FULL_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(GroupError::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic sample
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..200_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
                if !check(a, b, c) {
                    return Err(GroupError::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        for &g in gens {
            if g >= n {
                return Err(GroupError::BadElement(g));
            }
        }
        let names: Vec<String> =
            if names.is_empty() { default_names(gens.len()) } else { names.iter().map(|s| s.as_ref().to_string()).collect() };
        // BFS relabelling
        let mut new_of = vec![usize::MAX; n];
        let mut old_of = vec![e];
        new_of[e] = 0;
        let mut tree = vec![(0u32, 0u32)];
        let mut right = Vec::new();
        let mut head = 0;
        while head < old_of.len() {
            for (gi, &s) in gens.iter().enumerate() {
                let y = table[old_of[head]][s];
                if new_of[y] == usize::MAX {
                    new_of[y] = old_of.len();
                    old_of.push(y);
                    tree.push((head as u32, gi as u32));
                }
                right.push(new_of[y] as u32);
            }
            head += 1;
        }
        if old_of.len() != n {
            return Err(GroupError::NotGenerating { reached: old_of.len(), order: n });
        }
        let mut t = vec![0u32; n * n];
        let mut inv = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                let z = new_of[table[old_of[x]][old_of[y]]];
                t[x * n + y] = z as u32;
                if z == 0 {
                    inv[x] = y as u32;
                }
            }
        }
        let gens_new: Vec<usize> = gens.iter().map(|&s| new_of[s]).collect();
        let g = FiniteGroup { order: n, gens: gens_new, gen_names: names, right, tree, table: Some(t), inv };
        Ok((g, new_of))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `x * gens[i]`
    #[inline]
    pub fn mul_gen(&self, x: usize, i: usize) -> usize {
        self.right[x * self.gens.len() + i] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => {
                let mut z = x;
                for i in self.word_indices(y) {
                    z = self.mul_gen(z, i);
                }
                z
            }
        }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// BFS parent and generator index of a non-identity element.
    pub fn tree_parent(&self, x: usize) -> Option<(usize, usize)> {
        if x == 0 {
            None
        } else {
            let (p, g) = self.tree[x];
            Some((p as usize, g as usize))
        }
    }

    /// Generator indices `i_1 .. i_k` with `x = gens[i_1] ... gens[i_k]`.
    pub fn word_indices(&self, x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut y = x;
        while y != 0 {
            let (p, g) = self.tree[y];
            w.push(g as usize);
            y = p as usize;
        }
        w.reverse();
        w
    }

    /// Human readable word for an element.
    pub fn label(&self, x: usize) -> String {
        if x == 0 {
            return "e".into();
        }
        self.word_indices(x).iter().map(|&i| self.gen_names[i].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generating element if the group is cyclic (smallest such id).
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order).find(|&x| self.element_order(x) == self.order)
    }

    /// Full multiplication table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| (0..self.order).map(|y| self.mul(x, y)).collect()).collect()
    }

    /// Verify associativity, identity and inverses (exhaustive up to order
    /// 512, sampled above).
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::NotAGroup(format!("identity fails at {x}")));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(GroupError::NotAGroup(format!("inverse fails at {x}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut s: u64 = 0x2545_f491_4f6c_dd1d;
            for _ in 0..100_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }
}
