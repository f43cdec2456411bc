use std::sync::Arc;

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::hom::GroupHom;

/// A subgroup, as a sorted list of member ids of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

/// Smallest subgroup containing `ids`.
pub fn subgroup_generated(g: &Arc<FiniteGroup>, ids: &[usize]) -> Result<Subgroup, GroupError> {
    for &x in ids {
        if x >= g.order() {
            return Err(GroupError::BadElement(x));
        }
    }
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut list = vec![0usize];
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        for &s in ids {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                list.push(y);
            }
        }
        head += 1;
    }
    list.sort_unstable();
    Ok(Subgroup { parent: g.clone(), members: list })
}

impl Subgroup {
    /// Wrap an explicit member list, verifying closure.
    pub fn from_members(g: &Arc<FiniteGroup>, members: &[usize]) -> Result<Self, GroupError> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let mut inside = vec![false; g.order()];
        for &x in &m {
            if x >= g.order() {
                return Err(GroupError::BadElement(x));
            }
            inside[x] = true;
        }
        if !inside[0] {
            return Err(GroupError::NotAGroup("subset does not contain the identity".into()));
        }
        for &a in &m {
            for &b in &m {
                if !inside[g.mul(a, b)] {
                    return Err(GroupError::NotAGroup("subset is not closed under the group law".into()));
                }
            }
        }
        Ok(Subgroup { parent: g.clone(), members: m })
    }

    pub fn trivial(g: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: g.clone(), members: vec![0] }
    }

    pub fn whole(g: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: g.clone(), members: (0..g.order()).collect() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.gens().iter().all(|&s| self.members.iter().all(|&h| self.contains(g.conj(s, h))))
    }

    /// Whether `self` is normal inside the larger subgroup `ambient`.
    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        let g = &self.parent;
        self.is_subgroup_of(ambient) && ambient.members.iter().all(|&a| self.members.iter().all(|&h| self.contains(g.conj(a, h))))
    }

    /// `x H x^-1`
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let mut m: Vec<usize> = self.members.iter().map(|&h| g.conj(x, h)).collect();
        m.sort_unstable();
        Subgroup { parent: g.clone(), members: m }
    }

    /// A small generating set: members added greedily in id order.
    pub fn generators(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut gens = Vec::new();
        let mut cur = Subgroup::trivial(g);
        for &x in &self.members {
            if !cur.contains(x) {
                gens.push(x);
                cur = subgroup_generated(g, &gens).expect("valid ids");
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// The subgroup as a group in its own right, with canonical ids, and the
    /// embedding (new id -> parent id).
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let g = &self.parent;
        let gens = self.generators();
        let pos = |x: usize| self.members.binary_search(&x).expect("member");
        let table: Vec<Vec<usize>> =
            self.members.iter().map(|&a| self.members.iter().map(|&b| pos(g.mul(a, b))).collect()).collect();
        let local_gens: Vec<usize> = gens.iter().map(|&x| pos(x)).collect();
        let names: Vec<String> = gens.iter().map(|&x| g.label(x)).collect();
        let (h, new_of) = FiniteGroup::from_table(&table, &local_gens, &names).expect("subgroup table is a group");
        let mut embed = vec![0usize; self.order()];
        for (old, &new) in new_of.iter().enumerate() {
            embed[new] = self.members[old];
        }
        (h, embed)
    }

    /// Left coset id of every parent element (cosets numbered by first
    /// appearance in id order) and a representative of each coset.
    pub fn cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let g = &self.parent;
        let mut cid = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if cid[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &self.members {
                cid[g.mul(x, h)] = c;
            }
        }
        (cid, reps)
    }
}

/// `g / normal` with its projection. The quotient's generators are the
/// images of the generators of `g`, under the same names.
pub fn quotient(g: &Arc<FiniteGroup>, normal: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
    if !normal.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let (cid, reps) = normal.cosets();
    let k = reps.len();
    let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| cid[g.mul(reps[a], reps[b])]).collect()).collect();
    let gens: Vec<usize> = g.gens().iter().map(|&s| cid[s]).collect();
    let (q, new_of) = FiniteGroup::from_table(&table, &gens, g.gen_names())?;
    let q = Arc::new(q);
    let images: Vec<usize> = (0..g.order()).map(|x| new_of[cid[x]]).collect();
    let hom = GroupHom::from_images(g, &q, images)?;
    Ok((q, hom))
}

/// Normal closure of a set of elements.
fn normal_closure(g: &Arc<FiniteGroup>, seeds: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = seeds.to_vec();
    loop {
        let h = subgroup_generated(g, &gens).expect("valid ids");
        let mut grew = false;
        for &s in g.gens() {
            for &x in h.members() {
                let y = g.conj(s, x);
                if !h.contains(y) {
                    gens.push(y);
                    grew = true;
                }
            }
        }
        if !grew {
            return h;
        }
    }
}

/// `G / S` where `S` is generated by all `n`-th powers and commutators: the
/// largest abelian quotient of exponent dividing `n`.
pub fn n_torsor_quotient(g: &Arc<FiniteGroup>, n: u64) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
    let mut seeds: Vec<usize> = (0..g.order()).map(|x| g.pow(x, n)).collect();
    for &a in g.gens() {
        for &b in g.gens() {
            seeds.push(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    let s = normal_closure(g, &seeds);
    quotient(g, &s)
}
