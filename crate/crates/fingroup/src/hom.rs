use std::sync::Arc;

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// A group homomorphism, stored as the image of every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extend images of the source generators along the BFS tree and verify
    /// multiplicativity.
    pub fn from_generator_images(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        gen_images: &[usize],
    ) -> Result<Self, GroupError> {
        if gen_images.len() != source.gens().len() {
            return Err(GroupError::NotHomomorphism("one image per generator is required".into()));
        }
        let mut images = vec![0usize; source.order()];
        for x in 1..source.order() {
            let (p, gi) = source.tree_parent(x).expect("non-identity");
            images[x] = target.mul(images[p], gen_images[gi]);
        }
        for (i, &s) in source.gens().iter().enumerate() {
            if images[s] != gen_images[i] {
                return Err(GroupError::NotHomomorphism(format!(
                    "generator {} is assigned two different images",
                    source.gen_names()[i]
                )));
            }
        }
        Self::from_images(source, target, images)
    }

    pub fn from_images(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::NotHomomorphism("image list has the wrong length".into()));
        }
        if images[0] != 0 {
            return Err(GroupError::NotHomomorphism("identity does not map to identity".into()));
        }
        for &y in &images {
            if y >= target.order() {
                return Err(GroupError::BadElement(y));
            }
        }
        for x in 0..source.order() {
            for (i, &s) in source.gens().iter().enumerate() {
                if images[source.mul_gen(x, i)] != target.mul(images[x], images[s]) {
                    return Err(GroupError::NotHomomorphism(format!(
                        "f({} * {}) != f({}) f({})",
                        source.label(x),
                        source.gen_names()[i],
                        source.label(x),
                        source.gen_names()[i]
                    )));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), images: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image_of(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        for &y in &self.images {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0usize; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupHom { source: self.target.clone(), target: self.source.clone(), images: inv })
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        let images = first.images.iter().map(|&y| self.images[y]).collect();
        GroupHom { source: first.source.clone(), target: self.target.clone(), images }
    }

    /// Image of a subgroup of the source, as a subgroup of the target.
    pub fn map_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut m: Vec<usize> = h.members().iter().map(|&x| self.images[x]).collect();
        m.sort_unstable();
        m.dedup();
        Subgroup::from_members(&self.target, &m).expect("image of a subgroup is a subgroup")
    }
}
