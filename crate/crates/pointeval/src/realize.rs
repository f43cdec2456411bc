use std::sync::Arc;

use fingroup::{closure, FiniteGroup, PermRealization, Subgroup};

use crate::error::PointEvalError;
use crate::model::{AffinePoint, CoordAutomorphism, CurveModel, PointSet};

/// A group of coordinate automorphisms, realized by its permutations of a
/// separating point set. Element ids are those of `group`; the product
/// `x·y` is the composite "apply `y`, then `x`".
#[derive(Debug, Clone)]
pub struct Realization {
    pub group: Arc<FiniteGroup>,
    pub perms: PermRealization,
    pub points: PointSet,
    /// Observations that do not stop the computation, such as two
    /// generators acting identically on the point set.
    pub warnings: Vec<String>,
}

impl Realization {
    /// Index of the image of point `i` under element `x`.
    pub fn act(&self, x: usize, i: usize) -> usize {
        self.perms.perms[x][i] as usize
    }

    /// Indices of the points whose listed coordinates take the given
    /// values: the preimages of a point downstairs.
    pub fn fibre(&self, fixed: &[(usize, crate::field::FieldElem)]) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| fixed.iter().all(|(c, v)| &self.points.points()[i].coords()[*c] == v))
            .collect()
    }
}

/// The group generated by `gens`, through their permutations of `points`.
pub fn realize_group(
    model: &CurveModel,
    gens: &[CoordAutomorphism],
    points: PointSet,
    order_bound: usize,
) -> Result<Realization, PointEvalError> {
    let mut perms = Vec::with_capacity(gens.len());
    for g in gens {
        let mut perm = Vec::with_capacity(points.len());
        let mut hit = vec![false; points.len()];
        for p in points.points() {
            let q = g.apply(model, p)?;
            let Some(j) = points.position(&q) else {
                return Err(PointEvalError::NotClosedOnPointSet {
                    automorphism: g.name().into(),
                    reason: format!("the image {} of {} is not in the set", model.format_point(&q), model.format_point(p)),
                });
            };
            if hit[j] {
                return Err(PointEvalError::NotClosedOnPointSet {
                    automorphism: g.name().into(),
                    reason: format!("two points map to {}", model.format_point(&q)),
                });
            }
            hit[j] = true;
            perm.push(j);
        }
        perms.push(perm);
    }
    let mut warnings = Vec::new();
    let identity: Vec<usize> = (0..points.len()).collect();
    for (i, p) in perms.iter().enumerate() {
        if *p == identity {
            warnings.push(format!("{} acts trivially on the point set", gens[i].name()));
        }
        for j in 0..i {
            if perms[j] == *p {
                warnings.push(format!("{} and {} act identically on the point set", gens[j].name(), gens[i].name()));
            }
        }
    }
    if gens.is_empty() {
        let real = PermRealization { perms: vec![identity.iter().map(|&i| i as u32).collect()] };
        return Ok(Realization { group: Arc::new(FiniteGroup::trivial()), perms: real, points, warnings });
    }
    let names: Vec<&str> = gens.iter().map(|g| g.name()).collect();
    let (group, real) = closure(&perms, &names, order_bound)?;
    Ok(Realization { group: Arc::new(group), perms: real, points, warnings })
}

/// The stabilizer of `point`, by evaluating every element on it.
pub fn inertia_group(real: &Realization, model: &CurveModel, point: &AffinePoint) -> Result<Subgroup, PointEvalError> {
    let i = real.points.position(point).ok_or_else(|| PointEvalError::PointNotInSet(model.format_point(point)))?;
    let members: Vec<usize> = real.group.elements().filter(|&x| real.act(x, i) == i).collect();
    Ok(Subgroup::from_members(&real.group, &members)?)
}
