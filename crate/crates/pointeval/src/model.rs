use std::collections::HashMap;

use crate::error::PointEvalError;
use crate::expr::Expr;
use crate::field::{FieldElem, SmallField};

/// An affine variety given by named coordinates and polynomial (or
/// rational) equations, each read as `expression = 0`.
#[derive(Debug, Clone)]
pub struct CurveModel {
    field: SmallField,
    names: Vec<String>,
    equations: Vec<(String, Expr)>,
}

/// Coordinates of a point, in the order of the model's names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    coords: Vec<FieldElem>,
}

impl AffinePoint {
    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }
}

impl CurveModel {
    pub fn new<S: AsRef<str>>(field: SmallField, names: &[S], equations: &[S]) -> Result<Self, PointEvalError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n == field.generator_name() {
                return Err(PointEvalError::Model(format!("coordinate {n:?} clashes with the field generator")));
            }
            if names[..i].contains(n) {
                return Err(PointEvalError::Model(format!("coordinate {n:?} is declared twice")));
            }
            if Expr::parse(n).ok() != Some(Expr::Name(n.clone())) {
                return Err(PointEvalError::Model(format!("{n:?} is not a valid coordinate name")));
            }
        }
        let mut model = CurveModel { field, names, equations: Vec::new() };
        for text in equations {
            let e = Expr::parse_equation(text.as_ref())?;
            model.check_names(&e)?;
            model.equations.push((text.as_ref().to_string(), e));
        }
        Ok(model)
    }

    pub fn field(&self) -> &SmallField {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_names(&self, e: &Expr) -> Result<(), PointEvalError> {
        for n in e.names() {
            if n != self.field.generator_name() && self.index_of(n).is_none() {
                return Err(PointEvalError::UnknownName(n.to_string()));
            }
        }
        Ok(())
    }

    /// Value of `e` at the given coordinates.
    pub fn eval_at(&self, e: &Expr, coords: &[FieldElem]) -> Result<FieldElem, PointEvalError> {
        e.eval(&self.field, &|n| self.index_of(n).map(|i| coords[i].clone()))
    }

    /// The first equation that fails at `coords`, if any. An equation
    /// whose evaluation divides by zero counts as failing.
    pub fn violated_equation(&self, coords: &[FieldElem]) -> Option<&str> {
        self.equations
            .iter()
            .find(|(_, e)| !matches!(self.eval_at(e, coords), Ok(v) if self.field.is_zero(&v)))
            .map(|(t, _)| t.as_str())
    }

    /// A point of the model, checked against every equation.
    pub fn point(&self, coords: Vec<FieldElem>) -> Result<AffinePoint, PointEvalError> {
        if coords.len() != self.dim() {
            return Err(PointEvalError::Model(format!("expected {} coordinates, got {}", self.dim(), coords.len())));
        }
        if let Some(eq) = self.violated_equation(&coords) {
            return Err(PointEvalError::NotOnModel { point: self.format_coords(&coords), equation: eq.to_string() });
        }
        Ok(AffinePoint { coords })
    }

    /// Parse each coordinate as a constant expression in the field
    /// generator, then check the point against the model.
    pub fn parse_point<S: AsRef<str>>(&self, coords: &[S]) -> Result<AffinePoint, PointEvalError> {
        let values = self.parse_coords(coords)?;
        self.point(values)
    }

    /// Coordinates parsed as constants, without the model check.
    pub fn parse_coords<S: AsRef<str>>(&self, coords: &[S]) -> Result<Vec<FieldElem>, PointEvalError> {
        coords.iter().map(|c| Expr::parse(c.as_ref())?.constant(&self.field)).collect()
    }

    pub fn format_coords(&self, coords: &[FieldElem]) -> String {
        let parts: Vec<String> = coords.iter().map(|c| self.field.format(c)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn format_point(&self, p: &AffinePoint) -> String {
        self.format_coords(&p.coords)
    }
}

/// A coordinate automorphism `(c_1, …, c_k) -> (e_1, …, e_k)` of a model,
/// evaluated pointwise and never composed symbolically.
#[derive(Debug, Clone)]
pub struct CoordAutomorphism {
    name: String,
    images: Vec<Expr>,
}

impl CoordAutomorphism {
    /// `images` lists `(coordinate, expression)` pairs. Coordinates that
    /// are not listed are fixed.
    pub fn new<S: AsRef<str>>(model: &CurveModel, name: &str, images: &[(S, S)]) -> Result<Self, PointEvalError> {
        let mut exprs: Vec<Option<Expr>> = vec![None; model.dim()];
        for (coord, text) in images {
            let i = model.index_of(coord.as_ref()).ok_or_else(|| PointEvalError::UnknownName(coord.as_ref().into()))?;
            if exprs[i].is_some() {
                return Err(PointEvalError::Model(format!("{name}: coordinate {:?} is given twice", coord.as_ref())));
            }
            let e = Expr::parse(text.as_ref())?;
            model.check_names(&e)?;
            exprs[i] = Some(e);
        }
        let images = exprs.into_iter().enumerate().map(|(i, e)| e.unwrap_or_else(|| Expr::Name(model.names[i].clone()))).collect();
        Ok(CoordAutomorphism { name: name.to_string(), images })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Image of a point. The image is checked against the model, so a
    /// formula that leaves the variety is reported rather than followed.
    pub fn apply(&self, model: &CurveModel, p: &AffinePoint) -> Result<AffinePoint, PointEvalError> {
        let coords = self
            .images
            .iter()
            .map(|e| {
                model.eval_at(e, &p.coords).map_err(|err| match err {
                    PointEvalError::DivisionByZero(what) => {
                        PointEvalError::DivisionByZero(format!("{what} in {} at {}", self.name, model.format_point(p)))
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        model.point(coords).map_err(|err| match err {
            PointEvalError::NotOnModel { point, equation } => PointEvalError::NotOnModel {
                point: format!("{point}, the image of {} under {}", model.format_point(p), self.name),
                equation,
            },
            other => other,
        })
    }
}

/// Distinct points of a model, indexed for lookup. Whether the set
/// separates automorphisms is the caller's claim.
#[derive(Debug, Clone, Default)]
pub struct PointSet {
    points: Vec<AffinePoint>,
    index: HashMap<AffinePoint, usize>,
}

impl PointSet {
    pub fn new(model: &CurveModel, points: Vec<AffinePoint>) -> Result<Self, PointEvalError> {
        let mut set = PointSet::default();
        for p in points {
            if set.index.contains_key(&p) {
                return Err(PointEvalError::DuplicatePoint(model.format_point(&p)));
            }
            set.push(p);
        }
        Ok(set)
    }

    fn push(&mut self, p: AffinePoint) {
        self.index.insert(p.clone(), self.points.len());
        self.points.push(p);
    }

    /// Union of the orbits of `seeds` under the group generated by `gens`,
    /// seeds first and then in order of discovery. Seeds may repeat.
    pub fn orbit_closure(
        model: &CurveModel,
        gens: &[CoordAutomorphism],
        seeds: &[AffinePoint],
        max_points: usize,
    ) -> Result<Self, PointEvalError> {
        let mut set = PointSet::default();
        for s in seeds {
            if !set.index.contains_key(s) {
                set.push(s.clone());
            }
        }
        let mut head = 0;
        while head < set.points.len() {
            for g in gens {
                let q = g.apply(model, &set.points[head])?;
                if !set.index.contains_key(&q) {
                    if set.points.len() >= max_points {
                        return Err(PointEvalError::Model(format!("orbit closure exceeds {max_points} points")));
                    }
                    set.push(q);
                }
            }
            head += 1;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn position(&self, p: &AffinePoint) -> Option<usize> {
        self.index.get(p).copied()
    }
}
