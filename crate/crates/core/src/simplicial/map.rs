use std::sync::Arc;

use super::{DegenerateSimplex, SimplexId, SimplicialSet};
use crate::error::{Error, Result};

/// A simplicial map, stored as the images of the nondegenerate source simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    table: Vec<Vec<DegenerateSimplex>>,
}

impl SimplicialMap {
    /// Builds a map from its table and checks that it commutes with faces.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        table: Vec<Vec<DegenerateSimplex>>,
    ) -> Result<Self> {
        let map = Self::new_unchecked(source, target, table);
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut table: Vec<Vec<DegenerateSimplex>>,
    ) -> Self {
        while table.len() < source.dim().map_or(0, |d| d + 1) {
            table.push(Vec::new());
        }
        SimplicialMap { source, target, table }
    }

    /// Builds a map by evaluating `f` on each nondegenerate source simplex.
    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(SimplexId) -> DegenerateSimplex,
    ) -> Self {
        let top = source.dim().map_or(0, |d| d + 1);
        let table = (0..top).map(|d| source.simplices(d).map(&mut f).collect()).collect();
        SimplicialMap { source, target, table }
    }

    pub fn identity(set: Arc<SimplicialSet>) -> Self {
        Self::from_fn(set.clone(), set, DegenerateSimplex::nondegenerate)
    }

    /// The unique map to a one-vertex set with no higher simplices.
    pub fn to_point(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<Self> {
        if target.total_count() != 1 {
            return Err(Error::InvalidMap("target is not a point".into()));
        }
        let v = SimplexId::new(0, 0);
        let t = target.clone();
        Ok(Self::from_fn(source, target, |id| t.constant(v, id.dim)))
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn get(&self, id: SimplexId) -> &DegenerateSimplex {
        &self.table[id.dim][id.index]
    }

    /// Image of an arbitrary (possibly degenerate) source simplex.
    pub fn image(&self, s: &DegenerateSimplex) -> DegenerateSimplex {
        let img = self.get(s.base());
        if !s.is_degenerate() {
            return img.clone();
        }
        self.target.apply(img, &s.surjection())
    }

    pub fn compose(&self, after: &SimplicialMap) -> SimplicialMap {
        assert!(Arc::ptr_eq(&self.target, &after.source) || *self.target == *after.source);
        SimplicialMap::from_fn(self.source.clone(), after.target.clone(), |id| {
            after.image(self.get(id))
        })
    }

    /// Whether the map is injective on simplices (equivalently: nondegenerate simplices go to
    /// pairwise distinct nondegenerate simplices).
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.source.all_simplices().all(|id| {
            let img = self.get(id);
            !img.is_degenerate() && seen.insert(img.base())
        })
    }

    pub fn validate(&self) -> Result<()> {
        for id in self.source.all_simplices() {
            let img = self.get(id);
            if img.dim() != id.dim {
                return Err(Error::InvalidMap(format!(
                    "image of `{}` has dimension {}",
                    self.source.label(id),
                    img.dim()
                )));
            }
            if img.base().dim >= self.target.dim().map_or(0, |d| d + 1)
                || img.base().index >= self.target.count(img.base().dim)
            {
                return Err(Error::InvalidMap(format!(
                    "image of `{}` is not a simplex of the target",
                    self.source.label(id)
                )));
            }
            if id.dim == 0 {
                continue;
            }
            for i in 0..=id.dim {
                let lhs = self.image(self.source.nondegenerate_face(id, i));
                let rhs = self.target.face(img, i);
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!(
                        "map does not commute with d{i} on `{}`",
                        self.source.label(id)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A set of nondegenerate simplices closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(set: &SimplicialSet) -> Self {
        let top = set.dim().map_or(0, |d| d + 1);
        Subcomplex { members: (0..top).map(|d| vec![false; set.count(d)]).collect() }
    }

    pub fn full(set: &SimplicialSet) -> Self {
        let top = set.dim().map_or(0, |d| d + 1);
        Subcomplex { members: (0..top).map(|d| vec![true; set.count(d)]).collect() }
    }

    /// The smallest subcomplex containing the given simplices.
    pub fn generated_by(set: &SimplicialSet, ids: impl IntoIterator<Item = SimplexId>) -> Self {
        let mut sub = Self::empty(set);
        let mut stack: Vec<SimplexId> = ids.into_iter().collect();
        while let Some(id) = stack.pop() {
            if sub.members[id.dim][id.index] {
                continue;
            }
            sub.members[id.dim][id.index] = true;
            if id.dim > 0 {
                stack.extend(set.faces_of(id).iter().map(|f| f.base()));
            }
        }
        sub
    }

    /// Simplices satisfying a predicate; the caller guarantees face-closure.
    pub fn from_predicate(set: &SimplicialSet, mut pred: impl FnMut(SimplexId) -> bool) -> Self {
        let top = set.dim().map_or(0, |d| d + 1);
        Subcomplex {
            members: (0..top).map(|d| set.simplices(d).map(&mut pred).collect()).collect(),
        }
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.members.get(id.dim).is_some_and(|m| m[id.index])
    }

    /// Whether the (canonical) simplex lies in the subcomplex.
    pub fn contains_simplex(&self, s: &DegenerateSimplex) -> bool {
        self.contains(s.base())
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.members.iter().enumerate().flat_map(|(dim, m)| {
            m.iter().enumerate().filter(|(_, &b)| b).map(move |(index, _)| SimplexId { dim, index })
        })
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(|m| m.iter().filter(|&&b| b).count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, dim: usize) -> usize {
        self.members.get(dim).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }

    pub fn is_face_closed(&self, set: &SimplicialSet) -> bool {
        self.iter().all(|id| id.dim == 0 || set.faces_of(id).iter().all(|f| self.contains(f.base())))
    }

    /// The image of an injective map as a subcomplex of its target.
    pub fn image_of(map: &SimplicialMap) -> Self {
        Self::generated_by(
            map.target(),
            map.source().all_simplices().map(|id| map.get(id).base()),
        )
    }
}

/// A simplicial set together with a simplicial subset.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub total: Arc<SimplicialSet>,
    pub sub: Subcomplex,
}

impl SimplicialPair {
    pub fn new(total: Arc<SimplicialSet>, sub: Subcomplex) -> Result<Self> {
        if !sub.is_face_closed(&total) {
            return Err(Error::InvalidInput("subset is not closed under faces".into()));
        }
        Ok(SimplicialPair { total, sub })
    }

    pub fn absolute(total: Arc<SimplicialSet>) -> Self {
        let sub = Subcomplex::empty(&total);
        SimplicialPair { total, sub }
    }

    /// `(X, *)` with the given base vertex.
    pub fn pointed(total: Arc<SimplicialSet>, vertex: SimplexId) -> Self {
        let sub = Subcomplex::generated_by(&total, [vertex]);
        SimplicialPair { total, sub }
    }

    pub fn full(total: Arc<SimplicialSet>) -> Self {
        let sub = Subcomplex::full(&total);
        SimplicialPair { total, sub }
    }
}
