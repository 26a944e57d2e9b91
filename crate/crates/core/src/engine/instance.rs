use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{mapping_cylinder, SimplicialMap, SimplicialPair, SimplicialSet, Subcomplex};
use crate::tower::{Tower, TowerMap};

/// A pair `(X, A)` over `β: X -> B` together with a tower over `B`.
///
/// A non-injective `ι: A -> X` is replaced by the inclusion of `A` into the mapping cylinder;
/// maps given on the original `X` are pulled back along the cylinder projection.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pair: SimplicialPair,
    beta: SimplicialMap,
    tower: Tower,
    projection: Option<SimplicialMap>,
}

impl ProblemInstance {
    pub fn new(pair: SimplicialPair, beta: SimplicialMap, tower: Tower) -> Result<Self> {
        if !pair.sub.is_face_closed(&pair.total) {
            return Err(Error::InvalidInput("the subset A is not closed under faces".into()));
        }
        if **beta.source() != *pair.total {
            return Err(Error::InvalidMap("β does not start at X".into()));
        }
        if **beta.target() != **tower.base() {
            return Err(Error::InvalidMap("β does not land in the tower base".into()));
        }
        Ok(ProblemInstance { pair, beta, tower, projection: None })
    }

    /// `(X, A)` over a one-point base.
    pub fn over_point(pair: SimplicialPair, tower: Tower) -> Result<Self> {
        let beta = SimplicialMap::to_point(pair.total.clone(), tower.base().clone())
            .map_err(|_| Error::InvalidTower(format!("{} is not a tower over a point", tower.name())))?;
        Self::new(pair, beta, tower)
    }

    /// The instance for `ι: A -> X`, using the mapping cylinder when `ι` is not injective.
    pub fn from_inclusion(iota: &SimplicialMap, beta: SimplicialMap, tower: Tower) -> Result<Self> {
        iota.validate()?;
        if iota.is_injective() {
            let pair = SimplicialPair::new(iota.target().clone(), Subcomplex::image_of(iota))?;
            return Self::new(pair, beta, tower);
        }
        let cyl = mapping_cylinder(iota);
        let pair = SimplicialPair::new(cyl.set.clone(), Subcomplex::image_of(&cyl.inclusion))?;
        let beta = cyl.projection.compose(&beta);
        let mut inst = Self::new(pair, beta, tower)?;
        inst.projection = Some(cyl.projection);
        Ok(inst)
    }

    pub fn pair(&self) -> &SimplicialPair {
        &self.pair
    }

    pub fn space(&self) -> &Arc<SimplicialSet> {
        &self.pair.total
    }

    pub fn beta(&self) -> &SimplicialMap {
        &self.beta
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// `dim X` (0 for an empty set).
    pub fn dim(&self) -> usize {
        self.pair.total.dim().unwrap_or(0)
    }

    /// Transports a map given on the original `X` to the (possibly replaced) space.
    pub fn adapt(&self, f: &TowerMap) -> TowerMap {
        match &self.projection {
            Some(p) if **f.source() != *self.pair.total => f.pullback(p),
            _ => f.clone(),
        }
    }

    /// `φ ∘ f` for a map `f: X -> Y` into the comparison target of the tower.
    pub fn compose_phi(&self, f: &SimplicialMap) -> Result<TowerMap> {
        let f = match &self.projection {
            Some(p) if **f.source() != *self.pair.total => p.compose(f),
            _ => f.clone(),
        };
        self.tower.compose_phi(&f)
    }

    /// Checks that `f` is a map `X -> P_n` over `β`.
    pub fn check_map(&self, f: &TowerMap) -> Result<()> {
        if **f.source() != *self.pair.total {
            return Err(Error::InvalidMap("map is not defined on X".into()));
        }
        for id in self.pair.total.all_simplices() {
            if f.base_map().get(id) != self.beta.get(id) {
                return Err(Error::InvalidMap(format!("map does not lie over β at {}", self.pair.total.label(id))));
            }
        }
        self.tower.check_map(f)
    }

    /// The same pair with a different tower over the same base.
    pub fn with_tower(&self, tower: Tower) -> Result<Self> {
        let mut inst = Self::new(self.pair.clone(), self.beta.clone(), tower)?;
        inst.projection = self.projection.clone();
        Ok(inst)
    }
}
