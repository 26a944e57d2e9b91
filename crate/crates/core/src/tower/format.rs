//! JSON documents for towers and tower maps.
//!
//! A cochain is listed as `[label, values]` pairs for its nonzero simplices; stage `n` of a
//! tower uses degree-`n` cochains. Tower document:
//!
//! ```json
//! {
//!   "name": "S2-stage3",
//!   "base": null,
//!   "stages": [
//!     {"pi": [], "k": "zero"},
//!     {"pi": [0], "k": "zero"},
//!     {"pi": [0], "k": "(cup (coord 2) (coord 2))"}
//!   ],
//!   "complete": false,
//!   "section": null,
//!   "phi": {"target": {...}, "coords": [[], [["e", [1]]], []]}
//! }
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Tower, TowerMap};
use crate::abelian::{Cochain, FgAbelian};
use crate::em::KExpr;
use crate::error::{Error, Result};
use crate::simplicial::format::{map_from_doc, map_to_doc, set_from_doc, set_to_doc, MapDoc, SetDoc};
use crate::simplicial::{point, SimplexId, SimplicialMap, SimplicialSet};

pub type CochainDoc = Vec<(String, Vec<i64>)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageDoc {
    pub pi: FgAbelian,
    pub k: KExpr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiDoc {
    pub target: SetDoc,
    pub coords: Vec<CochainDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerDoc {
    pub name: String,
    /// `None` for a one-point base.
    #[serde(default)]
    pub base: Option<SetDoc>,
    pub stages: Vec<StageDoc>,
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub section: Option<Vec<CochainDoc>>,
    #[serde(default)]
    pub phi: Option<PhiDoc>,
}

/// A map `Z -> P_n`; the base map may be omitted when the base is a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerMapDoc {
    #[serde(default)]
    pub base_map: Option<MapDoc>,
    pub coords: Vec<CochainDoc>,
}

pub fn cochain_to_doc(set: &SimplicialSet, c: &Cochain) -> CochainDoc {
    (0..c.len())
        .filter(|&i| c.get(i).iter().any(|&x| x != 0))
        .map(|i| (set.label(SimplexId::new(c.degree(), i)).to_string(), c.get(i).to_vec()))
        .collect()
}

pub fn cochain_from_doc(set: &SimplicialSet, degree: usize, pi: &FgAbelian, doc: &CochainDoc) -> Result<Cochain> {
    let mut c = Cochain::zero(set, degree, pi);
    for (label, values) in doc {
        let id = set
            .find(label)
            .filter(|id| id.dim == degree)
            .ok_or_else(|| Error::Parse(format!("`{label}` is not a {degree}-simplex of {}", set.name())))?;
        if values.len() != pi.rank() {
            return Err(Error::Parse(format!("value for `{label}` has {} entries, expected {}", values.len(), pi.rank())));
        }
        let mut v = values.clone();
        pi.reduce(&mut v);
        c.set(id.index, &v);
    }
    Ok(c)
}

fn coords_from_doc(set: &SimplicialSet, groups: &[FgAbelian], docs: &[CochainDoc]) -> Result<Vec<Cochain>> {
    if docs.len() > groups.len() {
        return Err(Error::MissingStage { required: docs.len(), available: groups.len() });
    }
    docs.iter().enumerate().map(|(i, d)| cochain_from_doc(set, i + 1, &groups[i], d)).collect()
}

impl Tower {
    pub fn from_doc(doc: &TowerDoc) -> Result<Tower> {
        let base = Arc::new(match &doc.base {
            Some(b) => set_from_doc(b)?,
            None => point(),
        });
        let stages = doc.stages.iter().map(|s| (s.pi.clone(), s.k.clone())).collect();
        let mut tower = Tower::new(doc.name.clone(), base.clone(), stages, doc.complete)?;
        let groups = tower.groups();
        if let Some(section) = &doc.section {
            let coords = coords_from_doc(&base, &groups, section)?;
            tower = tower.with_section(coords)?;
        }
        if let Some(phi) = &doc.phi {
            let target = Arc::new(set_from_doc(&phi.target)?);
            let coords = coords_from_doc(&target, &groups, &phi.coords)?;
            tower = tower.with_phi(target, coords)?;
        }
        Ok(tower)
    }

    pub fn to_doc(&self) -> TowerDoc {
        let trivial_base = self.base.total_count() == 1;
        let zero_section = self.section.iter().all(Cochain::is_zero);
        TowerDoc {
            name: self.name.clone(),
            base: (!trivial_base).then(|| set_to_doc(&self.base)),
            stages: self.stages.iter().map(|s| StageDoc { pi: s.pi.clone(), k: s.k.expr().clone() }).collect(),
            complete: self.complete,
            section: (!zero_section).then(|| self.section.iter().map(|c| cochain_to_doc(&self.base, c)).collect()),
            phi: self.phi.as_ref().map(|p| PhiDoc {
                target: set_to_doc(&p.target),
                coords: p.map.coords().iter().map(|c| cochain_to_doc(&p.target, c)).collect(),
            }),
        }
    }

    pub fn from_json(text: &str) -> Result<Tower> {
        Tower::from_doc(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialize")
    }

    /// Reads a map `Z -> P_n` and validates the pullback equations.
    pub fn map_from_doc(&self, source: &Arc<SimplicialSet>, doc: &TowerMapDoc) -> Result<TowerMap> {
        let base_map = match &doc.base_map {
            Some(m) => map_from_doc(m, source.clone(), self.base.clone())?,
            None => SimplicialMap::to_point(source.clone(), self.base.clone())
                .map_err(|_| Error::InvalidMap("a base map is required for a base with more than one simplex".into()))?,
        };
        let coords = coords_from_doc(source, &self.groups(), &doc.coords)?;
        let map = TowerMap::new(base_map, coords);
        self.check_map(&map)?;
        Ok(map)
    }

    pub fn map_to_doc(&self, map: &TowerMap) -> TowerMapDoc {
        let base_map = (self.base.total_count() != 1).then(|| map_to_doc(map.base_map()));
        TowerMapDoc {
            base_map,
            coords: map.coords().iter().map(|c| cochain_to_doc(map.source(), c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;
    use crate::simplicial::sphere;

    #[test]
    fn tower_round_trip() {
        for name in ["K(Z,2)", "S2-stage3", "K(Z/2,3)xK(Z,2)"] {
            let t = catalog(name).unwrap();
            let json = t.to_json();
            let back = Tower::from_json(&json).unwrap();
            assert_eq!(back.to_doc(), t.to_doc());
        }
    }

    #[test]
    fn map_round_trip_and_validation() {
        let t = catalog("S2-stage3").unwrap();
        let s2 = Arc::new(sphere(2));
        let doc = TowerMapDoc { base_map: None, coords: vec![vec![], vec![("e".into(), vec![5])]] };
        let m = t.map_from_doc(&s2, &doc).unwrap();
        assert_eq!(t.map_to_doc(&m), doc);
        let bad = TowerMapDoc { base_map: None, coords: vec![vec![], vec![("*".into(), vec![1])]] };
        assert!(t.map_from_doc(&s2, &bad).is_err());
        let too_many = TowerMapDoc { base_map: None, coords: vec![vec![]; 4] };
        assert!(t.map_from_doc(&s2, &too_many).is_err());
    }

    #[test]
    fn file_groups_shape_coordinates() {
        let text = r#"{"name": "mixed", "stages": [{"pi": [2, 0], "k": "zero"}], "complete": true}"#;
        let t = Tower::from_json(text).unwrap();
        assert_eq!(t.pi(1).orders(), &[2, 0]);
        let s1 = Arc::new(crate::simplicial::circle());
        let zero = t.zero_map(&SimplicialMap::to_point(s1.clone(), t.base().clone()).unwrap(), 1);
        assert_eq!(zero.coord(1).width(), 2);
        let bad = r#"{"name": "bad", "stages": [{"pi": [0], "k": "(coord 1)"}]}"#;
        assert!(Tower::from_json(bad).is_err());
    }
}
