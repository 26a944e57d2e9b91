//! JSON documents for simplicial sets, maps and pairs.
//!
//! A set document lists each dimension as an array of simplices; a simplex carries its label and,
//! above dimension 0, its faces `d_0 .. d_m` as `[word, base]` pairs, where `word` is a list of
//! degeneracy indices and `base` the label of a nondegenerate simplex:
//!
//! ```json
//! {"name": "S2", "dims": [[{"id": "*"}], [], [{"id": "e", "faces": [[[0], "*"], [[0], "*"], [[0], "*"]]}]]}
//! ```
//!
//! Words need not be canonical on input (`[0, 1]` is read as `s_0 s_1` applied innermost-first);
//! the parser canonicalizes them and then checks the simplicial identities.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DegenerateSimplex, Op, SimplexId, SimplicialMap, SimplicialPair, SimplicialSet, Subcomplex};
use crate::error::{Error, Result};

/// `(degeneracy word, base label)`.
pub type SimplexRef = (Vec<usize>, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<SimplexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDoc {
    pub name: String,
    pub dims: Vec<Vec<SimplexDoc>>,
}

/// A simplicial map as an assignment table from source labels to target simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub table: Vec<(String, SimplexRef)>,
}

/// A pair `(X, A)` with `A` given by labels; faces of listed simplices are added automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub set: SetDoc,
    #[serde(default)]
    pub sub: Vec<String>,
}

/// Resolves a reference against a label table, canonicalizing the degeneracy word.
pub fn resolve(set: &SimplicialSet, r: &SimplexRef) -> Result<DegenerateSimplex> {
    let base = set
        .find(&r.1)
        .ok_or_else(|| Error::Parse(format!("unknown simplex `{}` in `{}`", r.1, set.name())))?;
    canonical_word(set, base, &r.0)
}

fn canonical_word(set: &SimplicialSet, base: SimplexId, word: &[usize]) -> Result<DegenerateSimplex> {
    // the word reads left to right as an operator composite, so the last index acts first
    let ops: Vec<Op> = word.iter().rev().map(|&j| Op::Degeneracy(j)).collect();
    set.canonicalize(&DegenerateSimplex::nondegenerate(base), &ops)
}

pub fn reference(set: &SimplicialSet, s: &DegenerateSimplex) -> SimplexRef {
    (s.word().to_vec(), set.label(s.base()).to_string())
}

pub fn set_to_doc(set: &SimplicialSet) -> SetDoc {
    let top = set.dim().map_or(0, |d| d + 1);
    SetDoc {
        name: set.name().to_string(),
        dims: (0..top)
            .map(|d| {
                set.simplices(d)
                    .map(|id| SimplexDoc {
                        id: set.label(id).to_string(),
                        faces: if d == 0 {
                            Vec::new()
                        } else {
                            set.faces_of(id).iter().map(|f| reference(set, f)).collect()
                        },
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn set_from_doc(doc: &SetDoc) -> Result<SimplicialSet> {
    let mut builder = SimplicialSet::builder(doc.name.clone());
    // a partial set is rebuilt after each dimension so that faces can be canonicalized
    let mut partial = SimplicialSet::empty(doc.name.clone());
    for (d, simplices) in doc.dims.iter().enumerate() {
        for s in simplices {
            if d == 0 && !s.faces.is_empty() {
                return Err(Error::Parse(format!("vertex `{}` lists faces", s.id)));
            }
            if d > 0 && s.faces.len() != d + 1 {
                return Err(Error::Parse(format!(
                    "`{}` in dimension {d} lists {} faces",
                    s.id,
                    s.faces.len()
                )));
            }
            let mut faces = Vec::with_capacity(s.faces.len());
            for r in &s.faces {
                let base = partial.find(&r.1).ok_or_else(|| {
                    Error::Parse(format!("face `{}` of `{}` is not a lower-dimensional simplex", r.1, s.id))
                })?;
                faces.push(canonical_word(&partial, base, &r.0)?);
            }
            builder
                .add(s.id.clone(), faces)
                .map_err(|e| Error::Parse(format!("{e}")))?;
        }
        partial = builder.snapshot();
    }
    builder.build()
}

pub fn map_to_doc(map: &SimplicialMap) -> MapDoc {
    MapDoc {
        source: map.source().name().to_string(),
        target: map.target().name().to_string(),
        table: map
            .source()
            .all_simplices()
            .map(|id| (map.source().label(id).to_string(), reference(map.target(), map.get(id))))
            .collect(),
    }
}

pub fn map_from_doc(
    doc: &MapDoc,
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let entries: HashMap<&str, &SimplexRef> = doc.table.iter().map(|(k, v)| (k.as_str(), v)).collect();
    if entries.len() != doc.table.len() {
        return Err(Error::Parse("map table lists a simplex twice".into()));
    }
    let mut table = Vec::new();
    let top = source.dim().map_or(0, |d| d + 1);
    for d in 0..top {
        let mut row = Vec::new();
        for id in source.simplices(d) {
            let label = source.label(id);
            let r = entries
                .get(label)
                .ok_or_else(|| Error::Parse(format!("map table has no entry for `{label}`")))?;
            row.push(resolve(&target, r)?);
        }
        table.push(row);
    }
    if doc.table.len() != source.total_count() {
        return Err(Error::Parse("map table lists simplices outside the source".into()));
    }
    SimplicialMap::new(source, target, table)
}

pub fn pair_to_doc(pair: &SimplicialPair) -> PairDoc {
    PairDoc {
        set: set_to_doc(&pair.total),
        sub: pair.sub.iter().map(|id| pair.total.label(id).to_string()).collect(),
    }
}

pub fn pair_from_doc(doc: &PairDoc) -> Result<SimplicialPair> {
    let total = Arc::new(set_from_doc(&doc.set)?);
    let mut ids = Vec::new();
    for label in &doc.sub {
        ids.push(
            total
                .find(label)
                .ok_or_else(|| Error::Parse(format!("subset names unknown simplex `{label}`")))?,
        );
    }
    let sub = Subcomplex::generated_by(&total, ids);
    Ok(SimplicialPair { total, sub })
}

pub fn set_to_json(set: &SimplicialSet) -> String {
    serde_json::to_string_pretty(&set_to_doc(set)).expect("documents serialize")
}

pub fn set_from_json(text: &str) -> Result<SimplicialSet> {
    set_from_doc(&serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle, product, sphere, standard_simplex, torus};

    #[test]
    fn round_trip_sets() {
        let sets = vec![
            sphere(2),
            torus(),
            standard_simplex(3),
            product(Arc::new(circle()), Arc::new(standard_simplex(1))).set().as_ref().clone(),
        ];
        for set in sets {
            let text = set_to_json(&set);
            let back = set_from_json(&text).unwrap();
            assert_eq!(back, set);
            assert_eq!(set_to_json(&back), text);
        }
    }

    #[test]
    fn canonicalizes_words() {
        // s0 s1 (innermost s1) on a vertex is not a valid word; on an edge it equals s2 s0
        let text = r#"{"name": "X", "dims": [[{"id": "v"}, {"id": "w"}], [{"id": "e", "faces": [[[], "w"], [[], "v"]]}]]}"#;
        let set = set_from_json(text).unwrap();
        let e = set.find("e").unwrap();
        let s = canonical_word(&set, e, &[0, 1]).unwrap();
        assert_eq!(s.word(), &[2, 0]);
        assert!(canonical_word(&set, e, &[5]).is_err());
    }

    #[test]
    fn rejects_inconsistent_tables() {
        // d0 d1 and d0 d0 of the triangle disagree
        let text = r#"{"name": "X", "dims": [[{"id": "a"}, {"id": "b"}],
            [{"id": "e", "faces": [[[], "b"], [[], "a"]]}],
            [{"id": "t", "faces": [[[], "e"], [[], "e"], [[], "e"]]}]]}"#;
        assert!(set_from_json(text).is_err());
        let bad_face = r#"{"name": "X", "dims": [[{"id": "a"}], [{"id": "e", "faces": [[[], "q"], [[], "a"]]}]]}"#;
        assert!(matches!(set_from_json(bad_face), Err(Error::Parse(_))));
    }

    #[test]
    fn maps_and_pairs_round_trip() {
        let t = Arc::new(torus());
        let pair = SimplicialPair::pointed(t.clone(), t.find("*").unwrap());
        let doc = pair_to_doc(&pair);
        let back = pair_from_doc(&doc).unwrap();
        assert_eq!(back.sub, pair.sub);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::to_string(&pair_to_doc(&back)).unwrap(), text);

        let pt = Arc::new(crate::simplicial::point());
        let c = SimplicialMap::to_point(t.clone(), pt.clone()).unwrap();
        let doc = map_to_doc(&c);
        let back = map_from_doc(&doc, t.clone(), pt).unwrap();
        assert_eq!(map_to_doc(&back), doc);
    }
}
