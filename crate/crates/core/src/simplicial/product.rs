use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use super::{DegenerateSimplex, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};

/// The cartesian product `X × Y` together with the bookkeeping needed to move between pairs of
/// simplices and product simplices.
#[derive(Debug)]
pub struct Product {
    set: Arc<SimplicialSet>,
    left: Arc<SimplicialSet>,
    right: Arc<SimplicialSet>,
    components: Vec<Vec<(DegenerateSimplex, DegenerateSimplex)>>,
    lookup: HashMap<(DegenerateSimplex, DegenerateSimplex), SimplexId>,
}

/// Nondegenerate simplices of `X × Y` are pairs `(s_A x, s_B y)` with disjoint degeneracy sets;
/// in dimension `m` these are enumerated as shuffles.
pub fn product(left: Arc<SimplicialSet>, right: Arc<SimplicialSet>) -> Product {
    let name = format!("{}x{}", left.name(), right.name());
    let mut builder = SimplicialSet::builder(name);
    let mut components: Vec<Vec<(DegenerateSimplex, DegenerateSimplex)>> = Vec::new();
    let mut lookup = HashMap::new();
    let top = match (left.dim(), right.dim()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    if let Some(top) = top {
        for m in 0..=top {
            let mut comps = Vec::new();
            for p in 0..=m.min(left.dim().unwrap()) {
                for r in (m - p)..=m.min(right.dim().unwrap()) {
                    let a_size = m - p;
                    let b_size = m - r;
                    for a_set in (0..m).combinations(a_size) {
                        let rest: Vec<usize> = (0..m).filter(|j| !a_set.contains(j)).collect();
                        for b_set in rest.iter().copied().combinations(b_size) {
                            let a_word: Vec<usize> = a_set.iter().rev().copied().collect();
                            let b_word: Vec<usize> = b_set.iter().rev().copied().collect();
                            for x in left.simplices(p) {
                                for y in right.simplices(r) {
                                    comps.push((
                                        DegenerateSimplex::new(a_word.clone(), x).unwrap(),
                                        DegenerateSimplex::new(b_word.clone(), y).unwrap(),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            comps.sort();
            for (a, b) in &comps {
                let faces: Vec<DegenerateSimplex> = if m == 0 {
                    Vec::new()
                } else {
                    (0..=m)
                        .map(|i| {
                            canonical_pair(&lookup, &left.face(a, i), &right.face(b, i))
                        })
                        .collect()
                };
                let label = format!("({},{})", left.label_of(a), right.label_of(b));
                let id = builder.add(label, faces).expect("product simplices are well formed");
                lookup.insert((a.clone(), b.clone()), id);
            }
            components.push(comps);
        }
    }
    Product { set: Arc::new(builder.build_unchecked()), left, right, components, lookup }
}

fn canonical_pair(
    lookup: &HashMap<(DegenerateSimplex, DegenerateSimplex), SimplexId>,
    a: &DegenerateSimplex,
    b: &DegenerateSimplex,
) -> DegenerateSimplex {
    debug_assert_eq!(a.dim(), b.dim());
    let ea = a.surjection();
    let eb = b.surjection();
    let m = ea.len() - 1;
    // rho collapses j, j+1 exactly when both components collapse there
    let mut rho = Vec::with_capacity(m + 1);
    let mut v = 0;
    rho.push(0);
    for j in 0..m {
        if !(ea[j] == ea[j + 1] && eb[j] == eb[j + 1]) {
            v += 1;
        }
        rho.push(v);
    }
    let mut ea2 = vec![0; v + 1];
    let mut eb2 = vec![0; v + 1];
    for j in 0..=m {
        ea2[rho[j]] = ea[j];
        eb2[rho[j]] = eb[j];
    }
    let a2 = DegenerateSimplex::from_surjection(&ea2, a.base());
    let b2 = DegenerateSimplex::from_surjection(&eb2, b.base());
    let id = *lookup.get(&(a2, b2)).expect("pair is a nondegenerate product simplex");
    DegenerateSimplex::from_surjection(&rho, id)
}

impl Product {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn left(&self) -> &Arc<SimplicialSet> {
        &self.left
    }

    pub fn right(&self) -> &Arc<SimplicialSet> {
        &self.right
    }

    /// The two components of a nondegenerate product simplex.
    pub fn components(&self, id: SimplexId) -> &(DegenerateSimplex, DegenerateSimplex) {
        &self.components[id.dim][id.index]
    }

    /// The canonical product simplex with the given components (of equal dimension).
    pub fn pair(&self, a: &DegenerateSimplex, b: &DegenerateSimplex) -> DegenerateSimplex {
        assert_eq!(a.dim(), b.dim(), "components of a product simplex must have equal dimension");
        canonical_pair(&self.lookup, a, b)
    }

    pub fn pr1(&self) -> SimplicialMap {
        SimplicialMap::from_fn(self.set.clone(), self.left.clone(), |id| self.components(id).0.clone())
    }

    pub fn pr2(&self) -> SimplicialMap {
        SimplicialMap::from_fn(self.set.clone(), self.right.clone(), |id| self.components(id).1.clone())
    }

    /// `(f, g): Z -> X × Y`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        assert!(Arc::ptr_eq(f.source(), g.source()) || **f.source() == **g.source());
        SimplicialMap::from_fn(f.source().clone(), self.set.clone(), |id| self.pair(f.get(id), g.get(id)))
    }

    /// `f × g: X' × Y' -> X × Y` for a product `source = X' × Y'`.
    pub fn product_map(&self, source: &Product, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        SimplicialMap::from_fn(source.set.clone(), self.set.clone(), |id| {
            let (a, b) = source.components(id);
            self.pair(&f.image(a), &g.image(b))
        })
    }

    /// `(S × Y) ∪ (X × T)` for subcomplexes `S ⊆ X`, `T ⊆ Y`.
    pub fn boundary_union(&self, s: &Subcomplex, t: &Subcomplex) -> Subcomplex {
        Subcomplex::from_predicate(&self.set, |id| {
            let (a, b) = self.components(id);
            s.contains_simplex(a) || t.contains_simplex(b)
        })
    }

    /// `S × Y` for a subcomplex `S ⊆ X`.
    pub fn left_restricted(&self, s: &Subcomplex) -> Subcomplex {
        Subcomplex::from_predicate(&self.set, |id| s.contains_simplex(&self.components(id).0))
    }

    /// `X × T` for a subcomplex `T ⊆ Y`.
    pub fn right_restricted(&self, t: &Subcomplex) -> Subcomplex {
        Subcomplex::from_predicate(&self.set, |id| t.contains_simplex(&self.components(id).1))
    }
}
