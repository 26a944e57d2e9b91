use std::sync::Arc;

use super::{
    interval, product, DegenerateSimplex, Product, SimplexId, SimplicialMap, SimplicialPair,
    SimplicialSet, Subcomplex,
};

/// Result of gluing `total` to `target` along a map defined on a subcomplex of `total`.
#[derive(Debug)]
pub struct Pushout {
    pub set: Arc<SimplicialSet>,
    /// `total -> set`
    pub quotient: SimplicialMap,
    /// `target -> set`, injective.
    pub inclusion: SimplicialMap,
}

/// Pushout of `total ⊇ sub --along--> target`.
///
/// The nondegenerate simplices of the result are those of `target` (same indices, listed first)
/// followed by those of `total` outside `sub`. Gluing along a subcomplex inclusion creates no new
/// degeneracies, so no re-detection pass is needed.
pub fn pushout(
    name: &str,
    total: &Arc<SimplicialSet>,
    sub: &Subcomplex,
    target: &Arc<SimplicialSet>,
    along: impl Fn(SimplexId) -> DegenerateSimplex,
) -> Pushout {
    let top = total.dim().into_iter().chain(target.dim()).max().map_or(0, |d| d + 1);
    let mut builder = SimplicialSet::builder(name);
    // new index of each total simplex outside sub
    let mut new_index: Vec<Vec<Option<usize>>> =
        (0..top).map(|d| vec![None; total.count(d)]).collect();
    for d in 0..top {
        for t in target.simplices(d) {
            let faces = if d == 0 { Vec::new() } else { target.faces_of(t).to_vec() };
            builder.add(target.label(t).to_string(), faces).expect("target simplices are valid");
        }
        let offset = target.count(d);
        let mut next = offset;
        for s in total.simplices(d) {
            if sub.contains(s) {
                continue;
            }
            let faces: Vec<DegenerateSimplex> = if d == 0 {
                Vec::new()
            } else {
                total
                    .faces_of(s)
                    .iter()
                    .map(|f| glue_simplex(sub, target, &along, &new_index, f))
                    .collect()
            };
            let mut label = total.label(s).to_string();
            if target.find(&label).is_some() {
                label = format!("{label}'");
            }
            builder.add(label, faces).expect("glued simplices are valid");
            new_index[d][s.index] = Some(next);
            next += 1;
        }
    }
    let set = Arc::new(builder.build_unchecked());
    let quotient = SimplicialMap::from_fn(total.clone(), set.clone(), |id| {
        glue_simplex(sub, target, &along, &new_index, &DegenerateSimplex::nondegenerate(id))
    });
    let inclusion = SimplicialMap::from_fn(target.clone(), set.clone(), DegenerateSimplex::nondegenerate);
    Pushout { set, quotient, inclusion }
}

fn glue_simplex(
    sub: &Subcomplex,
    target: &SimplicialSet,
    along: &impl Fn(SimplexId) -> DegenerateSimplex,
    new_index: &[Vec<Option<usize>>],
    s: &DegenerateSimplex,
) -> DegenerateSimplex {
    let base = s.base();
    if sub.contains(base) {
        let img = along(base);
        if s.is_degenerate() {
            target.apply(&img, &s.surjection())
        } else {
            img
        }
    } else {
        let idx = new_index[base.dim][base.index].expect("faces are built before cofaces");
        DegenerateSimplex::new(s.word().to_vec(), SimplexId::new(base.dim, idx)).unwrap()
    }
}

/// Disjoint union `X ⊔ Y`; returns the set and the two inclusions.
pub fn disjoint_union(
    left: &Arc<SimplicialSet>,
    right: &Arc<SimplicialSet>,
    tags: (&str, &str),
) -> (Arc<SimplicialSet>, SimplicialMap, SimplicialMap) {
    let name = format!("{}+{}", left.name(), right.name());
    let top = left.dim().into_iter().chain(right.dim()).max().map_or(0, |d| d + 1);
    let mut builder = SimplicialSet::builder(name);
    for (set, tag, offset_of) in [(left, tags.0, None), (right, tags.1, Some(left.as_ref()))] {
        for d in 0..top {
            for s in set.simplices(d) {
                let faces: Vec<DegenerateSimplex> = if d == 0 {
                    Vec::new()
                } else {
                    set.faces_of(s)
                        .iter()
                        .map(|f| {
                            let off = offset_of.map_or(0, |l| l.count(f.base().dim));
                            DegenerateSimplex::new(
                                f.word().to_vec(),
                                SimplexId::new(f.base().dim, f.base().index + off),
                            )
                            .unwrap()
                        })
                        .collect()
                };
                builder.add(format!("{}{}", set.label(s), tag), faces).expect("valid union");
            }
        }
    }
    // the builder keeps one list per dimension, so left simplices keep their indices
    let set = Arc::new(builder.build_unchecked());
    let l = SimplicialMap::from_fn(left.clone(), set.clone(), DegenerateSimplex::nondegenerate);
    let r = SimplicialMap::from_fn(right.clone(), set.clone(), |id| {
        DegenerateSimplex::nondegenerate(SimplexId::new(id.dim, id.index + left.count(id.dim)))
    });
    (set, l, r)
}

/// The mapping cylinder `(I × A) ∪_ι X` with `A` included at the `0`-end.
#[derive(Debug)]
pub struct Cylinder {
    pub set: Arc<SimplicialSet>,
    /// `A -> cyl` at the `0`-end; injective.
    pub inclusion: SimplicialMap,
    /// `cyl -> X`, collapsing the cylinder coordinate.
    pub projection: SimplicialMap,
    /// `X -> cyl`.
    pub target_inclusion: SimplicialMap,
}

pub fn mapping_cylinder(iota: &SimplicialMap) -> Cylinder {
    let a = iota.source().clone();
    let x = iota.target().clone();
    let i = Arc::new(interval());
    let v0 = i.find("0").unwrap();
    let v1 = i.find("1").unwrap();
    let ia = product(i.clone(), a.clone());
    let one_end = ia.left_restricted(&Subcomplex::generated_by(&i, [v1]));
    let name = format!("Cyl({})", a.name());
    let glued = pushout(&name, ia.set(), &one_end, &x, |id| iota.image(&ia.components(id).1));
    let inclusion = SimplicialMap::from_fn(a.clone(), glued.set.clone(), |id| {
        let s = ia.pair(&i.constant(v0, id.dim), &DegenerateSimplex::nondegenerate(id));
        glued.quotient.image(&s)
    });
    let proj_total = ia.pr2().compose(iota);
    let set = glued.set.clone();
    // X part first (same indices), then cylinder simplices in order.
    let mut outside: Vec<Vec<SimplexId>> = Vec::new();
    for id in ia.set().all_simplices() {
        if one_end.contains(id) {
            continue;
        }
        while outside.len() <= id.dim {
            outside.push(Vec::new());
        }
        outside[id.dim].push(id);
    }
    let projection = SimplicialMap::from_fn(set.clone(), x.clone(), |id| {
        let xc = x.count(id.dim);
        if id.index < xc {
            DegenerateSimplex::nondegenerate(id)
        } else {
            proj_total.get(outside[id.dim][id.index - xc]).clone()
        }
    });
    Cylinder { set, inclusion, projection, target_inclusion: glued.inclusion }
}

/// `Σ_B X`: the cylinder `I × X` with each end squashed onto a copy of `B` through `β`.
#[derive(Debug)]
pub struct Suspension {
    pub set: Arc<SimplicialSet>,
    /// `I × X -> Σ_B X`
    pub quotient: SimplicialMap,
    /// `Σ_B X -> B`
    pub projection: SimplicialMap,
    pub cylinder: Product,
}

pub fn fibrewise_suspension(beta: &SimplicialMap) -> Suspension {
    let x = beta.source().clone();
    let b = beta.target().clone();
    let i = Arc::new(interval());
    let v0 = i.find("0").unwrap();
    let v1 = i.find("1").unwrap();
    let ix = product(i.clone(), x.clone());
    let ends = ix.left_restricted(&Subcomplex::generated_by(&i, [v0, v1]));
    let (bb, in0, in1) = disjoint_union(&b, &b, ("_0", "_1"));
    let glued = pushout(&format!("Sigma({})", x.name()), ix.set(), &ends, &bb, |id| {
        let (t, xs) = ix.components(id);
        let img = beta.image(xs);
        if t.base() == v0 {
            in0.image(&img)
        } else {
            in1.image(&img)
        }
    });
    let set = glued.set.clone();
    let proj_ix = ix.pr2().compose(beta);
    let mut outside: Vec<Vec<SimplexId>> = Vec::new();
    for id in ix.set().all_simplices() {
        if ends.contains(id) {
            continue;
        }
        while outside.len() <= id.dim {
            outside.push(Vec::new());
        }
        outside[id.dim].push(id);
    }
    let projection = SimplicialMap::from_fn(set.clone(), b.clone(), |id| {
        let bc = b.count(id.dim);
        if id.index < bc {
            DegenerateSimplex::nondegenerate(id)
        } else if id.index < 2 * bc {
            DegenerateSimplex::nondegenerate(SimplexId::new(id.dim, id.index - bc))
        } else {
            proj_ix.get(outside[id.dim][id.index - 2 * bc]).clone()
        }
    });
    Suspension { set, quotient: glued.quotient, projection, cylinder: ix }
}

/// `(I^q × X, (∂I^q × X) ∪ (I^q × A))`, built as `I × (I × (... × X))`.
pub fn cube_pair(pair: &SimplicialPair, q: usize) -> SimplicialPair {
    let mut cur = pair.clone();
    let i = Arc::new(interval());
    let ends = Subcomplex::generated_by(&i, [i.find("0").unwrap(), i.find("1").unwrap()]);
    for _ in 0..q {
        let p = product(i.clone(), cur.total.clone());
        let sub = p.boundary_union(&ends, &cur.sub);
        cur = SimplicialPair { total: p.set().clone(), sub };
    }
    cur
}
