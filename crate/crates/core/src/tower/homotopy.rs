//! Homotopies `I × L -> P_n` and their concatenation on `Δ² × L`.
//!
//! Homotopies are relative: they are the zero map on `I × S`. Every fill below is an exact
//! relative solve, stage by stage, against prescribed values on the boundary piece.

use std::sync::Arc;

use super::{Tower, TowerMap};
use crate::abelian::{Cochain, RelativeComplex};
use crate::error::{Error, Result};
use crate::simplicial::{
    interval, product, standard_simplex, DegenerateSimplex, Product, SimplexId, SimplicialMap, SimplicialSet,
    Subcomplex,
};

fn vertex_relabel(source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, image: impl Fn(char) -> char) -> SimplicialMap {
    SimplicialMap::from_fn(source.clone(), target.clone(), |id| {
        let label: String = source.label(id).chars().map(&image).collect();
        DegenerateSimplex::nondegenerate(target.find(&label).expect("coface of a standard simplex"))
    })
}

/// `I × L` for a pair `(L, S)` over `β: L -> B`.
#[derive(Debug)]
pub struct Prism {
    product: Product,
    sub: Subcomplex,
    beta: SimplicialMap,
    base_map: SimplicialMap,
    ends: [SimplicialMap; 2],
    side: Subcomplex,
    level_sub: Subcomplex,
    rel_end0: RelativeComplex,
    rel_end1: RelativeComplex,
    rel_both: Arc<RelativeComplex>,
}

impl Prism {
    pub fn new(l: Arc<SimplicialSet>, sub: Subcomplex, beta: &SimplicialMap) -> Self {
        let i = Arc::new(interval());
        let product = product(i.clone(), l.clone());
        let base_map = product.pr2().compose(beta);
        let ends = [0, 1].map(|v| {
            let c = SimplicialMap::from_fn(l.clone(), i.clone(), |id| i.constant(SimplexId::new(0, v), id.dim));
            product.pairing(&c, &SimplicialMap::identity(l.clone()))
        });
        let side = product.right_restricted(&sub);
        let end_sub = |v: usize| Subcomplex::image_of(&ends[v]);
        let set = product.set().clone();
        let e0 = side.union(&end_sub(0));
        let e1 = side.union(&end_sub(1));
        let both = e0.union(&e1);
        Prism {
            rel_end0: RelativeComplex::new(set.clone(), e0),
            rel_end1: RelativeComplex::new(set.clone(), e1),
            rel_both: Arc::new(RelativeComplex::new(set, both.clone())),
            level_sub: both,
            product,
            sub,
            beta: beta.clone(),
            base_map,
            ends,
            side,
        }
    }

    /// `I × L`.
    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.product.set()
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    /// `L`.
    pub fn bottom(&self) -> &Arc<SimplicialSet> {
        self.product.right()
    }

    pub fn bottom_sub(&self) -> &Subcomplex {
        &self.sub
    }

    /// `β ∘ pr_L`.
    pub fn base_map(&self) -> &SimplicialMap {
        &self.base_map
    }

    /// `ι_v: L -> I × L`, `v ∈ {0, 1}`.
    pub fn end(&self, v: usize) -> &SimplicialMap {
        &self.ends[v]
    }

    /// `I × S`.
    pub fn side(&self) -> &Subcomplex {
        &self.side
    }

    /// `∂I × L ∪ I × S`.
    pub fn boundary(&self) -> &Subcomplex {
        &self.level_sub
    }

    /// `(I × L, ∂I × L ∪ I × S)`, the next level of the cube tower.
    pub fn rel_both(&self) -> &Arc<RelativeComplex> {
        &self.rel_both
    }
}

/// Lifts `h: I × L -> P_m` to `P_n` with the given end maps `L -> P_n` and zero on `I × S`.
///
/// At least one end must be given. With both ends the fill can be obstructed, which is
/// reported as [`Error::Inconsistent`].
pub fn lift_homotopy(
    tower: &Tower,
    prism: &Prism,
    h: &TowerMap,
    end0: Option<&TowerMap>,
    end1: Option<&TowerMap>,
    n: usize,
) -> Result<TowerMap> {
    let rel = match (end0, end1) {
        (Some(_), None) => &prism.rel_end0,
        (None, Some(_)) => &prism.rel_end1,
        (Some(_), Some(_)) => prism.rel_both.as_ref(),
        (None, None) => return Err(Error::InvalidInput("a homotopy lift needs at least one end".into())),
    };
    let zero = tower.zero_map(&prism.base_map, n);
    if !h.agrees_on(&zero.truncate(h.stage()), &prism.side) {
        return Err(Error::Inconsistent("homotopy is not zero on the side".into()));
    }
    let mut prescribed = zero.coords().to_vec();
    for (v, end) in [end0, end1].into_iter().enumerate() {
        let Some(g) = end else { continue };
        if g.stage() < n {
            return Err(Error::MissingStage { required: n, available: g.stage() });
        }
        if !h.pullback(&prism.ends[v]).same_values(&g.truncate(h.stage())) {
            return Err(Error::Inconsistent(format!("homotopy does not start from the given map at end {v}")));
        }
        for (i, c) in prescribed.iter_mut().enumerate() {
            c.push_forward_into(&prism.ends[v], g.coord(i + 1));
        }
    }
    tower.extend(rel, h, &prescribed, n)
}

/// `Δ² × L`, with the face maps `δ^j: I × L -> Δ² × L` and the horns
/// `Λ²_i × L ∪ Δ² × S`.
#[derive(Debug)]
pub struct Triangle {
    product: Product,
    base_map: SimplicialMap,
    faces: [SimplicialMap; 3],
    horns: [RelativeComplex; 3],
}

impl Triangle {
    pub fn new(prism: &Prism) -> Self {
        let simplex = Arc::new(standard_simplex(2));
        let l = prism.bottom().clone();
        let product = product(simplex.clone(), l.clone());
        let base_map = product.pr2().compose(&prism.beta);
        let i = prism.product.left().clone();
        let id_l = SimplicialMap::identity(l);
        let faces = [0usize, 1, 2].map(|j| {
            let coface = vertex_relabel(&i, &simplex, |c| {
                let v = c.to_digit(10).unwrap() as usize;
                let w = if v >= j { v + 1 } else { v };
                char::from_digit(w as u32, 10).unwrap()
            });
            product.product_map(&prism.product, &coface, &id_l)
        });
        let edge = |j: usize| {
            let label: String = (0..3u32).filter(|&v| v as usize != j).map(|v| char::from_digit(v, 10).unwrap()).collect();
            simplex.find(&label).unwrap()
        };
        let horns = [0usize, 1, 2].map(|k| {
            let lambda = Subcomplex::generated_by(&simplex, (0..3).filter(|&j| j != k).map(edge));
            RelativeComplex::new(product.set().clone(), product.boundary_union(&lambda, &prism.sub))
        });
        Triangle { product, base_map, faces, horns }
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.product.set()
    }

    /// `δ^j`; its image is the edge of `Δ²` opposite vertex `j`, times `L`.
    pub fn face(&self, j: usize) -> &SimplicialMap {
        &self.faces[j]
    }
}

/// Fills the horn `Λ²_horn × L ∪ Δ² × S` with the two given faces (homotopies `I × L -> P_n`)
/// and returns the remaining face `δ^horn`.
///
/// `faces[j]` must be `Some` exactly for `j ≠ horn`.
pub fn concatenate(tower: &Tower, tri: &Triangle, horn: usize, faces: [Option<&TowerMap>; 3], n: usize) -> Result<TowerMap> {
    if faces.iter().enumerate().any(|(j, f)| f.is_some() != (j != horn)) {
        return Err(Error::InvalidInput("the faces other than the missing one must be given".into()));
    }
    let zero = tower.zero_map(&tri.base_map, n);
    let mut prescribed: Vec<Cochain> = zero.coords().to_vec();
    for (j, f) in faces.iter().enumerate() {
        if let Some(f) = f {
            if f.stage() < n {
                return Err(Error::MissingStage { required: n, available: f.stage() });
            }
            for (i, c) in prescribed.iter_mut().enumerate() {
                c.push_forward_into(&tri.faces[j], f.coord(i + 1));
            }
        }
    }
    let empty = TowerMap::new(tri.base_map.clone(), Vec::new());
    let filled = tower.extend(&tri.horns[horn], &empty, &prescribed, n)?;
    for (j, f) in faces.iter().enumerate() {
        if let Some(f) = f {
            if !filled.pullback(&tri.faces[j]).same_values(&f.truncate(n)) {
                return Err(Error::Inconsistent(format!("face {j} does not match: the given homotopies have different endpoints")));
            }
        }
    }
    Ok(filled.pullback(&tri.faces[horn]))
}
