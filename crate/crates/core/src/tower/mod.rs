//! Moore–Postnikov stages as iterated pullbacks of the path fibrations `E(π_n,n) -> K(π_n,n+1)`.
//!
//! A simplex of `P_n` over `b ∈ B` is a tuple of normalized cochains `(c_1, ..., c_n)` on `Δ^m`,
//! `c_i` of degree `i` with values in `π_i`, subject to `δc_i = k_i(c_1, ..., c_{i-1})`. The
//! k-invariants depend on the coordinates only, so a map `Z -> P_n` over `Z -> B` is the same as
//! a tuple of global cochains on `Z` satisfying the same equations.

mod catalog;
mod format;
mod homotopy;

use std::sync::Arc;

use crate::abelian::{Cochain, FgAbelian, RelativeComplex};
use crate::em::{EMSimplex, KExpr, KInvariant};
use crate::error::{Error, Result};
use crate::simplicial::{DegenerateSimplex, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};

pub use catalog::{catalog, catalog_names, parse_group};
pub use format::{cochain_from_doc, cochain_to_doc, CochainDoc, PhiDoc, StageDoc, TowerDoc, TowerMapDoc};
pub use homotopy::{concatenate, lift_homotopy, Prism, Triangle};

#[derive(Clone, Debug)]
pub struct Stage {
    pi: FgAbelian,
    k: KInvariant,
}

impl Stage {
    pub fn group(&self) -> &FgAbelian {
        &self.pi
    }

    pub fn k_invariant(&self) -> &KInvariant {
        &self.k
    }
}

/// The comparison map `φ: Y -> P_N` of a catalog target.
#[derive(Clone, Debug)]
pub struct Phi {
    pub target: Arc<SimplicialSet>,
    pub map: TowerMap,
}

/// A validated tower `P_N -> ... -> P_1 -> P_0 = B` with a zero section.
#[derive(Clone, Debug)]
pub struct Tower {
    name: String,
    base: Arc<SimplicialSet>,
    stages: Vec<Stage>,
    complete: bool,
    section: Vec<Cochain>,
    phi: Option<Phi>,
}

/// Outcome of a one-stage lifting problem.
#[derive(Clone, Debug)]
pub enum Lift {
    Found(TowerMap),
    /// The obstruction: a relative cocycle of degree `n + 1` that is not a coboundary.
    Obstructed(Cochain),
}

impl Lift {
    pub fn found(self) -> Option<TowerMap> {
        match self {
            Lift::Found(m) => Some(m),
            Lift::Obstructed(_) => None,
        }
    }
}

impl Tower {
    /// Stages are `(π_n, k_n)` for `n = 1, 2, ...`; `complete` means that all higher stages are
    /// trivial. The zero section is the zero cochain tuple.
    pub fn new(
        name: impl Into<String>,
        base: Arc<SimplicialSet>,
        stages: Vec<(FgAbelian, KExpr)>,
        complete: bool,
    ) -> Result<Self> {
        let mut groups = Vec::new();
        let mut compiled = Vec::new();
        for (i, (pi, k)) in stages.into_iter().enumerate() {
            let n = i + 1;
            let inv = k.compile(&groups, n + 1, &pi).map_err(|e| Error::InvalidTower(format!("stage {n}: {e}")))?;
            check_naturality(&inv, &groups)?;
            groups.push(pi.clone());
            compiled.push(Stage { pi, k: inv });
        }
        let section = compiled.iter().enumerate().map(|(i, s)| Cochain::zero(&base, i + 1, &s.pi)).collect();
        Ok(Tower { name: name.into(), base, stages: compiled, complete, section, phi: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<SimplicialSet> {
        &self.base
    }

    /// Number of stages `N`.
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// `π_n` (`n ≥ 1`).
    pub fn pi(&self, n: usize) -> &FgAbelian {
        &self.stages[n - 1].pi
    }

    pub fn groups(&self) -> Vec<FgAbelian> {
        self.stages.iter().map(|s| s.pi.clone()).collect()
    }

    pub fn section(&self) -> &[Cochain] {
        &self.section
    }

    pub fn phi(&self) -> Option<&Phi> {
        self.phi.as_ref()
    }

    /// Replaces the zero section by the given cochains on `B`.
    pub fn with_section(mut self, section: Vec<Cochain>) -> Result<Self> {
        let map = TowerMap::new(SimplicialMap::identity(self.base.clone()), section);
        self.check_map(&map).map_err(|e| Error::InvalidTower(format!("section: {e}")))?;
        if map.stage() != self.len() {
            return Err(Error::InvalidTower(format!(
                "section has {} stages, tower has {}",
                map.stage(),
                self.len()
            )));
        }
        self.section = map.coords;
        Ok(self)
    }

    /// Attaches `φ: Y -> P_N` given by cochains on `Y` (the base must be a point).
    pub fn with_phi(mut self, target: Arc<SimplicialSet>, coords: Vec<Cochain>) -> Result<Self> {
        let to_base = SimplicialMap::to_point(target.clone(), self.base.clone())
            .map_err(|_| Error::InvalidTower("comparison maps require a one-point base".into()))?;
        let map = TowerMap::new(to_base, coords);
        self.check_map(&map).map_err(|e| Error::InvalidTower(format!("comparison map: {e}")))?;
        self.phi = Some(Phi { target, map });
        Ok(self)
    }

    /// The tower truncated or, if complete, padded with trivial stages to exactly `n` stages.
    pub fn require(&self, n: usize) -> Result<Tower> {
        let mut t = self.clone();
        if n <= self.len() {
            t.stages.truncate(n);
            t.section.truncate(n);
            if let Some(phi) = &mut t.phi {
                phi.map = phi.map.truncate(n.min(phi.map.stage()));
            }
            return Ok(t);
        }
        if !self.complete {
            return Err(Error::MissingStage { required: n, available: self.len() });
        }
        let trivial = FgAbelian::trivial();
        for m in self.len() + 1..=n {
            let k = KExpr::Zero.compile(&t.groups(), m + 1, &trivial)?;
            t.stages.push(Stage { pi: trivial.clone(), k });
            t.section.push(Cochain::zero(&self.base, m, &trivial));
            if let Some(phi) = &mut t.phi {
                if phi.map.stage() == m - 1 {
                    phi.map.coords.push(Cochain::zero(&phi.target, m, &trivial));
                }
            }
        }
        Ok(t)
    }

    /// `κ_n = k_n(c_1, ..., c_{n-1})` as an `(n+1)`-cochain on `set`.
    pub fn kappa(&self, n: usize, set: &SimplicialSet, coords: &[Cochain]) -> Cochain {
        let stage = &self.stages[n - 1];
        let mut out = Cochain::zero(set, n + 1, &stage.pi);
        if stage.k.is_zero() {
            return out;
        }
        let full: Vec<usize> = (0..=n + 1).collect();
        for sigma in set.simplices(n + 1) {
            let top = DegenerateSimplex::nondegenerate(sigma);
            let mut lookup = |s: usize, face: &[usize]| -> Vec<i64> {
                match set.apply(&top, face).as_nondegenerate() {
                    Some(id) => coords[s - 1].get(id.index).to_vec(),
                    None => vec![0; coords[s - 1].width()],
                }
            };
            let v = stage.k.value_on(&full, &mut lookup);
            out.set(sigma.index, &v);
        }
        out
    }

    /// The zero map `Z -> P_n` over `base_map: Z -> B`: the section pulled back.
    pub fn zero_map(&self, base_map: &SimplicialMap, n: usize) -> TowerMap {
        let coords = self.section[..n].iter().map(|c| c.pullback(base_map)).collect();
        TowerMap::new(base_map.clone(), coords)
    }

    /// Checks widths, degrees and the pullback equations `δc_i = κ_i`.
    pub fn check_map(&self, f: &TowerMap) -> Result<()> {
        if f.stage() > self.len() {
            return Err(Error::MissingStage { required: f.stage(), available: self.len() });
        }
        if !Arc::ptr_eq(f.base_map.target(), &self.base) && **f.base_map.target() != *self.base {
            return Err(Error::InvalidMap("map does not lie over the tower base".into()));
        }
        let set = f.source();
        for (i, c) in f.coords.iter().enumerate() {
            let n = i + 1;
            let pi = self.pi(n);
            if c.degree() != n || c.width() != pi.rank() || c.len() != set.count(n) && pi.rank() > 0 {
                return Err(Error::InvalidMap(format!("coordinate {n} has the wrong shape")));
            }
            let mut reduced = c.clone();
            reduced.reduce(pi);
            if &reduced != c {
                return Err(Error::InvalidMap(format!("coordinate {n} is not reduced")));
            }
            if c.coboundary(set, pi) != self.kappa(n, set, &f.coords) {
                return Err(Error::InvalidMap(format!("coordinate {n} violates the pullback equation")));
            }
        }
        Ok(())
    }

    /// One-stage lift of `f: Z -> P_{n-1}` to `P_n`, with the new coordinate prescribed on the
    /// subset of `rel`.
    pub fn lift_one_stage(&self, rel: &RelativeComplex, f: &TowerMap, prescribed: &Cochain) -> Result<Lift> {
        let n = f.stage() + 1;
        if n > self.len() {
            return Err(Error::MissingStage { required: n, available: self.len() });
        }
        let pi = self.pi(n);
        let kappa = self.kappa(n, rel.set(), &f.coords);
        match rel.solve(n, pi, prescribed, &kappa)? {
            Some(c) => Ok(Lift::Found(f.clone().with_coord(c))),
            None => Ok(Lift::Obstructed(rel.defect(prescribed, &kappa, pi))),
        }
    }

    /// Extends `partial` through stages `partial.stage() + 1 ..= n`, with `prescribed[i - 1]`
    /// giving the values of `c_i` on the subset of `rel`. Fails if a stage cannot be filled.
    pub fn extend(&self, rel: &RelativeComplex, partial: &TowerMap, prescribed: &[Cochain], n: usize) -> Result<TowerMap> {
        let mut cur = partial.clone();
        for i in partial.stage() + 1..=n {
            cur = match self.lift_one_stage(rel, &cur, &prescribed[i - 1])? {
                Lift::Found(m) => m,
                Lift::Obstructed(_) => {
                    return Err(Error::Inconsistent(format!("stage {i} admits no filler for the prescribed data")))
                }
            };
        }
        Ok(cur)
    }

    /// The stage pulled back along `β: X -> B` with section `(id, g)`.
    pub fn pullback(&self, beta: &SimplicialMap, g: &TowerMap) -> Result<Tower> {
        if !Arc::ptr_eq(g.source(), beta.source()) && **g.source() != **beta.source() {
            return Err(Error::InvalidMap("section map and base map have different sources".into()));
        }
        self.check_map(g)?;
        let n = g.stage();
        let mut t = self.require(n)?;
        t.name = format!("{}|{}", self.name, beta.source().name());
        t.base = beta.source().clone();
        t.section = g.coords.clone();
        t.phi = None;
        Ok(t)
    }

    /// `j(b, z) = (o'(b), o''(b) + z)`: the top coordinate of the zero map shifted by a cocycle.
    pub fn j(&self, zero: &TowerMap, z: &Cochain) -> Result<TowerMap> {
        let n = zero.stage();
        if z.degree() != n {
            return Err(Error::DimensionMismatch { expected: n, found: z.degree() });
        }
        let mut coords = zero.coords.clone();
        coords[n - 1] = coords[n - 1].add(z, self.pi(n));
        Ok(TowerMap::new(zero.base_map.clone(), coords))
    }

    /// The difference `c_n - o_n` of a map agreeing with the zero map below stage `n`.
    pub fn difference(&self, f: &TowerMap, zero: &TowerMap) -> Cochain {
        let n = f.stage();
        f.coords[n - 1].sub(&zero.coords[n - 1], self.pi(n))
    }

    /// The simplex `f(σ)` of `P_n` with its local coordinates on `Δ^m`.
    pub fn simplex(&self, f: &TowerMap, id: SimplexId) -> TowerSimplex {
        let set = f.source();
        let top = DegenerateSimplex::nondegenerate(id);
        let coords = f
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                EMSimplex::from_fn(self.pi(i + 1), i + 1, id.dim, |face| match set.apply(&top, face).as_nondegenerate() {
                    Some(s) => c.get(s.index).to_vec(),
                    None => vec![0; c.width()],
                })
            })
            .collect();
        TowerSimplex { base: f.base_map.get(id).clone(), coords }
    }

    /// Whether a simplex satisfies `δc_i = k_i(c_{<i})`.
    pub fn is_compatible(&self, s: &TowerSimplex) -> bool {
        s.coords.iter().enumerate().all(|(i, c)| {
            let pi = self.pi(i + 1);
            c.coboundary(pi) == self.stages[i].k.eval_with_dim(&s.coords[..i], c.dim())
        })
    }

    /// `j` on a single simplex: `(o'(b), o''(b) + z)`.
    pub fn j_simplex(&self, zero: &TowerSimplex, z: &EMSimplex) -> Result<TowerSimplex> {
        let n = zero.coords.len();
        let top = &zero.coords[n - 1];
        if z.degree() != n || z.dim() != top.dim() {
            return Err(Error::DimensionMismatch { expected: n, found: z.degree() });
        }
        let mut coords = zero.coords.clone();
        coords[n - 1] = top.add(z, self.pi(n));
        Ok(TowerSimplex { base: zero.base.clone(), coords })
    }

    /// `φ ∘ f` for a simplicial map `f: X -> Y` into the catalog target.
    pub fn compose_phi(&self, f: &SimplicialMap) -> Result<TowerMap> {
        let phi = self.phi.as_ref().ok_or_else(|| Error::InvalidTower(format!("{} has no comparison map", self.name)))?;
        if **f.target() != *phi.target {
            return Err(Error::InvalidMap("map does not land in the comparison target".into()));
        }
        Ok(phi.map.pullback(f))
    }
}

/// Spot check `k(θ^* c) = θ^* k(c)` on pattern cochains in low dimensions.
fn check_naturality(k: &KInvariant, groups: &[FgAbelian]) -> Result<()> {
    if k.is_zero() {
        return Ok(());
    }
    let d = k.degree();
    for m in d.saturating_sub(1)..=(d + 1).min(5) {
        let coords: Vec<EMSimplex> = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                EMSimplex::from_fn(g, i + 1, m, |face| {
                    (0..g.rank())
                        .map(|j| face.iter().enumerate().map(|(p, &v)| (v as i64 + 1) * (p as i64 + 2) * (j as i64 + 3)).sum::<i64>() % 7 - 3)
                        .collect()
                })
            })
            .collect();
        let v = k.eval_with_dim(&coords, m);
        for i in 0..=m {
            if m > 0 {
                let faced: Vec<EMSimplex> = coords.iter().zip(groups).map(|(c, g)| c.face(i, g)).collect::<Result<_>>()?;
                if k.eval_with_dim(&faced, m - 1) != v.face(i, k.group())? {
                    return Err(Error::InvalidTower(format!("k-invariant {} is not natural", k.expr())));
                }
            }
            let degen: Vec<EMSimplex> = coords.iter().zip(groups).map(|(c, g)| c.degeneracy(i, g)).collect::<Result<_>>()?;
            if k.eval_with_dim(&degen, m + 1) != v.degeneracy(i, k.group())? {
                return Err(Error::InvalidTower(format!("k-invariant {} is not natural", k.expr())));
            }
        }
    }
    Ok(())
}

/// A simplicial map `Z -> P_n` over `Z -> B`, as global cochains `c_1..c_n` on `Z`.
#[derive(Clone, Debug)]
pub struct TowerMap {
    base_map: SimplicialMap,
    coords: Vec<Cochain>,
}

impl TowerMap {
    pub fn new(base_map: SimplicialMap, coords: Vec<Cochain>) -> Self {
        TowerMap { base_map, coords }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        self.base_map.source()
    }

    pub fn base_map(&self) -> &SimplicialMap {
        &self.base_map
    }

    pub fn coords(&self) -> &[Cochain] {
        &self.coords
    }

    /// `c_n` (`n ≥ 1`).
    pub fn coord(&self, n: usize) -> &Cochain {
        &self.coords[n - 1]
    }

    /// The stage `n` of the target `P_n`.
    pub fn stage(&self) -> usize {
        self.coords.len()
    }

    pub fn with_coord(mut self, c: Cochain) -> Self {
        self.coords.push(c);
        self
    }

    /// `p ∘ f: Z -> P_n`.
    pub fn truncate(&self, n: usize) -> TowerMap {
        TowerMap { base_map: self.base_map.clone(), coords: self.coords[..n].to_vec() }
    }

    /// `f ∘ g` for `g: Z' -> Z`.
    pub fn pullback(&self, g: &SimplicialMap) -> TowerMap {
        TowerMap { base_map: g.compose(&self.base_map), coords: self.coords.iter().map(|c| c.pullback(g)).collect() }
    }

    /// Equality of all coordinates on the simplices of `sub`.
    pub fn agrees_on(&self, other: &TowerMap, sub: &Subcomplex) -> bool {
        self.stage() == other.stage() && self.coords.iter().zip(&other.coords).all(|(a, b)| a.agrees_on(b, sub))
    }

    pub fn same_values(&self, other: &TowerMap) -> bool {
        self.coords == other.coords
    }
}

/// A simplex of `P_n`: a base simplex and local coordinate cochains on `Δ^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSimplex {
    pub base: DegenerateSimplex,
    pub coords: Vec<EMSimplex>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::cohomology_group;
    use crate::simplicial::{point, product, sphere, torus, SimplicialPair};

    fn pt() -> Arc<SimplicialSet> {
        Arc::new(point())
    }

    #[test]
    fn requirements_and_padding() {
        let t = catalog("K(Z,2)").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.require(5).unwrap().len(), 5);
        let s = catalog("S2-stage3").unwrap();
        assert!(matches!(s.require(4), Err(Error::MissingStage { required: 4, available: 3 })));
        assert_eq!(s.require(2).unwrap().len(), 2);
    }

    #[test]
    fn maps_from_the_sphere() {
        let tower = catalog("S2-stage3").unwrap();
        let s2 = Arc::new(sphere(2));
        let f = tower.compose_phi(&SimplicialMap::identity(s2.clone())).unwrap();
        tower.check_map(&f).unwrap();
        assert_eq!(f.coord(2).values(), &[1]);
        for id in s2.all_simplices() {
            assert!(tower.is_compatible(&tower.simplex(&f, id)));
        }
        // the generator lifts through the cup-square stage since H^4(S^2) = 0
        let rel = RelativeComplex::new(s2.clone(), Subcomplex::empty(&s2));
        let zero3 = Cochain::zero(&s2, 3, tower.pi(3));
        assert!(tower.lift_one_stage(&rel, &f.truncate(2), &zero3).unwrap().found().is_some());
        assert!(cohomology_group(&SimplicialPair::absolute(s2), &FgAbelian::integers(), 4).orders().is_trivial());
    }

    #[test]
    fn obstruction_on_product_of_spheres() {
        let tower = catalog("S2-stage3").unwrap();
        let s2 = Arc::new(sphere(2));
        let p = product(s2.clone(), s2.clone());
        let z = p.set().clone();
        let base = SimplicialMap::to_point(z.clone(), tower.base().clone()).unwrap();
        let x = Cochain::zero(&s2, 2, tower.pi(2));
        let mut gen = x.clone();
        gen.set(0, &[1]);
        let c2 = gen.pullback(&p.pr1()).add(&gen.pullback(&p.pr2()), tower.pi(2));
        let f = TowerMap::new(base, vec![Cochain::zero(&z, 1, tower.pi(1)), c2]);
        tower.check_map(&f).unwrap();
        let rel = RelativeComplex::new(z.clone(), Subcomplex::empty(&z));
        let Lift::Obstructed(obs) = tower.lift_one_stage(&rel, &f, &Cochain::zero(&z, 3, tower.pi(3))).unwrap() else {
            panic!("expected an obstruction");
        };
        let h4 = rel.cohomology(4, tower.pi(3));
        assert_eq!(h4.orders().orders(), &[0]);
        let class = h4.group().coefficients(&obs);
        assert_eq!(class[0].abs(), 2);
        // (1, 0) lifts
        let g = TowerMap::new(f.base_map().clone(), vec![f.coord(1).clone(), gen.pullback(&p.pr1())]);
        assert!(tower.lift_one_stage(&rel, &g, &Cochain::zero(&z, 3, tower.pi(3))).unwrap().found().is_some());
    }

    #[test]
    fn j_embedding_adds_cocycles() {
        let tower = catalog("K(Z,2)").unwrap();
        let t2 = Arc::new(torus());
        let base = SimplicialMap::to_point(t2.clone(), pt()).unwrap();
        let zero = tower.zero_map(&base, 2);
        let mut z1 = Cochain::zero(&t2, 2, tower.pi(2));
        z1.set(0, &[3]);
        let mut z2 = Cochain::zero(&t2, 2, tower.pi(2));
        z2.set(1, &[-1]);
        let a = tower.j(&tower.j(&zero, &z1).unwrap(), &z2).unwrap();
        let b = tower.j(&zero, &z1.add(&z2, tower.pi(2))).unwrap();
        assert!(a.same_values(&b));
        assert!(tower.j(&zero, &Cochain::zero(&t2, 2, tower.pi(2))).unwrap().same_values(&zero));
        let id = SimplexId::new(2, 0);
        let zs = tower.simplex(&zero, id);
        let local = tower.simplex(&tower.j(&zero, &z1).unwrap(), id);
        let zl = EMSimplex::from_fn(tower.pi(2), 2, 2, |_| vec![3]);
        assert_eq!(tower.j_simplex(&zs, &zl).unwrap(), local);
    }

    #[test]
    fn pullback_stage_section() {
        let tower = catalog("K(Z,2)").unwrap();
        let t2 = Arc::new(torus());
        let beta = SimplicialMap::to_point(t2.clone(), pt()).unwrap();
        let mut c = Cochain::zero(&t2, 2, tower.pi(2));
        c.set(0, &[1]);
        let g = tower.j(&tower.zero_map(&beta, 2), &c).unwrap();
        let pulled = tower.pullback(&beta, &g).unwrap();
        let zero = pulled.zero_map(&SimplicialMap::identity(t2.clone()), 2);
        assert!(zero.same_values(&g));
        pulled.check_map(&zero).unwrap();
        // pulling back along the identity of a point with the zero section changes nothing
        let p = pt();
        let same = tower.pullback(&SimplicialMap::identity(p.clone()), &tower.zero_map(&SimplicialMap::identity(p), 2)).unwrap();
        assert_eq!(same.section(), tower.section());
    }
}
